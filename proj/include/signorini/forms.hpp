#pragma once

#include <array>
#include <memory>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "signorini/cr_space.hpp"

namespace signorini {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Nitsche family parameters. (theta1, theta2) = (1, 0) is the penalty-free
/// nonsymmetric method; theta2 = 1 with theta1 in {-1, 0, 1} gives the
/// penalized comparison variants. gamma scales with the global mesh size.
struct NitscheParams
{
    double gamma0 = 10.0;
    int theta1 = 1;
    int theta2 = 0;

    double gamma(double h) const { return gamma0 * h; }
    /// Throws std::invalid_argument on gamma0 <= 0 or selectors out of range.
    void validate() const;
};

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

/// Sub-interval of the unit face parameter where an affine function with
/// endpoint values (a, b) is strictly positive. Empty when the function is
/// nowhere positive; a zero-valued stretch counts as inactive.
struct PositiveSegment
{
    double begin = 0.0;
    double end = 0.0;
    bool empty() const { return end <= begin; }
};

PositiveSegment positive_segment(double a, double b);

/// Exact integral over [0, 1] of [P]_+ * w where P is affine with endpoint
/// values (p0, p1) and w affine with endpoint values (w0, w1). Multiply by the
/// face length for the physical integral.
double integrate_positive_part(double p0, double p1, double w0, double w1);

/// Cached geometry of one contact face and its incident triangle.
struct ContactFace
{
    int face = -1;
    int triangle = -1;
    double length = 0.0;
    Point normal;
    std::array<int, 3> dofs{};
    /// Outward normal derivatives of the three local basis functions.
    std::array<double, 3> basis_dn{};
    /// Local basis values at the face endpoints (ordered like Face::vertices).
    std::array<std::array<double, 2>, 3> basis_trace{};
};

std::vector<ContactFace> contact_face_data(const CRSpace& space);

Eigen::Matrix3d local_stiffness(const ElementGeometry& geo);

/// Broken Dirichlet form sum_K (grad u, grad v)_K over unconstrained dofs.
SparseMatrix assemble_stiffness(const CRSpace& space);

/// (f, phi_i) with a triangle rule of the given degree (2 by default).
Eigen::VectorXd assemble_load(const CRSpace& space, const ScalarFunction& f, int degree = 2);

/// Linear contact terms: -<dn u, v> + theta1 <u, dn v> + theta2 / gamma <u, v>
/// on the contact boundary (row = test, column = trial).
SparseMatrix assemble_contact_linear(const CRSpace& space, const NitscheParams& params);

/// Endpoint values of P_gamma(u) = gamma dn u - u on contact face `face`.
std::array<double, 2> eval_P_gamma_on_face(const DiscreteField& u, int face,
                                           const NitscheParams& params);

/// N(u)_i = <[P_gamma(u)]_+, theta1 dn phi_i + theta2 / gamma phi_i> with the
/// face split at the root of P_gamma(u).
Eigen::VectorXd assemble_contact_nonlinear(const CRSpace& space, const NitscheParams& params,
                                           const DiscreteField& u);

/// Element of the generalized derivative of N at u; P_gamma(u) = 0 counts as
/// inactive.
SparseMatrix assemble_contact_jacobian(const CRSpace& space, const NitscheParams& params,
                                       const DiscreteField& u);

/// Assembled discrete problem A_h(u, v) = L(v) for one mesh, parameter set
/// and load. The linear part is assembled once; the contact nonlinearity is
/// evaluated per call.
class NitscheSystem
{
  public:
    NitscheSystem(std::shared_ptr<const CRSpace> space, NitscheParams params,
                  Eigen::VectorXd load);

    const CRSpace& space() const { return *space_; }
    const std::shared_ptr<const CRSpace>& space_ptr() const { return space_; }
    const NitscheParams& params() const { return params_; }
    double gamma() const { return gamma_; }
    const Eigen::VectorXd& load() const { return load_; }
    const SparseMatrix& stiffness() const { return stiffness_; }
    /// Stiffness plus linear contact terms.
    const SparseMatrix& linear_operator() const { return linear_; }
    const std::vector<ContactFace>& contact_faces() const { return contact_; }

    Eigen::VectorXd nonlinear(const Eigen::VectorXd& u) const;
    SparseMatrix jacobian(const Eigen::VectorXd& u) const;
    /// linear_operator * u + N(u) - load
    Eigen::VectorXd residual(const Eigen::VectorXd& u) const;

    /// P_gamma(u) at the endpoints of contact face number `i` (index into
    /// contact_faces()).
    std::array<double, 2> p_gamma(const Eigen::VectorXd& u, std::size_t i) const;

  private:
    std::shared_ptr<const CRSpace> space_;
    NitscheParams params_;
    double gamma_;
    Eigen::VectorXd load_;
    SparseMatrix stiffness_;
    SparseMatrix linear_;
    std::vector<ContactFace> contact_;
};

/// (stiffness + contact_linear) u + N(u) - load. Throws on size mismatch.
Eigen::VectorXd residual(const CRSpace& space, const NitscheParams& params,
                         const DiscreteField& u, const Eigen::VectorXd& load);

} // namespace signorini
