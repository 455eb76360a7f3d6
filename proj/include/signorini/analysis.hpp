#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "signorini/cr_space.hpp"
#include "signorini/forms.hpp"
#include "signorini/problems.hpp"

namespace signorini {

/// Broken L2 norm, broken gradient norm and their sum ||.||_{1,h}.
struct ErrorNorms
{
    double l2 = 0.0;
    double grad = 0.0;
    double h1_broken = 0.0;
};

double l2_norm(const CRSpace& space, const Eigen::VectorXd& coefficients);
double gradient_norm(const CRSpace& space, const Eigen::VectorXd& coefficients);

/// ||grad v||_h + ||v||_h (a sum, not a root of squares).
double norm_broken_h1(const CRSpace& space, const Eigen::VectorXd& coefficients);
double norm_broken_h1(const DiscreteField& field);

/// ||v||_{1,h} + gamma^{1/2} ||dn v||_{Gamma_C} + gamma^{-1/2} ||v||_{Gamma_C}
/// with gamma = gamma0 h.
double norm_1C(const DiscreteField& field, const NitscheParams& params);

/// Absolute errors against a smooth solution, integrated element-wise with a
/// triangle rule of the given degree.
ErrorNorms error_vs_exact(const DiscreteField& uh, const ExactSolution& exact, int degree = 4);

/// Norms of the exact solution itself on the mesh of `space`.
ErrorNorms exact_norms(const Mesh& mesh, const ExactSolution& exact, int degree = 4);

/// ||u_h + [P_gamma(u_h)]_+|| over the contact boundary, integrated exactly.
double contact_residual(const DiscreteField& uh, const NitscheParams& params);

/// Pairwise convergence rates log(e_i / e_{i+1}) / log(h_i / h_{i+1}).
/// Pairs with a zero or non-finite error yield nullopt.
std::vector<std::optional<double>> eoc(std::span<const double> errors, std::span<const double> hs);

/// Field with outward normal derivative r[i] on contact face
/// space.contact_faces()[i] and vanishing mean on every other face, supported
/// in the triangles adjacent to the contact boundary.
DiscreteField lemma1_construct(std::shared_ptr<const CRSpace> space, std::span<const double> r);

/// Errors between a coarse solution and a reference on a nested refinement of
/// the same structured family. Integration runs over the fine triangles, each
/// of which lies in exactly one coarse triangle, so the result is exact.
ErrorNorms compare_to_reference(const DiscreteField& coarse, const DiscreteField& reference);

struct ErrorReport
{
    int n = 0;
    double h = 0.0;
    int n_dofs = 0;
    double err_l2 = 0.0;
    double err_h1_broken = 0.0;
    double contact_residual = 0.0;
    int iterations = 0;
};

struct ConvergenceReport
{
    std::vector<ErrorReport> levels;
    std::vector<std::optional<double>> eoc_l2;
    std::vector<std::optional<double>> eoc_h1;
    std::vector<std::optional<double>> eoc_residual;
};

/// Fills the three rate lists from `report.levels`.
void compute_rates(ConvergenceReport& report);

} // namespace signorini
