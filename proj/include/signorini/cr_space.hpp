#pragma once

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "signorini/mesh.hpp"

namespace signorini {

using ScalarFunction = std::function<double(Point)>;
using VectorFunction = std::function<Point(Point)>;

/// Crouzeix-Raviart P1 space with one degree of freedom per face (the face
/// mean). Faces tagged Dirichlet are eliminated: their value is fixed at zero
/// and they carry no global index.
///
/// On a triangle with barycentric coordinates lambda_k the local basis
/// function attached to the face opposite vertex k is 1 - 2 lambda_k.
class CRSpace
{
  public:
    explicit CRSpace(std::shared_ptr<const Mesh> mesh);

    const Mesh& mesh() const { return *mesh_; }
    const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }

    int n_dofs() const { return static_cast<int>(face_of_dof_.size()); }
    /// Global dof of `face`, or -1 when the face is constrained.
    int dof_of_face(int face) const { return dof_of_face_.at(face); }
    int face_of_dof(int dof) const { return face_of_dof_.at(dof); }
    bool is_constrained(int face) const { return dof_of_face_.at(face) < 0; }

    /// Global dofs of the three local basis functions of triangle `t`
    /// (local order follows the opposite vertex), -1 where constrained.
    std::array<int, 3> local_dofs(int t) const;

    /// Contact faces in ascending face order; per-face contact data
    /// (flux data, residual contributions) is indexed this way.
    const std::vector<int>& contact_faces() const { return contact_faces_; }

  private:
    std::shared_ptr<const Mesh> mesh_;
    std::vector<int> dof_of_face_;
    std::vector<int> face_of_dof_;
    std::vector<int> contact_faces_;
};

/// Affine geometry of one triangle: area, barycentric gradients.
struct ElementGeometry
{
    std::array<Point, 3> vertices;
    double area = 0.0;
    std::array<Point, 3> grad_lambda;

    std::array<double, 3> barycentric(Point p) const;
    Point physical(const std::array<double, 3>& bary) const;
    /// Gradients of the three local CR basis functions.
    std::array<Point, 3> basis_gradients() const;
};

ElementGeometry element_geometry(const Mesh& mesh, int t);

inline std::array<double, 3> cr_basis_values(const std::array<double, 3>& bary)
{
    return {1.0 - 2.0 * bary[0], 1.0 - 2.0 * bary[1], 1.0 - 2.0 * bary[2]};
}

/// Coefficient vector over the unconstrained dofs of a CRSpace.
class DiscreteField
{
  public:
    explicit DiscreteField(std::shared_ptr<const CRSpace> space);
    DiscreteField(std::shared_ptr<const CRSpace> space, Eigen::VectorXd coefficients);

    const CRSpace& space() const { return *space_; }
    const std::shared_ptr<const CRSpace>& space_ptr() const { return space_; }
    const Eigen::VectorXd& coefficients() const { return coefficients_; }

    /// Face mean; zero on constrained faces.
    double face_value(int face) const;
    std::array<double, 3> local_coefficients(int t) const;

  private:
    std::shared_ptr<const CRSpace> space_;
    Eigen::VectorXd coefficients_;
};

/// Value of the field restricted to triangle `t` at `p`. Throws if `p` lies
/// outside the closed triangle by more than 1e-12 in barycentric coordinates.
double evaluate(const DiscreteField& field, int t, Point p);

Point element_gradient(const DiscreteField& field, int t);

/// Outward normal derivative on a boundary face (constant along the face).
double normal_derivative(const DiscreteField& field, int face);

/// Values of the field's trace at the two vertices of boundary face `face`,
/// ordered like `Face::vertices`.
std::array<double, 2> boundary_trace(const DiscreteField& field, int face);

/// Face-mean interpolant. Means are computed with `gauss_points`-point
/// Gauss-Legendre quadrature on every face; Dirichlet faces are dropped.
DiscreteField cr_interpolate(std::shared_ptr<const CRSpace> space, const ScalarFunction& g,
                             int gauss_points = 5);

} // namespace signorini
