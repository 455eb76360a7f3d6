#include "signorini/cr_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "signorini/quadrature.hpp"

namespace signorini {

CRSpace::CRSpace(std::shared_ptr<const Mesh> mesh)
    : mesh_(std::move(mesh))
{
    if (!mesh_)
        throw std::invalid_argument("CRSpace: null mesh");
    const auto& faces = mesh_->faces();
    dof_of_face_.assign(faces.size(), -1);
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        if (faces[f].tag == BoundaryTag::Dirichlet)
            continue;
        dof_of_face_[f] = static_cast<int>(face_of_dof_.size());
        face_of_dof_.push_back(f);
        if (faces[f].tag == BoundaryTag::Contact)
            contact_faces_.push_back(f);
    }
}

std::array<int, 3> CRSpace::local_dofs(int t) const
{
    const auto& f = mesh_->triangle_faces(t);
    return {dof_of_face_[f[0]], dof_of_face_[f[1]], dof_of_face_[f[2]]};
}

std::array<double, 3> ElementGeometry::barycentric(Point p) const
{
    const double inv = 1.0 / (2.0 * area);
    std::array<double, 3> l{};
    for (int k = 0; k < 3; ++k) {
        const Point a = vertices[(k + 1) % 3] - p;
        const Point b = vertices[(k + 2) % 3] - p;
        l[k] = (a.x * b.y - b.x * a.y) * inv;
    }
    return l;
}

Point ElementGeometry::physical(const std::array<double, 3>& bary) const
{
    return bary[0] * vertices[0] + bary[1] * vertices[1] + bary[2] * vertices[2];
}

std::array<Point, 3> ElementGeometry::basis_gradients() const
{
    return {-2.0 * grad_lambda[0], -2.0 * grad_lambda[1], -2.0 * grad_lambda[2]};
}

ElementGeometry element_geometry(const Mesh& mesh, int t)
{
    ElementGeometry g;
    g.vertices = mesh.triangle_points(t);
    const auto& [p0, p1, p2] = g.vertices;
    const double two_area = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
    g.area = 0.5 * two_area;
    g.grad_lambda[0] = {(p1.y - p2.y) / two_area, (p2.x - p1.x) / two_area};
    g.grad_lambda[1] = {(p2.y - p0.y) / two_area, (p0.x - p2.x) / two_area};
    g.grad_lambda[2] = {(p0.y - p1.y) / two_area, (p1.x - p0.x) / two_area};
    return g;
}

DiscreteField::DiscreteField(std::shared_ptr<const CRSpace> space)
    : space_(std::move(space))
    , coefficients_(Eigen::VectorXd::Zero(space_->n_dofs()))
{
}

DiscreteField::DiscreteField(std::shared_ptr<const CRSpace> space, Eigen::VectorXd coefficients)
    : space_(std::move(space))
    , coefficients_(std::move(coefficients))
{
    if (coefficients_.size() != space_->n_dofs())
        throw std::invalid_argument("DiscreteField: coefficient count does not match the space");
}

double DiscreteField::face_value(int face) const
{
    const int d = space_->dof_of_face(face);
    return d < 0 ? 0.0 : coefficients_[d];
}

std::array<double, 3> DiscreteField::local_coefficients(int t) const
{
    const auto dofs = space_->local_dofs(t);
    std::array<double, 3> c{};
    for (int k = 0; k < 3; ++k)
        c[k] = dofs[k] < 0 ? 0.0 : coefficients_[dofs[k]];
    return c;
}

double evaluate(const DiscreteField& field, int t, Point p)
{
    const auto geo = element_geometry(field.space().mesh(), t);
    const auto bary = geo.barycentric(p);
    for (double l : bary)
        if (l < -1e-12)
            throw std::out_of_range("evaluate: point outside the triangle");
    const auto phi = cr_basis_values(bary);
    const auto c = field.local_coefficients(t);
    return c[0] * phi[0] + c[1] * phi[1] + c[2] * phi[2];
}

Point element_gradient(const DiscreteField& field, int t)
{
    const auto grads = element_geometry(field.space().mesh(), t).basis_gradients();
    const auto c = field.local_coefficients(t);
    return c[0] * grads[0] + c[1] * grads[1] + c[2] * grads[2];
}

double normal_derivative(const DiscreteField& field, int face)
{
    const Mesh& mesh = field.space().mesh();
    if (!mesh.face(face).is_boundary())
        throw std::invalid_argument("normal_derivative: face is not on the boundary");
    const auto geo = face_geometry(mesh, face);
    return dot(element_gradient(field, mesh.face(face).triangles[0]), geo.normal);
}

std::array<double, 2> boundary_trace(const DiscreteField& field, int face)
{
    const Mesh& mesh = field.space().mesh();
    const Face& fc = mesh.face(face);
    if (!fc.is_boundary())
        throw std::invalid_argument("boundary_trace: face is not on the boundary");
    const int t = fc.triangles[0];
    const auto c = field.local_coefficients(t);
    const auto& tri = mesh.triangle(t);
    // At vertex k the basis values are -1 for local face k and +1 otherwise.
    std::array<double, 2> out{};
    for (int e = 0; e < 2; ++e) {
        const int k = static_cast<int>(std::find(tri.begin(), tri.end(), fc.vertices[e]) - tri.begin());
        out[e] = c[0] + c[1] + c[2] - 2.0 * c[k];
    }
    return out;
}

DiscreteField cr_interpolate(std::shared_ptr<const CRSpace> space, const ScalarFunction& g,
                             int gauss_points)
{
    const auto rule = gauss_legendre(gauss_points);
    const Mesh& mesh = space->mesh();
    Eigen::VectorXd c(space->n_dofs());
    for (int d = 0; d < space->n_dofs(); ++d) {
        const Face& fc = mesh.face(space->face_of_dof(d));
        const Point a = mesh.vertex(fc.vertices[0]);
        const Point b = mesh.vertex(fc.vertices[1]);
        double mean = 0.0;
        for (std::size_t q = 0; q < rule.points.size(); ++q)
            mean += rule.weights[q] * g(a + rule.points[q] * (b - a));
        c[d] = mean;
    }
    return DiscreteField(std::move(space), std::move(c));
}

} // namespace signorini
