#include "signorini/forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "signorini/quadrature.hpp"

namespace signorini {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

// 2-point Gauss on [0, 1]
constexpr double gauss2_lo = 0.21132486540518711775;
constexpr double gauss2_hi = 0.78867513459481288225;

double lerp(double a, double b, double s) { return a + (b - a) * s; }

std::array<double, 3> gather(const Eigen::VectorXd& u, const std::array<int, 3>& dofs)
{
    std::array<double, 3> c{};
    for (int k = 0; k < 3; ++k)
        c[k] = dofs[k] < 0 ? 0.0 : u[dofs[k]];
    return c;
}

std::array<double, 2> p_gamma_endpoints(const ContactFace& cf, double gamma,
                                        const std::array<double, 3>& c)
{
    double dn = 0.0, t0 = 0.0, t1 = 0.0;
    for (int k = 0; k < 3; ++k) {
        dn += c[k] * cf.basis_dn[k];
        t0 += c[k] * cf.basis_trace[k][0];
        t1 += c[k] * cf.basis_trace[k][1];
    }
    return {gamma * dn - t0, gamma * dn - t1};
}

// Endpoint values of theta1 dn phi_k + theta2 / gamma phi_k.
std::array<double, 2> test_factor(const ContactFace& cf, const NitscheParams& p, double gamma,
                                  int k)
{
    const double flux = p.theta1 * cf.basis_dn[k];
    const double mass = p.theta2 / gamma;
    return {flux + mass * cf.basis_trace[k][0], flux + mass * cf.basis_trace[k][1]};
}

Eigen::VectorXd nonlinear_impl(const std::vector<ContactFace>& contact, const NitscheParams& p,
                               double gamma, const Eigen::VectorXd& u)
{
    Eigen::VectorXd out = Eigen::VectorXd::Zero(u.size());
    for (const auto& cf : contact) {
        const auto pg = p_gamma_endpoints(cf, gamma, gather(u, cf.dofs));
        if (pg[0] <= 0.0 && pg[1] <= 0.0)
            continue;
        for (int i = 0; i < 3; ++i) {
            if (cf.dofs[i] < 0)
                continue;
            const auto w = test_factor(cf, p, gamma, i);
            out[cf.dofs[i]] += cf.length * integrate_positive_part(pg[0], pg[1], w[0], w[1]);
        }
    }
    return out;
}

SparseMatrix jacobian_impl(const std::vector<ContactFace>& contact, const NitscheParams& p,
                           double gamma, const Eigen::VectorXd& u)
{
    Triplets trip;
    for (const auto& cf : contact) {
        const auto pg = p_gamma_endpoints(cf, gamma, gather(u, cf.dofs));
        const auto seg = positive_segment(pg[0], pg[1]);
        if (seg.empty())
            continue;
        const double len = seg.end - seg.begin;
        const std::array<double, 2> s{seg.begin + len * gauss2_lo, seg.begin + len * gauss2_hi};
        for (int i = 0; i < 3; ++i) {
            if (cf.dofs[i] < 0)
                continue;
            const auto w = test_factor(cf, p, gamma, i);
            for (int j = 0; j < 3; ++j) {
                if (cf.dofs[j] < 0)
                    continue;
                double v = 0.0;
                for (double sq : s) {
                    const double trial = gamma * cf.basis_dn[j] -
                                         lerp(cf.basis_trace[j][0], cf.basis_trace[j][1], sq);
                    v += 0.5 * trial * lerp(w[0], w[1], sq);
                }
                trip.emplace_back(cf.dofs[i], cf.dofs[j], cf.length * len * v);
            }
        }
    }
    SparseMatrix m(u.size(), u.size());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

} // namespace

void NitscheParams::validate() const
{
    if (!(gamma0 > 0.0) || !std::isfinite(gamma0))
        throw std::invalid_argument("NitscheParams: gamma0 must be positive");
    if (theta1 < -1 || theta1 > 1)
        throw std::invalid_argument("NitscheParams: theta1 must be -1, 0 or 1");
    if (theta2 != 0 && theta2 != 1)
        throw std::invalid_argument("NitscheParams: theta2 must be 0 or 1");
}

PositiveSegment positive_segment(double a, double b)
{
    if (a <= 0.0 && b <= 0.0)
        return {0.0, 0.0};
    if (a >= 0.0 && b >= 0.0)
        return {0.0, 1.0};
    const double root = a / (a - b);
    return a > 0.0 ? PositiveSegment{0.0, root} : PositiveSegment{root, 1.0};
}

double integrate_positive_part(double p0, double p1, double w0, double w1)
{
    const auto seg = positive_segment(p0, p1);
    if (seg.empty())
        return 0.0;
    const double len = seg.end - seg.begin;
    double sum = 0.0;
    for (double x : {gauss2_lo, gauss2_hi}) {
        const double s = seg.begin + len * x;
        sum += 0.5 * lerp(p0, p1, s) * lerp(w0, w1, s);
    }
    return len * sum;
}

std::vector<ContactFace> contact_face_data(const CRSpace& space)
{
    const Mesh& mesh = space.mesh();
    std::vector<ContactFace> out;
    out.reserve(space.contact_faces().size());
    for (int f : space.contact_faces()) {
        ContactFace cf;
        cf.face = f;
        cf.triangle = mesh.face(f).triangles[0];
        const auto fg = face_geometry(mesh, f);
        cf.length = fg.length;
        cf.normal = fg.normal;
        cf.dofs = space.local_dofs(cf.triangle);
        const auto geo = element_geometry(mesh, cf.triangle);
        const auto grads = geo.basis_gradients();
        const auto& fv = mesh.face(f).vertices;
        for (int e = 0; e < 2; ++e) {
            const auto phi = cr_basis_values(geo.barycentric(mesh.vertex(fv[e])));
            for (int k = 0; k < 3; ++k)
                cf.basis_trace[k][e] = phi[k];
        }
        for (int k = 0; k < 3; ++k)
            cf.basis_dn[k] = dot(grads[k], cf.normal);
        out.push_back(cf);
    }
    return out;
}

Eigen::Matrix3d local_stiffness(const ElementGeometry& geo)
{
    const auto g = geo.basis_gradients();
    Eigen::Matrix3d k;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            k(i, j) = geo.area * dot(g[i], g[j]);
    return k;
}

SparseMatrix assemble_stiffness(const CRSpace& space)
{
    const Mesh& mesh = space.mesh();
    Triplets trip;
    trip.reserve(9 * mesh.num_triangles());
    for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
        const auto k = local_stiffness(element_geometry(mesh, t));
        const auto dofs = space.local_dofs(t);
        for (int i = 0; i < 3; ++i) {
            if (dofs[i] < 0)
                continue;
            for (int j = 0; j < 3; ++j)
                if (dofs[j] >= 0)
                    trip.emplace_back(dofs[i], dofs[j], k(i, j));
        }
    }
    SparseMatrix m(space.n_dofs(), space.n_dofs());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

Eigen::VectorXd assemble_load(const CRSpace& space, const ScalarFunction& f, int degree)
{
    const Mesh& mesh = space.mesh();
    const auto& rule = triangle_rule(degree);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(space.n_dofs());
    for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
        const auto geo = element_geometry(mesh, t);
        const auto dofs = space.local_dofs(t);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto phi = cr_basis_values(rule.points[q]);
            const double fw = f(geo.physical(rule.points[q])) * rule.weights[q] * geo.area;
            for (int k = 0; k < 3; ++k)
                if (dofs[k] >= 0)
                    b[dofs[k]] += fw * phi[k];
        }
    }
    return b;
}

SparseMatrix assemble_contact_linear(const CRSpace& space, const NitscheParams& params)
{
    params.validate();
    const double gamma = params.gamma(space.mesh().h());
    Triplets trip;
    for (const auto& cf : contact_face_data(space)) {
        for (int i = 0; i < 3; ++i) {
            if (cf.dofs[i] < 0)
                continue;
            for (int j = 0; j < 3; ++j) {
                if (cf.dofs[j] < 0)
                    continue;
                double v = 0.0;
                for (double s : {gauss2_lo, gauss2_hi}) {
                    const double phi_i = lerp(cf.basis_trace[i][0], cf.basis_trace[i][1], s);
                    const double phi_j = lerp(cf.basis_trace[j][0], cf.basis_trace[j][1], s);
                    v += 0.5 * (-cf.basis_dn[j] * phi_i + params.theta1 * phi_j * cf.basis_dn[i] +
                                params.theta2 / gamma * phi_j * phi_i);
                }
                trip.emplace_back(cf.dofs[i], cf.dofs[j], cf.length * v);
            }
        }
    }
    SparseMatrix m(space.n_dofs(), space.n_dofs());
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

std::array<double, 2> eval_P_gamma_on_face(const DiscreteField& u, int face,
                                           const NitscheParams& params)
{
    const CRSpace& space = u.space();
    if (space.mesh().face(face).tag != BoundaryTag::Contact)
        throw std::invalid_argument("eval_P_gamma_on_face: face is not a contact face");
    const double gamma = params.gamma(space.mesh().h());
    const double dn = normal_derivative(u, face);
    const auto tr = boundary_trace(u, face);
    return {gamma * dn - tr[0], gamma * dn - tr[1]};
}

Eigen::VectorXd assemble_contact_nonlinear(const CRSpace& space, const NitscheParams& params,
                                           const DiscreteField& u)
{
    params.validate();
    return nonlinear_impl(contact_face_data(space), params, params.gamma(space.mesh().h()),
                          u.coefficients());
}

SparseMatrix assemble_contact_jacobian(const CRSpace& space, const NitscheParams& params,
                                       const DiscreteField& u)
{
    params.validate();
    return jacobian_impl(contact_face_data(space), params, params.gamma(space.mesh().h()),
                         u.coefficients());
}

NitscheSystem::NitscheSystem(std::shared_ptr<const CRSpace> space, NitscheParams params,
                             Eigen::VectorXd load)
    : space_(std::move(space))
    , params_(params)
    , gamma_(params.gamma(space_->mesh().h()))
    , load_(std::move(load))
    , stiffness_(assemble_stiffness(*space_))
    , contact_(contact_face_data(*space_))
{
    params_.validate();
    if (load_.size() != space_->n_dofs())
        throw std::invalid_argument("NitscheSystem: load size does not match the space");
    linear_ = stiffness_ + assemble_contact_linear(*space_, params_);
    linear_.makeCompressed();
}

Eigen::VectorXd NitscheSystem::nonlinear(const Eigen::VectorXd& u) const
{
    return nonlinear_impl(contact_, params_, gamma_, u);
}

SparseMatrix NitscheSystem::jacobian(const Eigen::VectorXd& u) const
{
    return jacobian_impl(contact_, params_, gamma_, u);
}

Eigen::VectorXd NitscheSystem::residual(const Eigen::VectorXd& u) const
{
    if (u.size() != space_->n_dofs())
        throw std::invalid_argument("NitscheSystem::residual: dimension mismatch");
    return linear_ * u + nonlinear(u) - load_;
}

std::array<double, 2> NitscheSystem::p_gamma(const Eigen::VectorXd& u, std::size_t i) const
{
    const auto& cf = contact_.at(i);
    return p_gamma_endpoints(cf, gamma_, gather(u, cf.dofs));
}

Eigen::VectorXd residual(const CRSpace& space, const NitscheParams& params,
                         const DiscreteField& u, const Eigen::VectorXd& load)
{
    if (u.coefficients().size() != space.n_dofs() || load.size() != space.n_dofs())
        throw std::invalid_argument("residual: dimension mismatch");
    const SparseMatrix a = assemble_stiffness(space) + assemble_contact_linear(space, params);
    return a * u.coefficients() + assemble_contact_nonlinear(space, params, u) - load;
}

} // namespace signorini
