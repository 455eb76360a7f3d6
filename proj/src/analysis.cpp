#include "signorini/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "signorini/quadrature.hpp"

namespace signorini {

namespace {

constexpr double gauss2_lo = 0.21132486540518711775;
constexpr double gauss2_hi = 0.78867513459481288225;

struct SquaredNorms
{
    double l2 = 0.0;
    double grad = 0.0;
};

// CR basis functions are L2-orthogonal on each triangle with
// ||phi_k||^2 = |K| / 3, so both parts are exact sums.
SquaredNorms squared_norms(const CRSpace& space, const Eigen::VectorXd& u)
{
    if (u.size() != space.n_dofs())
        throw std::invalid_argument("norm: coefficient count does not match the space");
    const Mesh& mesh = space.mesh();
    SquaredNorms s;
    for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
        const auto geo = element_geometry(mesh, t);
        const auto dofs = space.local_dofs(t);
        const auto g = geo.basis_gradients();
        Point grad;
        double c2 = 0.0;
        for (int k = 0; k < 3; ++k) {
            if (dofs[k] < 0)
                continue;
            const double c = u[dofs[k]];
            grad = grad + c * g[k];
            c2 += c * c;
        }
        s.grad += geo.area * dot(grad, grad);
        s.l2 += geo.area / 3.0 * c2;
    }
    return s;
}

ErrorNorms finish(double l2sq, double gradsq)
{
    ErrorNorms e;
    e.l2 = std::sqrt(std::max(l2sq, 0.0));
    e.grad = std::sqrt(std::max(gradsq, 0.0));
    e.h1_broken = e.l2 + e.grad;
    return e;
}

// Integral over [0, 1] of (t(s) + [p(s)]_+)^2 for affine t and p.
double squared_contact_defect(double t0, double t1, double p0, double p1)
{
    std::vector<double> breaks{0.0, 1.0};
    if ((p0 > 0.0) != (p1 > 0.0) && p0 != p1) {
        const double root = p0 / (p0 - p1);
        if (root > 0.0 && root < 1.0)
            breaks.insert(breaks.begin() + 1, root);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], len = breaks[i + 1] - breaks[i];
        for (double x : {gauss2_lo, gauss2_hi}) {
            const double s = a + len * x;
            const double v = t0 + (t1 - t0) * s + positive_part(p0 + (p1 - p0) * s);
            sum += 0.5 * len * v * v;
        }
    }
    return sum;
}

} // namespace

double l2_norm(const CRSpace& space, const Eigen::VectorXd& coefficients)
{
    return std::sqrt(squared_norms(space, coefficients).l2);
}

double gradient_norm(const CRSpace& space, const Eigen::VectorXd& coefficients)
{
    return std::sqrt(squared_norms(space, coefficients).grad);
}

double norm_broken_h1(const CRSpace& space, const Eigen::VectorXd& coefficients)
{
    const auto s = squared_norms(space, coefficients);
    return std::sqrt(s.grad) + std::sqrt(s.l2);
}

double norm_broken_h1(const DiscreteField& field)
{
    return norm_broken_h1(field.space(), field.coefficients());
}

double norm_1C(const DiscreteField& field, const NitscheParams& params)
{
    const CRSpace& space = field.space();
    const double gamma = params.gamma(space.mesh().h());
    double dn2 = 0.0, tr2 = 0.0;
    for (int f : space.contact_faces()) {
        const double len = face_geometry(space.mesh(), f).length;
        const double dn = normal_derivative(field, f);
        const auto t = boundary_trace(field, f);
        dn2 += len * dn * dn;
        tr2 += len * (t[0] * t[0] + t[0] * t[1] + t[1] * t[1]) / 3.0;
    }
    return norm_broken_h1(field) + std::sqrt(gamma) * std::sqrt(dn2) +
           std::sqrt(tr2) / std::sqrt(gamma);
}

ErrorNorms error_vs_exact(const DiscreteField& uh, const ExactSolution& exact, int degree)
{
    const CRSpace& space = uh.space();
    const Mesh& mesh = space.mesh();
    const auto& rule = triangle_rule(degree);
    double l2sq = 0.0, gradsq = 0.0;
    for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
        const auto geo = element_geometry(mesh, t);
        const auto c = uh.local_coefficients(t);
        const auto g = geo.basis_gradients();
        const Point grad_h = c[0] * g[0] + c[1] * g[1] + c[2] * g[2];
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const Point x = geo.physical(rule.points[q]);
            const auto phi = cr_basis_values(rule.points[q]);
            const double w = rule.weights[q] * geo.area;
            const double e = exact.value(x) - (c[0] * phi[0] + c[1] * phi[1] + c[2] * phi[2]);
            const Point ge = exact.gradient(x) - grad_h;
            l2sq += w * e * e;
            gradsq += w * dot(ge, ge);
        }
    }
    return finish(l2sq, gradsq);
}

ErrorNorms exact_norms(const Mesh& mesh, const ExactSolution& exact, int degree)
{
    const auto& rule = triangle_rule(degree);
    double l2sq = 0.0, gradsq = 0.0;
    for (int t = 0; t < static_cast<int>(mesh.num_triangles()); ++t) {
        const auto geo = element_geometry(mesh, t);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const Point x = geo.physical(rule.points[q]);
            const double w = rule.weights[q] * geo.area;
            const double v = exact.value(x);
            const Point g = exact.gradient(x);
            l2sq += w * v * v;
            gradsq += w * dot(g, g);
        }
    }
    return finish(l2sq, gradsq);
}

double contact_residual(const DiscreteField& uh, const NitscheParams& params)
{
    const CRSpace& space = uh.space();
    double sum = 0.0;
    for (int f : space.contact_faces()) {
        const auto p = eval_P_gamma_on_face(uh, f, params);
        const auto t = boundary_trace(uh, f);
        sum += face_geometry(space.mesh(), f).length * squared_contact_defect(t[0], t[1], p[0], p[1]);
    }
    return std::sqrt(sum);
}

std::vector<std::optional<double>> eoc(std::span<const double> errors, std::span<const double> hs)
{
    if (errors.size() != hs.size() || errors.size() < 2)
        throw std::invalid_argument("eoc: need at least two levels with matching h values");
    for (std::size_t i = 0; i + 1 < hs.size(); ++i)
        if (!(hs[i] > hs[i + 1]) || !(hs[i + 1] > 0.0))
            throw std::invalid_argument("eoc: mesh sizes must be positive and strictly decreasing");
    std::vector<std::optional<double>> rates;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double a = errors[i], b = errors[i + 1];
        if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
            rates.emplace_back(std::nullopt);
        else
            rates.emplace_back(std::log(a / b) / std::log(hs[i] / hs[i + 1]));
    }
    return rates;
}

DiscreteField lemma1_construct(std::shared_ptr<const CRSpace> space, std::span<const double> r)
{
    const Mesh& mesh = space->mesh();
    const auto& contact = space->contact_faces();
    if (r.size() != contact.size())
        throw std::invalid_argument("lemma1_construct: one value per contact face required");

    std::vector<char> on_contact(mesh.num_vertices(), 0);
    for (int f : contact)
        for (int v : mesh.face(f).vertices)
            on_contact[v] = 1;

    Eigen::VectorXd c = Eigen::VectorXd::Zero(space->n_dofs());
    const auto data = contact_face_data(*space);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& cf = data[i];
        const auto& faces = mesh.triangle_faces(cf.triangle);
        const int k = static_cast<int>(std::find(faces.begin(), faces.end(), cf.face) - faces.begin());
        if (on_contact[mesh.triangle(cf.triangle)[k]])
            throw std::invalid_argument(
                "lemma1_construct: a contact triangle has its third vertex on the contact boundary");
        // The face's own basis function is 1 at the contact vertices, -1 at
        // the bulk vertex, and has zero mean on the two other faces.
        c[cf.dofs[k]] = r[i] / cf.basis_dn[k];
    }
    return DiscreteField(std::move(space), std::move(c));
}

ErrorNorms compare_to_reference(const DiscreteField& coarse, const DiscreteField& reference)
{
    const Mesh& cm = coarse.space().mesh();
    const Mesh& fm = reference.space().mesh();
    const int nc = cm.cells_per_side(), nf = fm.cells_per_side();
    if (nc < 1 || nf < nc || nf % nc != 0 || cm.pattern() != fm.pattern())
        throw std::invalid_argument("compare_to_reference: meshes are not a nested structured pair");
    const int ratio = nf / nc;
    if (cm.pattern() == DiagonalPattern::UnionJack && ratio > 1 && ratio % 2 != 0)
        throw std::invalid_argument(
            "compare_to_reference: Union Jack meshes nest only under even refinement ratios");

    const auto& rule = triangle_rule(2);
    double l2sq = 0.0, gradsq = 0.0;
    for (int t = 0; t < static_cast<int>(fm.num_triangles()); ++t) {
        const auto geo = element_geometry(fm, t);
        const Point centroid = geo.physical({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
        const int tc = cm.locate(centroid);
        const auto cgeo = element_geometry(cm, tc);
        const auto cc = coarse.local_coefficients(tc);
        const auto fc = reference.local_coefficients(t);
        const Point dg = element_gradient(reference, t) - element_gradient(coarse, tc);
        gradsq += geo.area * dot(dg, dg);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const auto fphi = cr_basis_values(rule.points[q]);
            const auto cphi = cr_basis_values(cgeo.barycentric(geo.physical(rule.points[q])));
            double e = 0.0;
            for (int k = 0; k < 3; ++k)
                e += fc[k] * fphi[k] - cc[k] * cphi[k];
            l2sq += rule.weights[q] * geo.area * e * e;
        }
    }
    return finish(l2sq, gradsq);
}

void compute_rates(ConvergenceReport& report)
{
    report.eoc_l2.clear();
    report.eoc_h1.clear();
    report.eoc_residual.clear();
    if (report.levels.size() < 2)
        return;
    std::vector<double> hs, l2, h1, res;
    for (const auto& lv : report.levels) {
        hs.push_back(lv.h);
        l2.push_back(lv.err_l2);
        h1.push_back(lv.err_h1_broken);
        res.push_back(lv.contact_residual);
    }
    report.eoc_l2 = eoc(l2, hs);
    report.eoc_h1 = eoc(h1, hs);
    report.eoc_residual = eoc(res, hs);
}

} // namespace signorini
