#include <memory>
#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "signorini/analysis.hpp"
#include "signorini/solver.hpp"
#include "signorini/study.hpp"
#include "signorini/vtk.hpp"

namespace py = pybind11;
using namespace signorini;

namespace {

using MeshPtr = std::shared_ptr<Mesh>;
using SpacePtr = std::shared_ptr<CRSpace>;

SpacePtr space_of(const DiscreteField& f) { return std::const_pointer_cast<CRSpace>(f.space_ptr()); }

ScalarFunction wrap_scalar(py::function f)
{
    return [f](Point p) { return f(p.x, p.y).cast<double>(); };
}

py::object json_to_python(const nlohmann::json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

py::array_t<double> points_array(const std::vector<Point>& pts)
{
    py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
    auto a = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        a(i, 0) = pts[i].x;
        a(i, 1) = pts[i].y;
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Crouzeix-Raviart discretisation of the scalar Signorini problem with Nitsche contact";

    py::enum_<BoundaryTag>(m, "BoundaryTag")
        .value("Interior", BoundaryTag::Interior)
        .value("Dirichlet", BoundaryTag::Dirichlet)
        .value("Neumann", BoundaryTag::Neumann)
        .value("Contact", BoundaryTag::Contact);

    py::enum_<DiagonalPattern>(m, "DiagonalPattern")
        .value("UnionJack", DiagonalPattern::UnionJack)
        .value("Uniform", DiagonalPattern::Uniform);

    py::enum_<Strategy>(m, "Strategy")
        .value("FixedPoint", Strategy::FixedPoint)
        .value("SemismoothNewton", Strategy::SemismoothNewton)
        .value("LaggedFixedPoint", Strategy::LaggedFixedPoint);

    py::class_<Mesh, MeshPtr>(m, "Mesh")
        .def(py::init([](int n, DiagonalPattern pattern) {
                 return std::make_shared<Mesh>(build_unit_square_mesh(n, pattern));
             }),
             py::arg("n"), py::arg("pattern") = DiagonalPattern::UnionJack)
        .def_property_readonly("num_vertices", &Mesh::num_vertices)
        .def_property_readonly("num_triangles", &Mesh::num_triangles)
        .def_property_readonly("num_faces", &Mesh::num_faces)
        .def_property_readonly("h", &Mesh::h)
        .def_property_readonly("cells_per_side", &Mesh::cells_per_side)
        .def_property_readonly("vertices", [](const Mesh& mesh) { return points_array(mesh.vertices()); })
        .def_property_readonly("triangles", &Mesh::triangles)
        .def("faces_with_tag", &Mesh::faces_with_tag)
        .def("face_tag", [](const Mesh& mesh, int f) { return mesh.face(f).tag; })
        .def("face_vertices", [](const Mesh& mesh, int f) { return mesh.face(f).vertices; })
        .def("face_midpoint", [](const Mesh& mesh, int f) {
            const Point p = mesh.face_midpoint(f);
            return std::pair{p.x, p.y};
        })
        .def("signed_area", &Mesh::signed_area)
        .def("locate", [](const Mesh& mesh, double x, double y) { return mesh.locate({x, y}); });

    py::class_<CRSpace, SpacePtr>(m, "CRSpace")
        .def(py::init([](MeshPtr mesh) { return std::make_shared<CRSpace>(std::move(mesh)); }))
        .def_property_readonly("n_dofs", &CRSpace::n_dofs)
        .def_property_readonly("contact_faces", &CRSpace::contact_faces)
        .def("dof_of_face", &CRSpace::dof_of_face)
        .def("face_of_dof", &CRSpace::face_of_dof)
        .def("local_dofs", &CRSpace::local_dofs)
        .def_property_readonly("h", [](const CRSpace& s) { return s.mesh().h(); });

    py::class_<DiscreteField>(m, "DiscreteField")
        .def(py::init([](SpacePtr space, std::optional<Eigen::VectorXd> c) {
                 return c ? DiscreteField(std::move(space), std::move(*c)) : DiscreteField(std::move(space));
             }),
             py::arg("space"), py::arg("coefficients") = std::nullopt)
        .def_property_readonly("coefficients", &DiscreteField::coefficients)
        .def_property_readonly("space", &space_of)
        .def("face_value", &DiscreteField::face_value)
        .def("evaluate", [](const DiscreteField& f, int t, double x, double y) { return evaluate(f, t, {x, y}); })
        .def("gradient", [](const DiscreteField& f, int t) {
            const Point g = element_gradient(f, t);
            return std::pair{g.x, g.y};
        })
        .def("normal_derivative", [](const DiscreteField& f, int face) { return normal_derivative(f, face); });

    m.def(
        "interpolate",
        [](SpacePtr space, py::function g) { return cr_interpolate(std::move(space), wrap_scalar(std::move(g))); },
        py::arg("space"), py::arg("g"), "Face-mean interpolant of g(x, y).");

    py::class_<NitscheParams>(m, "NitscheParams")
        .def(py::init([](double gamma0, int theta1, int theta2) {
                 NitscheParams p{gamma0, theta1, theta2};
                 p.validate();
                 return p;
             }),
             py::arg("gamma0") = 10.0, py::arg("theta1") = 1, py::arg("theta2") = 0)
        .def_readwrite("gamma0", &NitscheParams::gamma0)
        .def_readwrite("theta1", &NitscheParams::theta1)
        .def_readwrite("theta2", &NitscheParams::theta2)
        .def("gamma", &NitscheParams::gamma);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init([](const std::string& strategy, double tol, int max_iter, double damping) {
                 SolverConfig c;
                 c.strategy = strategy_from_string(strategy);
                 c.rel_increment_tol = tol;
                 c.max_iter = max_iter;
                 c.damping = damping;
                 c.validate();
                 return c;
             }),
             py::arg("strategy") = "semismooth_newton", py::arg("tol") = 1e-5, py::arg("max_iter") = 100,
             py::arg("damping") = 1.0)
        .def_readwrite("strategy", &SolverConfig::strategy)
        .def_readwrite("rel_increment_tol", &SolverConfig::rel_increment_tol)
        .def_readwrite("max_iter", &SolverConfig::max_iter)
        .def_readwrite("damping", &SolverConfig::damping);

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("converged", &SolveReport::converged)
        .def_readonly("iterations", &SolveReport::iterations)
        .def_readonly("increment_history", &SolveReport::increment_history)
        .def_readonly("final_residual_norm", &SolveReport::final_residual_norm)
        .def_readonly("strategy", &SolveReport::strategy)
        .def_readonly("fallback_at", &SolveReport::fallback_at);

    py::class_<ProblemSpec>(m, "Problem")
        .def(py::init([](std::string name, py::function source) {
                 ProblemSpec p;
                 p.name = std::move(name);
                 p.source = wrap_scalar(std::move(source));
                 p.tagger = standard_tagger();
                 return p;
             }),
             py::arg("name"), py::arg("source"))
        .def_readonly("name", &ProblemSpec::name)
        .def("source", [](const ProblemSpec& p, double x, double y) { return p.source({x, y}); })
        .def_property_readonly("has_exact", [](const ProblemSpec& p) { return p.exact.has_value(); })
        .def("exact", [](const ProblemSpec& p, double x, double y) -> std::optional<double> {
            if (!p.exact)
                return std::nullopt;
            return p.exact->value({x, y});
        });

    m.def("known_problem", &known_problem);
    m.def("oscillatory_problem", &oscillatory_problem, py::arg("n_oscillation"));

    m.def(
        "solve",
        [](SpacePtr space, const NitscheParams& params, const ProblemSpec& problem, const SolverConfig& config,
           std::optional<Eigen::VectorXd> guess) {
            auto r = solve_nonlinear(std::move(space), params, problem, config, guess);
            return std::pair{std::move(r.solution), std::move(r.report)};
        },
        py::arg("space"), py::arg("params") = NitscheParams{}, py::arg("problem") = known_problem(),
        py::arg("config") = SolverConfig{}, py::arg("initial_guess") = std::nullopt,
        "Solve the discrete contact problem; returns (field, report).");

    m.def(
        "residual",
        [](SpacePtr space, const NitscheParams& params, const DiscreteField& u, const ProblemSpec& problem) {
            return residual(*space, params, u, assemble_load(*space, problem.source));
        },
        py::arg("space"), py::arg("params"), py::arg("u"), py::arg("problem"));

    m.def("stiffness", [](SpacePtr space) { return assemble_stiffness(*space); });
    m.def("contact_linear", [](SpacePtr space, const NitscheParams& p) { return assemble_contact_linear(*space, p); });
    m.def("load", [](SpacePtr space, py::function f) { return assemble_load(*space, wrap_scalar(std::move(f))); });
    m.def("integrate_positive_part", &integrate_positive_part);

    m.def("norm_broken_h1", py::overload_cast<const DiscreteField&>(&norm_broken_h1));
    m.def("norm_1C", &norm_1C);
    m.def("l2_norm", [](const DiscreteField& f) { return l2_norm(f.space(), f.coefficients()); });
    m.def("contact_residual", &contact_residual);
    m.def("error_vs_exact", [](const DiscreteField& uh, const ProblemSpec& problem) {
        if (!problem.exact)
            throw std::invalid_argument("problem has no exact solution");
        const auto e = error_vs_exact(uh, *problem.exact);
        return py::dict(py::arg("l2") = e.l2, py::arg("grad") = e.grad, py::arg("h1_broken") = e.h1_broken);
    });
    m.def("compare_to_reference", [](const DiscreteField& coarse, const DiscreteField& reference) {
        const auto e = compare_to_reference(coarse, reference);
        return py::dict(py::arg("l2") = e.l2, py::arg("grad") = e.grad, py::arg("h1_broken") = e.h1_broken);
    });
    m.def(
        "eoc",
        [](const std::vector<double>& errors, const std::vector<double>& hs) { return eoc(errors, hs); },
        py::arg("errors"), py::arg("hs"));
    m.def("lemma1_construct", [](SpacePtr space, const std::vector<double>& r) {
        return lemma1_construct(std::move(space), r);
    });

    m.def(
        "run_study",
        [](const std::string& problem, int n_oscillation, int levels, int base_n, const NitscheParams& params,
           const SolverConfig& solver, int reference_n, double reference_tol) {
            RunConfig c;
            c.problem = problem_kind_from_string(problem);
            c.n_oscillation = n_oscillation;
            c.levels = levels;
            c.base_n = base_n;
            c.params = params;
            c.solver = solver;
            c.reference_n = reference_n;
            c.reference_tol = reference_tol;
            const auto result = run_convergence_study(c);
            py::dict out = json_to_python(to_json(c, result));
            out["csv"] = to_csv(result.report);
            return out;
        },
        py::arg("problem") = "known", py::arg("n_oscillation") = 3, py::arg("levels") = 4, py::arg("base_n") = 16,
        py::arg("params") = NitscheParams{}, py::arg("solver") = SolverConfig{}, py::arg("reference_n") = 512,
        py::arg("reference_tol") = 1e-10,
        "Run a convergence study; returns the JSON report as a dict plus the CSV text under 'csv'.");

    m.def("export_solution", [](const DiscreteField& f, const std::filesystem::path& path) {
        export_solution(f, path);
    });
    m.def("export_solution_string", [](const DiscreteField& f) {
        std::ostringstream os;
        export_solution(f, os);
        return os.str();
    });

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<LinearSolveError>(m, "LinearSolveError", PyExc_RuntimeError);
}
