#include "signorini/study.hpp"

#include <cstdio>
#include <memory>

namespace signorini {

namespace {

std::shared_ptr<const CRSpace> make_space(int n, const BoundaryTagger& tagger)
{
    auto mesh = std::make_shared<const Mesh>(
        classify_boundary(build_unit_square_mesh(n, DiagonalPattern::UnionJack), tagger));
    return std::make_shared<const CRSpace>(std::move(mesh));
}

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_rate(const std::vector<std::optional<double>>& rates, std::size_t level)
{
    if (level == 0 || !rates.at(level - 1))
        return {};
    return format_number(*rates[level - 1]);
}

nlohmann::json rate_list(const std::vector<std::optional<double>>& rates)
{
    auto out = nlohmann::json::array();
    for (const auto& r : rates)
        out.push_back(r ? nlohmann::json(*r) : nlohmann::json(nullptr));
    return out;
}

nlohmann::json solve_json(const SolveReport& s)
{
    nlohmann::json j;
    j["converged"] = s.converged;
    j["iterations"] = s.iterations;
    j["increment_history"] = s.increment_history;
    j["final_residual_norm"] = s.final_residual_norm;
    j["strategy"] = std::string(to_string(s.strategy));
    j["fallback_at"] = s.fallback_at ? nlohmann::json(*s.fallback_at) : nlohmann::json(nullptr);
    return j;
}

} // namespace

std::string_view to_string(ProblemKind kind)
{
    return kind == ProblemKind::Known ? "known" : "oscillatory";
}

ProblemKind problem_kind_from_string(std::string_view s)
{
    if (s == "known")
        return ProblemKind::Known;
    if (s == "oscillatory")
        return ProblemKind::Oscillatory;
    throw ConfigError("unknown problem: " + std::string(s));
}

void RunConfig::validate() const
{
    if (levels < 2)
        throw ConfigError("levels must be at least 2 to estimate convergence orders");
    if (base_n < 1)
        throw ConfigError("base mesh needs at least one cell per side");
    if (problem == ProblemKind::Oscillatory) {
        if (n_oscillation < 1)
            throw ConfigError("oscillation count N must be at least 1");
        const int finest = level_sizes().back();
        if (!(reference_tol > 0.0))
            throw ConfigError("reference tolerance must be positive");
        if (reference_n <= finest || reference_n % finest != 0 || (reference_n / finest) % 2 != 0)
            throw ConfigError("reference mesh must be an even multiple of the finest level");
    }
    try {
        params.validate();
        solver.validate();
    }
    catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

std::vector<int> RunConfig::level_sizes() const
{
    std::vector<int> out;
    for (int i = 0; i < levels; ++i)
        out.push_back(base_n << i);
    return out;
}

ProblemSpec RunConfig::problem_spec() const
{
    return problem == ProblemKind::Known ? known_problem() : oscillatory_problem(n_oscillation);
}

StudyResult run_convergence_study(const RunConfig& config)
{
    config.validate();
    const ProblemSpec problem = config.problem_spec();
    StudyResult result;

    std::optional<DiscreteField> reference;
    ErrorNorms reference_norms;
    if (!problem.exact) {
        auto space = make_space(config.reference_n, problem.tagger);
        SolverConfig ref_solver = config.solver;
        ref_solver.rel_increment_tol = config.reference_tol;
        auto solved = solve_nonlinear(space, config.params, problem, ref_solver);
        result.reference_solve = solved.report;
        result.all_converged = solved.report.converged;
        reference_norms.l2 = l2_norm(*space, solved.solution.coefficients());
        reference_norms.grad = gradient_norm(*space, solved.solution.coefficients());
        reference_norms.h1_broken = reference_norms.l2 + reference_norms.grad;
        reference = std::move(solved.solution);
    }

    for (int n : config.level_sizes()) {
        auto space = make_space(n, problem.tagger);
        auto solved = solve_nonlinear(space, config.params, problem, config.solver);
        result.all_converged = result.all_converged && solved.report.converged;

        ErrorReport row;
        row.n = n;
        row.h = space->mesh().h();
        row.n_dofs = space->n_dofs();
        row.iterations = solved.report.iterations;
        row.contact_residual = contact_residual(solved.solution, config.params);
        if (problem.exact) {
            const auto err = error_vs_exact(solved.solution, *problem.exact);
            const auto ref = exact_norms(space->mesh(), *problem.exact);
            row.err_l2 = err.l2 / ref.l2;
            row.err_h1_broken = err.h1_broken / ref.h1_broken;
        }
        else {
            const auto err = compare_to_reference(solved.solution, *reference);
            row.err_l2 = err.l2 / reference_norms.l2;
            row.err_h1_broken = err.h1_broken / reference_norms.h1_broken;
        }
        result.report.levels.push_back(row);
        result.solves.push_back(std::move(solved.report));
        result.finest_solution = std::move(solved.solution);
    }
    compute_rates(result.report);
    return result;
}

std::string to_csv(const ConvergenceReport& report)
{
    std::string out =
        "level,n,h,n_dofs,iterations,err_l2_rel,err_h1_rel,contact_residual,eoc_l2,eoc_h1,eoc_residual\n";
    for (std::size_t i = 0; i < report.levels.size(); ++i) {
        const auto& r = report.levels[i];
        out += std::to_string(i) + ',' + std::to_string(r.n) + ',' + format_number(r.h) + ',' +
               std::to_string(r.n_dofs) + ',' + std::to_string(r.iterations) + ',' +
               format_number(r.err_l2) + ',' + format_number(r.err_h1_broken) + ',' +
               format_number(r.contact_residual) + ',' + format_rate(report.eoc_l2, i) + ',' +
               format_rate(report.eoc_h1, i) + ',' + format_rate(report.eoc_residual, i) + '\n';
    }
    return out;
}

nlohmann::json to_json(const RunConfig& config, const StudyResult& result)
{
    nlohmann::json j;
    j["config"] = {
        {"problem", std::string(to_string(config.problem))},
        {"n_oscillation", config.n_oscillation},
        {"levels", config.levels},
        {"base_n", config.base_n},
        {"gamma0", config.params.gamma0},
        {"theta1", config.params.theta1},
        {"theta2", config.params.theta2},
        {"strategy", std::string(to_string(config.solver.strategy))},
        {"tol", config.solver.rel_increment_tol},
        {"max_iter", config.solver.max_iter},
        {"reference_n", config.reference_n},
        {"reference_tol", config.reference_tol},
    };
    auto levels = nlohmann::json::array();
    for (std::size_t i = 0; i < result.report.levels.size(); ++i) {
        const auto& r = result.report.levels[i];
        levels.push_back({
            {"level", i},
            {"n", r.n},
            {"h", r.h},
            {"n_dofs", r.n_dofs},
            {"iterations", r.iterations},
            {"err_l2_rel", r.err_l2},
            {"err_h1_rel", r.err_h1_broken},
            {"contact_residual", r.contact_residual},
            {"solve", solve_json(result.solves.at(i))},
        });
    }
    j["levels"] = std::move(levels);
    j["eoc_l2"] = rate_list(result.report.eoc_l2);
    j["eoc_h1"] = rate_list(result.report.eoc_h1);
    j["eoc_residual"] = rate_list(result.report.eoc_residual);
    j["reference_solve"] =
        result.reference_solve ? solve_json(*result.reference_solve) : nlohmann::json(nullptr);
    j["all_converged"] = result.all_converged;
    return j;
}

} // namespace signorini
