// Convergence-study runner for the penalty-free Nitsche contact method.
//
//   signorini_cli --problem known --levels 4 --out known.csv
//   signorini_cli --problem oscillatory --n-oscillation 5 --levels 5 --out osc5.csv
//
// Exit status: 0 success, 1 a level failed to converge, 2 invalid configuration.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "signorini/study.hpp"
#include "signorini/vtk.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_not_converged = 1;
constexpr int exit_bad_config = 2;

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << text;
    if (!os)
        throw std::runtime_error("write to " + path.string() + " failed");
}

} // namespace

int main(int argc, char** argv)
{
    using namespace signorini;

    CLI::App app{"Signorini problem: penalty-free Nitsche / Crouzeix-Raviart convergence studies"};
    RunConfig config;
    std::string problem = "known";
    std::string strategy = "semismooth_newton";
    std::string out;
    std::string vtk;
    std::string mesh_vtk;

    app.add_option("--problem", problem, "known | oscillatory")->capture_default_str();
    app.add_option("--n-oscillation", config.n_oscillation, "N in f = (2 pi N)^2 cos(2 pi N x)")
        ->capture_default_str();
    app.add_option("--levels", config.levels, "number of meshes n = base_n * 2^i")->capture_default_str();
    app.add_option("--base-n", config.base_n, "cells per side on the coarsest mesh")->capture_default_str();
    app.add_option("--gamma0", config.params.gamma0, "gamma = gamma0 * h")->capture_default_str();
    app.add_option("--theta1", config.params.theta1, "flux term selector (-1, 0, 1)")->capture_default_str();
    app.add_option("--theta2", config.params.theta2, "penalty term selector (0, 1)")->capture_default_str();
    app.add_option("--strategy", strategy, "semismooth_newton | fixed_point | lagged_fixed_point")
        ->capture_default_str();
    app.add_option("--tol", config.solver.rel_increment_tol, "relative broken-H1 increment tolerance")
        ->capture_default_str();
    app.add_option("--max-iter", config.solver.max_iter, "nonlinear iteration cap")->capture_default_str();
    app.add_option("--reference-n", config.reference_n, "reference mesh for the oscillatory problem")
        ->capture_default_str();
    app.add_option("--reference-tol", config.reference_tol, "increment tolerance of the reference solve")
        ->capture_default_str();
    app.add_option("--out", out, "CSV report path; a JSON mirror is written next to it");
    app.add_option("--vtk", vtk, "legacy VTK dump of the finest-level solution");
    app.add_option("--mesh-vtk", mesh_vtk, "legacy VTK dump of the finest mesh");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_bad_config;
    }

    StudyResult result;
    try {
        config.problem = problem_kind_from_string(problem);
        config.solver.strategy = strategy_from_string(strategy);
        config.validate();
        result = run_convergence_study(config);
    }
    catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return exit_bad_config;
    }
    catch (const std::exception& e) {
        std::cerr << "study failed: " << e.what() << '\n';
        return exit_not_converged;
    }

    try {
        const std::string csv = to_csv(result.report);
        if (out.empty()) {
            std::cout << csv;
        }
        else {
            std::filesystem::path csv_path(out);
            write_text(csv_path, csv);
            write_text(std::filesystem::path(csv_path).replace_extension(".json"),
                       to_json(config, result).dump(2) + '\n');
        }
        if (!vtk.empty() && result.finest_solution)
            export_solution(*result.finest_solution, std::filesystem::path(vtk));
        if (!mesh_vtk.empty() && result.finest_solution)
            write_mesh_vtk(result.finest_solution->space().mesh(), std::filesystem::path(mesh_vtk));
    }
    catch (const std::exception& e) {
        std::cerr << "output failed: " << e.what() << '\n';
        return exit_bad_config;
    }

    for (std::size_t i = 0; i < result.solves.size(); ++i)
        if (!result.solves[i].converged)
            std::cerr << "level " << i << " (n = " << result.report.levels[i].n
                      << ") did not converge in " << result.solves[i].iterations << " iterations\n";
    if (result.reference_solve && !result.reference_solve->converged)
        std::cerr << "reference solve did not converge\n";
    return result.all_converged ? exit_ok : exit_not_converged;
}
