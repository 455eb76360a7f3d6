#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "signorini/analysis.hpp"
#include "signorini/solver.hpp"

namespace signorini {

class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

enum class ProblemKind
{
    Known,
    Oscillatory,
};

std::string_view to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(std::string_view s);

/// One convergence study: meshes n = base_n * 2^i for i < levels.
struct RunConfig
{
    ProblemKind problem = ProblemKind::Known;
    int n_oscillation = 3;
    int levels = 4;
    int base_n = 16;
    NitscheParams params;
    SolverConfig solver;
    /// Cells per side of the same-method reference (oscillatory problem only).
    int reference_n = 512;
    /// Increment tolerance for the reference solve.
    double reference_tol = 1e-10;

    /// Throws ConfigError.
    void validate() const;
    std::vector<int> level_sizes() const;
    ProblemSpec problem_spec() const;
};

struct StudyResult
{
    /// Errors are relative: divided by the norms of the exact solution
    /// (known problem) or of the reference solution (oscillatory problem).
    /// The contact residual is absolute.
    ConvergenceReport report;
    std::vector<SolveReport> solves;
    std::optional<SolveReport> reference_solve;
    std::optional<DiscreteField> finest_solution;
    bool all_converged = true;
};

StudyResult run_convergence_study(const RunConfig& config);

/// level,n,h,n_dofs,iterations,err_l2_rel,err_h1_rel,contact_residual,
/// eoc_l2,eoc_h1,eoc_residual; rate cells are empty on the first row and for
/// undefined rates. Numbers use 17 significant digits.
std::string to_csv(const ConvergenceReport& report);

nlohmann::json to_json(const RunConfig& config, const StudyResult& result);

} // namespace signorini
