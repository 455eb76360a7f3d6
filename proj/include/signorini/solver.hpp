#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "signorini/forms.hpp"
#include "signorini/problems.hpp"

namespace signorini {

class LinearSolveError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Sparse direct LU factorization of a general square matrix.
class SparseLU
{
  public:
    SparseLU();
    ~SparseLU();
    SparseLU(SparseLU&&) noexcept;
    SparseLU& operator=(SparseLU&&) noexcept;

    /// Throws LinearSolveError on singular or structurally deficient input.
    void factorize(const SparseMatrix& matrix);
    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Direct solve of A x = b; checks ||A x - b|| <= 1e-10 ||b||.
Eigen::VectorXd solve_linear(const SparseMatrix& matrix, const Eigen::VectorXd& rhs);

/// FixedPoint freezes the contact indicator at the previous iterate and
/// solves (A + J(u^k)) u^{k+1} = L. LaggedFixedPoint moves the whole
/// nonlinearity to the right-hand side, A u^{k+1} = L - N(u^k); it is kept
/// for experiments and diverges for the penalty-free method at gamma0 = 10.
enum class Strategy
{
    FixedPoint,
    SemismoothNewton,
    LaggedFixedPoint,
};

std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view s);

struct SolverConfig
{
    Strategy strategy = Strategy::SemismoothNewton;
    double rel_increment_tol = 1e-5;
    int max_iter = 100;
    /// Newton step length.
    double damping = 1.0;
    /// Switch Newton to fixed-point iteration after this many consecutive
    /// non-decreasing increments; 0 disables the fallback.
    int stall_window = 5;

    void validate() const;
};

struct SolveReport
{
    bool converged = false;
    int iterations = 0;
    /// ||u^{k+1} - u^k||_{1,h} / ||u^{k+1}||_{1,h} per iteration.
    std::vector<double> increment_history;
    /// Max-norm of the discrete residual at the returned iterate.
    double final_residual_norm = 0.0;
    Strategy strategy = Strategy::SemismoothNewton;
    /// Iteration at which Newton handed over to fixed-point, if it did.
    std::optional<int> fallback_at;
};

struct SolveResult
{
    DiscreteField solution;
    SolveReport report;
};

/// Solves A_h(u_h, v_h) = L(v_h). Without `initial_guess` iteration starts
/// from zero. Non-convergence is reported, not thrown; linear-solve failures
/// propagate as LinearSolveError.
SolveResult solve_nonlinear(const NitscheSystem& system, const SolverConfig& config,
                            const std::optional<Eigen::VectorXd>& initial_guess = std::nullopt);

SolveResult solve_nonlinear(std::shared_ptr<const CRSpace> space, const NitscheParams& params,
                            const ProblemSpec& problem, const SolverConfig& config,
                            const std::optional<Eigen::VectorXd>& initial_guess = std::nullopt);

} // namespace signorini
