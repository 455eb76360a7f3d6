#include "signorini/solver.hpp"

#include <cmath>
#include <limits>

#include "signorini/analysis.hpp"

#ifdef SIGNORINI_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#else
#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>
#endif

namespace signorini {

struct SparseLU::Impl
{
#ifdef SIGNORINI_HAVE_UMFPACK
    Eigen::UmfPackLU<SparseMatrix> lu;
#else
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
#endif
    // UMFPACK solves against the matrix it was factorized from.
    SparseMatrix matrix;
    bool ready = false;
};

SparseLU::SparseLU()
    : impl_(std::make_unique<Impl>())
{
}
SparseLU::~SparseLU() = default;
SparseLU::SparseLU(SparseLU&&) noexcept = default;
SparseLU& SparseLU::operator=(SparseLU&&) noexcept = default;

void SparseLU::factorize(const SparseMatrix& matrix)
{
    if (matrix.rows() != matrix.cols())
        throw LinearSolveError("SparseLU: matrix is not square");
    impl_->ready = false;
    impl_->matrix = matrix;
    impl_->matrix.makeCompressed();
    impl_->lu.compute(impl_->matrix);
    if (impl_->lu.info() != Eigen::Success)
        throw LinearSolveError("SparseLU: factorization failed (singular or structurally deficient)");
    impl_->ready = true;
}

Eigen::VectorXd SparseLU::solve(const Eigen::VectorXd& rhs) const
{
    if (!impl_->ready)
        throw LinearSolveError("SparseLU: solve before factorize");
    Eigen::VectorXd x = impl_->lu.solve(rhs);
    if (impl_->lu.info() != Eigen::Success || !x.allFinite())
        throw LinearSolveError("SparseLU: back substitution failed");
    return x;
}

Eigen::VectorXd solve_linear(const SparseMatrix& matrix, const Eigen::VectorXd& rhs)
{
    if (matrix.rows() != rhs.size())
        throw LinearSolveError("solve_linear: dimension mismatch");
    SparseLU lu;
    lu.factorize(matrix);
    Eigen::VectorXd x = lu.solve(rhs);
    const double bnorm = rhs.norm();
    if ((matrix * x - rhs).norm() > 1e-10 * std::max(bnorm, std::numeric_limits<double>::min()))
        throw LinearSolveError("solve_linear: residual above tolerance, matrix numerically singular");
    return x;
}

std::string_view to_string(Strategy s)
{
    switch (s) {
    case Strategy::FixedPoint: return "fixed_point";
    case Strategy::SemismoothNewton: return "semismooth_newton";
    case Strategy::LaggedFixedPoint: return "lagged_fixed_point";
    }
    return "unknown";
}

Strategy strategy_from_string(std::string_view s)
{
    if (s == "fixed_point")
        return Strategy::FixedPoint;
    if (s == "semismooth_newton")
        return Strategy::SemismoothNewton;
    if (s == "lagged_fixed_point")
        return Strategy::LaggedFixedPoint;
    throw std::invalid_argument("unknown solver strategy: " + std::string(s));
}

void SolverConfig::validate() const
{
    if (!(rel_increment_tol > 0.0))
        throw std::invalid_argument("SolverConfig: tolerance must be positive");
    if (max_iter < 1)
        throw std::invalid_argument("SolverConfig: max_iter must be at least 1");
    if (!(damping > 0.0) || damping > 1.0)
        throw std::invalid_argument("SolverConfig: damping must lie in (0, 1]");
    if (stall_window < 0)
        throw std::invalid_argument("SolverConfig: stall_window must be non-negative");
}

namespace {

double relative_increment(const CRSpace& space, const Eigen::VectorXd& next,
                          const Eigen::VectorXd& prev)
{
    const double step = norm_broken_h1(space, next - prev);
    const double size = norm_broken_h1(space, next);
    if (size == 0.0)
        return step == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return step / size;
}

} // namespace

SolveResult solve_nonlinear(const NitscheSystem& system, const SolverConfig& config,
                            const std::optional<Eigen::VectorXd>& initial_guess)
{
    config.validate();
    const CRSpace& space = system.space();
    Eigen::VectorXd u = initial_guess.value_or(Eigen::VectorXd::Zero(space.n_dofs()));
    if (u.size() != space.n_dofs())
        throw std::invalid_argument("solve_nonlinear: initial guess has the wrong size");

    SolveReport report;
    report.strategy = config.strategy;
    Strategy current = config.strategy;
    SparseLU lagged_lu;
    bool lagged_ready = false;
    int stalled = 0;

    for (int k = 1; k <= config.max_iter; ++k) {
        Eigen::VectorXd next;
        switch (current) {
        case Strategy::SemismoothNewton: {
            SparseLU lu;
            lu.factorize(system.linear_operator() + system.jacobian(u));
            next = u - config.damping * lu.solve(system.residual(u));
            break;
        }
        case Strategy::FixedPoint: {
            SparseLU lu;
            lu.factorize(system.linear_operator() + system.jacobian(u));
            next = lu.solve(system.load());
            break;
        }
        case Strategy::LaggedFixedPoint:
            if (!lagged_ready) {
                lagged_lu.factorize(system.linear_operator());
                lagged_ready = true;
            }
            next = lagged_lu.solve(system.load() - system.nonlinear(u));
            break;
        }
        const double inc = relative_increment(space, next, u);
        u = std::move(next);
        report.iterations = k;
        if (!report.increment_history.empty() && inc >= report.increment_history.back())
            ++stalled;
        else
            stalled = 0;
        report.increment_history.push_back(inc);
        if (inc < config.rel_increment_tol) {
            report.converged = true;
            break;
        }
        if (current == Strategy::SemismoothNewton && config.stall_window > 0 &&
            stalled >= config.stall_window) {
            current = Strategy::FixedPoint;
            stalled = 0;
            report.fallback_at = k;
        }
    }
    report.final_residual_norm = system.residual(u).lpNorm<Eigen::Infinity>();
    return {DiscreteField(system.space_ptr(), std::move(u)), std::move(report)};
}

SolveResult solve_nonlinear(std::shared_ptr<const CRSpace> space, const NitscheParams& params,
                            const ProblemSpec& problem, const SolverConfig& config,
                            const std::optional<Eigen::VectorXd>& initial_guess)
{
    Eigen::VectorXd load = assemble_load(*space, problem.source);
    const NitscheSystem system(std::move(space), params, std::move(load));
    return solve_nonlinear(system, config, initial_guess);
}

} // namespace signorini
