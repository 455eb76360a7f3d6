#include <cmath>
#include <memory>
#include <random>

#include <gtest/gtest.h>

#include "signorini/analysis.hpp"
#include "signorini/solver.hpp"

using namespace signorini;

namespace {

std::shared_ptr<const CRSpace> make_space(int n)
{
    return std::make_shared<const CRSpace>(std::make_shared<const Mesh>(build_unit_square_mesh(n)));
}

SolverConfig config_for(Strategy s, double tol = 1e-5)
{
    SolverConfig c;
    c.strategy = s;
    c.rel_increment_tol = tol;
    return c;
}

} // namespace

TEST(Solver, IdentityAndTwoByTwo)
{
    SparseMatrix eye(4, 4);
    eye.setIdentity();
    const Eigen::Vector4d b(1, -2, 3, 0.5);
    EXPECT_NEAR((solve_linear(eye, b) - b).norm(), 0.0, 1e-15);

    SparseMatrix a(2, 2);
    a.insert(0, 0) = 2;
    a.insert(0, 1) = 1;
    a.insert(1, 0) = 1;
    a.insert(1, 1) = 2;
    const Eigen::VectorXd x = solve_linear(a, Eigen::Vector2d(3, 3));
    EXPECT_NEAR(x[0], 1.0, 1e-14);
    EXPECT_NEAR(x[1], 1.0, 1e-14);
}

TEST(Solver, RandomSparseSystem)
{
    std::mt19937 rng(50);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> idx(0, 49);
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < 50; ++i) {
        trip.emplace_back(i, i, 10.0);
        for (int k = 0; k < 4; ++k)
            trip.emplace_back(i, idx(rng), u(rng));
    }
    SparseMatrix a(50, 50);
    a.setFromTriplets(trip.begin(), trip.end());
    Eigen::VectorXd b(50);
    for (auto& v : b)
        v = u(rng);
    const Eigen::VectorXd x = solve_linear(a, b);
    EXPECT_LE((a * x - b).norm(), 1e-10 * b.norm());
}

TEST(Solver, SingularMatrixIsReported)
{
    SparseMatrix a(3, 3);
    a.insert(0, 0) = 1;
    a.insert(1, 1) = 1;
    EXPECT_THROW(solve_linear(a, Eigen::Vector3d(1, 1, 1)), LinearSolveError);
    SparseMatrix rect(2, 3);
    EXPECT_THROW(solve_linear(rect, Eigen::Vector2d(1, 1)), LinearSolveError);
}

TEST(Solver, ConfigValidation)
{
    SolverConfig c;
    EXPECT_NO_THROW(c.validate());
    c.rel_increment_tol = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.max_iter = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = {};
    c.damping = 1.5;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    EXPECT_EQ(strategy_from_string("fixed_point"), Strategy::FixedPoint);
    EXPECT_EQ(strategy_from_string("semismooth_newton"), Strategy::SemismoothNewton);
    EXPECT_EQ(to_string(Strategy::LaggedFixedPoint), "lagged_fixed_point");
    EXPECT_THROW(strategy_from_string("gauss_seidel"), std::invalid_argument);
}

TEST(Solver, ZeroSourceConvergesImmediately)
{
    ProblemSpec zero{"zero", [](Point) { return 0.0; }, standard_tagger(), std::nullopt};
    for (auto s : {Strategy::SemismoothNewton, Strategy::FixedPoint, Strategy::LaggedFixedPoint}) {
        const auto r = solve_nonlinear(make_space(8), NitscheParams{}, zero, config_for(s));
        EXPECT_TRUE(r.report.converged);
        EXPECT_EQ(r.report.iterations, 1);
        EXPECT_EQ(r.solution.coefficients().norm(), 0.0);
    }
}

TEST(Solver, KnownProblemConverges)
{
    const auto space = make_space(16);
    const auto problem = known_problem();
    for (auto s : {Strategy::SemismoothNewton, Strategy::FixedPoint}) {
        const auto r = solve_nonlinear(space, NitscheParams{}, problem, config_for(s));
        EXPECT_TRUE(r.report.converged) << to_string(s);
        EXPECT_LE(r.report.iterations, 100);
        ASSERT_EQ(r.report.increment_history.size(), static_cast<std::size_t>(r.report.iterations));
        EXPECT_LT(r.report.increment_history.back(), 1e-5);
        EXPECT_FALSE(r.report.fallback_at.has_value());
    }
}

TEST(Solver, ReportsNonConvergence)
{
    SolverConfig c = config_for(Strategy::SemismoothNewton);
    c.max_iter = 2;
    const auto r = solve_nonlinear(make_space(16), NitscheParams{}, known_problem(), c);
    EXPECT_FALSE(r.report.converged);
    EXPECT_EQ(r.report.iterations, 2);
    EXPECT_EQ(r.report.increment_history.size(), 2u);
}

TEST(Solver, ResidualOfConvergedSolution)
{
    const auto space = make_space(16);
    const auto problem = known_problem();
    const Eigen::VectorXd load = assemble_load(*space, problem.source);
    for (const NitscheParams& params : {NitscheParams{10, 1, 0}, NitscheParams{10, 1, 1}, NitscheParams{10, -1, 1}}) {
        const auto r = solve_nonlinear(space, params, problem, config_for(Strategy::SemismoothNewton, 1e-10));
        ASSERT_TRUE(r.report.converged);
        const double res = residual(*space, params, r.solution, load).lpNorm<Eigen::Infinity>();
        EXPECT_LE(res, 1e-8 * (1 + load.lpNorm<Eigen::Infinity>()));
        EXPECT_LE(r.report.final_residual_norm, 1e-10 * load.norm());
    }
}

TEST(Solver, ResidualIsAffineInLoad)
{
    const auto space = make_space(8);
    const NitscheParams params;
    const Eigen::VectorXd load = assemble_load(*space, [](Point p) { return p.x - p.y; });
    const DiscreteField u(space, Eigen::VectorXd::LinSpaced(space->n_dofs(), -1, 1));
    const Eigen::VectorXd d = residual(*space, params, u, 2 * load) - residual(*space, params, u, load);
    EXPECT_NEAR((d + load).norm(), 0.0, 1e-14);
}

TEST(Solver, InitialGuessIndependence)
{
    const auto space = make_space(16);
    const auto problem = known_problem();
    const NitscheParams params;
    const auto cfg = config_for(Strategy::SemismoothNewton, 1e-10);
    const auto base = solve_nonlinear(space, params, problem, cfg);
    const DiscreteField minus_one = cr_interpolate(space, [](Point) { return -1.0; });
    std::vector<Eigen::VectorXd> guesses{minus_one.coefficients()};
    std::mt19937 rng(5);
    std::normal_distribution<double> nd(0.0, 2.0);
    for (int k = 0; k < 3; ++k) {
        Eigen::VectorXd g(space->n_dofs());
        for (auto& v : g)
            v = nd(rng);
        guesses.push_back(g);
    }
    for (const auto& g : guesses) {
        const auto r = solve_nonlinear(space, params, problem, cfg, g);
        ASSERT_TRUE(r.report.converged);
        EXPECT_LE(norm_broken_h1(*space, r.solution.coefficients() - base.solution.coefficients()), 1e-8);
    }
    EXPECT_THROW(solve_nonlinear(space, params, problem, cfg, Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST(Solver, NewtonAndFixedPointAgree)
{
    const auto space = make_space(32);
    const auto problem = oscillatory_problem(3);
    const NitscheParams params;
    const auto newton = solve_nonlinear(space, params, problem, config_for(Strategy::SemismoothNewton));
    const auto fixed = solve_nonlinear(space, params, problem, config_for(Strategy::FixedPoint));
    ASSERT_TRUE(newton.report.converged);
    ASSERT_TRUE(fixed.report.converged);
    EXPECT_LE(norm_broken_h1(*space, newton.solution.coefficients() - fixed.solution.coefficients()), 1e-7);
}

TEST(Solver, NewtonIncrementTailIsMonotone)
{
    for (int n : {16, 32, 64}) {
        for (const auto& problem : {known_problem(), oscillatory_problem(3), oscillatory_problem(5)}) {
            const auto r = solve_nonlinear(make_space(n), NitscheParams{}, problem,
                                           config_for(Strategy::SemismoothNewton));
            ASSERT_TRUE(r.report.converged);
            const auto& h = r.report.increment_history;
            if (h.size() < 3)
                continue;
            EXPECT_LE(h[h.size() - 1], h[h.size() - 2]) << problem.name << " n=" << n;
            EXPECT_LE(h[h.size() - 2], h[h.size() - 3]) << problem.name << " n=" << n;
        }
    }
}

TEST(Solver, DampedNewtonConverges)
{
    SolverConfig c = config_for(Strategy::SemismoothNewton);
    c.damping = 0.7;
    const auto r = solve_nonlinear(make_space(16), NitscheParams{}, known_problem(), c);
    EXPECT_TRUE(r.report.converged);
}
