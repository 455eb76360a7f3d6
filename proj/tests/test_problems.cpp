#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "signorini/problems.hpp"

using namespace signorini;

namespace {
constexpr double pi = std::numbers::pi;

// Five-point Laplacian with a small step.
double minus_laplacian(const ScalarFunction& u, Point p, double h = 1e-3)
{
    return -(u({p.x + h, p.y}) + u({p.x - h, p.y}) + u({p.x, p.y + h}) + u({p.x, p.y - h}) - 4 * u(p)) /
           (h * h);
}
} // namespace

TEST(Problems, KnownSolutionValues)
{
    const auto p = known_problem();
    ASSERT_TRUE(p.exact.has_value());
    EXPECT_NEAR(p.exact->value({0.5, 0.0}), -1.0, 1e-15);
    EXPECT_NEAR(p.exact->value({0.0, 0.3}), 0.0, 1e-15);
    EXPECT_NEAR(p.exact->value({0.7, 1.0}), 0.0, 1e-15);
    EXPECT_NEAR(p.source({0.5, 0.0}), -(pi * pi / 4 + 2 * pi * pi), 1e-12);
}

TEST(Problems, KnownSourceIsMinusLaplacian)
{
    const auto p = known_problem();
    for (double x : {0.1, 0.37, 0.5, 0.81})
        for (double y : {0.05, 0.4, 0.77})
            EXPECT_NEAR(p.source({x, y}), minus_laplacian(p.exact->value, {x, y}), 1e-4);
}

TEST(Problems, KnownGradientMatchesDifferences)
{
    const auto p = known_problem();
    const double h = 1e-6;
    for (double x : {0.2, 0.6})
        for (double y : {0.1, 0.9}) {
            const Point g = p.exact->gradient({x, y});
            EXPECT_NEAR(g.x, (p.exact->value({x + h, y}) - p.exact->value({x - h, y})) / (2 * h), 1e-8);
            EXPECT_NEAR(g.y, (p.exact->value({x, y + h}) - p.exact->value({x, y - h})) / (2 * h), 1e-8);
        }
}

TEST(Problems, KnownSolutionSatisfiesBoundaryConditions)
{
    const auto p = known_problem();
    for (double s = 0.0; s <= 1.0; s += 0.05) {
        // Neumann sides.
        EXPECT_NEAR(p.exact->gradient({0.0, s}).x, 0.0, 1e-14);
        EXPECT_NEAR(p.exact->gradient({1.0, s}).x, 0.0, 1e-14);
        // Contact side: u <= 0, dn u = -du/dy <= 0, u dn u = 0.
        const double u = p.exact->value({s, 0.0});
        const double dn = -p.exact->gradient({s, 0.0}).y;
        EXPECT_LE(u, 0.0);
        EXPECT_LE(dn, 0.0);
        EXPECT_EQ(u * dn, 0.0);
    }
}

TEST(Problems, Oscillatory)
{
    const auto p = oscillatory_problem(3);
    EXPECT_FALSE(p.exact.has_value());
    EXPECT_EQ(p.name, "oscillatory_N3");
    EXPECT_NEAR(p.source({0.0, 0.2}), 36 * pi * pi, 1e-10);
    EXPECT_NEAR(p.source({1.0 / 6.0, 0.2}), -36 * pi * pi, 1e-10);
    EXPECT_THROW(oscillatory_problem(0), std::invalid_argument);
}

TEST(Problems, StandardBoundaryLayout)
{
    const auto p = known_problem();
    EXPECT_EQ(p.tagger({0.5, 0.0}), BoundaryTag::Contact);
    EXPECT_EQ(p.tagger({0.5, 1.0}), BoundaryTag::Dirichlet);
    EXPECT_EQ(p.tagger({1.0, 0.5}), BoundaryTag::Neumann);
}

TEST(Problems, KnownSourceAgainstHandDerivatives)
{
    const auto p = known_problem();
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Point q{u(rng), u(rng)};
        const double cy = std::cos(pi * q.y / 2), sx = std::sin(pi * q.x);
        const double uxx = -cy * 2 * pi * pi * std::cos(2 * pi * q.x);
        const double uyy = pi * pi / 4 * cy * sx * sx;
        EXPECT_NEAR(-(uxx + uyy) - p.source(q), 0.0, 1e-10);
    }
}

TEST(Problems, KnownSolutionSatisfiesReformulatedCondition)
{
    const auto p = known_problem();
    for (double gamma : {1e-3, 0.1, 1.0, 50.0})
        for (double s = 0.0; s <= 1.0; s += 0.01) {
            const double u = p.exact->value({s, 0.0});
            const double dn = -p.exact->gradient({s, 0.0}).y;
            EXPECT_NEAR(u, -std::max(gamma * dn - u, 0.0), 1e-15);
        }
}

TEST(Problems, OscillatoryAmplitude)
{
    const auto p = oscillatory_problem(5);
    EXPECT_NEAR(p.source({0.0, 0.9}), 986.9604401, 1e-6);
}
