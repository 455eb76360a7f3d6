#include "signorini/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace signorini {

namespace {
constexpr double pi = std::numbers::pi;
}

ProblemSpec known_problem()
{
    ProblemSpec p;
    p.name = "known";
    p.tagger = standard_tagger();
    // f = -Laplace(u); note the sign, f(1/2, 0) = -(pi^2 / 4 + 2 pi^2).
    p.source = [](Point q) {
        const double cy = std::cos(0.5 * pi * q.y);
        const double sx = std::sin(pi * q.x);
        return -0.25 * pi * pi * cy * sx * sx + 2.0 * pi * pi * cy * std::cos(2.0 * pi * q.x);
    };
    ExactSolution ex;
    ex.value = [](Point q) {
        const double sx = std::sin(pi * q.x);
        return -std::cos(0.5 * pi * q.y) * sx * sx;
    };
    ex.gradient = [](Point q) -> Point {
        const double cy = std::cos(0.5 * pi * q.y);
        const double sx = std::sin(pi * q.x);
        return {-cy * pi * std::sin(2.0 * pi * q.x), 0.5 * pi * std::sin(0.5 * pi * q.y) * sx * sx};
    };
    p.exact = std::move(ex);
    return p;
}

ProblemSpec oscillatory_problem(int n_oscillation)
{
    if (n_oscillation < 1)
        throw std::invalid_argument("oscillatory_problem: N must be at least 1");
    ProblemSpec p;
    p.name = "oscillatory_N" + std::to_string(n_oscillation);
    p.tagger = standard_tagger();
    const double k = 2.0 * pi * n_oscillation;
    p.source = [k](Point q) { return k * k * std::cos(k * q.x); };
    return p;
}

} // namespace signorini
