#include "signorini/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace signorini {

namespace {

TriangleRule make_centroid_rule()
{
    return {{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}}, {1.0}, 1};
}

TriangleRule make_degree2_rule()
{
    constexpr double a = 2.0 / 3.0, b = 1.0 / 6.0;
    return {{{a, b, b}, {b, a, b}, {b, b, a}}, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 2};
}

// Dunavant (1985), 6 points.
TriangleRule make_degree4_rule()
{
    constexpr double a1 = 0.108103018168070, b1 = 0.445948490915965, w1 = 0.223381589678011;
    constexpr double a2 = 0.816847572980459, b2 = 0.091576213509771, w2 = 0.109951743655322;
    return {{{a1, b1, b1}, {b1, a1, b1}, {b1, b1, a1}, {a2, b2, b2}, {b2, a2, b2}, {b2, b2, a2}},
            {w1, w1, w1, w2, w2, w2},
            4};
}

} // namespace

const TriangleRule& triangle_rule(int degree)
{
    static const TriangleRule r1 = make_centroid_rule();
    static const TriangleRule r2 = make_degree2_rule();
    static const TriangleRule r4 = make_degree4_rule();
    if (degree <= 1)
        return r1;
    if (degree == 2)
        return r2;
    if (degree <= 4)
        return r4;
    throw std::invalid_argument("triangle_rule: degree above 4 not available");
}

LineRule gauss_legendre(int num_points)
{
    if (num_points < 1)
        throw std::invalid_argument("gauss_legendre: need at least one point");
    LineRule rule;
    rule.degree = 2 * num_points - 1;
    rule.points.resize(num_points);
    rule.weights.resize(num_points);
    const int n = num_points;
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // map [-1, 1] -> [0, 1], half the weight
        rule.points[i] = 0.5 * (1.0 - x);
        rule.points[n - 1 - i] = 0.5 * (1.0 + x);
        rule.weights[i] = 0.5 * w;
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

} // namespace signorini
