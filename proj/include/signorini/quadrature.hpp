#pragma once

#include <array>
#include <vector>

namespace signorini {

/// Quadrature on the reference triangle in barycentric coordinates. Weights
/// are fractions of the element area and sum to one.
struct TriangleRule
{
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
    int degree = 0;
};

/// Quadrature on [0, 1]; weights sum to one.
struct LineRule
{
    std::vector<double> points;
    std::vector<double> weights;
    int degree = 0;
};

/// Symmetric triangle rules: degree 1 (centroid), 2 (3 points), 4 (6 points).
/// Other degrees up to 4 round up to the next available rule.
const TriangleRule& triangle_rule(int degree);

/// Gauss-Legendre rule with `num_points` nodes mapped to [0, 1].
LineRule gauss_legendre(int num_points);

} // namespace signorini
