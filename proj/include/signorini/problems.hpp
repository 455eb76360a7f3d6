#pragma once

#include <optional>
#include <string>

#include "signorini/cr_space.hpp"
#include "signorini/mesh.hpp"

namespace signorini {

struct ExactSolution
{
    ScalarFunction value;
    VectorFunction gradient;
};

/// -Laplace(u) = f with u = 0 on the Dirichlet part, dn u = 0 on the Neumann
/// part and u <= 0, dn u <= 0, u dn u = 0 on the contact part.
struct ProblemSpec
{
    std::string name;
    ScalarFunction source;
    BoundaryTagger tagger;
    std::optional<ExactSolution> exact;
};

/// u(x, y) = -cos(pi y / 2) sin^2(pi x) with its source term. The exact
/// solution touches the obstacle only at x in {0, 1} on y = 0.
ProblemSpec known_problem();

/// f = (2 pi N)^2 cos(2 pi N x), no closed-form solution.
ProblemSpec oscillatory_problem(int n_oscillation);

} // namespace signorini
