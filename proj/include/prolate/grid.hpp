#pragma once

#include <functional>

namespace prolate {

/// sup |f| over [a, b]: Chebyshev-Lobatto grid of `points` nodes, then local
/// refinement around the three largest samples.
double grid_sup(const std::function<double(double)>& f, double a, double b,
                int points = 400);

}  // namespace prolate
