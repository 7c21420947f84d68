#include "prolate/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace prolate {

double grid_sup(const std::function<double(double)>& f, double a, double b,
                int points) {
  if (points < 2) throw std::invalid_argument("grid_sup needs at least 2 points");
  if (!(b > a)) throw std::invalid_argument("grid_sup needs a < b");
  std::vector<double> xs(points), vals(points);
  for (int i = 0; i < points; ++i) {
    // Ascending Lobatto nodes, endpoints exact.
    const double t = -std::cos(std::numbers::pi * i / (points - 1));
    xs[i] = i == 0 ? a : i == points - 1 ? b : 0.5 * (a + b) + 0.5 * (b - a) * t;
    vals[i] = std::abs(f(xs[i]));
  }
  double best = *std::max_element(vals.begin(), vals.end());

  std::vector<int> idx(points);
  for (int i = 0; i < points; ++i) idx[i] = i;
  const int top = std::min(3, points);
  std::partial_sort(idx.begin(), idx.begin() + top, idx.end(),
                    [&](int p, int q) { return vals[p] > vals[q]; });
  for (int t = 0; t < top; ++t) {
    double lo = xs[std::max(idx[t] - 1, 0)];
    double hi = xs[std::min(idx[t] + 1, points - 1)];
    // Two passes of a 33-point scan, each zooming on the best sample.
    for (int pass = 0; pass < 2; ++pass) {
      const int m = 33;
      double bx = lo, bv = -1.0;
      for (int i = 0; i < m; ++i) {
        const double x = lo + (hi - lo) * i / (m - 1);
        const double v = std::abs(f(x));
        if (v > bv) {
          bv = v;
          bx = x;
        }
      }
      best = std::max(best, bv);
      const double h = (hi - lo) / (m - 1);
      lo = std::max(lo, bx - h);
      hi = std::min(hi, bx + h);
    }
  }
  return best;
}

}  // namespace prolate
