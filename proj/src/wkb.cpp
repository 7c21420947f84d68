#include "prolate/wkb.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "prolate/grid.hpp"

namespace prolate {

WkbModel make_wkb_model(const PswfBasis& basis, int n) {
  if (n < 0 || n > basis.n_max) throw std::out_of_range("wkb model index outside basis");
  WkbModel m;
  m.n = n;
  m.c = basis.c;
  m.chi = basis.chi[n];
  if (m.chi <= 0.0) throw std::domain_error("wkb model needs chi_n > 0");
  m.q = basis.c * basis.c / m.chi;
  if (!(m.q < 1.0)) throw std::domain_error("wkb model needs q = c^2/chi_n < 1");
  m.A = psi_at_one(basis, n) / std::pow(m.chi, 0.25);
  m.phase = PhaseIntegral(m.q);
  return m;
}

double wkb_eval(const WkbModel& m, double x) {
  if (std::abs(x) > 1.0) throw std::domain_error("wkb_eval needs |x| <= 1");
  const double sgn = (x < 0 && m.n % 2 == 1) ? -1.0 : 1.0;
  const double ax = std::abs(x);
  const double scale = m.A * std::pow(m.chi, 0.25);
  if (ax == 1.0) return sgn * scale;
  const double S = m.phase(ax);
  const double denom = std::pow((1.0 - ax * ax) * (1.0 - m.q * ax * ax), 0.25);
  return sgn * scale * std::sqrt(S) * bessel_j0(std::sqrt(m.chi) * S) / denom;
}

std::pair<double, double> amplitude_interval(const WkbModel& m, double C,
                                             double C_prime) {
  const double s0 = m.phase.at_zero();
  const double lead = std::numbers::pi / (2.0 * s0);
  const double cq = C / std::pow(1.0 - m.q, 13.0 / 4.0);
  const double rc = std::sqrt(m.chi);
  const double low_num = std::sqrt(1.0 - m.q) - std::sqrt(2.0) * cq / rc;
  const double low = lead * (low_num > 0 ? low_num * low_num : 0.0) / (1.0 + lead * C_prime / rc);
  const double up_den = 1.0 - lead * C_prime / rc;
  const double up_num = 1.0 + std::sqrt(2.0) * cq / rc;
  const double up = up_den > 0 ? lead * up_num * up_num / up_den
                               : std::numeric_limits<double>::infinity();
  return {low, up};
}

double wkb_legendre(int n, double x) {
  if (n < 0) throw std::invalid_argument("wkb_legendre needs n >= 0");
  if (x < 0.0 || x > 1.0) throw std::domain_error("wkb_legendre needs x in [0, 1]");
  const double nh = n + 0.5;
  const double theta = std::acos(x);
  const double ratio = theta < 1e-4 ? 1.0 + theta * theta / 6.0 : theta / std::sin(theta);
  return std::sqrt(nh) * std::sqrt(ratio) * bessel_j0(nh * theta);
}

double legendre_proximity(const PswfBasis& basis, int n, int points) {
  if (n < 0 || n > basis.n_max) throw std::out_of_range("index outside basis");
  if (basis.c > 0.0 && basis.c * basis.c / basis.chi[n] > 0.9) {
    throw std::domain_error("legendre_proximity needs q <= 0.9");
  }
  return grid_sup([&](double x) { return eval_inside(basis, n, x) - legendre_normalized(n, x); },
                  -1.0, 1.0, points);
}

double wkb_residual(const PswfBasis& basis, int n, int points) {
  const WkbModel m = make_wkb_model(basis, n);
  return grid_sup([&](double x) { return eval_inside(basis, n, x) - wkb_eval(m, x); }, -1.0, 1.0,
                  points);
}

double wkb_legendre_error(int n, int points) {
  return grid_sup([&](double x) { return wkb_legendre(n, x) - legendre_normalized(n, x); }, 0.0,
                  1.0, points);
}

double bandwidth_for_q(int n, double q) {
  if (!(q > 0.0 && q < 1.0)) throw std::domain_error("bandwidth_for_q needs 0 < q < 1");
  if (n < 1) throw std::invalid_argument("bandwidth_for_q needs n >= 1");
  double c = std::sqrt(q * n * (n + 1.0));
  for (int it = 0; it < 100; ++it) {
    const double next = std::sqrt(q * build_basis(c, n).chi[n]);
    if (std::abs(next - c) < 1e-12 * c) return next;
    c = next;
  }
  return c;
}

}  // namespace prolate
