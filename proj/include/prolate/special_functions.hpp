#pragma once

#include <functional>
#include <vector>

namespace prolate {

/// Normalized Legendre polynomial \bar P_n(x) = sqrt(n + 1/2) P_n(x), unit L2
/// norm on [-1, 1]. Three-term recurrence on the normalized family.
double legendre_normalized(int n, double x);

/// d/dx \bar P_n(x) for |x| < 1. Throws std::domain_error at |x| >= 1.
double legendre_normalized_deriv(int n, double x);

/// Values \bar P_0(x) .. \bar P_{n_max}(x) in one recurrence sweep.
std::vector<double> legendre_normalized_table(int n_max, double x);

/// Derivatives of the normalized Legendre polynomials at x.
/// Returns a row-major table t[j * (n_max + 1) + k] = \bar P_k^{(j)}(x) for
/// 0 <= j <= order, 0 <= k <= n_max. Valid on the closed interval.
std::vector<double> legendre_normalized_derivs(int n_max, double x, int order);

struct BesselJ0J1Y0 {
  double j0;
  double j1;
  double y0;
};

/// J0(x), J1(x) and Y0(x) for x > 0. Throws std::domain_error for x <= 0
/// (Y0 is singular there); bessel_j0 / bessel_j1 accept the whole real line.
BesselJ0J1Y0 bessel_j0j1y0(double x);

double bessel_j0(double x);
double bessel_j1(double x);
double bessel_y0(double x);
double bessel_y1(double x);

/// J_{k+1/2}(x) for k >= 0, x >= 0.
double bessel_j_half(int k, double x);

/// J_{1/2}(x) .. J_{k_max+1/2}(x) in one sweep.
std::vector<double> bessel_j_half_table(int k_max, double x);

/// Gamma(k + 3/2). Exact double-factorial product up to k = 150, log-space
/// beyond (overflows to +inf past k ~ 170).
double gamma_half_integer(int k);

/// log Gamma(k + 3/2).
double log_gamma_half_integer(int k);

/// S_q(x) = \int_x^1 sqrt((1 - q t^2) / (1 - t^2)) dt for 0 <= q < 1,
/// 0 <= x <= 1.
double phase_S(double q, double x);

class PhaseIntegral {
 public:
  explicit PhaseIntegral(double q);

  double q() const { return q_; }
  /// S_q(0), the total phase on [0, 1].
  double at_zero() const { return s0_; }
  double operator()(double x) const { return phase_S(q_, x); }
  /// x in [0, 1] with S_q(x) = s, for s in [0, S_q(0)].
  double inverse(double s) const;

 private:
  double q_;
  double s0_;
};

struct QuadratureRule {
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  template <typename F>
  auto integrate(F&& f) const {
    decltype(f(0.0)) sum{};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * f(nodes[i]);
    }
    return sum;
  }
};

/// Gauss-Legendre rule with `order` nodes on [-1, 1]. Nodes ascend.
QuadratureRule gauss_legendre(int order);

/// Adaptive Gauss-Kronrod (7/15) integration of a smooth function on [a, b].
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol);

}  // namespace prolate
