#include "prolate/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace prolate {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;

// Hankel asymptotic expansion is used above this argument; Miller's
// recurrence below it.
constexpr double kBesselAsymptoticThreshold = 25.0;

}  // namespace

double legendre_normalized(int n, double x) {
  if (n < 0) throw std::domain_error("legendre_normalized: n < 0");
  double p_prev = std::sqrt(0.5);
  if (n == 0) return p_prev;
  double p = std::sqrt(1.5) * x;
  for (int k = 1; k < n; ++k) {
    const double a = std::sqrt((2.0 * k + 1.0) * (2.0 * k + 3.0)) / (k + 1.0);
    const double b =
        k / (k + 1.0) * std::sqrt((2.0 * k + 3.0) / (2.0 * k - 1.0));
    const double next = a * x * p - b * p_prev;
    p_prev = p;
    p = next;
  }
  return p;
}

std::vector<double> legendre_normalized_table(int n_max, double x) {
  if (n_max < 0) return {};
  std::vector<double> out(n_max + 1);
  out[0] = std::sqrt(0.5);
  if (n_max >= 1) out[1] = std::sqrt(1.5) * x;
  for (int k = 1; k < n_max; ++k) {
    const double a = std::sqrt((2.0 * k + 1.0) * (2.0 * k + 3.0)) / (k + 1.0);
    const double b =
        k / (k + 1.0) * std::sqrt((2.0 * k + 3.0) / (2.0 * k - 1.0));
    out[k + 1] = a * x * out[k] - b * out[k - 1];
  }
  return out;
}

std::vector<double> legendre_normalized_derivs(int n_max, double x,
                                               int order) {
  if (n_max < 0 || order < 0) return {};
  const int width = n_max + 1;
  // Unnormalized P_k^{(j)} first:
  // P_{k+1}^{(j)} = ((2k+1)(x P_k^{(j)} + j P_k^{(j-1)}) - k P_{k-1}^{(j)})/(k+1)
  std::vector<double> t(static_cast<std::size_t>(width) * (order + 1), 0.0);
  auto at = [&](int j, int k) -> double& {
    return t[static_cast<std::size_t>(j) * width + k];
  };
  for (int j = 0; j <= order; ++j) {
    at(j, 0) = (j == 0) ? 1.0 : 0.0;
    if (n_max >= 1) at(j, 1) = (j == 0) ? x : (j == 1 ? 1.0 : 0.0);
    for (int k = 1; k < n_max; ++k) {
      const double lower = (j > 0) ? at(j - 1, k) : 0.0;
      at(j, k + 1) =
          ((2.0 * k + 1.0) * (x * at(j, k) + j * lower) - k * at(j, k - 1)) /
          (k + 1.0);
    }
  }
  for (int j = 0; j <= order; ++j) {
    for (int k = 0; k <= n_max; ++k) at(j, k) *= std::sqrt(k + 0.5);
  }
  return t;
}

double legendre_normalized_deriv(int n, double x) {
  if (n < 0) throw std::domain_error("legendre_normalized_deriv: n < 0");
  if (!(std::abs(x) < 1.0)) {
    throw std::domain_error("legendre_normalized_deriv: requires |x| < 1");
  }
  if (n == 0) return 0.0;
  const double p_n = legendre_normalized(n, x);
  const double p_nm1 = legendre_normalized(n - 1, x);
  const double ratio = std::sqrt((2.0 * n + 1.0) / (2.0 * n - 1.0));
  return n * (ratio * p_nm1 - x * p_n) / (1.0 - x * x);
}

namespace {

struct MillerBessel {
  std::vector<double> j;  // J_0 .. J_m
};

// Integer-order J_k(x), k = 0..m, by downward recurrence normalized with
// J_0 + 2 sum J_{2k} = 1.
MillerBessel miller_integer_order(double x) {
  int m = static_cast<int>(x + 30.0 + 3.0 * std::sqrt(x));
  if (m % 2 != 0) ++m;
  std::vector<double> b(m + 2, 0.0);
  b[m] = 1e-30;
  for (int k = m; k >= 1; --k) {
    b[k - 1] = (2.0 * k / x) * b[k] - b[k + 1];
    if (std::abs(b[k - 1]) > 1e250) {
      for (int i = k - 1; i <= m; ++i) b[i] *= 1e-250;
    }
  }
  double norm = b[0];
  for (int k = 2; k <= m; k += 2) norm += 2.0 * b[k];
  b.resize(m + 1);
  for (double& v : b) v /= norm;
  return {std::move(b)};
}

struct HankelPair {
  double j;
  double y;
};

HankelPair hankel_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0, q = 0.0;
  double term = 1.0;  // a_k(nu) / x^k
  double prev_abs = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      term *= (mu - odd * odd) / (8.0 * k * x);
    }
    const double abs_term = std::abs(term);
    if (abs_term > prev_abs) break;
    prev_abs = abs_term;
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
    }
    if (abs_term < 1e-17 * std::abs(p)) break;
  }
  const double s = std::sin(x), c = std::cos(x);
  double cos_w, sin_w;
  if (nu == 0) {  // w = x - pi/4
    cos_w = (c + s) * std::numbers::sqrt2 / 2.0;
    sin_w = (s - c) * std::numbers::sqrt2 / 2.0;
  } else {  // nu == 1: w = x - 3 pi/4
    cos_w = (s - c) * std::numbers::sqrt2 / 2.0;
    sin_w = -(s + c) * std::numbers::sqrt2 / 2.0;
  }
  const double amp = std::sqrt(2.0 / (kPi * x));
  return {amp * (p * cos_w - q * sin_w), amp * (p * sin_w + q * cos_w)};
}

struct SmallArgumentBessel {
  double j0, j1, y0, y1;
};

// Miller values plus the Neumann series for Y0 and Y1.
SmallArgumentBessel bessel_small(double x) {
  if (x < 1e-4) {
    const double x2 = x * x;
    const double log_term = std::log(x / 2.0) + kEulerGamma;
    SmallArgumentBessel out;
    out.j0 = 1.0 - x2 / 4.0 + x2 * x2 / 64.0;
    out.j1 = x / 2.0 - x * x2 / 16.0;
    out.y0 = (2.0 / kPi) * (log_term * out.j0 + x2 / 4.0 - 3.0 * x2 * x2 / 128.0);
    out.y1 = -2.0 / (kPi * x) + (2.0 / kPi) * std::log(x / 2.0) * out.j1 -
             (1.0 - 2.0 * kEulerGamma) * x / (2.0 * kPi);
    return out;
  }
  const MillerBessel mb = miller_integer_order(x);
  const auto& j = mb.j;
  const int m = static_cast<int>(j.size()) - 1;
  const double log_term = std::log(x / 2.0) + kEulerGamma;
  double y0_sum = 0.0;
  double y1_sum = 0.0;
  for (int k = 1; 2 * k <= m; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    y0_sum += sign * j[2 * k] / k;
    const double upper = (2 * k + 1 <= m) ? j[2 * k + 1] : 0.0;
    y1_sum += sign * (j[2 * k - 1] - upper) / k;
  }
  SmallArgumentBessel out;
  out.j0 = j[0];
  out.j1 = j[1];
  out.y0 = (2.0 / kPi) * log_term * j[0] - (4.0 / kPi) * y0_sum;
  out.y1 = (2.0 / kPi) * log_term * j[1] - (2.0 / kPi) * j[0] / x +
           (2.0 / kPi) * y1_sum;
  return out;
}

}  // namespace

BesselJ0J1Y0 bessel_j0j1y0(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("bessel_j0j1y0: requires x > 0");
  }
  if (x > kBesselAsymptoticThreshold) {
    const HankelPair h0 = hankel_asymptotic(0, x);
    const HankelPair h1 = hankel_asymptotic(1, x);
    return {h0.j, h1.j, h0.y};
  }
  const SmallArgumentBessel s = bessel_small(x);
  return {s.j0, s.j1, s.y0};
}

double bessel_j0(double x) {
  x = std::abs(x);
  if (x == 0.0) return 1.0;
  return bessel_j0j1y0(x).j0;
}

double bessel_j1(double x) {
  if (x == 0.0) return 0.0;
  const double v = bessel_j0j1y0(std::abs(x)).j1;
  return x < 0.0 ? -v : v;
}

double bessel_y0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_y0: requires x > 0");
  return bessel_j0j1y0(x).y0;
}

double bessel_y1(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_y1: requires x > 0");
  if (x > kBesselAsymptoticThreshold) return hankel_asymptotic(1, x).y;
  return bessel_small(x).y1;
}

std::vector<double> bessel_j_half_table(int k_max, double x) {
  if (k_max < 0) return {};
  if (x < 0.0 || std::isnan(x)) {
    throw std::domain_error("bessel_j_half: requires x >= 0");
  }
  std::vector<double> out(k_max + 1, 0.0);
  if (x == 0.0) return out;
  if (x < 1e-5) {
    // Two-term power series; the next term is O(x^4) relative.
    for (int k = 0; k <= k_max; ++k) {
      const double lead = std::exp((k + 0.5) * std::log(x / 2.0) -
                                   log_gamma_half_integer(k));
      out[k] = lead * (1.0 - x * x / (4.0 * (k + 1.5)));
    }
    return out;
  }

  const double sx = std::sin(x), cx = std::cos(x);
  const double j0 = sx / x;
  const double j1 = sx / (x * x) - cx / x;

  if (x > 2.0 * k_max + 50.0) {
    // Orders well below the argument: upward recurrence is stable.
    out[0] = j0;
    if (k_max >= 1) out[1] = j1;
    for (int n = 1; n < k_max; ++n) {
      out[n + 1] = (2.0 * n + 1.0) / x * out[n] - out[n - 1];
    }
  } else {
    // Carry at least orders 0 and 1 so either exact value can normalize.
    const int top = std::max(k_max, 1);
    std::vector<double> work(top + 1, 0.0);
    const int start =
        top + static_cast<int>(std::ceil(x + 20.0 + 10.0 * std::cbrt(x)));
    double upper = 0.0;
    double cur = 1e-300;
    for (int n = start; n >= 1; --n) {
      const double lower = (2.0 * n + 1.0) / x * cur - upper;
      upper = cur;
      cur = lower;
      if (n - 1 <= top) work[n - 1] = cur;
      if (n <= top) work[n] = upper;
      if (std::abs(cur) > 1e250) {
        cur *= 1e-250;
        upper *= 1e-250;
        for (int i = std::max(n - 1, 0); i <= top; ++i) work[i] *= 1e-250;
      }
    }
    const double scale = (x < 0.5 || std::abs(j0) >= std::abs(j1))
                             ? j0 / work[0]
                             : j1 / work[1];
    for (int k = 0; k <= k_max; ++k) out[k] = work[k] * scale;
  }
  const double factor = std::sqrt(2.0 * x / kPi);
  for (double& v : out) v *= factor;
  return out;
}

double bessel_j_half(int k, double x) {
  if (k < 0) throw std::domain_error("bessel_j_half: k < 0");
  return bessel_j_half_table(k, x)[k];
}

double gamma_half_integer(int k) {
  if (k < 0) throw std::domain_error("gamma_half_integer: k < 0");
  if (k > 150) return std::exp(log_gamma_half_integer(k));
  double g = std::sqrt(kPi) / 2.0;
  for (int j = 1; j <= k; ++j) g *= (j + 0.5);
  return g;
}

double log_gamma_half_integer(int k) {
  if (k < 0) throw std::domain_error("log_gamma_half_integer: k < 0");
  if (k <= 150) return std::log(gamma_half_integer(k));
  return std::lgamma(k + 1.5);
}

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

double gk15_recursive(const std::function<double(double)>& f, double a,
                      double b, double tol, int depth) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  if (std::abs(kronrod - gauss) <= tol || depth >= 40) return kronrod;
  return gk15_recursive(f, a, center, 0.5 * tol, depth + 1) +
         gk15_recursive(f, center, b, 0.5 * tol, depth + 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol) {
  if (a == b) return 0.0;
  return gk15_recursive(f, a, b, abs_tol, 0);
}

double phase_S(double q, double x) {
  if (!(q >= 0.0 && q < 1.0)) {
    throw std::domain_error("phase_S: requires 0 <= q < 1");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("phase_S: requires 0 <= x <= 1");
  }
  if (q == 0.0) return std::acos(x);
  const double theta = std::acos(x);
  return integrate_adaptive(
      [q](double t) {
        const double c = std::cos(t);
        return std::sqrt(1.0 - q * c * c);
      },
      0.0, theta, 1e-14);
}

PhaseIntegral::PhaseIntegral(double q) : q_(q), s0_(phase_S(q, 0.0)) {}

double PhaseIntegral::inverse(double s) const {
  if (!(s >= 0.0 && s <= s0_ * (1.0 + 1e-15))) {
    throw std::domain_error("PhaseIntegral::inverse: s outside [0, S_q(0)]");
  }
  if (s <= 0.0) return 1.0;
  if (s >= s0_) return 0.0;
  // G(theta) = S_q(cos theta) is increasing with G' = sqrt(1 - q cos^2).
  double lo = 0.0, hi = kPi / 2.0;
  double theta = s / s0_ * (kPi / 2.0);
  for (int it = 0; it < 100; ++it) {
    const double g = phase_S(q_, std::cos(theta)) - s;
    if (g > 0.0) hi = theta; else lo = theta;
    const double c = std::cos(theta);
    const double dg = std::sqrt(1.0 - q_ * c * c);
    double next = theta - g / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - theta) < 1e-15) {
      theta = next;
      break;
    }
    theta = next;
  }
  return std::cos(theta);
}

QuadratureRule gauss_legendre(int order) {
  if (order < 1) throw std::domain_error("gauss_legendre: order < 1");
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double deriv = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < order; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      double p = (order == 1) ? x : p1;
      double pm1 = (order == 1) ? 1.0 : p0;
      deriv = order * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / deriv;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Final derivative at the converged node.
    {
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < order; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      const double p = (order == 1) ? x : p1;
      const double pm1 = (order == 1) ? 1.0 : p0;
      deriv = order * (x * p - pm1) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = w;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

}  // namespace prolate
