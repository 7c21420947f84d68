#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "prolate/pswf_core.hpp"
#include "prolate/special_functions.hpp"

using namespace prolate;
using std::numbers::pi;

namespace {

const PswfBasis& basis10() {
  static const PswfBasis b = build_basis(10.0, 60);
  return b;
}

// int_{-1}^1 e^{icxy} psi_n(y) dy by Gauss quadrature.
std::complex<double> fourier_quadrature(const PswfBasis& b, int n, double x,
                                        const QuadratureRule& rule) {
  std::complex<double> s = 0.0;
  for (int l = 0; l < rule.order; ++l) {
    const double y = rule.nodes[l];
    s += rule.weights[l] * std::exp(std::complex<double>(0, b.c * x * y)) *
         eval_inside(b, n, y);
  }
  return s;
}

}  // namespace

TEST_CASE("tridiagonal_eigen on a small matrix with known spectrum") {
  // Tridiag(-1, 2, -1) of size m: eigenvalues 2 - 2 cos(j pi / (m+1)).
  const int m = 12;
  const auto eig = tridiagonal_eigen(std::vector<double>(m, 2.0), std::vector<double>(m - 1, -1.0));
  for (int j = 0; j < m; ++j) {
    CHECK(eig.values[j] == doctest::Approx(2 - 2 * std::cos((j + 1) * pi / (m + 1))).epsilon(1e-14));
  }
  // Orthonormal columns, and A v = lambda v.
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      double dot = 0;
      for (int i = 0; i < m; ++i) dot += eig.vectors[a * m + i] * eig.vectors[b * m + i];
      CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-13);
    }
    for (int i = 0; i < m; ++i) {
      double av = 2 * eig.vectors[a * m + i];
      if (i > 0) av -= eig.vectors[a * m + i - 1];
      if (i + 1 < m) av -= eig.vectors[a * m + i + 1];
      CHECK(std::abs(av - eig.values[a] * eig.vectors[a * m + i]) < 1e-13);
    }
  }
  CHECK_THROWS_AS(tridiagonal_eigen({1.0, 2.0}, {}), std::invalid_argument);
}

TEST_CASE("c = 0 basis is the Legendre family") {
  const auto b = build_basis(0.0, 20);
  CHECK_FALSE(b.has_mu());
  for (int n = 0; n <= 20; ++n) {
    CHECK(b.chi[n] == n * (n + 1.0));
    for (int k = 0; k <= b.K; ++k) CHECK(b.beta[n][k] == (k == n ? 1.0 : 0.0));
    for (double x : {-1.0, -0.3, 0.0, 0.55, 1.0}) {
      CHECK(std::abs(eval_inside(b, n, x) - legendre_normalized(n, x)) < 1e-10);
    }
  }
  CHECK_THROWS_AS(eval_outside(b, 0, 1.5), std::domain_error);
}

TEST_CASE("chi bracket n(n+1) <= chi_n <= n(n+1) + c^2 at c = 10") {
  const auto& b = basis10();
  for (int n = 0; n <= 30; ++n) {
    CHECK(b.chi[n] >= n * (n + 1.0));
    CHECK(b.chi[n] <= n * (n + 1.0) + 100.0);
  }
}

TEST_CASE("chi at small c follows first-order perturbation theory") {
  const double c = 0.5;
  const auto b = build_basis(c, 10);
  const auto rule = gauss_legendre(40);
  for (int n = 0; n <= 10; ++n) {
    const double moment = rule.integrate([&](double x) {
      const double p = legendre_normalized(n, x);
      return x * x * p * p;
    });
    CHECK(std::abs(b.chi[n] - (n * (n + 1.0) + c * c * moment)) <= 5e-3);
  }
}

TEST_CASE("chi against reference characteristic values") {
  // scipy.special.pro_cv(0, n, c).
  const double ref1[] = {0.31900005514689334, 2.5930845799771327, 6.533471800523824,
                         12.514462145094022, 20.508274362570884, 30.505404625322107};
  const double ref10[] = {9.228304297249906, 28.133463732826797, 45.86895265023473,
                          62.257700450779154, 76.99328882217503, 89.73926723888567};
  const auto b1 = build_basis(1.0, 5);
  for (int n = 0; n <= 5; ++n) {
    CHECK(b1.chi[n] == doctest::Approx(ref1[n]).epsilon(1e-12));
    CHECK(basis10().chi[n] == doctest::Approx(ref10[n]).epsilon(1e-12));
  }
}

TEST_CASE("parity, orthonormality, sign") {
  const auto& b = basis10();
  for (int n = 0; n <= 12; ++n) {
    for (int i = 0; i <= 50; ++i) {
      const double x = -1.0 + 2.0 * i / 50;
      const double sgn = n % 2 == 0 ? 1.0 : -1.0;
      CHECK(std::abs(eval_inside(b, n, -x) - sgn * eval_inside(b, n, x)) < 1e-12);
    }
    CHECK(psi_at_one(b, n) > 0);
    CHECK(eval_inside(b, n, 1.0) == doctest::Approx(psi_at_one(b, n)).epsilon(1e-12));
  }
  for (int m = 0; m <= 60; m += 3) {
    for (int n = 0; n <= 60; ++n) {
      double dot = 0;
      for (int k = 0; k <= b.K; ++k) dot += b.beta[m][k] * b.beta[n][k];
      CHECK(std::abs(dot - (m == n ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("eval_inside_all agrees with Clenshaw evaluation") {
  const auto& b = basis10();
  for (double x : {-0.93, 0.0, 0.41, 1.0}) {
    const auto all = eval_inside_all(b, x);
    for (int n = 0; n <= b.n_max; ++n) CHECK(all[n] == doctest::Approx(eval_inside(b, n, x)).epsilon(1e-11).scale(1));
  }
  CHECK_THROWS_AS(eval_inside(b, 61, 0.2), std::out_of_range);
  CHECK_THROWS_AS(eval_inside(b, 2, 1.2), std::domain_error);
}

TEST_CASE("lambda ordering and the sinc-kernel trace") {
  const auto& b = basis10();
  double trace = 0;
  for (int n = 0; n <= 60; ++n) {
    CHECK(b.lambda[n] > 0.0);
    CHECK(b.lambda[n] < 1.0);
    if (n > 0) CHECK(b.lambda[n] < b.lambda[n - 1]);
    CHECK(b.lambda[n] == doctest::Approx(b.c * std::norm(b.mu[n]) / (2 * pi)).epsilon(1e-13));
    trace += b.lambda[n];
  }
  CHECK(std::abs(trace - 20.0 / pi) < 1e-6);
}

TEST_CASE("Fourier eigen-relation against an order-200 quadrature") {
  const auto& b = basis10();
  const auto rule = gauss_legendre(200);
  for (int n = 0; n <= 10; ++n) {
    double worst = 0;
    for (int i = 0; i <= 20; ++i) {
      const double x = -1.0 + 0.1 * i;
      worst = std::max(worst, std::abs(fourier_quadrature(b, n, x, rule) - b.mu[n] * eval_inside(b, n, x)));
    }
    CAPTURE(n);
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("mu cross-checks: closed form at x = 1, derivative seed, phase") {
  const auto& b = basis10();
  // The closed form is reliable where psi_n(1) and |mu_n| are both moderate.
  for (int n = 4; n <= 20; ++n) {
    CAPTURE(n);
    CHECK(std::abs(mu_flammer(b, n) - b.mu[n]) <= 1e-9 * std::abs(b.mu[n]) + 1e-14);
  }
  // mu_1 psi_1'(0) = i c sqrt(2/3) beta_1^1.
  const std::complex<double> mu1 =
      std::complex<double>(0, b.c * std::sqrt(2.0 / 3.0) * b.beta[1][1]) / eval_derivative(b, 1, 0.0);
  CHECK(std::abs(mu1 - b.mu[1]) < 1e-12);
  CHECK(mu_phase_deviation(b) < 1e-12);
}

TEST_CASE("extension outside [-1,1]") {
  const auto& b = basis10();
  for (int n = 0; n <= 10; ++n) {
    CAPTURE(n);
    const double inside = eval_inside(b, n, 1.0);
    CHECK(eval_outside(b, n, 1.0 + 1e-8) == doctest::Approx(inside).epsilon(1e-5));
    const double sgn = n % 2 == 0 ? 1.0 : -1.0;
    CHECK(eval_outside(b, n, -1.0 - 1e-8) == doctest::Approx(sgn * inside).epsilon(1e-5));
  }
  const auto rule = gauss_legendre(200);
  for (int n = 0; n <= 8; ++n) {
    const std::complex<double> q = fourier_quadrature(b, n, 1.5, rule) / b.mu[n];
    CHECK(std::abs(q.imag()) < 1e-8);
    CHECK(std::abs(q.real() - eval_outside(b, n, 1.5)) < 1e-8);
  }
  // Decay at large argument.
  CHECK(std::abs(eval_outside(b, 2, 400.0)) < std::abs(eval_outside(b, 2, 4.0)));
  CHECK(std::abs(eval_outside(b, 2, 4000.0)) < 1e-2);
  CHECK_THROWS_AS(eval_outside(b, 2, 0.5), std::domain_error);
}

TEST_CASE("derivatives: parity, finite differences, ODE residual") {
  const auto& b = basis10();
  for (int n = 0; n <= 20; n += 2) CHECK(eval_derivative(b, n, 0.0) == 0.0);
  const double h = 1e-6;
  for (int n : {0, 3, 7, 15}) {
    const double fd = (eval_inside(b, n, 0.3 + h) - eval_inside(b, n, 0.3 - h)) / (2 * h);
    CHECK(eval_derivative(b, n, 0.3) == doctest::Approx(fd).epsilon(1e-5));
  }
  for (int n = 0; n <= 30; ++n) {
    for (int i = 1; i < 50; ++i) {
      const double x = -1.0 + 2.0 * i / 50;
      const double r = (1 - x * x) * eval_second_derivative(b, n, x) - 2 * x * eval_derivative(b, n, x) +
                       (b.chi[n] - b.c * b.c * x * x) * eval_inside(b, n, x);
      CHECK(std::abs(r) <= 1e-6 * b.chi[n]);
    }
  }
  CHECK_THROWS_AS(eval_derivative(b, 1, 1.0), std::domain_error);
}

TEST_CASE("derivative_at_zero recurrence") {
  const auto& b = basis10();
  for (int n = 0; n <= 20; ++n) {
    const auto d = derivatives_at_zero(b, n, 8);
    for (int k = (n + 1) % 2; k <= 8; k += 2) CHECK(d[k] == 0.0);
    if (n % 2 == 0) {
      CHECK(d[2] == doctest::Approx(-b.chi[n] * d[0]).epsilon(1e-14));
      CHECK(d[2] == doctest::Approx(eval_second_derivative(b, n, 0.0)).epsilon(1e-7));
    } else {
      CHECK(d[1] == doctest::Approx(eval_derivative(b, n, 0.0)).epsilon(1e-14));
    }
  }
  CHECK(derivative_at_zero(b, 4, 3) == 0.0);
}

TEST_CASE("psi_n(1)^2 near n + 1/2 when q is small") {
  const auto b = build_basis(3.0, 60);
  for (int n = 10; n <= 60; ++n) {
    if (b.c * b.c / b.chi[n] > 0.3) continue;
    const double p = psi_at_one(b, n);
    CHECK(std::abs(p * p - (n + 0.5)) <= 0.05 * (n + 0.5));
  }
}

TEST_CASE("larger bandwidths keep invariants and the trace identity") {
  for (double c : {1.0, 50.0, 100.0}) {
    const auto b = build_basis(c, 120);
    CHECK(basis_invariant_violations(b).empty());
    double trace = 0;
    for (double l : b.lambda) trace += l;
    CHECK(std::abs(trace - 2 * c / pi) < 1e-8);
  }
}

TEST_CASE("tail enlargement and dimension cap") {
  EigSystemOptions tight;
  tight.matrix_dimension = 20;
  const auto b = build_basis(10.0, 12, tight);
  CHECK(b.K + 1 > 20);
  EigSystemOptions capped;
  capped.matrix_dimension = 20;
  capped.max_dimension = 20;
  CHECK_THROWS_AS(build_basis(10.0, 12, capped), std::runtime_error);
  CHECK_THROWS_AS(build_basis(-1.0, 12), std::invalid_argument);
}

TEST_CASE("JSON cache round trip is bit-exact") {
  const auto& b = basis10();
  const auto path = std::filesystem::temp_directory_path() / "prolate_roundtrip_test.json";
  save_basis(b, path.string());
  const auto r = load_basis(path.string());
  std::filesystem::remove(path);
  CHECK(r.c == b.c);
  CHECK(r.K == b.K);
  CHECK(r.chi == b.chi);
  CHECK(r.beta == b.beta);
  CHECK(r.mu == b.mu);
  CHECK(r.lambda == b.lambda);
  for (int n = 0; n <= b.n_max; n += 7) {
    for (double x : {-0.77, 0.0, 0.31, 1.0}) CHECK(eval_inside(r, n, x) == eval_inside(b, n, x));
    CHECK(eval_outside(r, n, 2.5) == eval_outside(b, n, 2.5));
  }
  CHECK_THROWS(basis_from_json("{\"format_version\": 99}"));
}

TEST_CASE("weighted sup bound (1-x^2)^{1/4}|psi_n| <= (2 chi_n)^{1/4}") {
  for (double c : {1.0, 10.0, 50.0}) {
    const auto b = build_basis(c, 80);
    std::vector<double> sup(81, 0.0);
    for (int i = 0; i < 400; ++i) {
      const double x = -1.0 + 2.0 * i / 399.0;
      const double w = std::pow(1 - x * x, 0.25);
      const auto v = eval_inside_all(b, x);
      for (int n = 0; n <= 80; ++n) sup[n] = std::max(sup[n], w * std::abs(v[n]));
    }
    for (int n = 0; n <= 80; ++n) CHECK(sup[n] <= std::pow(2 * b.chi[n], 0.25));
  }
}

TEST_CASE("energy identity int (1-x^2) psi'^2 + c^2 x^2 psi^2 = chi_n") {
  const auto rule = gauss_legendre(300);
  for (double c : {1.0, 10.0, 50.0}) {
    const auto b = build_basis(c, 60);
    for (int n = 0; n <= 60; n += 3) {
      const double lhs = rule.integrate([&](double x) {
        const double p = eval_inside(b, n, x), d = eval_derivative(b, n, x);
        return (1 - x * x) * d * d + c * c * x * x * p * p;
      });
      CHECK(lhs == doctest::Approx(b.chi[n]).epsilon(1e-10));
    }
  }
}

TEST_CASE("derivatives at the origin: Legendre series, alternating signs, bound for q < 1") {
  for (double c : {1.0, 10.0, 50.0}) {
    const auto b = build_basis(c, 60);
    const auto P = legendre_normalized_derivs(b.K, 0.0, 4);
    for (int n = 0; n <= 60; ++n) {
      const auto d = derivatives_at_zero(b, n, 40);
      for (int k = n % 2; k <= 4; k += 2) {
        double s = 0.0;
        for (int l = 0; l <= b.K; ++l) s += b.beta[n][l] * P[k * (b.K + 1) + l];
        CHECK(d[k] == doctest::Approx(s).epsilon(1e-10));
      }
      const int k0 = n % 2;
      const double chi = b.chi[n];
      for (int k = k0; k <= 38 && k * (k + 1.0) <= chi; k += 2) {
        CHECK(d[k + 2] * d[k] < 0);
        if (c * c < chi) CHECK(std::abs(d[k]) <= std::pow(chi, (k - k0) / 2.0) * std::abs(d[k0]) * (1 + 1e-12));
      }
    }
  }
  // q > 1 counterexample to the unrestricted bound: c = 10, n = 2, k = 6.
  const auto b = build_basis(10.0, 4);
  const auto d = derivatives_at_zero(b, 2, 6);
  CHECK(6 * 7 <= b.chi[2]);
  CHECK(std::abs(d[6]) / (std::pow(b.chi[2], 3) * std::abs(d[0])) == doctest::Approx(1.114).epsilon(2e-3));
}
