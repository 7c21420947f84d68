#include "prolate/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "json.hpp"
#include "prolate/grid.hpp"

namespace prolate {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void need_mu(const PswfBasis& b) {
  if (!b.has_mu()) throw std::domain_error("closed-form coefficients need c > 0");
}

void check_count(const PswfBasis& b, int N) {
  if (N < 0 || N > b.n_max + 1) {
    throw std::out_of_range("coefficient count " + std::to_string(N) + " exceeds basis size " +
                            std::to_string(b.n_max + 1));
  }
}

bool known(double v) { return std::isfinite(v); }

}  // namespace

double fourier_l2_norm(const std::vector<FourierTerm>& terms) { return sobolev_norm(terms, 0.0); }

double sobolev_norm(const std::vector<FourierTerm>& terms, double order) {
  double s = 0.0;
  for (const auto& t : terms) {
    const double w = std::pow(1.0 + kPi * kPi * static_cast<double>(t.k) * static_cast<double>(t.k), order);
    s += w * std::norm(t.b);
  }
  return std::sqrt(s);
}

double sobolev_tail_norm(const std::vector<FourierTerm>& terms, double order, double c) {
  std::vector<FourierTerm> tail;
  for (const auto& t : terms) {
    if (std::abs(static_cast<double>(t.k)) > c / kPi) tail.push_back(t);
  }
  return sobolev_norm(tail, order);
}

FunctionSpec with_tail_norm(FunctionSpec f, double c) {
  if (f.fourier.empty()) throw std::domain_error("tail norm needs Fourier data");
  f.norm_hs_tail = sobolev_tail_norm(f.fourier, f.s, c);
  return f;
}

FunctionSpec make_sampler_spec(std::string name, Sampler fn, double s) {
  FunctionSpec f;
  f.kind = FunctionKind::Sampler;
  f.name = std::move(name);
  f.sampler = std::move(fn);
  f.s = s;
  f.norm_hs = std::numeric_limits<double>::quiet_NaN();
  f.norm_hs_tail = std::numeric_limits<double>::quiet_NaN();
  const auto rule = gauss_legendre(256);
  f.norm_l2 = std::sqrt(rule.integrate([&](double x) { return std::norm(f.sampler(x)); }));
  return f;
}

FunctionSpec make_fourier_spec(std::string name, std::vector<FourierTerm> terms, double s) {
  FunctionSpec f;
  f.kind = FunctionKind::FourierSeries;
  f.name = std::move(name);
  f.fourier = std::move(terms);
  f.fourier_complete = true;
  f.s = s;
  f.norm_l2 = fourier_l2_norm(f.fourier);
  f.norm_hs = sobolev_norm(f.fourier, s);
  f.norm_hs_tail = std::numeric_limits<double>::quiet_NaN();
  auto data = f.fourier;
  f.sampler = [data](double x) {
    cplx sum = 0.0;
    for (const auto& t : data) sum += t.b * std::exp(cplx(0.0, kPi * static_cast<double>(t.k) * x));
    return sum / std::sqrt(2.0);
  };
  for (const auto& t : f.fourier) {
    f.exponentials.push_back({t.b / std::sqrt(2.0), kPi * static_cast<double>(t.k)});
  }
  return f;
}

int default_quadrature_order(int N, double c) {
  return std::max(128, static_cast<int>(std::ceil(2.0 * (N + c))));
}

std::vector<cplx> coeffs_quadrature(const Sampler& f, const PswfBasis& basis, int N,
                                    const QuadratureRule& rule) {
  check_count(basis, N);
  std::vector<cplx> a(N, 0.0);
  for (int l = 0; l < rule.order; ++l) {
    const cplx fx = f(rule.nodes[l]) * rule.weights[l];
    const auto psi = eval_inside_all(basis, rule.nodes[l]);
    for (int n = 0; n < N; ++n) a[n] += fx * psi[n];
  }
  return a;
}

std::vector<cplx> coeffs_exponential(double lambda, const PswfBasis& basis, int N) {
  need_mu(basis);
  check_count(basis, N);
  std::vector<cplx> a(N, 0.0);
  const double t = std::abs(lambda);
  if (t <= basis.c) {
    const double x = lambda / basis.c;
    const auto psi = eval_inside_all(basis, x);
    for (int n = 0; n < N; ++n) a[n] = basis.mu[n] * psi[n];
    return a;
  }
  // int e^{i t x} Pbar_k = i^k sqrt(k+1/2) sqrt(2 pi / t) J_{k+1/2}(t).
  const auto J = bessel_j_half_table(basis.K, t);
  const double pre = std::sqrt(2.0 * kPi / t);
  for (int n = 0; n < N; ++n) {
    double sum = 0.0;
    for (int k = n % 2; k <= basis.K; k += 2) {
      const double sgn = ((k - n) / 2) % 2 == 0 ? 1.0 : -1.0;
      sum += sgn * basis.beta[n][k] * std::sqrt(k + 0.5) * J[k];
    }
    cplx v = kIPow[n % 4] * (pre * sum);
    // psi_n real: the coefficient at -t is the conjugate.
    a[n] = lambda < 0 ? std::conj(v) : v;
  }
  return a;
}

cplx coeff_exponential(double lambda, const PswfBasis& basis, int n) {
  if (n < 0 || n > basis.n_max) throw std::out_of_range("coefficient index outside basis");
  return coeffs_exponential(lambda, basis, n + 1)[n];
}

cplx coeff_monomial(int j, const PswfBasis& basis, int n) {
  need_mu(basis);
  if (j < 0) throw std::invalid_argument("monomial degree must be >= 0");
  if ((j + n) % 2 == 1) return 0.0;
  const double dj = derivative_at_zero(basis, n, j);
  // (-i)^j = conj(i^j).
  return std::conj(kIPow[j % 4]) * std::pow(basis.c, -j) * basis.mu[n] * dj;
}

std::vector<cplx> coeffs_fourier(const FunctionSpec& f, const PswfBasis& basis, int N) {
  need_mu(basis);
  check_count(basis, N);
  std::vector<cplx> a(N, 0.0);
  for (const auto& t : f.fourier) {
    if (t.b == 0.0) continue;
    const auto e = coeffs_exponential(kPi * static_cast<double>(t.k), basis, N);
    for (int n = 0; n < N; ++n) a[n] += t.b * e[n];
  }
  for (auto& v : a) v /= std::sqrt(2.0);
  return a;
}

std::vector<cplx> coeffs_auto(const FunctionSpec& f, const PswfBasis& basis, int N) {
  check_count(basis, N);
  if (basis.has_mu()) {
    if (!f.exponentials.empty()) {
      std::vector<cplx> a(N, 0.0);
      for (const auto& e : f.exponentials) {
        const auto part = coeffs_exponential(e.lambda, basis, N);
        for (int n = 0; n < N; ++n) a[n] += e.weight * part[n];
      }
      return a;
    }
    if (f.monomial_degree) {
      std::vector<cplx> a(N);
      for (int n = 0; n < N; ++n) a[n] = coeff_monomial(*f.monomial_degree, basis, n);
      return a;
    }
    if (f.fourier_complete && !f.fourier.empty()) return coeffs_fourier(f, basis, N);
  }
  if (!f.sampler) throw std::invalid_argument("function spec has no sampler");
  return coeffs_quadrature(f.sampler, basis, N, gauss_legendre(default_quadrature_order(N, basis.c)));
}

cplx truncated_sum(const std::vector<cplx>& coeffs, const PswfBasis& basis, int N, double x) {
  if (N < 0 || N > static_cast<int>(coeffs.size())) throw std::out_of_range("N exceeds coefficient count");
  if (N == 0) return 0.0;
  check_count(basis, N);
  const auto psi = eval_inside_all(basis, x);
  cplx s = 0.0;
  for (int n = 0; n < N; ++n) s += coeffs[n] * psi[n];
  return s;
}

double grid_error(const Sampler& f, const Sampler& approx) {
  double s = 0.0;
  for (int k = -50; k <= 50; ++k) {
    const double x = k / 50.0;
    s += std::norm(f(x) - approx(x));
  }
  return std::sqrt(s / 50.0);
}

std::vector<double> psi_sup_norms(const PswfBasis& basis, int points) {
  std::vector<double> out(basis.n_max + 1);
  // Even/odd symmetry: [0, 1] suffices.
  for (int n = 0; n <= basis.n_max; ++n) {
    out[n] = grid_sup([&](double x) { return eval_inside(basis, n, x); }, 0.0, 1.0, points / 2);
  }
  return out;
}

double bound_theorem4(double c, int N, double s, double norm_l2, double norm_hs,
                      const PswfBasis& basis, double K_const) {
  if (!basis.has_mu()) throw std::domain_error("bound needs lambda_N");
  if (N < 0 || N > basis.n_max) throw std::out_of_range("lambda_N outside basis");
  const double sqrt_lambda = std::exp(0.5 * basis.log_lambda(N));
  return K_const * std::pow(1.0 + c * c, -s / 2.0) * norm_hs + K_const * sqrt_lambda * norm_l2;
}

double bound_theorem5(double c, int N, double s, double norm_l2, double norm_hs_tail,
                      const PswfBasis& basis, const std::vector<double>& supnorms) {
  if (!basis.has_mu()) throw std::domain_error("bound needs lambda_n");
  if (basis.log_lambda(basis.n_max) > std::log(1e-18)) {
    throw std::domain_error("lambda tail not negligible; rebuild with a larger n_max");
  }
  if (static_cast<int>(supnorms.size()) < basis.n_max + 1) throw std::invalid_argument("need sup norms up to n_max");
  if (N < 0) throw std::out_of_range("N must be >= 0");
  double tail = 0.0;
  for (int n = N; n <= basis.n_max; ++n) tail += supnorms[n] * supnorms[n] * basis.lambda[n];
  return std::sqrt((0.5 + kPi / (4.0 * c)) * tail) * norm_l2 + std::pow(c, -s) * norm_hs_tail;
}

double bound_prop6(double eps_T, double eps_Omega, double lambda_N) {
  if (eps_T < 0 || eps_Omega < 0 || lambda_N < 0) throw std::domain_error("bound_prop6 inputs must be >= 0");
  return eps_T + eps_Omega + std::sqrt(lambda_N);
}

ExpansionReport expand(const FunctionSpec& f, const PswfBasis& basis, int N) {
  ExpansionReport r;
  r.N_used = N;
  r.c_used = basis.c;
  r.coefficients = coeffs_auto(f, basis, N);
  const auto& a = r.coefficients;
  r.grid_error = grid_error(f.sampler, [&](double x) { return truncated_sum(a, basis, N, x); });
  if (basis.has_mu() && N <= basis.n_max) {
    if (known(f.norm_hs)) {
      r.bound_t4 = bound_theorem4(basis.c, N, f.s, f.norm_l2, f.norm_hs, basis);
    }
    if (known(f.norm_hs_tail) && basis.log_lambda(basis.n_max) <= std::log(1e-18)) {
      r.bound_t5 = bound_theorem5(basis.c, N, f.s, f.norm_l2, f.norm_hs_tail, basis, psi_sup_norms(basis));
    }
    if (f.fourier_complete) {
      // Supported in [-1, 1]: eps_T = 0; eps_Omega from the Fourier mass past c / pi.
      const double eps_omega = sobolev_tail_norm(f.fourier, 0.0, basis.c);
      r.bound_p6 = bound_prop6(0.0, eps_omega, basis.lambda[N]);
    }
  }
  return r;
}

std::string report_to_json(const ExpansionReport& r) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["N_used"] = r.N_used;
  j["c_used"] = r.c_used;
  std::vector<double> re, im;
  for (const auto& a : r.coefficients) {
    re.push_back(a.real());
    im.push_back(a.imag());
  }
  j["a_re"] = re;
  j["a_im"] = im;
  j["grid_error"] = r.grid_error;
  j["bound_t4"] = r.bound_t4 ? nlohmann::json(*r.bound_t4) : nlohmann::json(nullptr);
  j["bound_t5"] = r.bound_t5 ? nlohmann::json(*r.bound_t5) : nlohmann::json(nullptr);
  j["bound_p6"] = r.bound_p6 ? nlohmann::json(*r.bound_p6) : nlohmann::json(nullptr);
  return j.dump();
}

}  // namespace prolate
