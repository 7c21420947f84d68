#include "prolate/pswf_core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "prolate/special_functions.hpp"

namespace prolate {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kFormatVersion = 1;

double flammer_diag(int k, double c2) {
  const double kk = static_cast<double>(k) * (k + 1);
  return kk + c2 * (2.0 * kk - 1.0) / ((2.0 * k + 3.0) * (2.0 * k - 1.0));
}

// Coupling between indices k and k + 2.
double flammer_off(int k, double c2) {
  return c2 * (k + 1.0) * (k + 2.0) /
         ((2.0 * k + 3.0) * std::sqrt((2.0 * k + 1.0) * (2.0 * k + 5.0)));
}

void check_index(const PswfBasis& basis, int n) {
  if (n < 0 || n > basis.n_max) {
    throw std::out_of_range("psi index " + std::to_string(n) +
                            " outside basis range 0.." +
                            std::to_string(basis.n_max));
  }
}

struct Block {
  int parity;
  TridiagonalEigen eig;
  int size;
};

Block solve_block(int parity, int K, double c2, double tol) {
  std::vector<double> d, e;
  for (int k = parity; k <= K; k += 2) {
    d.push_back(flammer_diag(k, c2));
    if (k + 2 <= K) e.push_back(flammer_off(k, c2));
  }
  Block b{parity, tridiagonal_eigen(d, e, tol), static_cast<int>(d.size())};
  return b;
}

// Replace the decaying tail of one block eigenvector by the minimal solution of
// the three-term recurrence; QL only resolves it to absolute round-off.
void refine_tail(std::vector<double>& v, int parity, int j, double chi,
                 double c2) {
  const int m = static_cast<int>(v.size());
  if (m < 3) return;
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  int start = -1;
  for (int i = j + 1; i < m; ++i) {
    const int k = 2 * i + parity;
    const double dom = flammer_diag(k, c2) - chi;
    const double side = flammer_off(k - 2, c2) + (i + 1 < m ? flammer_off(k, c2) : 0.0);
    if (dom > 2.0 * side && std::abs(v[i]) < 1e-3 * vmax) {
      start = i;
      break;
    }
  }
  if (start < 1) return;
  std::vector<double> r(m + 1, 0.0);
  for (int i = m - 1; i >= start; --i) {
    const int k = 2 * i + parity;
    const double up = (i + 1 < m) ? flammer_off(k, c2) * r[i + 1] : 0.0;
    r[i] = -flammer_off(k - 2, c2) / (flammer_diag(k, c2) - chi + up);
  }
  for (int i = start; i < m; ++i) v[i] = r[i] * v[i - 1];
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  const double scale = 1.0 / std::sqrt(norm2);
  for (double& x : v) x *= scale;
}

// <x Pbar_k, Pbar_{k+1}>.
double x_moment(int k) {
  return (k + 1.0) / std::sqrt((2.0 * k + 1.0) * (2.0 * k + 3.0));
}

// mu_n by the ratio recursion mu_{n+1} <psi'_{n+1}, psi_n> = i c mu_n <x psi_n, psi_{n+1}>,
// seeded with mu_0 psi_0(0) = sqrt(2) beta_0^0.
void fill_mu(PswfBasis& b) {
  const int N = b.n_max;
  const double c = b.c;
  b.mu.assign(N + 1, 0.0);
  b.lambda.assign(N + 1, 0.0);
  b.log_abs_mu.assign(N + 1, 0.0);

  const double psi00 = eval_inside(b, 0, 0.0);
  if (psi00 == 0.0) throw std::runtime_error("psi_0(0) vanished; cannot seed mu_0");
  const double mu0 = std::sqrt(2.0) * b.beta[0][0] / psi00;
  double log_abs = std::log(std::abs(mu0));
  // Phase tracked exactly as a quarter-turn count.
  int quarter = mu0 > 0 ? 0 : 2;

  auto store = [&](int n) {
    static const std::complex<double> units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    b.log_abs_mu[n] = log_abs;
    b.mu[n] = units[quarter] * std::exp(log_abs);
    b.lambda[n] = std::exp(std::log(c / (2.0 * kPi)) + 2.0 * log_abs);
  };
  store(0);

  for (int n = 0; n < N; ++n) {
    const auto& lo = b.beta[n];
    const auto& hi = b.beta[n + 1];
    double xm = 0.0;
    for (int k = 0; k < b.K; ++k) {
      xm += x_moment(k) * (lo[k] * hi[k + 1] + lo[k + 1] * hi[k]);
    }
    double dm = 0.0, prefix = 0.0;
    for (int k = 0; k <= b.K; ++k) {
      const double root = std::sqrt(k + 0.5);
      dm += 2.0 * hi[k] * root * prefix;
      prefix += lo[k] * root;
    }
    if (dm == 0.0 || xm == 0.0) {
      throw std::runtime_error("mu recursion broke down at n = " + std::to_string(n));
    }
    const double ratio = c * xm / dm;
    log_abs += std::log(std::abs(ratio));
    quarter = (quarter + (ratio > 0 ? 1 : 3)) % 4;
    store(n + 1);
  }
}

PswfBasis build_c_zero(int n_max) {
  PswfBasis b;
  b.c = 0.0;
  b.n_max = n_max;
  b.K = n_max;
  b.chi.resize(n_max + 1);
  b.beta.assign(n_max + 1, std::vector<double>(n_max + 1, 0.0));
  for (int n = 0; n <= n_max; ++n) {
    b.chi[n] = static_cast<double>(n) * (n + 1);
    b.beta[n][n] = 1.0;
  }
  return b;
}

}  // namespace

TridiagonalEigen tridiagonal_eigen(std::vector<double> d, std::vector<double> e,
                                   double tolerance, int max_iterations) {
  const int m = static_cast<int>(d.size());
  if (m == 0) return {};
  if (static_cast<int>(e.size()) != m - 1) {
    throw std::invalid_argument("tridiagonal_eigen: offdiag must have m-1 entries");
  }
  e.push_back(0.0);
  std::vector<double> z(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) z[static_cast<std::size_t>(i) * m + i] = 1.0;
  auto col = [&](int j) { return z.data() + static_cast<std::size_t>(j) * m; };

  for (int l = 0; l < m; ++l) {
    int iter = 0;
    int mm;
    do {
      for (mm = l; mm < m - 1; ++mm) {
        const double dd = std::abs(d[mm]) + std::abs(d[mm + 1]);
        if (std::abs(e[mm]) <= tolerance * dd) break;
      }
      if (mm == l) break;
      if (iter++ == max_iterations) {
        throw std::runtime_error("tridiagonal_eigen: no convergence for eigenvalue " +
                                 std::to_string(l));
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i;
      bool underflow = false;
      for (i = mm - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[mm] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        double* zi = col(i);
        double* zi1 = col(i + 1);
        for (int k = 0; k < m; ++k) {
          f = zi1[k];
          zi1[k] = s * zi[k] + c * f;
          zi[k] = c * zi[k] - s * f;
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[mm] = 0.0;
    } while (true);
  }

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });
  TridiagonalEigen out;
  out.values.resize(m);
  out.vectors.resize(z.size());
  for (int j = 0; j < m; ++j) {
    out.values[j] = d[order[j]];
    std::copy_n(col(order[j]), m, out.vectors.begin() + static_cast<std::ptrdiff_t>(j) * m);
  }
  return out;
}

double PswfBasis::log_lambda(int n) const {
  if (!has_mu()) throw std::logic_error("lambda unavailable for c = 0");
  return std::log(c / (2.0 * kPi)) + 2.0 * log_abs_mu.at(n);
}

PswfBasis build_basis(double c, int n_max, const EigSystemOptions& opts) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("bandwidth c must be >= 0");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  if (c == 0.0) {
    PswfBasis b = build_c_zero(n_max);
    auto bad = basis_invariant_violations(b);
    if (!bad.empty()) throw std::runtime_error("basis invariant failed: " + bad.front());
    return b;
  }

  const double c2 = c * c;
  int dim = opts.matrix_dimension > 0
                ? opts.matrix_dimension
                : n_max + static_cast<int>(std::ceil(2.0 * c)) + 30;
  dim = std::max(dim, n_max + 4);
  const double tol = std::max(opts.eigensolver_tolerance, std::numeric_limits<double>::epsilon());

  while (true) {
    const int K = dim - 1;
    Block blocks[2] = {solve_block(0, K, c2, tol), solve_block(1, K, c2, tol)};
    bool tail_ok = true;
    for (int n = 0; n <= n_max && tail_ok; ++n) {
      const Block& blk = blocks[n % 2];
      const int j = n / 2;
      const double last = blk.eig.vectors[static_cast<std::size_t>(j) * blk.size + blk.size - 1];
      if (std::abs(last) > opts.tail_tolerance) tail_ok = false;
    }
    if (!tail_ok) {
      if (dim >= opts.max_dimension) {
        throw std::runtime_error("Legendre tail test still failing at dimension " +
                                 std::to_string(dim) + "; a larger matrix is required");
      }
      dim = std::min(2 * dim, opts.max_dimension);
      continue;
    }

    PswfBasis b;
    b.c = c;
    b.n_max = n_max;
    b.K = K;
    b.chi.resize(n_max + 1);
    b.beta.assign(n_max + 1, std::vector<double>(K + 1, 0.0));
    for (int n = 0; n <= n_max; ++n) {
      const Block& blk = blocks[n % 2];
      const int j = n / 2;
      b.chi[n] = blk.eig.values[j];
      std::vector<double> v(blk.eig.vectors.begin() + static_cast<std::ptrdiff_t>(j) * blk.size,
                            blk.eig.vectors.begin() + static_cast<std::ptrdiff_t>(j + 1) * blk.size);
      refine_tail(v, blk.parity, j, b.chi[n], c2);
      double at_one = 0.0;
      for (int i = 0; i < blk.size; ++i) at_one += v[i] * std::sqrt(2 * i + blk.parity + 0.5);
      if (at_one == 0.0) throw std::runtime_error("psi_n(1) vanished; sign undefined");
      const double sign = at_one > 0 ? 1.0 : -1.0;
      for (int i = 0; i < blk.size; ++i) b.beta[n][2 * i + blk.parity] = sign * v[i];
    }
    fill_mu(b);
    auto bad = basis_invariant_violations(b);
    if (!bad.empty()) throw std::runtime_error("basis invariant failed: " + bad.front());
    return b;
  }
}

double eval_inside(const PswfBasis& basis, int n, double x) {
  check_index(basis, n);
  if (std::abs(x) > 1.0) throw std::domain_error("eval_inside needs |x| <= 1");
  const auto& beta = basis.beta[n];
  // Clenshaw on Pbar_{k+1} = A_k x Pbar_k - B_k Pbar_{k-1}.
  auto A = [](int k) { return std::sqrt((2.0 * k + 1.0) * (2.0 * k + 3.0)) / (k + 1.0); };
  auto B = [](int k) {
    return k == 0 ? 0.0 : (k / (k + 1.0)) * std::sqrt((2.0 * k + 3.0) / (2.0 * k - 1.0));
  };
  double b1 = 0.0, b2 = 0.0;
  for (int k = basis.K; k >= 0; --k) {
    const double b0 = beta[k] + A(k) * x * b1 - B(k + 1) * b2;
    b2 = b1;
    b1 = b0;
  }
  return b1 / std::sqrt(2.0);
}

std::vector<double> eval_inside_all(const PswfBasis& basis, double x) {
  if (std::abs(x) > 1.0) throw std::domain_error("eval_inside_all needs |x| <= 1");
  const auto p = legendre_normalized_table(basis.K, x);
  std::vector<double> out(basis.n_max + 1);
  for (int n = 0; n <= basis.n_max; ++n) {
    const auto& beta = basis.beta[n];
    double s = 0.0;
    for (int k = n % 2; k <= basis.K; k += 2) s += beta[k] * p[k];
    out[n] = s;
  }
  return out;
}

double eval_outside(const PswfBasis& basis, int n, double x) {
  check_index(basis, n);
  if (!basis.has_mu()) throw std::domain_error("extension outside [-1,1] needs c > 0");
  if (std::abs(x) <= 1.0) throw std::domain_error("eval_outside needs |x| > 1; use eval_inside");
  const double t = basis.c * std::abs(x);
  const auto J = bessel_j_half_table(basis.K, t);
  const auto& beta = basis.beta[n];
  double sum = 0.0;
  for (int k = n % 2; k <= basis.K; k += 2) {
    const double sgn = ((k - n) / 2) % 2 == 0 ? 1.0 : -1.0;
    sum += sgn * beta[k] * std::sqrt(k + 0.5) * J[k];
  }
  sum *= std::sqrt(2.0 * kPi / t);
  // mu_n = +-i^n |mu_n|; divide out the real sign and the modulus.
  // An underflowed mu keeps the canonical phase i^n.
  static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const double s = std::real(basis.mu[n] / ipow[n % 4]) >= 0 ? 1.0 : -1.0;
  double value = s * sum * std::exp(-basis.log_abs_mu[n]);
  if (x < 0 && n % 2 == 1) value = -value;
  return value;
}

double eval_psi(const PswfBasis& basis, int n, double x) {
  return std::abs(x) <= 1.0 ? eval_inside(basis, n, x) : eval_outside(basis, n, x);
}

namespace {

double eval_deriv_order(const PswfBasis& basis, int n, double x, int order) {
  check_index(basis, n);
  if (std::abs(x) >= 1.0) throw std::domain_error("derivative needs |x| < 1");
  const auto t = legendre_normalized_derivs(basis.K, x, order);
  const auto& beta = basis.beta[n];
  const std::size_t row = static_cast<std::size_t>(order) * (basis.K + 1);
  double s = 0.0;
  for (int k = n % 2; k <= basis.K; k += 2) s += beta[k] * t[row + k];
  return s;
}

}  // namespace

double eval_derivative(const PswfBasis& basis, int n, double x) {
  return eval_deriv_order(basis, n, x, 1);
}

double eval_second_derivative(const PswfBasis& basis, int n, double x) {
  return eval_deriv_order(basis, n, x, 2);
}

double psi_at_one(const PswfBasis& basis, int n) {
  check_index(basis, n);
  double s = 0.0;
  for (int k = n % 2; k <= basis.K; k += 2) s += basis.beta[n][k] * std::sqrt(k + 0.5);
  return s;
}

std::vector<double> derivatives_at_zero(const PswfBasis& basis, int n, int k_max) {
  check_index(basis, n);
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  std::vector<double> d(std::max(k_max, 1) + 1, 0.0);
  if (n % 2 == 0) {
    d[0] = eval_inside(basis, n, 0.0);
  } else {
    d[1] = eval_derivative(basis, n, 0.0);
  }
  const double chi = basis.chi[n];
  const double c2 = basis.c * basis.c;
  for (int k = 0; k + 2 <= k_max; ++k) {
    double next = (k * (k + 1.0) - chi) * d[k];
    if (k >= 2) next += k * (k - 1.0) * c2 * d[k - 2];
    d[k + 2] = next;
  }
  d.resize(k_max + 1);
  return d;
}

double derivative_at_zero(const PswfBasis& basis, int n, int k) {
  if (k < 0) throw std::invalid_argument("derivative order must be >= 0");
  return derivatives_at_zero(basis, n, k).back();
}

std::complex<double> mu_flammer(const PswfBasis& basis, int n) {
  check_index(basis, n);
  if (basis.c <= 0.0) throw std::domain_error("mu needs c > 0");
  const auto J = bessel_j_half_table(basis.K, basis.c);
  static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::complex<double> num = 0.0;
  for (int k = n % 2; k <= basis.K; k += 2) {
    num += ipow[k % 4] * std::sqrt(k + 0.5) * basis.beta[n][k] * J[k];
  }
  const double den = psi_at_one(basis, n);
  if (den == 0.0) throw std::runtime_error("psi_n(1) = 0 in mu formula");
  return std::sqrt(2.0 * kPi / basis.c) * num / den;
}

std::vector<std::string> basis_invariant_violations(const PswfBasis& b) {
  std::vector<std::string> bad;
  auto note = [&](const std::string& what, int n) {
    bad.push_back(what + " (n = " + std::to_string(n) + ", c = " + std::to_string(b.c) + ")");
  };
  const double c2 = b.c * b.c;
  for (int n = 0; n <= b.n_max; ++n) {
    const double nn = static_cast<double>(n) * (n + 1);
    const double slack = 1e-12 * std::max(1.0, b.chi[n]);
    if (b.chi[n] < nn - slack || b.chi[n] > nn + c2 + slack) note("chi outside [n(n+1), n(n+1)+c^2]", n);
    if (n > 0 && !(b.chi[n] > b.chi[n - 1])) note("chi not strictly increasing", n);
    double s2 = 0.0;
    for (int k = 0; k <= b.K; ++k) {
      s2 += b.beta[n][k] * b.beta[n][k];
      if ((k + n) % 2 == 1 && b.beta[n][k] != 0.0) {
        note("beta of opposite parity is nonzero", n);
        break;
      }
    }
    if (std::abs(s2 - 1.0) > 1e-10) note("sum beta^2 != 1", n);
    if (!(psi_at_one(b, n) > 0.0)) note("psi_n(1) not positive", n);
  }
  if (b.has_mu()) {
    for (int n = 0; n <= b.n_max; ++n) {
      // lambda_0 rounds to 1 for large c.
      if (!(b.lambda[n] <= 1.0 + 1e-10) || !(b.lambda[n] >= 0.0)) note("lambda outside (0,1)", n);
      if (n > 0 && b.log_lambda(n) > b.log_lambda(n - 1) + 1e-10) note("lambda not decreasing", n);
    }
  }
  return bad;
}

double mu_phase_deviation(const PswfBasis& b) {
  double worst = 0.0;
  if (!b.has_mu()) return worst;
  static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int n = 0; n <= b.n_max; ++n) {
    if (b.mu[n] == 0.0) continue;
    worst = std::max(worst, std::abs(std::arg(b.mu[n] / ipow[n % 4])));
  }
  return worst;
}

std::string basis_to_json(const PswfBasis& b) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["c"] = b.c;
  j["n_max"] = b.n_max;
  j["K"] = b.K;
  j["chi"] = b.chi;
  j["beta"] = b.beta;
  std::vector<double> re, im;
  for (const auto& m : b.mu) {
    re.push_back(m.real());
    im.push_back(m.imag());
  }
  j["mu_re"] = re;
  j["mu_im"] = im;
  j["lambda"] = b.lambda;
  j["log_abs_mu"] = b.log_abs_mu;
  return j.dump();
}

PswfBasis basis_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("format_version").get<int>() != kFormatVersion) {
    throw std::runtime_error("unsupported basis cache format_version");
  }
  PswfBasis b;
  b.c = j.at("c").get<double>();
  b.n_max = j.at("n_max").get<int>();
  b.K = j.at("K").get<int>();
  b.chi = j.at("chi").get<std::vector<double>>();
  b.beta = j.at("beta").get<std::vector<std::vector<double>>>();
  const auto re = j.at("mu_re").get<std::vector<double>>();
  const auto im = j.at("mu_im").get<std::vector<double>>();
  if (re.size() != im.size()) throw std::runtime_error("mu_re / mu_im length mismatch");
  for (std::size_t i = 0; i < re.size(); ++i) b.mu.emplace_back(re[i], im[i]);
  b.lambda = j.at("lambda").get<std::vector<double>>();
  b.log_abs_mu = j.at("log_abs_mu").get<std::vector<double>>();
  if (static_cast<int>(b.chi.size()) != b.n_max + 1 ||
      static_cast<int>(b.beta.size()) != b.n_max + 1) {
    throw std::runtime_error("basis cache sizes disagree with n_max");
  }
  for (const auto& row : b.beta) {
    if (static_cast<int>(row.size()) != b.K + 1) throw std::runtime_error("beta row length != K+1");
  }
  return b;
}

void save_basis(const PswfBasis& basis, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << basis_to_json(basis);
  if (!out) throw std::runtime_error("write failed for " + path);
}

PswfBasis load_basis(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return basis_from_json(ss.str());
}

}  // namespace prolate
