#include "prolate/corpus.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace prolate {

namespace {

constexpr double kPi = std::numbers::pi;

// int_{-1}^1 cos(a x) cos(b x) dx.
double cos_product_integral(double a, double b) {
  auto sinc2 = [](double t) { return t == 0.0 ? 2.0 : 2.0 * std::sin(t) / t; };
  return 0.5 * (sinc2(a - b) + sinc2(a + b));
}

}  // namespace

FunctionSpec weierstrass(double s, bool periodic, int k_cut) {
  if (!(s > 0.0)) throw std::domain_error("weierstrass needs s > 0");
  if (k_cut < 0) throw std::invalid_argument("k_cut must be >= 0");
  std::vector<double> freq(k_cut + 1), amp(k_cut + 1);
  for (int k = 0; k <= k_cut; ++k) {
    freq[k] = std::ldexp(periodic ? kPi : 1.0, k);
    amp[k] = std::pow(2.0, -k * s);
  }
  FunctionSpec f;
  f.kind = FunctionKind::Corpus;
  f.s = s;
  f.name = "weierstrass:s=" + std::to_string(s) + (periodic ? ":periodic" : "");
  f.sampler = [freq, amp](double x) {
    double sum = 0.0;
    for (std::size_t k = 0; k < freq.size(); ++k) sum += amp[k] * std::cos(freq[k] * x);
    return cplx(sum, 0.0);
  };
  for (int k = 0; k <= k_cut; ++k) {
    f.exponentials.push_back({0.5 * amp[k], freq[k]});
    f.exponentials.push_back({0.5 * amp[k], -freq[k]});
  }
  if (periodic) {
    for (int k = 0; k <= k_cut; ++k) {
      const std::int64_t m = std::int64_t{1} << std::min(k, 62);
      f.fourier.push_back({m, amp[k] / std::sqrt(2.0)});
      f.fourier.push_back({-m, amp[k] / std::sqrt(2.0)});
    }
    f.fourier_complete = true;
    f.norm_l2 = fourier_l2_norm(f.fourier);
    f.norm_hs = sobolev_norm(f.fourier, s);
  } else {
    double n2 = 0.0;
    for (int a = 0; a <= k_cut; ++a) {
      for (int b = 0; b <= k_cut; ++b) n2 += amp[a] * amp[b] * cos_product_integral(freq[a], freq[b]);
    }
    f.norm_l2 = std::sqrt(n2);
    f.norm_hs = std::numeric_limits<double>::quiet_NaN();
  }
  f.norm_hs_tail = std::numeric_limits<double>::quiet_NaN();
  return f;
}

std::vector<double> brownian_normals(std::uint64_t seed, int k_max) {
  std::mt19937_64 gen(seed);
  auto uniform = [&gen]() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<double> x;
  x.reserve(k_max + 1);
  while (static_cast<int>(x.size()) < k_max) {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
    x.push_back(r * std::cos(2.0 * kPi * u2));
    x.push_back(r * std::sin(2.0 * kPi * u2));
  }
  x.resize(k_max);
  return x;
}

FunctionSpec brownian(double s, std::uint64_t seed, int k_max) {
  if (!(s > 0.0)) throw std::domain_error("brownian needs s > 0");
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  const auto X = brownian_normals(seed, k_max);
  std::vector<FourierTerm> terms;
  for (int k = 1; k <= k_max; ++k) {
    const double b = X[k - 1] * std::pow(k, -s) / std::sqrt(2.0);
    terms.push_back({k, b});
    terms.push_back({-k, b});
  }
  FunctionSpec f = make_fourier_spec("brownian:s=" + std::to_string(s) + ":seed=" + std::to_string(seed),
                                     std::move(terms), s);
  f.kind = FunctionKind::Corpus;
  // Real cosine form is cheaper and exactly real.
  std::vector<double> amp(k_max);
  for (int k = 1; k <= k_max; ++k) amp[k - 1] = X[k - 1] * std::pow(k, -s);
  f.sampler = [amp](double x) {
    double sum = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) sum += amp[k] * std::cos((k + 1.0) * kPi * x);
    return cplx(sum, 0.0);
  };
  return f;
}

FunctionSpec exponential(double lambda) {
  FunctionSpec f;
  f.kind = FunctionKind::Corpus;
  f.name = "exp:lambda=" + std::to_string(lambda);
  f.sampler = [lambda](double x) { return std::exp(cplx(0.0, lambda * x)); };
  f.exponentials.push_back({1.0, lambda});
  f.norm_l2 = std::sqrt(2.0);
  // Every Sobolev order: int (1 + w^2)^s |fhat|^2 is not closed-form here.
  f.norm_hs = std::numeric_limits<double>::quiet_NaN();
  f.norm_hs_tail = std::numeric_limits<double>::quiet_NaN();
  return f;
}

FunctionSpec monomial(int j) {
  if (j < 0) throw std::invalid_argument("monomial degree must be >= 0");
  FunctionSpec f;
  f.kind = FunctionKind::Corpus;
  f.name = "monomial:j=" + std::to_string(j);
  f.sampler = [j](double x) { return cplx(std::pow(x, j), 0.0); };
  f.monomial_degree = j;
  f.norm_l2 = std::sqrt(2.0 / (2.0 * j + 1.0));
  f.norm_hs = std::numeric_limits<double>::quiet_NaN();
  f.norm_hs_tail = std::numeric_limits<double>::quiet_NaN();
  return f;
}

std::vector<cplx> exponential_legendre_coeffs(double lambda, int n_max) {
  if (!(lambda > 0.0)) throw std::domain_error("exponential_legendre_coeffs needs lambda > 0");
  const auto J = bessel_j_half_table(n_max, lambda);
  static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::vector<cplx> a(n_max + 1);
  const double pre = std::sqrt(2.0 * kPi / lambda);
  for (int n = 0; n <= n_max; ++n) a[n] = ipow[n % 4] * (pre * std::sqrt(n + 0.5) * J[n]);
  return a;
}

double legendre_truncation_error(double lambda, int N, bool weighted) {
  if (!(lambda > 0.0)) throw std::domain_error("legendre_truncation_error needs lambda > 0");
  // J_{n+1/2}(lambda) is negligible once n exceeds lambda by a wide margin.
  const int top = N + 1 + static_cast<int>(lambda) + 200;
  const auto J = bessel_j_half_table(top, lambda);
  double s = 0.0;
  for (int n = top; n >= N + 1; --n) s += (weighted ? n + 0.5 : 1.0) * J[n] * J[n];
  return std::sqrt(2.0 * kPi / lambda * s);
}

FunctionSpec corpus_from_name(const std::string& name) {
  std::stringstream ss(name);
  std::string head, part;
  std::getline(ss, head, ':');
  std::map<std::string, std::string> kv;
  bool periodic = false;
  while (std::getline(ss, part, ':')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) {
      if (part == "periodic") {
        periodic = true;
        continue;
      }
      throw std::invalid_argument("corpus flag '" + part + "' not understood");
    }
    kv[part.substr(0, eq)] = part.substr(eq + 1);
  }
  auto num = [&](const std::string& key, double fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("bad number for " + key);
    kv.erase(it);
    return v;
  };
  FunctionSpec f;
  if (head == "weierstrass") {
    const double s = num("s", 1.0);
    const int k_cut = static_cast<int>(num("k_cut", 60));
    f = weierstrass(s, periodic, k_cut);
  } else if (head == "brownian") {
    const double s = num("s", 1.0);
    const auto seed = static_cast<std::uint64_t>(num("seed", 1));
    const int k_max = static_cast<int>(num("k_max", 500));
    f = brownian(s, seed, k_max);
  } else if (head == "exp") {
    f = exponential(num("lambda", 1.0));
  } else if (head == "monomial") {
    f = monomial(static_cast<int>(num("j", 0)));
  } else {
    throw std::invalid_argument("unknown corpus member '" + head + "'");
  }
  if (!kv.empty()) throw std::invalid_argument("unknown parameter '" + kv.begin()->first + "' for " + head);
  return f;
}

}  // namespace prolate
