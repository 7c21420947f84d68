#include "prolate/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "prolate/special_functions.hpp"

namespace prolate {

namespace {

void need_mu(const PswfBasis& b) {
  if (!b.has_mu()) throw std::domain_error("bound needs mu_n, unavailable at c = 0");
}

}  // namespace

double log_lambda_prime(int n, double c) {
  if (n < 0) throw std::invalid_argument("lambda_prime needs n >= 0");
  if (!(c > 0.0)) throw std::domain_error("lambda_prime needs c > 0");
  return (2.0 * n + 1.0) * std::log(c) + 4.0 * std::lgamma(n + 1.0) - std::log(2.0) -
         2.0 * std::lgamma(2.0 * n + 1.0) - 2.0 * log_gamma_half_integer(n);
}

double lambda_prime(int n, double c) { return std::exp(log_lambda_prime(n, c)); }

double log_lambda_envelope_remark(int n, double c) {
  if (n < 1) throw std::invalid_argument("envelope needs n >= 1");
  if (!(c > 0.0)) throw std::domain_error("envelope needs c > 0");
  return std::log(c / 2.0) + 2.0 * n * std::log(std::numbers::e * c / (4.0 * n));
}

double lambda_envelope_remark(int n, double c) { return std::exp(log_lambda_envelope_remark(n, c)); }

int decay_onset(double c) { return static_cast<int>(std::floor(std::numbers::e * c / 4.0)); }

BetaBound beta_coefficient_bound(int n, int k, const PswfBasis& basis) {
  need_mu(basis);
  if (n < 0 || n > basis.n_max) throw std::out_of_range("bound index outside basis");
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  const double log_mu = basis.log_abs_mu[n];
  BetaBound out;
  out.log_new_bound = k * std::log(basis.c / 2.0) + 0.5 * std::log(std::numbers::pi) -
                      log_gamma_half_integer(k) - log_mu;
  out.new_bound = std::exp(out.log_new_bound);
  const int k_old = 2 * (static_cast<int>(std::floor(std::numbers::e * basis.c)) + 1);
  if (k >= k_old) out.old_bound = std::exp(std::log(2.0) - log_mu - k * std::log(2.0));
  return out;
}

int truncation_order(double c, double s, double norm_l2, double norm_hs,
                     const PswfBasis& basis) {
  need_mu(basis);
  if (!(norm_l2 > 0.0) || !(norm_hs > 0.0)) throw std::invalid_argument("norms must be > 0");
  if (std::isinf(norm_hs)) return 0;
  const double rhs = -s * std::log(c) + std::log(norm_hs) - std::log(norm_l2);
  for (int N = 0; N <= basis.n_max; ++N) {
    if (0.5 * basis.log_lambda(N) <= rhs) return N;
  }
  return basis.n_max + 1;
}

double log_lambda_slope(const PswfBasis& basis, int from, int span) {
  need_mu(basis);
  const int to = std::min(from + span, basis.n_max);
  if (from < 0 || to - from < 1) throw std::invalid_argument("slope window needs two points inside the basis");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = to - from + 1;
  for (int n = from; n <= to; ++n) {
    const double y = basis.log_lambda(n);
    sx += n;
    sy += y;
    sxx += static_cast<double>(n) * n;
    sxy += n * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

double log_lambda_max_curvature(const PswfBasis& basis, int from) {
  need_mu(basis);
  double worst = -std::numeric_limits<double>::infinity();
  for (int n = std::max(from, 1); n + 1 <= basis.n_max; ++n) {
    worst = std::max(worst, basis.log_lambda(n + 1) - 2 * basis.log_lambda(n) + basis.log_lambda(n - 1));
  }
  return worst;
}

}  // namespace prolate
