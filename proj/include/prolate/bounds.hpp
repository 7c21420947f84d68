#pragma once

#include <optional>

#include "prolate/pswf_core.hpp"

namespace prolate {

/// log of c^{2n+1} (n!)^4 / (2 ((2n)!)^2 Gamma(n+3/2)^2).
double log_lambda_prime(int n, double c);
double lambda_prime(int n, double c);

/// log of (c/2) (e c / 4n)^{2n}, n >= 1.
double log_lambda_envelope_remark(int n, double c);
double lambda_envelope_remark(int n, double c);

/// [e c / 4], the empirical onset of super-exponential eigenvalue decay.
int decay_onset(double c);

struct BetaBound {
  double new_bound = 0.0;
  double log_new_bound = 0.0;
  /// Only defined for k >= 2([ec] + 1).
  std::optional<double> old_bound;
};

/// (c/2)^k sqrt(pi) / (Gamma(k+3/2) |mu_n|) and, where defined,
/// 2 / (|mu_n| 2^k).
BetaBound beta_coefficient_bound(int n, int k, const PswfBasis& basis);

/// Smallest N with sqrt(lambda_N) norm_l2 <= c^{-s} norm_hs, or n_max + 1.
int truncation_order(double c, double s, double norm_l2, double norm_hs,
                     const PswfBasis& basis);

/// Least-squares slope of log lambda_n over n in [from, min(from + span, n_max)].
double log_lambda_slope(const PswfBasis& basis, int from, int span = 20);

/// Largest second difference of log lambda_n over [from, n_max - 1]; <= 0 for a
/// concave sequence.
double log_lambda_max_curvature(const PswfBasis& basis, int from);

}  // namespace prolate
