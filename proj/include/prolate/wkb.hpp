#pragma once

#include <utility>

#include "prolate/pswf_core.hpp"
#include "prolate/special_functions.hpp"

namespace prolate {

struct WkbModel {
  int n = 0;
  double c = 0.0;
  double chi = 0.0;
  /// c^2 / chi_n.
  double q = 0.0;
  /// psi_n(1) / chi_n^{1/4}.
  double A = 0.0;
  PhaseIntegral phase{0.0};
};

/// Builds the model for psi_n of the given basis. Throws std::domain_error when
/// q >= 1.
WkbModel make_wkb_model(const PswfBasis& basis, int n);

/// A chi^{1/4} sqrt(S_q(|x|)) J0(sqrt(chi) S_q(|x|)) / ((1-x^2)(1-q x^2))^{1/4},
/// odd or even in x with n. At |x| = 1 returns the limit +-A chi^{1/4}.
double wkb_eval(const WkbModel& model, double x);

/// Diagnostic interval for A^2 from user-supplied constants C (in C_q) and C'.
/// The lower end is clamped at 0; the upper end is +inf when its denominator
/// is not positive.
std::pair<double, double> amplitude_interval(const WkbModel& model, double C,
                                             double C_prime);

/// sqrt(n+1/2) (arccos x / sqrt(1-x^2))^{1/2} J0((n+1/2) arccos x) on [0, 1].
double wkb_legendre(int n, double x);

/// Grid sup over [-1, 1] of |psi_n - Pbar_n|.
double legendre_proximity(const PswfBasis& basis, int n, int points = 400);

/// Grid sup over [-1, 1] of |psi_n - wkb_eval|.
double wkb_residual(const PswfBasis& basis, int n, int points = 400);

/// Grid sup over [0, 1] of |wkb_legendre - Pbar_n|.
double wkb_legendre_error(int n, int points = 400);

/// Bandwidth c with c^2 / chi_n(c) = q, by fixed-point iteration.
double bandwidth_for_q(int n, double q);

}  // namespace prolate
