#pragma once

#include <complex>
#include <string>
#include <vector>

namespace prolate {

/// Eigenpairs of a real symmetric tridiagonal matrix.
/// vectors is column-major: component i of eigenvector j is vectors[j * m + i].
/// Eigenvalues ascend.
struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<double> vectors;
};

/// Implicit-shift QL. diag has m entries, offdiag m-1 (offdiag[i] couples i and
/// i+1). An off-diagonal entry is deflated once it falls below tolerance times
/// the adjacent diagonal magnitudes. Throws std::runtime_error when an
/// eigenvalue needs more than max_iterations sweeps.
TridiagonalEigen tridiagonal_eigen(std::vector<double> diag,
                                   std::vector<double> offdiag,
                                   double tolerance = 2.220446049250313e-16,
                                   int max_iterations = 60);

struct EigSystemOptions {
  /// Number of Legendre indices kept (K + 1). 0 picks n_max + 2c + 30.
  int matrix_dimension = 0;
  /// QL deflation threshold, relative to neighbouring diagonal magnitude.
  /// Clamped below at machine epsilon.
  double eigensolver_tolerance = 2.220446049250313e-16;
  /// Largest |beta_K^n| (and |beta_{K-1}^n|) accepted before re-solving.
  double tail_tolerance = 1e-13;
  int max_dimension = 4096;
};

struct PswfBasis {
  double c = 0.0;
  int n_max = 0;
  int K = 0;
  std::vector<double> chi;
  /// beta[n][k], 0 <= k <= K.
  std::vector<std::vector<double>> beta;
  /// Empty when c = 0.
  std::vector<std::complex<double>> mu;
  std::vector<double> lambda;
  /// log|mu_n|; stays finite where mu_n and lambda_n underflow.
  std::vector<double> log_abs_mu;

  bool has_mu() const { return !mu.empty(); }
  /// log lambda_n = log(c / 2 pi) + 2 log|mu_n|.
  double log_lambda(int n) const;
};

/// Solves the even/odd Legendre-coefficient eigensystems for bandwidth c and
/// keeps psi_0 .. psi_{n_max}. Throws on eigensolver failure, on a tail test
/// still failing at opts.max_dimension, and on any violated basis invariant.
PswfBasis build_basis(double c, int n_max, const EigSystemOptions& opts = {});

/// psi_n(x) for |x| <= 1 by Clenshaw summation of the Legendre series.
double eval_inside(const PswfBasis& basis, int n, double x);

/// psi_0(x) .. psi_{n_max}(x) for |x| <= 1 from one Legendre sweep.
std::vector<double> eval_inside_all(const PswfBasis& basis, double x);

/// psi_n(x) for |x| > 1 through the Bessel-series extension. Needs c > 0.
double eval_outside(const PswfBasis& basis, int n, double x);

/// Dispatches to eval_inside or eval_outside.
double eval_psi(const PswfBasis& basis, int n, double x);

/// psi_n'(x) for |x| < 1.
double eval_derivative(const PswfBasis& basis, int n, double x);

/// psi_n''(x) for |x| < 1.
double eval_second_derivative(const PswfBasis& basis, int n, double x);

/// psi_n(1) = sum_k beta_k sqrt(k + 1/2).
double psi_at_one(const PswfBasis& basis, int n);

/// psi_n^{(k)}(0) from the ODE recurrence at the origin.
double derivative_at_zero(const PswfBasis& basis, int n, int k);

/// psi_n^{(0)}(0) .. psi_n^{(k_max)}(0).
std::vector<double> derivatives_at_zero(const PswfBasis& basis, int n,
                                        int k_max);

/// mu_n from the closed form at x = 1:
/// sqrt(2 pi / c) sum_k i^k sqrt(k+1/2) beta_k J_{k+1/2}(c) / psi_n(1).
/// Loses relative accuracy once |mu_n| is small or psi_n(1) is tiny; the basis
/// itself stores mu from the ratio recursion.
std::complex<double> mu_flammer(const PswfBasis& basis, int n);

/// Failed invariants, human-readable; empty when all hold.
std::vector<std::string> basis_invariant_violations(const PswfBasis& basis);

/// Non-fatal: max over n of |arg(mu_n / i^n)|.
double mu_phase_deviation(const PswfBasis& basis);

std::string basis_to_json(const PswfBasis& basis);
PswfBasis basis_from_json(const std::string& text);
void save_basis(const PswfBasis& basis, const std::string& path);
PswfBasis load_basis(const std::string& path);

}  // namespace prolate
