#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prolate/pswf_core.hpp"
#include "prolate/special_functions.hpp"

namespace prolate {

using cplx = std::complex<double>;
using Sampler = std::function<cplx(double)>;

enum class FunctionKind { Sampler, FourierSeries, Corpus };

/// b_k = (1/sqrt 2) int_{-1}^{1} f(x) e^{-i pi k x} dx.
struct FourierTerm {
  std::int64_t k = 0;
  cplx b;
};

/// f(x) = sum_j weight_j e^{i lambda_j x}; lets coefficients use the closed form.
struct ExponentialTerm {
  cplx weight;
  double lambda = 0.0;
};

struct FunctionSpec {
  FunctionKind kind = FunctionKind::Sampler;
  std::string name;
  Sampler sampler;
  /// Sparse Fourier data; fourier_complete means it represents f exactly.
  std::vector<FourierTerm> fourier;
  bool fourier_complete = false;
  std::vector<ExponentialTerm> exponentials;
  std::optional<int> monomial_degree;
  double s = 0.0;
  double norm_l2 = 0.0;
  /// NaN when unknown. For truncated series this is the norm of the truncation.
  double norm_hs = 0.0;
  /// ||f - f_[c/pi]||_{H^s}; NaN until with_tail_norm is applied.
  double norm_hs_tail = 0.0;
};

/// Plancherel on the Fourier data.
double fourier_l2_norm(const std::vector<FourierTerm>& terms);

/// (sum (1 + (pi k)^2)^order |b_k|^2)^{1/2}, over all terms or only |k| > c / pi.
double sobolev_norm(const std::vector<FourierTerm>& terms, double order);
double sobolev_tail_norm(const std::vector<FourierTerm>& terms, double order, double c);

/// Copy of f with norm_hs_tail filled from its Fourier data at bandwidth c.
FunctionSpec with_tail_norm(FunctionSpec f, double c);

/// Wraps a plain callable.
FunctionSpec make_sampler_spec(std::string name, Sampler f, double s = 0.0);

/// Builds a Fourier-series spec with sampler (1/sqrt2) sum b_k e^{i pi k x}.
FunctionSpec make_fourier_spec(std::string name, std::vector<FourierTerm> terms,
                               double s);

/// Order max(128, 2(N + c)).
int default_quadrature_order(int N, double c);

/// a_n = sum_l w_l f(x_l) psi_n(x_l) for n < N.
std::vector<cplx> coeffs_quadrature(const Sampler& f, const PswfBasis& basis,
                                    int N, const QuadratureRule& rule);

/// a_n(e^{i lambda .}) = int e^{i lambda x} psi_n(x) dx. Uses mu_n psi_n(lambda/c)
/// for |lambda| <= c and the Legendre-Bessel series otherwise.
cplx coeff_exponential(double lambda, const PswfBasis& basis, int n);

/// Same for n < N, sharing one Bessel sweep.
std::vector<cplx> coeffs_exponential(double lambda, const PswfBasis& basis, int N);

/// (-i)^j c^{-j} mu_n psi_n^{(j)}(0).
cplx coeff_monomial(int j, const PswfBasis& basis, int n);

/// a_n^K = (1/sqrt2) sum_k b_k a_n(e^{i pi k .}) for n < N, i.e.
/// (mu_n / sqrt2) sum_k b_k psi_n(k pi / c).
std::vector<cplx> coeffs_fourier(const FunctionSpec& f, const PswfBasis& basis, int N);

/// Closed forms when available (exponentials, monomial), else Fourier data,
/// else quadrature at the default order.
std::vector<cplx> coeffs_auto(const FunctionSpec& f, const PswfBasis& basis, int N);

/// S_N f(x) = sum_{n < N} a_n psi_n(x), |x| <= 1.
cplx truncated_sum(const std::vector<cplx>& coeffs, const PswfBasis& basis, int N,
                   double x);

/// [ (1/50) sum_{k=-50}^{50} |f(k/50) - g(k/50)|^2 ]^{1/2}.
double grid_error(const Sampler& f, const Sampler& approx);

/// ||psi_n||_inf on [-1, 1], 800-point grid with refinement, n = 0..n_max.
std::vector<double> psi_sup_norms(const PswfBasis& basis, int points = 800);

double bound_theorem4(double c, int N, double s, double norm_l2, double norm_hs,
                      const PswfBasis& basis, double K_const = 1.0);

/// Throws std::domain_error unless lambda_{n_max} <= 1e-18.
double bound_theorem5(double c, int N, double s, double norm_l2,
                      double norm_hs_tail, const PswfBasis& basis,
                      const std::vector<double>& supnorms);

double bound_prop6(double eps_T, double eps_Omega, double lambda_N);

struct ExpansionReport {
  std::vector<cplx> coefficients;
  double grid_error = 0.0;
  std::optional<double> bound_t4;
  std::optional<double> bound_t5;
  std::optional<double> bound_p6;
  int N_used = 0;
  double c_used = 0.0;
};

/// Coefficients for n < N, grid error of S_N f, and whichever bounds the spec's
/// metadata supports.
ExpansionReport expand(const FunctionSpec& f, const PswfBasis& basis, int N);

std::string report_to_json(const ExpansionReport& report);

}  // namespace prolate
