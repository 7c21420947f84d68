#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prolate/spectral.hpp"

namespace prolate {

/// sum_{k=0}^{k_cut} 2^{-ks} cos(2^k x), or cos(2^k pi x) when periodic.
/// The periodic variant carries exact Fourier data and closed-form norms;
/// its H^s norm diverges as k_cut grows and is reported for the truncation.
FunctionSpec weierstrass(double s, bool periodic, int k_cut = 60);

/// Standard normals X_1 .. X_k_max. Generator: std::mt19937_64 seeded with
/// `seed`; each 64-bit draw u gives (u >> 11) * 2^-53, and consecutive pairs
/// (u1, u2) give r cos(2 pi u2), r sin(2 pi u2) with r = sqrt(-2 log(1 - u1)).
std::vector<double> brownian_normals(std::uint64_t seed, int k_max);

/// sum_{k=1}^{k_max} X_k k^{-s} cos(k pi x), X_k from brownian_normals.
FunctionSpec brownian(double s, std::uint64_t seed, int k_max = 500);

/// e^{i lambda x}.
FunctionSpec exponential(double lambda);

/// x^j.
FunctionSpec monomial(int j);

/// alpha_n = int e^{i lambda x} Pbar_n = i^n sqrt(2 pi / lambda) sqrt(n+1/2) J_{n+1/2}(lambda),
/// n = 0..n_max, lambda > 0.
std::vector<cplx> exponential_legendre_coeffs(double lambda, int n_max);

/// || e^{i lambda .} - sum_{n <= N} alpha_n Pbar_n ||_2 from the Bessel tail
/// sqrt((2 pi / lambda) sum_{n > N} (n+1/2) J_{n+1/2}^2). weighted = false drops
/// the (n+1/2) factor, which is the commonly quoted but unnormalized form.
double legendre_truncation_error(double lambda, int N, bool weighted = true);

/// Names such as "weierstrass:s=1.4:periodic", "brownian:s=1:seed=7",
/// "exp:lambda=50", "monomial:j=3". Throws std::invalid_argument.
FunctionSpec corpus_from_name(const std::string& name);

}  // namespace prolate
