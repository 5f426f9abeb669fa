#pragma once

#include <span>

// Gamma-family special functions: log-gamma, the Pochhammer symbol
// (x)_k = x(x+1)...(x+k-1), its inverse root, and the beta function in
// several variables. All values are carried in log space where overflow
// is possible.

namespace whh::specfun {

// ln Gamma(x) for x > 0. Lanczos-type series; the error in log space stays
// below 1e-13 * max(1, |ln Gamma(x)|) on [1e-3, 1e3].
double log_gamma(double x);

// Rising factorial (x)_k for x > 0, k >= 0. k == 0 is the empty product.
// Direct product for k <= 32, log-gamma ratio beyond that.
double pochhammer(double x, int k);

// The unique positive root of (x)_k = c, for c > 0 and integer k >= 1.
// Bracketed on (0, c/(k-1)! + 1] and polished by safeguarded Newton; the
// result satisfies |(x)_k - c| <= 1e-12 * max(1, c).
double inverse_pochhammer(double c, int k);

// ln B_m(x_1,...,x_m) = sum_i ln Gamma(x_i) - ln Gamma(sum_i x_i), m >= 2.
// Symmetric in its arguments.
double log_multivariate_beta(std::span<const double> x);

}  // namespace whh::specfun
