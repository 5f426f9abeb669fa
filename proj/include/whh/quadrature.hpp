#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "whh/measures.hpp"

// Integration over the standard simplex against Uniform/Nu/Mu measures.
//
// The deterministic path decomposes the measure into Dirichlet components
// and evaluates each as an iterated 1-D adaptive Gauss-Kronrod integral.
// An axis whose concentration c is below 1 carries an integrable endpoint
// singularity t^{c-1}; the substitution t = R u^{1/c} absorbs it exactly,
// so the transformed integrand is bounded. The Monte Carlo path averages
// exact-sampler draws and reports a 3-sigma error bound.

namespace whh {

// Integrand over the simplex; receives all n+1 barycentric coordinates.
using Integrand = std::function<double(std::span<const double>)>;

enum class QuadMethod { Auto, NestedAdaptive, MonteCarlo };

struct QuadratureConfig {
  QuadMethod method = QuadMethod::Auto;
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  long max_evals = 10000000;
  std::uint64_t seed = 0;
};

struct IntegralEstimate {
  double value = 0.0;
  double error_bound = 0.0;  // adaptive: rule estimate; MC: 3x standard error
  long evals = 0;
  QuadMethod method_used = QuadMethod::NestedAdaptive;
};

// The evaluation budget ran out before the requested tolerance was met.
// Carries the best estimate obtained.
struct BudgetExhausted : std::runtime_error {
  explicit BudgetExhausted(IntegralEstimate e);
  IntegralEstimate best;
};

// The integrand produced a non-finite value; carries the offending point.
struct NonFiniteIntegrand : std::runtime_error {
  explicit NonFiniteIntegrand(std::vector<double> p);
  std::vector<double> point;
};

// Integral of f against the probability measure. Auto picks the nested
// adaptive path for dim <= 3 and Monte Carlo above.
IntegralEstimate integrate(const Integrand& f, const MeasureSpec& spec,
                           const QuadratureConfig& cfg);

// Integral of f against a single Dirichlet law on the simplex (always the
// nested adaptive path). conc has n+1 positive entries.
IntegralEstimate integrate_dirichlet(const Integrand& f,
                                     std::span<const double> conc,
                                     const QuadratureConfig& cfg);

// Lebesgue volume of the power simplex { t >= 0 : sum t_i^{alpha_i} <= 1 }.
double power_simplex_volume(std::span<const double> alpha);

// Normalized moment (1/|F|) * int_F t_i^{alpha_i} dt
//   = alpha_i^{-1} / (sum_j alpha_j^{-1} + 1),   i zero-based.
double power_simplex_moment(std::span<const double> alpha, int i);

}  // namespace whh
