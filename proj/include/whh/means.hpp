#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "whh/quadrature.hpp"
#include "whh/simplex.hpp"

// Weighted multivariate means. The standard arithmetic/harmonic/geometric
// trio is closed-form; the logarithmic means (two distinct constructions)
// and the identric mean are integrals of pointwise means against the mu
// measure, whose coordinate expectations are exactly the weights:
//
//   logcal(a)   = int geometric_t(a) dmu(t)
//   logbb(a)    = ( int (arithmetic_t(a))^{-1} dmu(t) )^{-1}
//   identric(a) = exp( int log(arithmetic_t(a)) dmu(t) )
//
// Bivariate closed forms for the weighted logarithmic and identric means
// of two arguments are provided as well; their lambda weights the second
// argument, matching the a nabla_l b = (1-l)a + lb convention.

namespace whh {

enum class MeanKind {
  Arithmetic,
  Harmonic,
  Geometric,
  LogCal,
  LogBb,
  Identric,
  BivariateL,
  BivariateI,
};

struct MeanResult {
  double value = 0.0;
  double error_bound = 0.0;  // 0 for closed forms
  std::optional<IntegralEstimate> estimate;  // the underlying quadrature
};

double arithmetic_mean(const WeightVector& w, const NodeVector& a);
double harmonic_mean(const WeightVector& w, const NodeVector& a);
double geometric_mean(const WeightVector& w, const NodeVector& a);

MeanResult log_mean_cal(const WeightVector& w, const NodeVector& a,
                        const QuadratureConfig& cfg);
MeanResult log_mean_bb(const WeightVector& w, const NodeVector& a,
                       const QuadratureConfig& cfg);
MeanResult identric_mean(const WeightVector& w, const NodeVector& a,
                         const QuadratureConfig& cfg);

// The dual chain member: int harmonic_t(a) dmu(t), i.e. the reciprocal of
// logbb applied to the reciprocal nodes. Sits between the harmonic mean
// and logcal.
MeanResult harmonic_integral_dual(const WeightVector& w, const NodeVector& a,
                                  const QuadratureConfig& cfg);

// Closed forms for two nodes; lambda in [0,1] weights b, with the lambda
// = 0, 1 endpoints returning a, b exactly.
double bivariate_log_mean(double lambda, double a, double b);
double bivariate_identric_mean(double lambda, double a, double b);

// Unweighted logarithmic mean L(a,b) = (b-a)/(ln b - ln a) and identric
// mean I(a,b) = e^{-1} (b^b/a^a)^{1/(b-a)}.
double log_mean(double a, double b);
double identric(double a, double b);

// Uniform dispatcher over MeanKind (bivariate kinds require dim 1 and map
// the weight vector onto the second-argument convention).
MeanResult evaluate_mean(MeanKind kind, const WeightVector& w,
                         const NodeVector& a, const QuadratureConfig& cfg);

const char* mean_kind_name(MeanKind kind);
std::optional<MeanKind> parse_mean_kind(std::string_view name);

// Checks the defining properties of a weighted multivariate mean at one
// (weights, nodes) instance:
//   bounds    min a_i <= m <= max a_i
//   corner    at weights pushed to distance eps from each vertex, the
//             value stays inside the harmonic/arithmetic sandwich there
//   symmetry  at uniform weights, invariance under node permutations
//   partials  central-difference d m / d a_i at (1,...,1) equals weight i
struct AxiomReport {
  bool bounds_ok = false;
  bool corner_ok = false;
  bool symmetry_ok = false;
  bool partials_ok = false;
  double corner_margin = 0.0;   // most negative sandwich slack seen
  double symmetry_gap = 0.0;    // worst permutation discrepancy
  double partial_err = 0.0;     // worst |difference quotient - weight|
  bool all_ok() const {
    return bounds_ok && corner_ok && symmetry_ok && partials_ok;
  }
};

AxiomReport check_mean_axioms(MeanKind kind, const WeightVector& w,
                              const NodeVector& a,
                              const QuadratureConfig& cfg);

}  // namespace whh
