#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "whh/quadrature.hpp"
#include "whh/simplex.hpp"

// Weighted Hermite-Hadamard chains over the simplex measures: for convex f
// and nodes p_1..p_{n+1},
//
//   f(sum c_i p_i)  <=  int f(sum t_i p_i) dm(t)  <=  sum c_i f(p_i),
//
// where the coefficients c are the tilde weights when m = nu and the plain
// weights when m = mu; both inequalities reverse for concave f. The checker
// reports the three members and the chain slack against the quadrature
// error bound.

namespace whh {

struct TestFunction {
  std::string name;
  int arity = 1;        // domain dimension; 1 = scalar nodes
  bool convex = true;   // false declares a concave function
  std::function<double(std::span<const double>)> eval;
};

TestFunction tf_exp();
TestFunction tf_square();
TestFunction tf_neg_log();     // convex on (0, inf)
TestFunction tf_reciprocal();  // convex on (0, inf)
TestFunction tf_log();         // concave on (0, inf)
TestFunction tf_log_sum_exp(int arity);
TestFunction tf_quad_form(std::vector<std::vector<double>> psd);

// Built-in lookup for the CLI: exp, square, neglog, recip, log,
// logsumexp, quadform (identity form). arity is only used by the last two.
std::optional<TestFunction> make_test_function(std::string_view name,
                                               int arity);

using NodeList = std::vector<std::vector<double>>;

struct HHReport {
  double left = 0.0;
  IntegralEstimate middle;
  double right = 0.0;
  std::pair<double, double> slack;  // (middle - left, right - middle)
  bool chain_ok = false;     // oriented slacks >= -(error bound)
  bool convexity_ok = false;  // random midpoint spot-check of the declaration
};

HHReport hh_nu(const TestFunction& f, const WeightVector& w,
               const NodeList& nodes, const QuadratureConfig& cfg);
HHReport hh_mu(const TestFunction& f, const WeightVector& w,
               const NodeList& nodes, const QuadratureConfig& cfg);

// Scalar-node convenience wrappers.
HHReport hh_nu(const TestFunction& f, const WeightVector& w,
               std::span<const double> nodes, const QuadratureConfig& cfg);
HHReport hh_mu(const TestFunction& f, const WeightVector& w,
               std::span<const double> nodes, const QuadratureConfig& cfg);

struct AuditViolation {
  int trial = 0;
  std::string function;
  int dim = 0;
  MeasureKind measure = MeasureKind::Nu;
  double slack = 0.0;
};

struct AuditSummary {
  int trials = 0;
  int passes = 0;
  int failures = 0;
  double worst_slack = 0.0;  // most negative oriented slack seen
  std::vector<AuditViolation> violations;
};

// Random chains across both measures, dimensions 1..3 and the built-in
// function set (exp, square, -log as concave log, 1/x, log-sum-exp and a
// random positive-semidefinite quadratic form). Failures are recorded, not
// thrown. Identical seeds give identical summaries.
AuditSummary randomized_audit(std::uint64_t seed, int trials,
                              const QuadratureConfig& cfg);

}  // namespace whh
