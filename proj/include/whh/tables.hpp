#pragma once

#include <string>
#include <vector>

#include "whh/quadrature.hpp"

// Built-in reference tables: literature values for the weighted
// logarithmic and identric means at fixed (weights, nodes) instances,
// recomputed here and compared. Two-node rows follow the published
// convention in which the row weight belongs to the second node, so they
// map onto WeightVector(1 - l). The sign rows witness that certain mean
// pairs are not comparable: the ordering flips between instances.

namespace whh {

struct TableRow {
  std::string table;     // output file stem
  std::string inputs;    // human-readable instance description
  std::string quantity;  // which mean
  double reference = 0.0;
  double computed = 0.0;
  double error_bound = 0.0;
  double abs_diff() const;
};

struct SignRow {
  std::string pair_name;
  std::string inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double error_bound = 0.0;  // combined quadrature bound
  int reference_sign = 0;    // +1: lhs > rhs in the literature, -1: lhs < rhs
  int computed_sign = 0;     // 0 when the margin is inside the error bound
};

struct TableSet {
  std::vector<TableRow> values;
  std::vector<SignRow> signs;

  // Every value row within tol of its reference and every sign row
  // reproducing its reference sign with margin beyond the error bound.
  bool all_ok(double tol) const;
};

TableSet compute_reference_tables(const QuadratureConfig& cfg);

// The shared acceptance tolerance for reference values (they are printed
// to five or six digits in the literature).
inline constexpr double kTableTolerance = 5e-4;

}  // namespace whh
