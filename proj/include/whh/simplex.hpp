#pragma once

#include <span>
#include <vector>

// Domain types shared across the library: points of the standard simplex
// E_n = { t in R^n : t_i >= 0, sum t_i <= 1 }, weight tuples from its open
// interior, and the positive node tuples the means act on. Throughout,
// coordinate i = n (0-based) is the derived barycentric coordinate
// t_{n+1} = 1 - sum_{i<n} t_i.

namespace whh {

// Weight tuple (l_1,...,l_n) from int(E_n), stored together with the derived
// l_{n+1} = 1 - sum l_i and the cyclic successor l_{n+2} = l_1. The cyclic
// entry is stored rather than recomputed; it is the most error-prone index
// in the whole construction.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> lam);

  static WeightVector uniform(int n);  // all weights 1/(n+1)

  int dim() const { return n_; }      // n, the simplex dimension
  int count() const { return n_ + 1; }  // number of weights

  // Weight i, 0-based, i in [0, n].
  double operator[](int i) const { return ext_[static_cast<size_t>(i)]; }
  // Cyclic successor weight of entry i (entry n maps back to entry 0).
  double next(int i) const { return ext_[static_cast<size_t>(i) + 1]; }

  std::span<const double> weights() const {
    return {ext_.data(), static_cast<size_t>(n_ + 1)};
  }

 private:
  int n_;
  std::vector<double> ext_;  // l_1 ... l_{n+1}, l_1 again
};

// A point of E_n in barycentric form: n free coordinates plus the derived
// tail coordinate.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> free_coords);

  int dim() const { return static_cast<int>(bary_.size()) - 1; }
  double operator[](int i) const { return bary_[static_cast<size_t>(i)]; }
  std::span<const double> coords() const { return bary_; }  // all n+1
  std::span<const double> free() const {
    return {bary_.data(), bary_.size() - 1};
  }

 private:
  std::vector<double> bary_;  // n+1 coordinates, summing to 1
};

// Positive tuple (a_1,...,a_{n+1}) a mean acts on.
class NodeVector {
 public:
  explicit NodeVector(std::vector<double> values);

  int count() const { return static_cast<int>(a_.size()); }
  double operator[](int i) const { return a_[static_cast<size_t>(i)]; }
  std::span<const double> values() const { return a_; }

 private:
  std::vector<double> a_;
};

}  // namespace whh
