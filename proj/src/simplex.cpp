#include "whh/simplex.hpp"

#include <stdexcept>
#include <string>

namespace whh {

WeightVector::WeightVector(std::vector<double> lam)
    : n_(static_cast<int>(lam.size())) {
  if (n_ < 1) {
    throw std::domain_error("WeightVector: needs at least one weight");
  }
  double sum = 0.0;
  for (double l : lam) {
    if (!(l > 0.0)) {
      throw std::domain_error(
          "WeightVector: weights must lie in the open interior int(E_n); "
          "got a nonpositive entry " +
          std::to_string(l));
    }
    sum += l;
  }
  const double tail = 1.0 - sum;
  if (!(tail > 0.0)) {
    throw std::domain_error(
        "WeightVector: weights must lie in the open interior int(E_n); "
        "entries sum to " +
        std::to_string(sum));
  }
  ext_ = std::move(lam);
  ext_.push_back(tail);     // l_{n+1}
  ext_.push_back(ext_[0]);  // cyclic l_{n+2} = l_1
}

WeightVector WeightVector::uniform(int n) {
  if (n < 1) throw std::domain_error("WeightVector: dimension must be >= 1");
  return WeightVector(std::vector<double>(static_cast<size_t>(n),
                                          1.0 / (n + 1)));
}

SimplexPoint::SimplexPoint(std::vector<double> free_coords)
    : bary_(std::move(free_coords)) {
  if (bary_.empty()) {
    throw std::domain_error("SimplexPoint: needs at least one coordinate");
  }
  double sum = 0.0;
  for (double t : bary_) {
    if (!(t >= 0.0)) {
      throw std::domain_error("SimplexPoint: coordinates must be >= 0, got " +
                              std::to_string(t));
    }
    sum += t;
  }
  if (sum > 1.0 + 1e-12) {
    throw std::domain_error(
        "SimplexPoint: coordinates sum to " + std::to_string(sum) +
        " > 1, outside the standard simplex");
  }
  bary_.push_back(sum < 1.0 ? 1.0 - sum : 0.0);
}

NodeVector::NodeVector(std::vector<double> values) : a_(std::move(values)) {
  if (a_.size() < 2) {
    throw std::domain_error("NodeVector: needs at least two entries");
  }
  for (double v : a_) {
    if (!(v > 0.0)) {
      throw std::domain_error("NodeVector: entries must be positive, got " +
                              std::to_string(v));
    }
  }
}

}  // namespace whh
