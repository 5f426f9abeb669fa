#pragma once

#include <cstdint>
#include <random>
#include <span>

// Seed-deterministic sampling. The engine is std::mt19937_64 (fully
// specified by the standard), and every distribution transform is written
// out here instead of using std::*_distribution, whose sequences differ
// between standard libraries.

namespace whh {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via the Marsaglia polar method.
  double normal();

  // Gamma variate with the given shape and unit scale (Marsaglia-Tsang,
  // with the shape+1 boost for shape < 1).
  double gamma(double shape);

  // Dirichlet draw with the given concentration parameters; writes
  // conc.size() coordinates summing to 1.
  void dirichlet(std::span<const double> conc, std::span<double> out);

  // Uniform draw from { x >= 0 : sum x_i = 1 } via exponential spacings;
  // writes out.size() coordinates.
  void uniform_simplex(std::span<double> out);

  // Index in [0, probs.size()) drawn with the given probabilities
  // (assumed to sum to 1).
  int categorical(std::span<const double> probs);

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Stream-splitting helper for independent per-task seeds (splitmix64 step).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace whh
