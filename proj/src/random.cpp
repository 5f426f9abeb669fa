#include "whh/random.hpp"

#include <cmath>
#include <stdexcept>

namespace whh {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * m;
  have_spare_ = true;
  return u * m;
}

double Rng::gamma(double shape) {
  if (!(shape > 0.0)) {
    throw std::domain_error("Rng::gamma: shape must be positive");
  }
  if (shape < 1.0) {
    // G(a) = G(a+1) * U^{1/a}
    return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

void Rng::dirichlet(std::span<const double> conc, std::span<double> out) {
  if (conc.size() != out.size() || conc.empty()) {
    throw std::invalid_argument("Rng::dirichlet: size mismatch");
  }
  double total = 0.0;
  for (size_t i = 0; i < conc.size(); ++i) {
    out[i] = gamma(conc[i]);
    total += out[i];
  }
  for (auto& x : out) x /= total;
}

void Rng::uniform_simplex(std::span<double> out) {
  double total = 0.0;
  for (auto& x : out) {
    x = -std::log(uniform());
    total += x;
  }
  for (auto& x : out) x /= total;
}

int Rng::categorical(std::span<const double> probs) {
  const double u = uniform();
  double acc = 0.0;
  for (size_t i = 0; i + 1 < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace whh
