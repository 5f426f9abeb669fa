#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "whh/random.hpp"
#include "whh/simplex.hpp"

// The two weighted probability measures on the standard simplex behind the
// weighted Hermite-Hadamard chains, plus the uniform one:
//
//   nu:      density n! * sum_i l_i t_i^{e_i} with e_i the inverse-Pochhammer
//            exponents; a mixture of single-axis Dirichlet laws.
//   mu:      the Dirichlet law with concentration (l_1/l_{n+1}, ...,
//            l_n/l_{n+1}, 1); its coordinate means are exactly the weights.
//   uniform: n! dt, i.e. Dirichlet(1,...,1).

namespace whh {

// Raised when a density is evaluated at a boundary point where a negative
// exponent makes the power diverge.
struct SingularDensity : std::domain_error {
  using std::domain_error::domain_error;
};

// Exponents (e_1,...,e_{n+1}) of the nu density. Each e_i > -1 and
// (e_i + 1)_n = n! l_i / l_{i+1} with the cyclic successor convention.
struct ExponentVector {
  std::vector<double> exps;
};

ExponentVector lambda_exponents(const WeightVector& w);

// First moments of the coordinates under nu; n+1 entries in (0,1) summing
// to 1. These are the convex-combination coefficients of the nu chain.
std::vector<double> tilde_weights(const WeightVector& w);

double nu_density(const WeightVector& w, const SimplexPoint& t);
double mu_density(const WeightVector& w, const SimplexPoint& t);

struct DirichletComponent {
  double weight;
  std::vector<double> conc;  // n+1 positive concentration parameters
};

struct DirichletMixture {
  std::vector<DirichletComponent> components;
  double density(const SimplexPoint& t) const;
};

// nu as a mixture of n+1 Dirichlet laws: component i carries weight
// l_{i+1} (cyclic) and concentration 1 everywhere except e_i + 1 at slot i.
DirichletMixture nu_as_mixture(const WeightVector& w);

// mu as a single Dirichlet law: concentration
// (l_1/l_{n+1}, ..., l_n/l_{n+1}, 1).
std::vector<double> mu_as_dirichlet(const WeightVector& w);

enum class MeasureKind { Nu, Mu, Uniform };

// An immutable measure handle: kind + weights + the cached Dirichlet
// decomposition every consumer (densities, quadrature, sampling) works from.
class MeasureSpec {
 public:
  static MeasureSpec nu(WeightVector w);
  static MeasureSpec mu(WeightVector w);
  static MeasureSpec uniform(int n);

  MeasureKind kind() const { return kind_; }
  int dim() const { return n_; }
  const WeightVector& weights() const;            // Nu and Mu only
  const DirichletMixture& mixture() const { return mixture_; }
  double density(const SimplexPoint& t) const;

 private:
  MeasureSpec(MeasureKind kind, int n, std::shared_ptr<const WeightVector> w,
              DirichletMixture mixture);

  MeasureKind kind_;
  int n_;
  std::shared_ptr<const WeightVector> weights_;  // null for Uniform
  DirichletMixture mixture_;
};

// Streaming sampler; draws are i.i.d. from the measure and fully
// determined by the seed.
class SimplexSampler {
 public:
  SimplexSampler(const MeasureSpec& spec, std::uint64_t seed);
  // Writes the n+1 barycentric coordinates of one draw.
  void next(std::span<double> bary_out);

 private:
  const MeasureSpec& spec_;
  Rng rng_;
  std::vector<double> comp_weights_;
};

std::vector<SimplexPoint> sample(const MeasureSpec& spec, int count,
                                 std::uint64_t seed);

}  // namespace whh
