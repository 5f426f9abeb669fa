#include "whh/measures.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "whh/specfun.hpp"

namespace whh {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int j = 2; j <= n; ++j) f *= j;
  return f;
}

// t^e with the boundary convention used by all densities here: t = 0 is an
// error for e < 0, the constant term for e = 0, and plain zero for e > 0.
double boundary_pow(double t, double e) {
  if (t > 0.0) return std::pow(t, e);
  if (e < 0.0) {
    throw SingularDensity(
        "density: coordinate 0 with negative exponent " + std::to_string(e));
  }
  return e == 0.0 ? 1.0 : 0.0;
}

}  // namespace

ExponentVector lambda_exponents(const WeightVector& w) {
  const int n = w.dim();
  const double nfact = factorial(n);
  ExponentVector out;
  out.exps.reserve(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    out.exps.push_back(
        specfun::inverse_pochhammer(nfact * w[i] / w.next(i), n) - 1.0);
  }
  return out;
}

std::vector<double> tilde_weights(const WeightVector& w) {
  const int n = w.dim();
  const ExponentVector ev = lambda_exponents(w);
  std::vector<double> out(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    double s = w.next(i) * (ev.exps[static_cast<size_t>(i)] + 1.0) /
               (ev.exps[static_cast<size_t>(i)] + n + 1.0);
    for (int j = 0; j <= n; ++j) {
      if (j == i) continue;
      s += w.next(j) / (ev.exps[static_cast<size_t>(j)] + n + 1.0);
    }
    out[static_cast<size_t>(i)] = s;
  }
  return out;
}

double nu_density(const WeightVector& w, const SimplexPoint& t) {
  if (t.dim() != w.dim()) {
    throw std::invalid_argument("nu_density: dimension mismatch");
  }
  const int n = w.dim();
  const ExponentVector ev = lambda_exponents(w);
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    s += w[i] * boundary_pow(t[i], ev.exps[static_cast<size_t>(i)]);
  }
  return factorial(n) * s;
}

double mu_density(const WeightVector& w, const SimplexPoint& t) {
  if (t.dim() != w.dim()) {
    throw std::invalid_argument("mu_density: dimension mismatch");
  }
  const int n = w.dim();
  std::vector<double> conc = mu_as_dirichlet(w);
  const double log_norm = specfun::log_multivariate_beta(conc);
  double log_prod = 0.0;
  for (int i = 0; i < n; ++i) {
    const size_t si = static_cast<size_t>(i);
    const double e = conc[si] - 1.0;
    if (t[i] > 0.0) {
      log_prod += e * std::log(t[i]);
    } else if (e < 0.0) {
      throw SingularDensity(
          "mu_density: coordinate 0 with negative exponent " +
          std::to_string(e));
    } else if (e > 0.0) {
      return 0.0;
    }
  }
  return std::exp(log_prod - log_norm);
}

double DirichletMixture::density(const SimplexPoint& t) const {
  double total = 0.0;
  for (const auto& comp : components) {
    const double log_norm = specfun::log_multivariate_beta(comp.conc);
    double log_prod = 0.0;
    bool zero = false;
    for (size_t i = 0; i < comp.conc.size(); ++i) {
      const double e = comp.conc[i] - 1.0;
      if (e == 0.0) continue;
      const double ti = t[static_cast<int>(i)];
      if (ti > 0.0) {
        log_prod += e * std::log(ti);
      } else if (e < 0.0) {
        throw SingularDensity(
            "mixture density: coordinate 0 with negative exponent " +
            std::to_string(e));
      } else {
        zero = true;
        break;
      }
    }
    if (!zero) total += comp.weight * std::exp(log_prod - log_norm);
  }
  return total;
}

DirichletMixture nu_as_mixture(const WeightVector& w) {
  const int n = w.dim();
  const ExponentVector ev = lambda_exponents(w);
  DirichletMixture mix;
  mix.components.reserve(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    DirichletComponent comp;
    comp.weight = w.next(i);
    comp.conc.assign(static_cast<size_t>(n) + 1, 1.0);
    comp.conc[static_cast<size_t>(i)] = ev.exps[static_cast<size_t>(i)] + 1.0;
    mix.components.push_back(std::move(comp));
  }
  return mix;
}

std::vector<double> mu_as_dirichlet(const WeightVector& w) {
  const int n = w.dim();
  std::vector<double> conc(static_cast<size_t>(n) + 1);
  for (int i = 0; i < n; ++i) {
    conc[static_cast<size_t>(i)] = w[i] / w[n];
  }
  conc[static_cast<size_t>(n)] = 1.0;
  return conc;
}

MeasureSpec::MeasureSpec(MeasureKind kind, int n,
                         std::shared_ptr<const WeightVector> w,
                         DirichletMixture mixture)
    : kind_(kind), n_(n), weights_(std::move(w)), mixture_(std::move(mixture)) {}

MeasureSpec MeasureSpec::nu(WeightVector w) {
  DirichletMixture mix = nu_as_mixture(w);
  const int n = w.dim();
  return MeasureSpec(MeasureKind::Nu, n,
                     std::make_shared<const WeightVector>(std::move(w)),
                     std::move(mix));
}

MeasureSpec MeasureSpec::mu(WeightVector w) {
  DirichletMixture mix;
  mix.components.push_back({1.0, mu_as_dirichlet(w)});
  const int n = w.dim();
  return MeasureSpec(MeasureKind::Mu, n,
                     std::make_shared<const WeightVector>(std::move(w)),
                     std::move(mix));
}

MeasureSpec MeasureSpec::uniform(int n) {
  if (n < 1) throw std::domain_error("MeasureSpec: dimension must be >= 1");
  DirichletMixture mix;
  mix.components.push_back(
      {1.0, std::vector<double>(static_cast<size_t>(n) + 1, 1.0)});
  return MeasureSpec(MeasureKind::Uniform, n, nullptr, std::move(mix));
}

const WeightVector& MeasureSpec::weights() const {
  if (!weights_) {
    throw std::logic_error("MeasureSpec: the uniform measure has no weights");
  }
  return *weights_;
}

double MeasureSpec::density(const SimplexPoint& t) const {
  if (t.dim() != n_) {
    throw std::invalid_argument("MeasureSpec::density: dimension mismatch");
  }
  return mixture_.density(t);
}

SimplexSampler::SimplexSampler(const MeasureSpec& spec, std::uint64_t seed)
    : spec_(spec), rng_(seed) {
  for (const auto& comp : spec.mixture().components) {
    comp_weights_.push_back(comp.weight);
  }
}

void SimplexSampler::next(std::span<double> bary_out) {
  const size_t m = static_cast<size_t>(spec_.dim()) + 1;
  if (bary_out.size() != m) {
    throw std::invalid_argument("SimplexSampler: output size mismatch");
  }
  switch (spec_.kind()) {
    case MeasureKind::Uniform:
      rng_.uniform_simplex(bary_out);
      return;
    case MeasureKind::Mu:
      rng_.dirichlet(spec_.mixture().components[0].conc, bary_out);
      return;
    case MeasureKind::Nu: {
      const int c = rng_.categorical(comp_weights_);
      rng_.dirichlet(spec_.mixture().components[static_cast<size_t>(c)].conc,
                     bary_out);
      return;
    }
  }
}

std::vector<SimplexPoint> sample(const MeasureSpec& spec, int count,
                                 std::uint64_t seed) {
  if (count < 0) throw std::domain_error("sample: count must be >= 0");
  std::vector<SimplexPoint> out;
  out.reserve(static_cast<size_t>(count));
  SimplexSampler sampler(spec, seed);
  std::vector<double> bary(static_cast<size_t>(spec.dim()) + 1);
  for (int i = 0; i < count; ++i) {
    sampler.next(bary);
    out.emplace_back(
        std::vector<double>(bary.begin(), bary.end() - 1));
  }
  return out;
}

}  // namespace whh
