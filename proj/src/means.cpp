#include "whh/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "whh/measures.hpp"
#include "whh/random.hpp"

namespace whh {

namespace {

void require_matching(const WeightVector& w, const NodeVector& a) {
  if (a.count() != w.count()) {
    throw std::invalid_argument(
        "means: node count " + std::to_string(a.count()) +
        " does not match weight count " + std::to_string(w.count()));
  }
}

MeanResult from_integral(double value, double error_bound,
                         IntegralEstimate est) {
  return {value, error_bound, est};
}

}  // namespace

double arithmetic_mean(const WeightVector& w, const NodeVector& a) {
  require_matching(w, a);
  double s = 0.0;
  for (int i = 0; i < a.count(); ++i) s += w[i] * a[i];
  return s;
}

double harmonic_mean(const WeightVector& w, const NodeVector& a) {
  require_matching(w, a);
  double s = 0.0;
  for (int i = 0; i < a.count(); ++i) s += w[i] / a[i];
  return 1.0 / s;
}

double geometric_mean(const WeightVector& w, const NodeVector& a) {
  require_matching(w, a);
  double s = 0.0;
  for (int i = 0; i < a.count(); ++i) s += w[i] * std::log(a[i]);
  return std::exp(s);
}

MeanResult log_mean_cal(const WeightVector& w, const NodeVector& a,
                        const QuadratureConfig& cfg) {
  require_matching(w, a);
  std::vector<double> p(static_cast<size_t>(a.count()));
  for (int i = 0; i < a.count(); ++i) {
    p[static_cast<size_t>(i)] = std::log(a[i]);
  }
  Integrand f = [&p](std::span<const double> t) {
    double s = 0.0;
    for (size_t i = 0; i < t.size(); ++i) s += t[i] * p[i];
    return std::exp(s);
  };
  IntegralEstimate est = integrate(f, MeasureSpec::mu(w), cfg);
  return from_integral(est.value, est.error_bound, est);
}

MeanResult log_mean_bb(const WeightVector& w, const NodeVector& a,
                       const QuadratureConfig& cfg) {
  require_matching(w, a);
  Integrand f = [&a](std::span<const double> t) {
    double s = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
      s += t[i] * a[static_cast<int>(i)];
    }
    return 1.0 / s;
  };
  IntegralEstimate est = integrate(f, MeasureSpec::mu(w), cfg);
  const double value = 1.0 / est.value;
  // d(1/x) error transport
  return from_integral(value, est.error_bound * value * value, est);
}

MeanResult identric_mean(const WeightVector& w, const NodeVector& a,
                         const QuadratureConfig& cfg) {
  require_matching(w, a);
  Integrand f = [&a](std::span<const double> t) {
    double s = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
      s += t[i] * a[static_cast<int>(i)];
    }
    return std::log(s);
  };
  IntegralEstimate est = integrate(f, MeasureSpec::mu(w), cfg);
  const double value = std::exp(est.value);
  return from_integral(value, est.error_bound * value, est);
}

MeanResult harmonic_integral_dual(const WeightVector& w, const NodeVector& a,
                                  const QuadratureConfig& cfg) {
  require_matching(w, a);
  Integrand f = [&a](std::span<const double> t) {
    double s = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
      s += t[i] / a[static_cast<int>(i)];
    }
    return 1.0 / s;
  };
  IntegralEstimate est = integrate(f, MeasureSpec::mu(w), cfg);
  return from_integral(est.value, est.error_bound, est);
}

namespace {

void require_bivariate_inputs(double lambda, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("bivariate mean: arguments must be positive");
  }
  if (!(lambda >= 0.0) || !(lambda <= 1.0)) {
    throw std::domain_error("bivariate mean: lambda must lie in [0,1]");
  }
}

}  // namespace

double bivariate_log_mean(double lambda, double a, double b) {
  require_bivariate_inputs(lambda, a, b);
  if (lambda == 0.0) return a;
  if (lambda == 1.0) return b;
  const double dlog = std::log(a) - std::log(b);
  if (std::abs(dlog) < 1e-9) return a;  // continuity at a = b
  const double gmean = std::exp((1.0 - lambda) * std::log(a) +
                                lambda * std::log(b));
  const double num = (1.0 - lambda) / lambda * (a - gmean) +
                     lambda / (1.0 - lambda) * (gmean - b);
  return num / dlog;
}

double bivariate_identric_mean(double lambda, double a, double b) {
  require_bivariate_inputs(lambda, a, b);
  if (lambda == 0.0) return a;
  if (lambda == 1.0) return b;
  if (std::abs(a - b) < 1e-9 * std::max(a, b)) return a;  // continuity
  const double nabla = (1.0 - lambda) * a + lambda * b;
  const double e1 =
      (1.0 - 2.0 * lambda) * nabla / (lambda * (1.0 - lambda) * (b - a));
  const double log_ratio = (lambda * b / (1.0 - lambda)) * std::log(b) -
                           ((1.0 - lambda) * a / lambda) * std::log(a);
  return std::exp(-1.0 + e1 * std::log(nabla) + log_ratio / (b - a));
}

double log_mean(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("log_mean: arguments must be positive");
  }
  const double dlog = std::log(b) - std::log(a);
  if (std::abs(dlog) < 1e-9) return a;
  return (b - a) / dlog;
}

double identric(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("identric: arguments must be positive");
  }
  if (std::abs(a - b) < 1e-9 * std::max(a, b)) return a;
  return std::exp(-1.0 + (b * std::log(b) - a * std::log(a)) / (b - a));
}

MeanResult evaluate_mean(MeanKind kind, const WeightVector& w,
                         const NodeVector& a, const QuadratureConfig& cfg) {
  switch (kind) {
    case MeanKind::Arithmetic:
      return {arithmetic_mean(w, a), 0.0, std::nullopt};
    case MeanKind::Harmonic:
      return {harmonic_mean(w, a), 0.0, std::nullopt};
    case MeanKind::Geometric:
      return {geometric_mean(w, a), 0.0, std::nullopt};
    case MeanKind::LogCal:
      return log_mean_cal(w, a, cfg);
    case MeanKind::LogBb:
      return log_mean_bb(w, a, cfg);
    case MeanKind::Identric:
      return identric_mean(w, a, cfg);
    case MeanKind::BivariateL:
    case MeanKind::BivariateI: {
      require_matching(w, a);
      if (w.dim() != 1) {
        throw std::invalid_argument(
            "means: bivariate closed forms require exactly two nodes");
      }
      // w[0] weights the first node; the closed forms weight the second.
      const double lambda = 1.0 - w[0];
      const double v = kind == MeanKind::BivariateL
                           ? bivariate_log_mean(lambda, a[0], a[1])
                           : bivariate_identric_mean(lambda, a[0], a[1]);
      return {v, 0.0, std::nullopt};
    }
  }
  throw std::logic_error("evaluate_mean: unknown kind");
}

const char* mean_kind_name(MeanKind kind) {
  switch (kind) {
    case MeanKind::Arithmetic: return "arithmetic";
    case MeanKind::Harmonic: return "harmonic";
    case MeanKind::Geometric: return "geometric";
    case MeanKind::LogCal: return "logcal";
    case MeanKind::LogBb: return "logbb";
    case MeanKind::Identric: return "identric";
    case MeanKind::BivariateL: return "bivl";
    case MeanKind::BivariateI: return "bivi";
  }
  return "?";
}

std::optional<MeanKind> parse_mean_kind(std::string_view name) {
  for (MeanKind k :
       {MeanKind::Arithmetic, MeanKind::Harmonic, MeanKind::Geometric,
        MeanKind::LogCal, MeanKind::LogBb, MeanKind::Identric,
        MeanKind::BivariateL, MeanKind::BivariateI}) {
    if (name == mean_kind_name(k)) return k;
  }
  return std::nullopt;
}

AxiomReport check_mean_axioms(MeanKind kind, const WeightVector& w,
                              const NodeVector& a,
                              const QuadratureConfig& cfg) {
  require_matching(w, a);
  const int n = w.dim();
  AxiomReport report;

  // (i) min-max bounds
  {
    MeanResult m = evaluate_mean(kind, w, a, cfg);
    const double lo = *std::min_element(a.values().begin(), a.values().end());
    const double hi = *std::max_element(a.values().begin(), a.values().end());
    const double slack = m.error_bound + 1e-12 * hi;
    report.bounds_ok = (m.value >= lo - slack) && (m.value <= hi + slack);
  }

  // (ii) corner behavior: weights at distance eps from each vertex keep
  // the value inside the harmonic/arithmetic sandwich there, which pins
  // the vertex limit without ever leaving the open simplex. The sandwich
  // is O(eps) wide, so these integrals run at their own relaxed tolerance
  // (their near-vertex measures are the most expensive to integrate).
  {
    const double eps = 1e-3;
    QuadratureConfig corner_cfg = cfg;
    corner_cfg.abs_tol = std::max(cfg.abs_tol, 1e-6);
    corner_cfg.rel_tol = std::max(cfg.rel_tol, 1e-6);
    corner_cfg.max_evals = std::max(cfg.max_evals, 40000000L);
    report.corner_ok = true;
    report.corner_margin = std::numeric_limits<double>::infinity();
    for (int corner = 0; corner <= n; ++corner) {
      std::vector<double> lam(static_cast<size_t>(n), eps / (n + 1));
      if (corner < n) {
        lam[static_cast<size_t>(corner)] = 1.0 - eps + eps / (n + 1);
      }
      WeightVector wc(lam);
      MeanResult m = evaluate_mean(kind, wc, a, corner_cfg);
      const double lo = harmonic_mean(wc, a);
      const double hi = arithmetic_mean(wc, a);
      const double slack = m.error_bound + 1e-9 * hi;
      const double margin =
          std::min(m.value - (lo - slack), (hi + slack) - m.value);
      report.corner_margin = std::min(report.corner_margin, margin);
      if (margin < 0.0) report.corner_ok = false;
    }
  }

  // (iii) symmetry at uniform weights under random node permutations
  {
    WeightVector we = WeightVector::uniform(n);
    MeanResult base = evaluate_mean(kind, we, a, cfg);
    std::vector<double> nodes(a.values().begin(), a.values().end());
    Rng rng(cfg.seed ^ 0x5ca1ab1eULL);
    report.symmetry_ok = true;
    report.symmetry_gap = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
      // Fisher-Yates with the deterministic engine
      std::vector<double> perm = nodes;
      for (size_t i = perm.size() - 1; i > 0; --i) {
        const size_t j = static_cast<size_t>(rng.uniform() * (i + 1));
        std::swap(perm[i], perm[std::min(j, i)]);
      }
      MeanResult mp = evaluate_mean(kind, we, NodeVector(perm), cfg);
      const double gap = std::abs(mp.value - base.value);
      const double slack = base.error_bound + mp.error_bound +
                           1e-9 * (1.0 + std::abs(base.value));
      report.symmetry_gap = std::max(report.symmetry_gap, gap);
      if (gap > slack) report.symmetry_ok = false;
    }
  }

  // (iv) partial derivatives at (1,...,1) equal the weights
  {
    const double h = 1e-4;
    report.partials_ok = true;
    report.partial_err = 0.0;
    for (int i = 0; i <= n; ++i) {
      std::vector<double> up(static_cast<size_t>(n) + 1, 1.0);
      std::vector<double> dn(static_cast<size_t>(n) + 1, 1.0);
      up[static_cast<size_t>(i)] += h;
      dn[static_cast<size_t>(i)] -= h;
      MeanResult mu_ = evaluate_mean(kind, w, NodeVector(up), cfg);
      MeanResult md = evaluate_mean(kind, w, NodeVector(dn), cfg);
      const double fd = (mu_.value - md.value) / (2.0 * h);
      const double err = std::abs(fd - w[i]);
      report.partial_err = std::max(report.partial_err, err);
      if (err > 1e-4) report.partials_ok = false;
    }
  }

  return report;
}

}  // namespace whh
