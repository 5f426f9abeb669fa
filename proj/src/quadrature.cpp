#include "whh/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "whh/specfun.hpp"

namespace whh {

BudgetExhausted::BudgetExhausted(IntegralEstimate e)
    : std::runtime_error(
          "quadrature: evaluation budget exhausted at error bound " +
          std::to_string(e.error_bound)),
      best(e) {}

NonFiniteIntegrand::NonFiniteIntegrand(std::vector<double> p)
    : std::runtime_error("quadrature: integrand is not finite"),
      point(std::move(p)) {}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 15-point Kronrod abscissae (positive half) with the embedded 7-point
// Gauss rule on the odd-indexed entries.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct RuleResult {
  double value;
  double err;
  double resabs;
};

// One Gauss-Kronrod 7-15 application with the usual scaled error estimate.
template <class F>
RuleResult gk15(F&& f, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  double fv1[7], fv2[7];

  const double fc = f(centr);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    fv1[jtw] = f(centr - absc);
    fv2[jtw] = f(centr + absc);
    const double fsum = fv1[jtw] + fv2[jtw];
    resg += kWg[j] * fsum;
    resk += kWgk[jtw] * fsum;
    resabs += kWgk[jtw] * (std::abs(fv1[jtw]) + std::abs(fv2[jtw]));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    fv1[jtwm1] = f(centr - absc);
    fv2[jtwm1] = f(centr + absc);
    const double fsum = fv1[jtwm1] + fv2[jtwm1];
    resk += kWgk[jtwm1] * fsum;
    resabs += kWgk[jtwm1] * (std::abs(fv1[jtwm1]) + std::abs(fv2[jtwm1]));
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }

  const double dh = std::abs(hlgth);
  resabs *= dh;
  resasc *= dh;
  double abserr = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0) {
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    abserr = std::max(kEps * 50.0 * resabs, abserr);
  }
  return {resk * hlgth, abserr, resabs};
}

struct EvalBudget {
  long max_evals;
  long evals = 0;
  bool exhausted = false;

  void charge(long k) {
    evals += k;
    if (evals >= max_evals) exhausted = true;
  }
};

struct Acc {
  double value = 0.0;
  double err = 0.0;
  double resabs = 0.0;  // estimate of the integral of |integrand|
};

struct Piece {
  double a, b, value, err, resabs;
};

struct WorseErr {
  bool operator()(const Piece& x, const Piece& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.a > y.a;  // deterministic tie-break
  }
};

constexpr int kMaxPiecesPerAxis = 4000;

// Globally adaptive 1-D integration of f over [a,b] down to absolute
// tolerance tol, starting from the partition induced by `breaks` (interior
// break points in ascending order; pass {} for a single starting panel).
// Splits the worst piece first; stops early (with an honest error bound)
// on the machine-precision floor or an exhausted budget.
template <class F>
Acc adaptive(F&& f, double a, double b, double tol, EvalBudget& budget,
             std::span<const double> breaks = {}) {
  std::priority_queue<Piece, std::vector<Piece>, WorseErr> heap;
  double total_err = 0.0;
  double total_resabs = 0.0;
  int pieces = 0;
  double lo = a;
  for (size_t i = 0; i <= breaks.size(); ++i) {
    const double hi = i < breaks.size() ? breaks[i] : b;
    if (!(hi > lo)) continue;
    RuleResult r = gk15(f, lo, hi);
    total_err += r.err;
    total_resabs += r.resabs;
    heap.push({lo, hi, r.value, r.err, r.resabs});
    ++pieces;
    lo = hi;
  }

  const double span = b - a;
  while (total_err > tol && total_err > 50.0 * kEps * total_resabs &&
         pieces < kMaxPiecesPerAxis && !budget.exhausted) {
    Piece worst = heap.top();
    if (worst.b - worst.a < 1e-14 * span) break;  // cannot refine further
    // The dominant piece is at its own rounding floor; splitting it only
    // trades one floored estimate for two.
    if (worst.err <= 60.0 * kEps * worst.resabs) break;
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    RuleResult left = gk15(f, worst.a, mid);
    RuleResult right = gk15(f, mid, worst.b);
    total_err += left.err + right.err - worst.err;
    total_resabs += left.resabs + right.resabs - worst.resabs;
    heap.push({worst.a, mid, left.value, left.err, left.resabs});
    heap.push({mid, worst.b, right.value, right.err, right.resabs});
    ++pieces;
  }

  // Re-sum the final partition in endpoint order so the result does not
  // depend on the heap's internal layout.
  std::vector<Piece> parts;
  parts.reserve(static_cast<size_t>(pieces));
  while (!heap.empty()) {
    parts.push_back(heap.top());
    heap.pop();
  }
  std::sort(parts.begin(), parts.end(),
            [](const Piece& x, const Piece& y) { return x.a < y.a; });
  Acc out;
  for (const Piece& p : parts) {
    out.value += p.value;
    out.err += p.err;
    out.resabs += p.resabs;
  }
  return out;
}

// Whether the power law s^{a-1} needs the substitution treatment. Large
// exponents are already C^5 or better at the endpoint; exponents at an
// integer (within floating noise) are analytic. Everything else defeats
// polynomial rules near the endpoint, however close to an integer it is.
bool fractional_power(double a) {
  if (a >= 6.0) return false;
  if (a < 0.5) return true;
  return std::abs(a - std::round(a)) > 1e-9;
}

// Substitution order: with u = (s/X)^{a/m}, m integer, the Jacobian power
// u^{m-1} is analytic and every composition term has regularity m/a >= 2.
int subst_order(double a) {
  return std::max(1, static_cast<int>(std::ceil(2.0 * a)));
}

// Initial break points for an integrand whose variation hides in a layer
// of width ~1/rate at the upper endpoint of [0, 1]. Without them the first
// rule's nodes can miss the layer entirely and report a spuriously
// converged constant.
std::vector<double> layer_breaks(double rate) {
  std::vector<double> breaks;
  if (rate < 16.0) return breaks;
  for (double k = 1024.0; k >= 1.0; k /= 4.0) {
    const double u = std::exp(-k / rate);
    if (u > 0.02 && u < 0.998) breaks.push_back(u);
  }
  return breaks;
}

// Integral of s^{a-1} * G(s) over [0, X] with G smooth at 0. Meaningfully
// fractional exponents are absorbed by u = (s/X)^{a/m}:
//   int = X^a (m/a) int_0^1 u^{m-1} G(X u^{m/a}) du,
// so no singular factor is ever evaluated pointwise.
template <class G>
Acc weighted_interval(double a, double X, G&& g, double tol,
                      EvalBudget& budget) {
  if (!(X > 0.0)) return {0.0, 0.0};
  if (a == 1.0) {
    return adaptive(g, 0.0, X, tol, budget);
  }
  if (!fractional_power(a)) {
    // the weight mass concentrates within ~X/a of the upper endpoint
    std::vector<double> breaks = layer_breaks(a);
    for (auto& u : breaks) u *= X;
    return adaptive(
        [&](double s) { return std::pow(s, a - 1.0) * g(s); }, 0.0, X, tol,
        budget, breaks);
  }
  const int m = subst_order(a);
  const double r = m / a;
  const double pre = std::pow(X, a) * r;
  // strong compression (r large) pushes all variation of g against u = 1
  const std::vector<double> breaks = layer_breaks(r);
  Acc raw = adaptive(
      [&](double u) {
        const double s = X * std::pow(u, r);
        const double w = m == 1 ? 1.0 : std::pow(u, m - 1.0);
        return w * g(s);
      },
      0.0, 1.0, tol / pre, budget, breaks);
  return {pre * raw.value, pre * raw.err, pre * raw.resabs};
}

class DirichletCubature {
 public:
  DirichletCubature(const Integrand& f, std::span<const double> conc,
                    EvalBudget& budget)
      : f_(f),
        conc_(conc.begin(), conc.end()),
        n_(static_cast<int>(conc.size()) - 1),
        budget_(budget),
        point_(conc.size(), 0.0),
        perm_(static_cast<size_t>(n_)),
        tail_exp_(conc.size(), 0.0),
        axis_norm_(conc.size(), 1.0) {
    // Free axes are integrated in order of decreasing |log c|: extreme
    // concentrations need boundary-layer refinement, and running them as
    // outer levels keeps that refinement from multiplying through the
    // nesting. The iterated integral itself is order-independent.
    for (int d = 0; d < n_; ++d) perm_[static_cast<size_t>(d)] = d;
    std::sort(perm_.begin(), perm_.end(), [&](int x, int y) {
      const double cx = std::abs(std::log(conc_[static_cast<size_t>(x)]));
      const double cy = std::abs(std::log(conc_[static_cast<size_t>(y)]));
      if (cx != cy) return cx > cy;
      return x < y;
    });
    // tail_exp_[d]: total concentration deeper than (permuted) axis d.
    // Conditioned on the outer coordinates, the scaled coordinate
    // t_d / R of a Dirichlet law is exactly Beta(conc_d, tail_exp_d), so
    // every level integrates against a normalized beta weight and all
    // intermediate values stay on the scale of f itself.
    double acc = conc_[static_cast<size_t>(n_)];
    for (int d = n_ - 1; d >= 0; --d) {
      const size_t sd = static_cast<size_t>(d);
      const double g = axis_conc(d);
      tail_exp_[sd] = acc;
      axis_norm_[sd] = std::exp(specfun::log_gamma(g) +
                                specfun::log_gamma(acc) -
                                specfun::log_gamma(g + acc));
      acc += g;
    }
  }

  // Expectation of f under the Dirichlet law with the given concentration.
  Acc run(double tol) { return level(0, 1.0, tol); }

 private:
  double eval_point() {
    budget_.charge(1);
    const double v = f_(std::span<const double>(point_));
    if (!std::isfinite(v)) throw NonFiniteIntegrand(point_);
    return v;
  }

  // Level-d integrand at scaled coordinate x in [0,1]: sets t_d = R x and
  // returns the plain f evaluation on the innermost axis (where the
  // derived coordinate becomes R - t_d), one full inner expectation
  // otherwise.
  double axis_conc(int d) const {
    return conc_[static_cast<size_t>(perm_[static_cast<size_t>(d)])];
  }

  double plain(int d, double R, double x, double inner_tol, double& worst) {
    const double s = R * x;
    point_[static_cast<size_t>(perm_[static_cast<size_t>(d)])] = s;
    if (d == n_ - 1) {
      point_[static_cast<size_t>(n_)] = std::max(R - s, 0.0);
      return eval_point();
    }
    Acc in = level(d + 1, R - s, inner_tol);
    worst = std::max(worst, in.err);
    return in.value;
  }

  // Conditional expectation over axis d given remaining mass R:
  //   (1/B(g,q)) int_0^1 x^{g-1} (1-x)^{q-1} inner(R x) dx.
  // A fractional q forces a split at 1/2 so each endpoint power law is
  // absorbed by its own substitution.
  Acc level(int d, double R, double tol) {
    const size_t sd = static_cast<size_t>(d);
    const double g = axis_conc(d);
    const double q = tail_exp_[sd];
    const double norm = axis_norm_[sd];

    if (!(R > 1e-300)) {
      // Degenerate corner: all deeper coordinates vanish.
      for (int j = d; j < n_; ++j) {
        point_[static_cast<size_t>(perm_[static_cast<size_t>(j)])] = 0.0;
      }
      point_[static_cast<size_t>(n_)] = std::max(R, 0.0);
      return {eval_point(), 0.0, 0.0};
    }

    const double inner_tol = 0.5 * tol;
    const double rule_tol = 0.5 * tol * norm;
    double worst = 0.0;

    auto lower = [&](double x) {
      const double v = plain(d, R, x, inner_tol, worst);
      return q == 1.0 ? v : std::pow(1.0 - x, q - 1.0) * v;
    };

    Acc out;
    if (!fractional_power(q)) {
      out = weighted_interval(g, 1.0, lower, rule_tol, budget_);
    } else {
      auto upper = [&](double y) {
        const double v = plain(d, R, 1.0 - y, inner_tol, worst);
        return g == 1.0 ? v : std::pow(1.0 - y, g - 1.0) * v;
      };
      Acc left = weighted_interval(g, 0.5, lower, 0.5 * rule_tol, budget_);
      Acc right = weighted_interval(q, 0.5, upper, 0.5 * rule_tol, budget_);
      out = {left.value + right.value, left.err + right.err,
             left.resabs + right.resabs};
    }
    return {out.value / norm, out.err / norm + worst, out.resabs / norm};
  }

  const Integrand& f_;
  std::vector<double> conc_;
  int n_;
  EvalBudget& budget_;
  std::vector<double> point_;
  std::vector<int> perm_;
  std::vector<double> tail_exp_;
  std::vector<double> axis_norm_;
};

void validate_config(const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0)) {
    throw std::invalid_argument("quadrature: tolerances must be positive");
  }
  if (cfg.max_evals < 1000) {
    throw std::invalid_argument("quadrature: max_evals must be >= 1000");
  }
}

Acc dirichlet_component(const Integrand& f, std::span<const double> conc,
                        double tol, EvalBudget& budget) {
  DirichletCubature cub(f, conc, budget);
  return cub.run(tol);
}

IntegralEstimate integrate_mc(const Integrand& f, const MeasureSpec& spec,
                              const QuadratureConfig& cfg) {
  SimplexSampler sampler(spec, cfg.seed);
  std::vector<double> bary(static_cast<size_t>(spec.dim()) + 1);
  long count = 0;
  double mean = 0.0, m2 = 0.0;
  constexpr long kBatch = 4096;
  constexpr long kMinSamples = 2048;

  double bound = std::numeric_limits<double>::infinity();
  while (count < cfg.max_evals) {
    const long todo = std::min(kBatch, cfg.max_evals - count);
    for (long i = 0; i < todo; ++i) {
      sampler.next(bary);
      const double v = f(std::span<const double>(bary));
      if (!std::isfinite(v)) throw NonFiniteIntegrand(bary);
      ++count;
      const double delta = v - mean;
      mean += delta / static_cast<double>(count);
      m2 += delta * (v - mean);
    }
    if (count >= kMinSamples) {
      const double var = m2 / static_cast<double>(count - 1);
      bound = 3.0 * std::sqrt(std::max(var, 0.0) /
                              static_cast<double>(count));
      if (bound <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(mean))) {
        return {mean, bound, count, QuadMethod::MonteCarlo};
      }
    }
  }
  throw BudgetExhausted({mean, bound, count, QuadMethod::MonteCarlo});
}

}  // namespace

IntegralEstimate integrate(const Integrand& f, const MeasureSpec& spec,
                           const QuadratureConfig& cfg) {
  validate_config(cfg);
  QuadMethod method = cfg.method;
  if (method == QuadMethod::Auto) {
    method = spec.dim() <= 3 ? QuadMethod::NestedAdaptive
                             : QuadMethod::MonteCarlo;
  }
  if (method == QuadMethod::MonteCarlo) return integrate_mc(f, spec, cfg);

  EvalBudget budget{cfg.max_evals};
  double value = 0.0;
  double err = 0.0;
  for (const auto& comp : spec.mixture().components) {
    Acc acc = dirichlet_component(f, comp.conc, cfg.abs_tol, budget);
    value += comp.weight * acc.value;
    err += comp.weight * acc.err;
  }
  IntegralEstimate est{value, err, budget.evals, QuadMethod::NestedAdaptive};
  if (budget.exhausted &&
      err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
    throw BudgetExhausted(est);
  }
  return est;
}

IntegralEstimate integrate_dirichlet(const Integrand& f,
                                     std::span<const double> conc,
                                     const QuadratureConfig& cfg) {
  validate_config(cfg);
  if (conc.size() < 2) {
    throw std::invalid_argument("integrate_dirichlet: needs n+1 >= 2 entries");
  }
  for (double c : conc) {
    if (!(c > 0.0)) {
      throw std::domain_error(
          "integrate_dirichlet: concentrations must be positive");
    }
  }
  EvalBudget budget{cfg.max_evals};
  Acc acc = dirichlet_component(f, conc, cfg.abs_tol, budget);
  IntegralEstimate est{acc.value, acc.err, budget.evals,
                       QuadMethod::NestedAdaptive};
  if (budget.exhausted &&
      acc.err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(acc.value))) {
    throw BudgetExhausted(est);
  }
  return est;
}

double power_simplex_volume(std::span<const double> alpha) {
  if (alpha.empty()) {
    throw std::domain_error("power_simplex_volume: needs at least one entry");
  }
  double log_b = 0.0;
  double inv_sum = 0.0;
  double log_prod = 0.0;
  for (double a : alpha) {
    if (!(a > 0.0)) {
      throw std::domain_error(
          "power_simplex_volume: exponents must be positive");
    }
    log_b += specfun::log_gamma(1.0 / a);
    inv_sum += 1.0 / a;
    log_prod += std::log(a);
  }
  log_b -= specfun::log_gamma(inv_sum);
  return std::exp(log_b - log_prod - std::log(inv_sum));
}

double power_simplex_moment(std::span<const double> alpha, int i) {
  if (i < 0 || static_cast<size_t>(i) >= alpha.size()) {
    throw std::out_of_range("power_simplex_moment: index out of range");
  }
  double inv_sum = 0.0;
  for (double a : alpha) {
    if (!(a > 0.0)) {
      throw std::domain_error(
          "power_simplex_moment: exponents must be positive");
    }
    inv_sum += 1.0 / a;
  }
  return (1.0 / alpha[static_cast<size_t>(i)]) / (inv_sum + 1.0);
}

}  // namespace whh
