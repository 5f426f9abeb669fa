#include "whh/hh.hpp"

#include <cmath>
#include <limits>

#include "whh/measures.hpp"
#include "whh/random.hpp"

namespace whh {

TestFunction tf_exp() {
  return {"exp", 1, true,
          [](std::span<const double> x) { return std::exp(x[0]); }};
}

TestFunction tf_square() {
  return {"square", 1, true,
          [](std::span<const double> x) { return x[0] * x[0]; }};
}

TestFunction tf_neg_log() {
  return {"neglog", 1, true,
          [](std::span<const double> x) { return -std::log(x[0]); }};
}

TestFunction tf_reciprocal() {
  return {"recip", 1, true,
          [](std::span<const double> x) { return 1.0 / x[0]; }};
}

TestFunction tf_log() {
  return {"log", 1, false,
          [](std::span<const double> x) { return std::log(x[0]); }};
}

TestFunction tf_log_sum_exp(int arity) {
  return {"logsumexp", arity, true, [](std::span<const double> x) {
            double hi = x[0];
            for (double xi : x) hi = std::max(hi, xi);
            double s = 0.0;
            for (double xi : x) s += std::exp(xi - hi);
            return hi + std::log(s);
          }};
}

TestFunction tf_quad_form(std::vector<std::vector<double>> psd) {
  const int m = static_cast<int>(psd.size());
  return {"quadform", m, true,
          [a = std::move(psd)](std::span<const double> x) {
            double s = 0.0;
            for (size_t i = 0; i < x.size(); ++i) {
              for (size_t j = 0; j < x.size(); ++j) {
                s += x[i] * a[i][j] * x[j];
              }
            }
            return s;
          }};
}

std::optional<TestFunction> make_test_function(std::string_view name,
                                               int arity) {
  if (name == "exp") return tf_exp();
  if (name == "square") return tf_square();
  if (name == "neglog") return tf_neg_log();
  if (name == "recip") return tf_reciprocal();
  if (name == "log") return tf_log();
  if (name == "logsumexp") return tf_log_sum_exp(arity);
  if (name == "quadform") {
    std::vector<std::vector<double>> eye(
        static_cast<size_t>(arity),
        std::vector<double>(static_cast<size_t>(arity), 0.0));
    for (int i = 0; i < arity; ++i) eye[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
    return tf_quad_form(std::move(eye));
  }
  return std::nullopt;
}

namespace {

void validate_nodes(const TestFunction& f, const WeightVector& w,
                    const NodeList& nodes) {
  if (static_cast<int>(nodes.size()) != w.count()) {
    throw std::invalid_argument("hh: node count does not match weight count");
  }
  for (const auto& p : nodes) {
    if (static_cast<int>(p.size()) != f.arity) {
      throw std::invalid_argument(
          "hh: node dimension does not match the function arity");
    }
  }
}

// Random midpoint test of the declared convexity over the convex hull of
// the nodes. Best-effort: catches garbage declarations, proves nothing.
bool convexity_spot_check(const TestFunction& f, const NodeList& nodes,
                          std::uint64_t seed) {
  const size_t m = static_cast<size_t>(f.arity);
  Rng rng(seed ^ 0xc0ffeeULL);
  std::vector<double> x(m), y(m), mid(m), coef(nodes.size());
  int bad = 0;
  for (int rep = 0; rep < 32; ++rep) {
    auto hull_point = [&](std::vector<double>& out) {
      rng.uniform_simplex(coef);
      std::fill(out.begin(), out.end(), 0.0);
      for (size_t i = 0; i < nodes.size(); ++i) {
        for (size_t j = 0; j < m; ++j) out[j] += coef[i] * nodes[i][j];
      }
    };
    hull_point(x);
    hull_point(y);
    for (size_t j = 0; j < m; ++j) mid[j] = 0.5 * (x[j] + y[j]);
    const double fx = f.eval(x), fy = f.eval(y), fm = f.eval(mid);
    const double scale =
        1e-10 * (1.0 + std::abs(fx) + std::abs(fy) + std::abs(fm));
    const double gap = 0.5 * (fx + fy) - fm;  // >= 0 for convex f
    if (f.convex ? gap < -scale : gap > scale) ++bad;
  }
  return bad == 0;
}

HHReport hh_chain(const TestFunction& f, const WeightVector& w,
                  const NodeList& nodes, const QuadratureConfig& cfg,
                  bool against_nu) {
  validate_nodes(f, w, nodes);
  const int count = w.count();
  const size_t m = static_cast<size_t>(f.arity);

  std::vector<double> coeff;
  if (against_nu) {
    coeff = tilde_weights(w);
  } else {
    coeff.assign(w.weights().begin(), w.weights().end());
  }

  std::vector<double> bary_mix(m, 0.0);
  double right = 0.0;
  for (int i = 0; i < count; ++i) {
    const size_t si = static_cast<size_t>(i);
    for (size_t j = 0; j < m; ++j) bary_mix[j] += coeff[si] * nodes[si][j];
    right += coeff[si] * f.eval(nodes[si]);
  }
  const double left = f.eval(bary_mix);

  std::vector<double> y(m);
  Integrand integrand = [&](std::span<const double> t) {
    std::fill(y.begin(), y.end(), 0.0);
    for (size_t i = 0; i < t.size(); ++i) {
      for (size_t j = 0; j < m; ++j) y[j] += t[i] * nodes[i][j];
    }
    return f.eval(y);
  };
  MeasureSpec spec = against_nu ? MeasureSpec::nu(w) : MeasureSpec::mu(w);
  IntegralEstimate middle = integrate(integrand, spec, cfg);

  HHReport report;
  report.left = left;
  report.middle = middle;
  report.right = right;
  report.slack = {middle.value - left, right - middle.value};
  const double scale =
      std::max({1.0, std::abs(left), std::abs(middle.value),
                std::abs(right)});
  const double threshold =
      -(middle.error_bound + 4.0 * std::numeric_limits<double>::epsilon() * scale);
  const double s1 = f.convex ? report.slack.first : -report.slack.first;
  const double s2 = f.convex ? report.slack.second : -report.slack.second;
  report.chain_ok = (s1 >= threshold) && (s2 >= threshold);
  report.convexity_ok = convexity_spot_check(f, nodes, cfg.seed);
  return report;
}

NodeList scalar_nodes(std::span<const double> nodes) {
  NodeList out;
  out.reserve(nodes.size());
  for (double v : nodes) out.push_back({v});
  return out;
}

}  // namespace

HHReport hh_nu(const TestFunction& f, const WeightVector& w,
               const NodeList& nodes, const QuadratureConfig& cfg) {
  return hh_chain(f, w, nodes, cfg, true);
}

HHReport hh_mu(const TestFunction& f, const WeightVector& w,
               const NodeList& nodes, const QuadratureConfig& cfg) {
  return hh_chain(f, w, nodes, cfg, false);
}

HHReport hh_nu(const TestFunction& f, const WeightVector& w,
               std::span<const double> nodes, const QuadratureConfig& cfg) {
  return hh_chain(f, w, scalar_nodes(nodes), cfg, true);
}

HHReport hh_mu(const TestFunction& f, const WeightVector& w,
               std::span<const double> nodes, const QuadratureConfig& cfg) {
  return hh_chain(f, w, scalar_nodes(nodes), cfg, false);
}

namespace {

WeightVector audit_weights(int n, Rng& rng) {
  std::vector<double> bary(static_cast<size_t>(n) + 1);
  for (;;) {
    rng.uniform_simplex(bary);
    bool ok = true;
    for (double x : bary) ok = ok && (x > 0.02);
    if (!ok) continue;
    return WeightVector(
        std::vector<double>(bary.begin(), bary.end() - 1));
  }
}

}  // namespace

AuditSummary randomized_audit(std::uint64_t seed, int trials,
                              const QuadratureConfig& cfg) {
  AuditSummary summary;
  if (trials < 0) {
    throw std::domain_error("randomized_audit: trials must be >= 0");
  }
  summary.worst_slack = std::numeric_limits<double>::infinity();

  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    const int n = 1 + static_cast<int>(rng.uniform() * 3.0);
    const bool use_nu = rng.uniform() < 0.5;
    const int pick = static_cast<int>(rng.uniform() * 6.0);

    TestFunction f;
    switch (std::min(pick, 5)) {
      case 0: f = tf_exp(); break;
      case 1: f = tf_square(); break;
      case 2: f = tf_log(); break;  // the concave representative
      case 3: f = tf_reciprocal(); break;
      case 4: f = tf_log_sum_exp(2 + static_cast<int>(rng.uniform() * 3.0));
        break;
      default: {
        const int m = 2 + static_cast<int>(rng.uniform() * 3.0);
        // A = B^T B is positive semidefinite
        std::vector<std::vector<double>> b(
            static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(m)));
        for (auto& row : b) {
          for (auto& x : row) x = 2.0 * rng.uniform() - 1.0;
        }
        std::vector<std::vector<double>> a(
            static_cast<size_t>(m),
            std::vector<double>(static_cast<size_t>(m), 0.0));
        for (int i = 0; i < m; ++i) {
          for (int j = 0; j < m; ++j) {
            for (int k = 0; k < m; ++k) {
              a[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                  b[static_cast<size_t>(k)][static_cast<size_t>(i)] *
                  b[static_cast<size_t>(k)][static_cast<size_t>(j)];
            }
          }
        }
        f = tf_quad_form(std::move(a));
        break;
      }
    }

    WeightVector w = audit_weights(n, rng);
    NodeList nodes(static_cast<size_t>(n) + 1,
                   std::vector<double>(static_cast<size_t>(f.arity)));
    for (auto& p : nodes) {
      for (auto& x : p) {
        // positive abscissas keep every scalar function in-domain;
        // vector functions take signed coordinates
        x = f.arity == 1 ? 0.1 + 4.9 * rng.uniform()
                         : -2.0 + 4.0 * rng.uniform();
      }
    }

    QuadratureConfig trial_cfg = cfg;
    trial_cfg.seed = derive_seed(seed, 0x100000ULL + trial);
    HHReport rep = use_nu ? hh_nu(f, w, nodes, trial_cfg)
                          : hh_mu(f, w, nodes, trial_cfg);

    const double s1 = f.convex ? rep.slack.first : -rep.slack.first;
    const double s2 = f.convex ? rep.slack.second : -rep.slack.second;
    const double oriented = std::min(s1, s2);
    summary.worst_slack = std::min(summary.worst_slack, oriented);
    ++summary.trials;
    if (rep.chain_ok) {
      ++summary.passes;
    } else {
      ++summary.failures;
      summary.violations.push_back(
          {trial, f.name, n, use_nu ? MeasureKind::Nu : MeasureKind::Mu,
           oriented});
    }
  }
  if (summary.trials == 0) summary.worst_slack = 0.0;
  return summary;
}

}  // namespace whh
