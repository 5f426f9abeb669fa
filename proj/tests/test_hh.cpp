#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "whh/hh.hpp"
#include "whh/means.hpp"
#include "whh/measures.hpp"

using namespace whh;

namespace {

const double kE = std::exp(1.0);

WeightVector random_interior_weights(int n, std::mt19937_64& gen,
                                     double floor = 0.05) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    std::vector<double> s(static_cast<size_t>(n) + 1);
    for (auto& x : s) x = -std::log(u(gen));
    double total = 0.0;
    for (double x : s) total += x;
    bool ok = true;
    for (double x : s) ok = ok && (x / total > floor);
    if (!ok) continue;
    s.pop_back();
    for (auto& x : s) x /= total;
    return WeightVector(s);
  }
}

}  // namespace

TEST_CASE("affine functions give equality throughout the chain") {
  TestFunction affine{"affine", 1, true, [](std::span<const double> x) {
                        return 2.0 * x[0] + 1.0;
                      }};
  QuadratureConfig cfg;
  std::mt19937_64 gen(5);
  for (int n : {1, 2, 3}) {
    WeightVector w = random_interior_weights(n, gen);
    std::vector<double> nodes(static_cast<size_t>(n) + 1);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    for (auto& x : nodes) x = u(gen);
    for (auto rep : {hh_nu(affine, w, nodes, cfg), hh_mu(affine, w, nodes, cfg)}) {
      const double tol = rep.middle.error_bound + 1e-11;
      CHECK(std::abs(rep.middle.value - rep.left) <= tol);
      CHECK(std::abs(rep.right - rep.left) <= 1e-11);
      CHECK(rep.chain_ok);
      CHECK(rep.convexity_ok);
    }
  }
}

TEST_CASE("classical interval chain for exp on nodes (0,1)") {
  QuadratureConfig cfg;
  WeightVector half({0.5});
  std::vector<double> nodes{0.0, 1.0};
  // at lambda = 1/2 the nu measure is plain dt
  HHReport rep = hh_nu(tf_exp(), half, nodes, cfg);
  CHECK(rep.left == doctest::Approx(std::sqrt(kE)).epsilon(1e-12));
  CHECK(rep.middle.value == doctest::Approx(kE - 1.0).epsilon(1e-10));
  CHECK(rep.right == doctest::Approx(0.5 * (1.0 + kE)).epsilon(1e-12));
  CHECK(rep.chain_ok);
}

TEST_CASE("squared coordinate against mu matches the beta second moment") {
  QuadratureConfig cfg;
  WeightVector w({0.3});
  std::vector<double> nodes{1.0, 0.0};
  HHReport rep = hh_mu(tf_square(), w, nodes, cfg);
  // t ~ Beta(c, 1) with c = 0.3/0.7; E[t^2] = c/(c+2)
  const double c = 0.3 / 0.7;
  CHECK(rep.left == doctest::Approx(0.09).epsilon(1e-12));
  CHECK(rep.middle.value == doctest::Approx(c / (c + 2.0)).epsilon(1e-9));
  CHECK(rep.right == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(rep.chain_ok);
}

TEST_CASE("uniform weights collapse both chains onto the unweighted one") {
  QuadratureConfig cfg;
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.3, 4.0);
  for (int n : {1, 2, 3}) {
    WeightVector we = WeightVector::uniform(n);
    std::vector<double> nodes(static_cast<size_t>(n) + 1);
    for (auto& x : nodes) x = u(gen);
    HHReport rn = hh_nu(tf_exp(), we, nodes, cfg);
    HHReport rm = hh_mu(tf_exp(), we, nodes, cfg);
    const double tol = rn.middle.error_bound + rm.middle.error_bound + 1e-12;
    CHECK(std::abs(rn.left - rm.left) <= 1e-12);
    CHECK(std::abs(rn.right - rm.right) <= 1e-12);
    CHECK(std::abs(rn.middle.value - rm.middle.value) <= tol);

    Integrand f = [&nodes](std::span<const double> t) {
      double s = 0.0;
      for (size_t i = 0; i < t.size(); ++i) s += t[i] * nodes[i];
      return std::exp(s);
    };
    auto uni = integrate(f, MeasureSpec::uniform(n), cfg);
    CHECK(std::abs(rn.middle.value - uni.value) <=
          rn.middle.error_bound + uni.error_bound + 1e-12);
  }
}

TEST_CASE("concave log reverses the chain") {
  QuadratureConfig cfg;
  WeightVector w({0.3});
  std::vector<double> nodes{1.0, 2.0};
  HHReport rep = hh_nu(tf_log(), w, nodes, cfg);
  CHECK(rep.left >= rep.middle.value - rep.middle.error_bound);
  CHECK(rep.middle.value >= rep.right - rep.middle.error_bound);
  CHECK(rep.slack.first <= 0.0);
  CHECK(rep.slack.second <= 0.0);
  CHECK(rep.chain_ok);
  CHECK(rep.convexity_ok);
}

TEST_CASE("mu chain middle for exp over log-nodes is the logcal mean") {
  QuadratureConfig cfg;
  WeightVector w({1.0 / 3.0, 1.0 / 6.0});
  NodeVector a({0.5, 1.0, 2.0});
  std::vector<double> lognodes(3);
  for (int i = 0; i < 3; ++i) lognodes[static_cast<size_t>(i)] = std::log(a[i]);
  HHReport rep = hh_mu(tf_exp(), w, lognodes, cfg);
  MeanResult lc = log_mean_cal(w, a, cfg);
  CHECK(std::abs(rep.middle.value - lc.value) <= 1e-12);
  // and the chain sandwiches geometric <= logcal <= arithmetic
  CHECK(rep.left == doctest::Approx(geometric_mean(w, a)).epsilon(1e-12));
  CHECK(rep.right == doctest::Approx(arithmetic_mean(w, a)).epsilon(1e-12));
  CHECK(rep.chain_ok);
}

TEST_CASE("indicator log-nodes bound each node's power mean") {
  // exp over nodes delta_ij * ln a_i: the middle equals the logcal mean of
  // (1,...,a_i,...,1) and the chain reads
  //   a_i^{l_i}  <=  logcal(1,..,a_i,..,1)  <=  l_i a_i + sum_{j!=i} l_j.
  QuadratureConfig cfg;
  WeightVector w({0.2, 0.35});
  std::vector<double> a{2.5, 0.7, 1.8};
  for (int i = 0; i < 3; ++i) {
    NodeList nodes(3, std::vector<double>{0.0});
    nodes[static_cast<size_t>(i)][0] = std::log(a[static_cast<size_t>(i)]);
    HHReport rep = hh_mu(tf_exp(), w, nodes, cfg);

    std::vector<double> modified(3, 1.0);
    modified[static_cast<size_t>(i)] = a[static_cast<size_t>(i)];
    MeanResult lc = log_mean_cal(w, NodeVector(modified), cfg);
    CHECK(std::abs(rep.middle.value - lc.value) <= 1e-12);

    const double lo = std::pow(a[static_cast<size_t>(i)], w[i]);
    double hi = w[i] * a[static_cast<size_t>(i)];
    for (int j = 0; j < 3; ++j) {
      if (j != i) hi += w[j];
    }
    CHECK(rep.left == doctest::Approx(lo).epsilon(1e-12));
    CHECK(rep.right == doctest::Approx(hi).epsilon(1e-12));
    CHECK(rep.chain_ok);
  }
}

TEST_CASE("vector-valued convex functions pass the chain") {
  QuadratureConfig cfg;
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int n : {1, 2}) {
    for (int m : {2, 3}) {
      WeightVector w = random_interior_weights(n, gen);
      NodeList nodes(static_cast<size_t>(n) + 1,
                     std::vector<double>(static_cast<size_t>(m)));
      for (auto& p : nodes) {
        for (auto& x : p) x = u(gen);
      }
      HHReport lse = hh_nu(tf_log_sum_exp(m), w, nodes, cfg);
      CHECK(lse.chain_ok);
      CHECK(lse.convexity_ok);
      auto eye = make_test_function("quadform", m);
      REQUIRE(eye.has_value());
      HHReport quad = hh_mu(*eye, w, nodes, cfg);
      CHECK(quad.chain_ok);
      CHECK(quad.convexity_ok);
    }
  }
}

TEST_CASE("convexity spot-check flags a wrong declaration") {
  TestFunction fake{"cube", 1, true,
                    [](std::span<const double> x) { return x[0] * x[0] * x[0]; }};
  QuadratureConfig cfg;
  WeightVector w({0.5});
  std::vector<double> nodes{-2.0, 2.0};
  HHReport rep = hh_mu(fake, w, nodes, cfg);
  CHECK(!rep.convexity_ok);
}

TEST_CASE("node validation") {
  QuadratureConfig cfg;
  WeightVector w({0.5});
  NodeList wrong_count(4, std::vector<double>{1.0});
  CHECK_THROWS_AS(hh_nu(tf_exp(), w, wrong_count, cfg), std::invalid_argument);
  NodeList wrong_dim(2, std::vector<double>{1.0, 2.0});
  CHECK_THROWS_AS(hh_mu(tf_exp(), w, wrong_dim, cfg), std::invalid_argument);
}

TEST_CASE("randomized audit passes and is reproducible") {
  QuadratureConfig cfg;
  AuditSummary empty = randomized_audit(42, 0, cfg);
  CHECK(empty.trials == 0);
  CHECK(empty.failures == 0);

  AuditSummary s1 = randomized_audit(42, 80, cfg);
  CHECK(s1.trials == 80);
  CHECK(s1.passes == 80);
  CHECK(s1.failures == 0);
  CHECK(s1.violations.empty());
  CHECK(s1.worst_slack >= -1e-8);

  AuditSummary s2 = randomized_audit(42, 80, cfg);
  CHECK(s2.passes == s1.passes);
  CHECK(s2.worst_slack == s1.worst_slack);
}
