#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "whh/specfun.hpp"

using namespace whh::specfun;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("log_gamma at exact factorials and the half-integer point") {
  CHECK(std::abs(log_gamma(1.0)) < 5e-15);
  CHECK(std::abs(log_gamma(2.0)) < 5e-15);
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  // Gamma(1/2) = sqrt(pi)
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));
}

TEST_CASE("log_gamma matches the C library across [1e-3, 1e3]") {
  // log-spaced sweep plus random fill
  std::mt19937_64 gen(12345);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 5000; ++i) {
    const double x = std::pow(10.0, u(gen));
    const double ref = std::lgamma(x);
    CHECK(std::abs(log_gamma(x) - ref) <= 1e-13 * std::max(1.0, std::abs(ref)));
  }
}

TEST_CASE("log_gamma rejects nonpositive arguments") {
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
}

TEST_CASE("pochhammer basics") {
  CHECK(pochhammer(3.0, 0) == 1.0);
  CHECK(pochhammer(2.0, 2) == 6.0);
  // (1)_n = n!
  double fact = 1.0;
  for (int n = 1; n <= 15; ++n) {
    fact *= n;
    CHECK(pochhammer(1.0, n) == doctest::Approx(fact).epsilon(1e-14));
  }
  CHECK_THROWS_AS(pochhammer(0.0, 3), std::domain_error);
  CHECK_THROWS_AS(pochhammer(1.0, -1), std::domain_error);
}

TEST_CASE("pochhammer recurrence across both regimes") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(0.01, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(gen);
    for (int k : {0, 1, 5, 31, 32, 40, 80}) {
      const double lhs = pochhammer(x, k + 1);
      const double rhs = pochhammer(x, k) * (x + k);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
  }
}

TEST_CASE("inverse_pochhammer closed cases") {
  CHECK(inverse_pochhammer(5.0, 1) == 5.0);  // [x]_{-1} = x
  // x(x+1) = 6 forces x = 2
  CHECK(inverse_pochhammer(6.0, 2) == doctest::Approx(2.0).epsilon(1e-13));
  // [k!]_{-k} = 1
  double fact = 1.0;
  for (int k = 1; k <= 18; ++k) {
    fact *= k;
    CHECK(inverse_pochhammer(fact, k) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(inverse_pochhammer(-1.0, 2), std::domain_error);
  CHECK_THROWS_AS(inverse_pochhammer(1.0, 0), std::domain_error);
}

TEST_CASE("inverse_pochhammer round-trips on random targets") {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> logc(std::log(1e-3), std::log(1e6));
  std::uniform_int_distribution<int> kdist(1, 20);
  for (int i = 0; i < 1000; ++i) {
    const double c = std::exp(logc(gen));
    const int k = kdist(gen);
    const double x = inverse_pochhammer(c, k);
    CHECK(x > 0.0);
    // ([c]_{-k})_k = c
    CHECK(std::abs(pochhammer(x, k) - c) <= 1e-10 * std::max(1.0, c));
  }
}

TEST_CASE("inverse_pochhammer inverts pochhammer on random roots") {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> logx(std::log(1e-3), std::log(1e3));
  std::uniform_int_distribution<int> kdist(1, 20);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::exp(logx(gen));
    const int k = kdist(gen);
    const double c = pochhammer(x, k);
    if (!std::isfinite(c)) continue;
    const double back = inverse_pochhammer(c, k);
    CHECK(std::abs(back - x) <= 1e-10 * std::max(1.0, x));
  }
}

TEST_CASE("log_multivariate_beta closed values") {
  std::vector<double> ones2{1.0, 1.0};
  CHECK(std::abs(log_multivariate_beta(ones2)) < 1e-14);
  // all-ones with m = n+1 arguments gives 1/n!
  for (int n = 1; n <= 6; ++n) {
    std::vector<double> ones(static_cast<size_t>(n) + 1, 1.0);
    double lnfact = 0.0;
    for (int j = 2; j <= n; ++j) lnfact += std::log(static_cast<double>(j));
    CHECK(log_multivariate_beta(ones) ==
          doctest::Approx(-lnfact).epsilon(1e-13));
  }
  // B(1/2,1/2) = Gamma(1/2)^2 = pi
  std::vector<double> halves{0.5, 0.5};
  CHECK(log_multivariate_beta(halves) ==
        doctest::Approx(std::log(kPi)).epsilon(1e-13));
  std::vector<double> bad{1.0, -2.0};
  CHECK_THROWS_AS(log_multivariate_beta(bad), std::domain_error);
  std::vector<double> single{1.0};
  CHECK_THROWS_AS(log_multivariate_beta(single), std::invalid_argument);
}

TEST_CASE("log_multivariate_beta is symmetric in its arguments") {
  std::mt19937_64 gen(5150);
  std::uniform_real_distribution<double> u(0.05, 8.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> x(4);
    for (auto& xi : x) xi = u(gen);
    const double base = log_multivariate_beta(x);
    std::shuffle(x.begin(), x.end(), gen);
    CHECK(std::abs(log_multivariate_beta(x) - base) <= 1e-14 *
          std::max(1.0, std::abs(base)));
  }
}
