#include "whh/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace whh::specfun {

namespace {

// 14-term Lanczos series, g = 607/128. Good to full double precision for
// positive arguments.
constexpr double kLanczosCoef[14] = {
    57.1562356658629235,     -59.5979603554754912,
    14.1360979747417471,     -0.491913816097620199,
    0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3,
    -0.210264441724104883e-3, 0.217439618115212643e-3,
    -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5};

constexpr double kSqrtTwoPi = 2.5066282746310005;

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma: argument must be positive, got " +
                            std::to_string(x));
  }
  double y = x;
  double tmp = x + 5.24218750000000000;  // x + g + 1/2
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : kLanczosCoef) ser += c / ++y;
  return tmp + std::log(kSqrtTwoPi * ser / x);
}

double pochhammer(double x, int k) {
  if (!(x > 0.0)) {
    throw std::domain_error("pochhammer: argument must be positive, got " +
                            std::to_string(x));
  }
  if (k < 0) {
    throw std::domain_error("pochhammer: factor count must be >= 0, got " +
                            std::to_string(k));
  }
  if (k <= 32) {
    double p = 1.0;
    for (int j = 0; j < k; ++j) p *= x + j;
    return p;
  }
  return std::exp(log_gamma(x + k) - log_gamma(x));
}

double inverse_pochhammer(double c, int k) {
  if (!(c > 0.0)) {
    throw std::domain_error(
        "inverse_pochhammer: target must be positive, got " +
        std::to_string(c));
  }
  if (k < 1) {
    throw std::domain_error(
        "inverse_pochhammer: factor count must be >= 1, got " +
        std::to_string(k));
  }
  if (k == 1) return c;  // (x)_1 = x

  const double log_c = std::log(c);
  auto log_poch = [k](double x) {
    double s = 0.0;
    for (int j = 0; j < k; ++j) s += std::log(x + j);
    return s;
  };
  auto dlog_poch = [k](double x) {
    double s = 0.0;
    for (int j = 0; j < k; ++j) s += 1.0 / (x + j);
    return s;
  };

  // (x)_k > x * (k-1)!, so the root lies below c/(k-1)! + 1. The lower end
  // of the bracket is the origin, where (x)_k - c -> -c < 0.
  double lo = 0.0;
  double hi = std::exp(log_c - log_gamma(static_cast<double>(k))) + 1.0;
  double x = hi;
  const double tol = 1e-12 * std::max(1.0, c);

  for (int iter = 0; iter < 200; ++iter) {
    const double g = log_poch(x) - log_c;
    if (g > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    if (std::abs(pochhammer(x, k) - c) <= tol) return x;
    double next = x - g / dlog_poch(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;  // bracket at machine resolution
    x = next;
  }
  return x;
}

double log_multivariate_beta(std::span<const double> x) {
  if (x.size() < 2) {
    throw std::invalid_argument(
        "log_multivariate_beta: needs at least two arguments");
  }
  double sum = 0.0;
  double acc = 0.0;
  for (double xi : x) {
    if (!(xi > 0.0)) {
      throw std::domain_error(
          "log_multivariate_beta: arguments must be positive, got " +
          std::to_string(xi));
    }
    sum += xi;
    acc += log_gamma(xi);
  }
  return acc - log_gamma(sum);
}

}  // namespace whh::specfun
