#include "hwstaff/proof_kit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hwstaff/errors.hpp"

namespace hwstaff::proof_kit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_load(double a, const char* who) {
  if (!std::isfinite(a) || !(a > 0.0)) throw DomainError(std::string(who) + ": requires a > 0");
}

// x(y) = y^(1/sqrt a) - 1
double x_of_y(double y, double a) { return std::expm1(std::log(y) / std::sqrt(a)); }

double log_density_g(double t, double a) {
  if (t == 0.0) return kNegInf;
  if (std::isinf(t)) return kNegInf;
  return std::log(a) + std::log(t) - std::log1p(t) + log_tail_x(t, a);
}

}  // namespace

double log_tail_x(double x, double a) {
  require_load(a, "log_tail_x");
  if (std::isnan(x) || x < 0.0) throw DomainError("log_tail_x: requires x >= 0");
  if (std::isinf(x)) return kNegInf;
  return a * numerics::log1pmx(x);
}

double density_g(double t, double a) {
  require_load(a, "density_g");
  if (std::isnan(t) || t < 0.0) throw DomainError("density_g: requires t >= 0");
  return std::exp(log_density_g(t, a));
}

double cdf_x(double x, double a) {
  require_load(a, "cdf_x");
  if (std::isnan(x) || x < 0.0) throw DomainError("cdf_x: requires x >= 0");
  return -std::expm1(log_tail_x(x, a));
}

double density_y(double y, double a) {
  require_load(a, "density_y");
  if (std::isnan(y) || !(y > 1.0)) throw DomainError("density_y: requires y > 1");
  const double x = x_of_y(y, a);
  if (std::isinf(x) || std::isinf(y)) return 0.0;
  // f(y) = g(x(y)) x'(y), x'(y) = y^(1/sqrt a - 1) / sqrt a
  const double root = std::sqrt(a);
  return std::exp(log_density_g(x, a) + (1.0 / root - 1.0) * std::log(y) - std::log(root));
}

double tail_y(double y, double a) {
  require_load(a, "tail_y");
  if (std::isnan(y) || y < 1.0) throw DomainError("tail_y: requires y >= 1");
  if (y == 1.0) return 1.0;
  return std::exp(log_tail_x(x_of_y(y, a), a));
}

double tail_y_via_h(double y, double a) {
  require_load(a, "tail_y_via_h");
  if (std::isnan(y) || !(y > 1.0)) throw DomainError("tail_y_via_h: requires y > 1 (log y > 0)");
  if (std::isinf(y)) return 0.0;
  const double log_y = std::log(y);
  return std::exp(log_y * log_y * h(std::sqrt(a) / log_y));
}

double h(double x) {
  if (std::isnan(x) || !(x > 0.0)) throw DomainError("h: requires x > 0");
  if (x > kHSeriesSwitch) return h_series(x, kHSeriesTerms);
  return x - x * x * std::expm1(1.0 / x);
}

double h_series(double x, int terms) {
  if (std::isnan(x) || !(x > 0.0)) throw DomainError("h_series: requires x > 0");
  if (terms < 1) throw DomainError("h_series: requires terms >= 1");
  double term = 0.5;  // x^0 / 2!
  double sum = 0.0;
  for (int n = 0; n < terms; ++n) {
    sum += term;
    term /= x * static_cast<double>(n + 3);
  }
  return -sum;
}

double moment_y(double a, double beta, const numerics::QuadratureConfig& cfg) {
  require_load(a, "moment_y");
  if (!std::isfinite(beta) || beta < 0.0) throw DomainError("moment_y: requires beta >= 0");
  if (beta == 0.0) return 1.0;
  const double power = beta * std::sqrt(a);
  const auto log_integrand = [=](double t) {
    if (t == 0.0) return kNegInf;
    return power * std::log1p(t) + log_density_g(t, a);
  };
  return numerics::integrate_semi_infinite(log_integrand, cfg).value;
}

OrderReport check_stochastic_order(double a_low, double a_high, std::span<const double> y_grid) {
  require_load(a_low, "check_stochastic_order");
  require_load(a_high, "check_stochastic_order");
  for (std::size_t i = 0; i < y_grid.size(); ++i) {
    if (std::isnan(y_grid[i]) || y_grid[i] < 1.0) {
      throw DomainError("check_stochastic_order: grid values must be >= 1");
    }
    if (i > 0 && !(y_grid[i] > y_grid[i - 1])) {
      throw DomainError("check_stochastic_order: grid must be strictly increasing");
    }
  }

  OrderReport report;
  report.a_low = a_low;
  report.a_high = a_high;
  report.y_grid.assign(y_grid.begin(), y_grid.end());
  bool first = true;
  for (double y : y_grid) {
    const double low = tail_y(y, a_low);
    const double high = tail_y(y, a_high);
    const double margin = high - low;
    report.min_margin = first ? margin : std::min(report.min_margin, margin);
    first = false;
    if (low > high + kOrderTolerance) report.violations.push_back({y, low, high});
  }
  report.passed = report.violations.empty();
  return report;
}

}  // namespace hwstaff::proof_kit
