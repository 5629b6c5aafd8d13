#include "hwstaff/erlang.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hwstaff/errors.hpp"

namespace hwstaff::erlang {

namespace {

void require_valid_load(double s, double a, const char* who) {
  if (!std::isfinite(a) || !(a > 0.0) || !std::isfinite(s) || !(s > 0.0)) {
    throw DomainError(std::string(who) + ": requires finite a > 0 and s > 0");
  }
  if (!(a < s)) {
    throw InstabilityError(std::string(who) + ": formula is valid only for 0 < a < s (got a = " +
                           std::to_string(a) + ", s = " + std::to_string(s) + ")");
  }
}

void require_target(double a, double epsilon, const char* who) {
  if (!std::isfinite(a) || !(a > 0.0)) {
    throw DomainError(std::string(who) + ": requires finite a > 0");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError(std::string(who) + ": target delay probability must satisfy 0 < epsilon < 1");
  }
}

}  // namespace

LoadPoint::LoadPoint(double offered_load, double servers) : a_(offered_load), s_(servers) {
  if (!std::isfinite(a_) || !(a_ > 0.0)) throw DomainError("LoadPoint: offered load must be > 0");
  if (!std::isfinite(s_) || !(s_ > 0.0)) throw DomainError("LoadPoint: servers must be > 0");
}

LoadPoint LoadPoint::from_rates(double arrival_rate, double service_rate, double servers) {
  if (!(arrival_rate > 0.0) || !(service_rate > 0.0)) {
    throw DomainError("LoadPoint: arrival and service rates must be > 0");
  }
  return LoadPoint(arrival_rate / service_rate, servers);
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::IntegerRecurrence:
      return "recurrence";
    case Method::Quadrature:
      return "quadrature";
    case Method::GammaClosedForm:
      return "gamma";
  }
  return "unknown";
}

double erlang_b_integer(std::int64_t n, double a) {
  if (n < 0) throw DomainError("erlang_b_integer: requires n >= 0");
  if (!std::isfinite(a) || !(a > 0.0)) throw DomainError("erlang_b_integer: requires a > 0");
  double b = 1.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double ab = a * b;
    b = ab / (static_cast<double>(k) + ab);
  }
  return b;
}

DelayProbability erlang_c_integer(std::int64_t n, double a) {
  if (n < 1) throw DomainError("erlang_c_integer: requires n >= 1");
  require_valid_load(static_cast<double>(n), a, "erlang_c_integer");
  const double b = erlang_b_integer(n, a);
  const double rho = a / static_cast<double>(n);
  return {b / (1.0 - rho * (1.0 - b)), Method::IntegerRecurrence, kNominalErrorBound};
}

DelayProbability erlang_c_real(double s, double a, const numerics::QuadratureConfig& cfg) {
  require_valid_load(s, a, "erlang_c_real");

  // 1/C = (1/a) int_0^inf u e^-u (1 + u/a)^(s-1) du. For u < a the exponent
  // is split as (s-1) [log1p(u/a) - u/a] + u (s-1-a)/a so that two large
  // terms do not cancel when a is big; for u >= a the direct form is exact
  // enough and avoids the opposite cancellation when a is tiny.
  const double drift = (s - 1.0 - a) / a;
  const auto log_integrand = [=](double u) {
    if (u <= 0.0) return -std::numeric_limits<double>::infinity();
    const double x = u / a;
    if (x >= 1.0) return std::log(u) + (s - 1.0) * std::log1p(x) - u;
    return std::log(u) + (s - 1.0) * numerics::log1pmx(x) + u * drift;
  };
  const auto q = numerics::integrate_semi_infinite(log_integrand, cfg);

  const double c = std::min(1.0, a / q.value);
  return {c, Method::Quadrature, c * (q.error_estimate / q.value)};
}

DelayProbability erlang_c_gamma(double s, double a) {
  require_valid_load(s, a, "erlang_c_gamma");
  const double log_term = std::log(s - a) + a - s * std::log(a) + numerics::log_gamma(s) +
                          numerics::log_upper_gamma_regularized(s, a);
  return {1.0 / (1.0 + std::exp(log_term)), Method::GammaClosedForm, kNominalErrorBound};
}

DelayProbability erlang_c(const LoadPoint& p, Method method, const numerics::QuadratureConfig& cfg) {
  switch (method) {
    case Method::IntegerRecurrence: {
      const double n = std::round(p.s());
      if (n != p.s() || n > 9.0e15) {
        throw DomainError("erlang_c: the recurrence method needs an integer server count");
      }
      return erlang_c_integer(static_cast<std::int64_t>(n), p.a());
    }
    case Method::Quadrature:
      return erlang_c_real(p.s(), p.a(), cfg);
    case Method::GammaClosedForm:
      return erlang_c_gamma(p.s(), p.a());
  }
  throw DomainError("erlang_c: unknown method");
}

std::int64_t min_servers(double a, double epsilon) {
  require_target(a, epsilon, "min_servers");
  constexpr double kTie = 1e-12;
  const auto accept = [&](std::int64_t n) {
    return erlang_c_integer(n, a).value <= epsilon * (1.0 + kTie);
  };

  const auto first = static_cast<std::int64_t>(std::floor(a)) + 1;
  if (accept(first)) return first;

  // Invariant: lo rejected, hi accepted.
  std::int64_t lo = first;
  std::int64_t step = 1;
  std::int64_t hi = first + step;
  while (!accept(hi)) {
    lo = hi;
    step *= 2;
    hi = first + step;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (accept(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double real_staffing_level(double a, double epsilon, const numerics::QuadratureConfig& cfg) {
  require_target(a, epsilon, "real_staffing_level");
  const auto delay = [&](double s) { return erlang_c_real(s, a, cfg).value; };

  const double lo = a * (1.0 + 1e-12);
  if (delay(lo) <= epsilon) return lo;

  double slack = std::max(1.0, std::sqrt(a));
  double hi = a + slack;
  for (int i = 0; delay(hi) > epsilon; ++i) {
    if (i >= 200) {
      throw NumericalError("real_staffing_level: could not bracket the target", hi, 0.0, i);
    }
    slack *= 2.0;
    hi = a + slack;
  }

  const double tol = std::max(1e-9, 8.0 * std::numeric_limits<double>::epsilon() * hi);
  return numerics::bisect_monotone(delay, lo, hi, epsilon, tol).value;
}

}  // namespace hwstaff::erlang
