#pragma once

// Erlang B and C delay probabilities for integer and real server counts.
//
// Three independent routes to C(s, a):
//   * integer recurrence through Erlang B,
//   * adaptive quadrature of the real-server integral
//       1/C = int_0^inf (1+t)^(s-1) a t e^(-a t) dt,
//   * the closed form 1/C = 1 + (s-a) e^a a^(-s) Gamma(s) Q(s, a).

#include <cstdint>
#include <string_view>

#include "hwstaff/numerics.hpp"

namespace hwstaff::erlang {

/// Offered load a (erlangs) served by s servers. rho is always derived.
class LoadPoint {
 public:
  /// Throws DomainError unless a > 0 and s > 0.
  LoadPoint(double offered_load, double servers);

  /// a = lambda / mu.
  static LoadPoint from_rates(double arrival_rate, double service_rate, double servers);

  double a() const noexcept { return a_; }
  double s() const noexcept { return s_; }
  double rho() const noexcept { return a_ / s_; }
  bool stable() const noexcept { return a_ < s_; }

 private:
  double a_;
  double s_;
};

enum class Method { IntegerRecurrence, Quadrature, GammaClosedForm };

std::string_view to_string(Method m);

struct DelayProbability {
  double value = 0.0;
  Method method = Method::IntegerRecurrence;
  double error_bound = 0.0;
};

/// Nominal error bound reported by the recurrence and closed-form paths.
inline constexpr double kNominalErrorBound = 1e-13;

/// B(n, a) via B(k) = a B(k-1) / (k + a B(k-1)).
double erlang_b_integer(std::int64_t n, double a);

/// C(n, a) = B / (1 - rho (1 - B)). Throws InstabilityError when a >= n.
DelayProbability erlang_c_integer(std::int64_t n, double a);

/// C(s, a) for real s by quadrature under u = a t.
DelayProbability erlang_c_real(double s, double a, const numerics::QuadratureConfig& cfg = {});

/// C(s, a) from the regularized upper incomplete gamma function.
DelayProbability erlang_c_gamma(double s, double a);

DelayProbability erlang_c(const LoadPoint& p, Method method,
                          const numerics::QuadratureConfig& cfg = {});

/// Smallest integer n > a with C(n, a) <= epsilon. Ties within a relative
/// 1e-12 of epsilon are accepted.
std::int64_t min_servers(double a, double epsilon);

/// Real s* > a with erlang_c_real(s*, a) = epsilon, to 1e-9 in s.
double real_staffing_level(double a, double epsilon, const numerics::QuadratureConfig& cfg = {});

}  // namespace hwstaff::erlang
