#pragma once

// Special functions, semi-infinite quadrature and bracketed root finding
// shared by the Erlang, Halfin-Whitt and proof modules.

#include <functional>

namespace hwstaff::numerics {

/// Tolerances for integrate_semi_infinite.
struct QuadratureConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-300;
  int max_refinements = 60;
  /// Integrand values more than this many e-folds below the running
  /// maximum are treated as zero when locating the upper cut.
  double truncation_log_cutoff = 40.0;

  /// Throws DomainError when an invariant is violated.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
  long evaluations = 0;
};

struct BracketedRoot {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double residual = 0.0;  // f(value) - target
};

double normal_pdf(double x);
double normal_cdf(double x);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s).
/// Series for x < s + 1, Lentz continued fraction otherwise.
double upper_gamma_regularized(double s, double x);

/// ln Q(s, x). Stays finite where Q itself would underflow.
double log_upper_gamma_regularized(double s, double x);

/// ln(1 + x) - x, accurate for small |x|.
double log1pmx(double x);

using LogIntegrand = std::function<double(double)>;

/// Integrates exp(log_integrand(t)) over [0, inf).
///
/// The integrand is evaluated in log space and every panel is rescaled by
/// its own maximum before exponentiation, so peaks far outside the double
/// range are handled as long as the integral itself is representable. The
/// upper cut is placed on a doubling grid at the first point that lies past
/// the maximum and more than cfg.truncation_log_cutoff below it; the panels
/// formed by that grid are then refined adaptively with a 7/15-point
/// Gauss-Kronrod pair.
///
/// Throws NumericalError (with the best estimate attached) when the
/// tolerance is not met within cfg.max_refinements rounds or the panel count
/// would exceed 65536.
QuadratureResult integrate_semi_infinite(const LogIntegrand& log_integrand,
                                         const QuadratureConfig& cfg = {});

/// Finds x in [lo, hi] with f(x) = target for monotone f, bisecting until
/// the bracket is no wider than tol. Works for either direction of
/// monotonicity. Throws BracketError if [f(lo), f(hi)] misses the target.
BracketedRoot bisect_monotone(const std::function<double(double)>& f, double lo, double hi,
                              double target, double tol);

}  // namespace hwstaff::numerics
