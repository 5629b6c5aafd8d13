#pragma once

// Executable versions of the objects behind the monotonicity argument for
// C(a + beta sqrt(a), a):
//
//   g(t, a)  = a t e^(-a t) (1+t)^(a-1)          density of X_a on t >= 0
//   Y_a      = (1 + X_a)^sqrt(a)
//   f(y, a)  = sqrt(a) y^(sqrt(a)-1) (y^(1/sqrt(a)) - 1) e^(-a (y^(1/sqrt(a)) - 1))
//   Fbar(y,a)= P(Y_a > y) = y^sqrt(a) e^(-a (y^(1/sqrt(a)) - 1))
//            = exp((ln y)^2 h(sqrt(a) / ln y))
//   h(x)     = x + x^2 (1 - e^(1/x)) = -sum_n x^-n / (n+2)!
//
// Every density and tail here is built from one log-space kernel,
// ln P(X_a > x) = a (ln(1+x) - x), so the identities linking them hold to
// rounding by construction.

#include <span>
#include <vector>

#include "hwstaff/numerics.hpp"

namespace hwstaff::proof_kit {

/// ln P(X_a > x) = a (log1p(x) - x).
double log_tail_x(double x, double a);

double density_g(double t, double a);

/// P(X_a <= x) = 1 - (1+x)^a e^(-a x).
double cdf_x(double x, double a);

/// f(y, a) for y > 1.
double density_y(double y, double a);

/// Fbar(y, a) for y >= 1; exactly 1 at y = 1.
double tail_y(double y, double a);

/// Fbar through the h rewrite; requires y > 1.
double tail_y_via_h(double y, double a);

/// Above this argument h switches from the closed form to the series.
inline constexpr double kHSeriesSwitch = 20.0;
inline constexpr int kHSeriesTerms = 30;

double h(double x);

/// -sum_{n=0}^{terms-1} x^-n / (n+2)!
double h_series(double x, int terms);

/// E[Y_a^beta] = int_0^inf (1+t)^(beta sqrt(a)) g(t, a) dt, by quadrature in t.
double moment_y(double a, double beta, const numerics::QuadratureConfig& cfg = {});

struct OrderViolation {
  double y;
  double tail_low;
  double tail_high;
};

struct OrderReport {
  double a_low = 0.0;
  double a_high = 0.0;
  std::vector<double> y_grid;
  std::vector<OrderViolation> violations;
  bool passed = true;
  /// min over the grid of tail_y(y, a_high) - tail_y(y, a_low).
  double min_margin = 0.0;
};

/// Absolute slack allowed when comparing tails.
inline constexpr double kOrderTolerance = 1e-13;

/// Checks Fbar(y, a_low) <= Fbar(y, a_high) + kOrderTolerance on the grid.
OrderReport check_stochastic_order(double a_low, double a_high, std::span<const double> y_grid);

}  // namespace hwstaff::proof_kit
