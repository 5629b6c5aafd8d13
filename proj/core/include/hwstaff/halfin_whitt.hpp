#pragma once

// Square-root staffing n(a) = a + beta sqrt(a), its inverse-regime
// counterpart a(n) = n - beta sqrt(n), the limiting delay probability
//   C*(beta) = (1 + beta Phi(beta) / phi(beta))^-1
// and the sweeps built on them.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hwstaff/numerics.hpp"

namespace hwstaff::halfin_whitt {

/// C*(beta). beta = 0 is the continuous boundary and returns 1; beta < 0
/// throws DomainError.
double hw_limit(double beta);

/// True when beta sits on the boundary of hw_limit's domain (beta == 0).
inline bool is_hw_boundary(double beta) { return beta == 0.0; }

/// s = a + beta sqrt(a). Requires a > 0 and beta > 0.
double staffing(double a, double beta);

/// a = n - beta sqrt(n). Requires beta > 0 and n > beta^2.
double inverse_load(double n, double beta);

/// beta with hw_limit(beta) = epsilon, for 0 < epsilon < 1.
double beta_for_target(double epsilon);

enum class Regime { LoadParametrized, ServerParametrized };

/// One row of a sweep. For LoadParametrized rows c_star and gap are set;
/// ServerParametrized rows leave them empty.
struct HwPoint {
  double beta = 0.0;
  double a = 0.0;
  double s = 0.0;
  double c_value = 0.0;
  double error_bound = 0.0;
  std::optional<double> c_star;
  std::optional<double> gap;
  std::optional<std::string> error;  // set when this row failed

  bool ok() const { return !error.has_value(); }
};

struct SweepResult {
  Regime regime = Regime::LoadParametrized;
  double beta = 0.0;
  std::vector<HwPoint> rows;

  /// LoadParametrized only: c_value strictly decreasing (each decrement
  /// larger than the two rows' error bounds combined) and every gap
  /// positive beyond its error bound.
  bool verified = false;
  /// Smallest decrement c[i] - c[i+1] minus the combined error bound.
  std::optional<double> min_decrement_margin;
  /// Smallest gap minus its error bound.
  std::optional<double> min_gap_margin;

  std::size_t failed_rows() const;
};

/// Evaluates C(a + beta sqrt(a), a) on a strictly increasing load grid.
SweepResult hw_sweep(double beta, std::span<const double> a_grid,
                     const numerics::QuadratureConfig& cfg = {});

/// Evaluates C(s, s - beta sqrt(s)) on a strictly increasing server grid.
/// Points with s <= beta^2 are recorded as failed rows.
SweepResult inverse_sweep(double beta, std::span<const double> s_grid,
                          const numerics::QuadratureConfig& cfg = {});

/// points values from lo to hi inclusive, geometric when log_spaced.
std::vector<double> make_grid(double lo, double hi, int points, bool log_spaced);

}  // namespace hwstaff::halfin_whitt
