#include "hwstaff/halfin_whitt.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "hwstaff/erlang.hpp"
#include "hwstaff/errors.hpp"

namespace hwstaff::halfin_whitt {

namespace {

void require_beta(double beta, const char* who) {
  if (!std::isfinite(beta) || !(beta > 0.0)) {
    throw DomainError(std::string(who) + ": requires beta > 0 (0 < a < s must hold)");
  }
}

void require_increasing(std::span<const double> grid, const char* who) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw DomainError(std::string(who) + ": grid values must be finite");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError(std::string(who) + ": grid must be strictly increasing");
    }
  }
}

template <typename Eval>
void fill_row(HwPoint& row, Eval&& eval) {
  try {
    eval(row);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
}

}  // namespace

double hw_limit(double beta) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw DomainError("hw_limit: requires beta >= 0");
  }
  // phi / (phi + beta Phi) == (1 + beta Phi/phi)^-1, without overflow in Phi/phi.
  const double pdf = numerics::normal_pdf(beta);
  return pdf / (pdf + beta * numerics::normal_cdf(beta));
}

double staffing(double a, double beta) {
  if (!std::isfinite(a) || !(a > 0.0)) throw DomainError("staffing: requires a > 0");
  require_beta(beta, "staffing");
  return a + beta * std::sqrt(a);
}

double inverse_load(double n, double beta) {
  require_beta(beta, "inverse_load");
  if (!std::isfinite(n) || !(n > beta * beta)) {
    throw DomainError("inverse_load: relation a(n) = n - beta sqrt(n) is valid only for n > beta^2");
  }
  return n - beta * std::sqrt(n);
}

double beta_for_target(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("beta_for_target: requires 0 < epsilon < 1");
  }
  double hi = 1.0;
  for (int i = 0; hw_limit(hi) > epsilon; ++i) {
    if (i >= 64) throw NumericalError("beta_for_target: could not bracket target", hi, 0.0, i);
    hi *= 2.0;
  }
  return numerics::bisect_monotone(hw_limit, 0.0, hi, epsilon, 1e-14).value;
}

std::size_t SweepResult::failed_rows() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const HwPoint& r) { return !r.ok(); }));
}

SweepResult hw_sweep(double beta, std::span<const double> a_grid,
                     const numerics::QuadratureConfig& cfg) {
  require_beta(beta, "hw_sweep");
  require_increasing(a_grid, "hw_sweep");
  if (!a_grid.empty() && !(a_grid.front() > 0.0)) {
    throw DomainError("hw_sweep: loads must be > 0");
  }
  cfg.validate();

  SweepResult out;
  out.regime = Regime::LoadParametrized;
  out.beta = beta;
  const double c_star = hw_limit(beta);

  for (double a : a_grid) {
    HwPoint row;
    row.beta = beta;
    row.a = a;
    row.c_star = c_star;
    fill_row(row, [&](HwPoint& r) {
      r.s = staffing(a, beta);
      const auto c = erlang::erlang_c_real(r.s, a, cfg);
      r.c_value = c.value;
      r.error_bound = c.error_bound;
      r.gap = c.value - c_star;
    });
    out.rows.push_back(std::move(row));
  }

  bool verified = out.failed_rows() == 0;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    const HwPoint& r = out.rows[i];
    if (!r.ok()) continue;
    const double gap_margin = *r.gap - r.error_bound;
    out.min_gap_margin = std::min(out.min_gap_margin.value_or(gap_margin), gap_margin);
    if (gap_margin <= 0.0) verified = false;
    if (i + 1 < out.rows.size() && out.rows[i + 1].ok()) {
      const HwPoint& next = out.rows[i + 1];
      const double margin = (r.c_value - next.c_value) - (r.error_bound + next.error_bound);
      out.min_decrement_margin = std::min(out.min_decrement_margin.value_or(margin), margin);
      if (margin <= 0.0) verified = false;
    }
  }
  out.verified = verified;
  return out;
}

SweepResult inverse_sweep(double beta, std::span<const double> s_grid,
                          const numerics::QuadratureConfig& cfg) {
  require_beta(beta, "inverse_sweep");
  require_increasing(s_grid, "inverse_sweep");
  cfg.validate();

  SweepResult out;
  out.regime = Regime::ServerParametrized;
  out.beta = beta;
  for (double s : s_grid) {
    HwPoint row;
    row.beta = beta;
    row.s = s;
    fill_row(row, [&](HwPoint& r) {
      r.a = inverse_load(s, beta);
      const auto c = erlang::erlang_c_real(s, r.a, cfg);
      r.c_value = c.value;
      r.error_bound = c.error_bound;
    });
    out.rows.push_back(std::move(row));
  }
  // No monotonicity claim is made in this regime.
  out.verified = false;
  return out;
}

std::vector<double> make_grid(double lo, double hi, int points, bool log_spaced) {
  if (points < 1) throw DomainError("make_grid: requires at least one point");
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("make_grid: bounds must be finite");
  if (points == 1) return {lo};
  if (!(lo < hi)) throw DomainError("make_grid: requires lo < hi");
  if (log_spaced && !(lo > 0.0)) throw DomainError("make_grid: log spacing requires lo > 0");

  std::vector<double> grid(static_cast<std::size_t>(points));
  const double steps = static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    const double frac = static_cast<double>(i) / steps;
    grid[static_cast<std::size_t>(i)] =
        log_spaced ? std::exp(std::log(lo) + frac * (std::log(hi) - std::log(lo)))
                   : lo + frac * (hi - lo);
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace hwstaff::halfin_whitt
