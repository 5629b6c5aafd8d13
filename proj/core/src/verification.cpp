#include "hwstaff/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>

#include "hwstaff/erlang.hpp"
#include "hwstaff/errors.hpp"
#include "hwstaff/halfin_whitt.hpp"
#include "hwstaff/mmn_oracle.hpp"
#include "hwstaff/proof_kit.hpp"

namespace hwstaff::verification {

namespace {

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return buf;
}

double rel_diff(double x, double y) {
  if (x == y) return 0.0;
  return std::abs(x - y) / std::max(std::abs(x), std::abs(y));
}

// Tracks the largest observed error against a fixed tolerance.
struct ToleranceCheck {
  explicit ToleranceCheck(double tolerance) : tol(tolerance) {}

  double tol;
  double worst = 0.0;
  std::string where;
  std::string failure;  // set when an evaluation threw

  void observe(double err, const std::string& at) {
    if (!(err <= worst)) {
      worst = err;
      where = at;
    }
  }

  PropertyCheck finish(std::string name) const {
    PropertyCheck c;
    c.name = std::move(name);
    c.passed = failure.empty() && worst <= tol;
    c.worst_margin = tol - worst;
    c.detail = format("max error %.3e (tol %.0e)", worst, tol) + (where.empty() ? "" : " at " + where);
    if (!failure.empty()) c.detail += "; " + failure;
    return c;
  }
};

// Runs body, turning a NumericalError into a recorded failure of the checks.
template <class Body>
void guarded(Body&& body, std::initializer_list<ToleranceCheck*> checks) {
  try {
    body();
  } catch (const NumericalError& e) {
    for (auto* c : checks) c->failure = std::string("numerical error: ") + e.what();
  }
}

}  // namespace

std::vector<PropertyCheck> verify_monotonicity(const numerics::QuadratureConfig& cfg) {
  std::vector<PropertyCheck> out;
  const auto grid = halfin_whitt::make_grid(kSweepLoadMin, kSweepLoadMax, kSweepPoints, true);

  for (double beta : kSweepBetas) {
    const auto sweep = halfin_whitt::hw_sweep(beta, grid, cfg);
    PropertyCheck dec;
    dec.name = format("decreasing C(a+b*sqrt(a),a), beta=%g", beta);
    dec.passed = sweep.verified;
    dec.worst_margin = sweep.min_decrement_margin.value_or(0.0);
    dec.detail = format("%zu loads in [%g, %g], min decrement beyond error bounds %.3e, %zu failed rows",
                        grid.size(), grid.front(), grid.back(), dec.worst_margin,
                        sweep.failed_rows());
    out.push_back(dec);

    PropertyCheck above;
    above.name = format("C above C*(beta), beta=%g", beta);
    above.worst_margin = sweep.min_gap_margin.value_or(0.0);
    above.passed = sweep.failed_rows() == 0 && above.worst_margin > 0.0;
    above.detail = format("C*=%.17g, min gap beyond error bound %.3e",
                          halfin_whitt::hw_limit(beta), above.worst_margin);
    out.push_back(above);

    const double c_star = halfin_whitt::hw_limit(beta);
    PropertyCheck conv;
    conv.name = format("gap shrinks from a=1e2 to a=1e4, beta=%g", beta);
    try {
      const double gap_lo =
          std::abs(erlang::erlang_c_real(halfin_whitt::staffing(1e2, beta), 1e2, cfg).value - c_star);
      const double gap_hi =
          std::abs(erlang::erlang_c_real(halfin_whitt::staffing(1e4, beta), 1e4, cfg).value - c_star);
      conv.worst_margin = std::min(gap_lo - gap_hi, 0.01 - gap_hi);
      conv.passed = gap_hi < gap_lo && gap_hi < 0.01;
      conv.detail = format("gap(1e2)=%.6e gap(1e4)=%.6e", gap_lo, gap_hi);
    } catch (const NumericalError& e) {
      conv.passed = false;
      conv.detail = std::string("numerical error: ") + e.what();
    }
    out.push_back(conv);
  }
  return out;
}

std::vector<PropertyCheck> verify_order() {
  std::vector<PropertyCheck> out;
  std::vector<double> y_grid;
  for (int k = 1; k <= 50; ++k) y_grid.push_back(std::pow(100.0, k / 50.0));

  std::string pairs;
  double worst = std::numeric_limits<double>::infinity();
  bool passed = true;
  for (double a = 0.5; a < 1024.0; a *= 2.0) {
    const auto report = proof_kit::check_stochastic_order(a, 2.0 * a, y_grid);
    passed = passed && report.passed;
    worst = std::min(worst, report.min_margin);
    pairs += format("%s(%g,%g)%s", pairs.empty() ? "" : " ", a, 2.0 * a, report.passed ? "" : "!");
  }
  PropertyCheck c;
  c.name = "tail of Y_a nondecreasing in a";
  c.passed = passed;
  c.worst_margin = worst;
  c.detail = "pairs " + pairs + format("; min tail difference %.3e over 50 y in (1, 100]", worst);
  out.push_back(c);
  return out;
}

std::vector<PropertyCheck> verify_identities(const numerics::QuadratureConfig& cfg) {
  std::vector<PropertyCheck> out;

  {
    ToleranceCheck t(1e-12);
    const auto ys = halfin_whitt::make_grid(1.01, 100.0, 20, true);
    const auto as = halfin_whitt::make_grid(0.5, 1000.0, 20, true);
    for (double y : ys) {
      for (double a : as) {
        t.observe(rel_diff(proof_kit::tail_y(y, a), proof_kit::tail_y_via_h(y, a)),
                  format("y=%g a=%g", y, a));
      }
    }
    out.push_back(t.finish("tail_y == tail_y_via_h (20x20 grid)"));
  }
  {
    ToleranceCheck t(1e-12);
    for (double x : halfin_whitt::make_grid(1.0, 1000.0, 200, true)) {
      const double closed = x - x * x * std::expm1(1.0 / x);
      t.observe(std::abs(closed - proof_kit::h_series(x, proof_kit::kHSeriesTerms)) /
                    std::abs(closed),
                format("x=%g", x));
    }
    out.push_back(t.finish("h closed form == series, x in [1, 1000]"));
  }
  {
    ToleranceCheck t(1e-10);
    guarded([&] {
      for (double a : {0.25, 1.0, 9.0, 100.0, 2500.0}) {
        const double int_g = numerics::integrate_semi_infinite(
                                 [a](double x) { return std::log(proof_kit::density_g(x, a)); }, cfg)
                                 .value;
        const double int_f = numerics::integrate_semi_infinite(
                                 [a](double x) {
                                   return x == 0.0 ? -std::numeric_limits<double>::infinity()
                                                   : std::log(proof_kit::density_y(1.0 + x, a));
                                 },
                                 cfg)
                                 .value;
        t.observe(std::abs(int_g - 1.0), format("int g, a=%g", a));
        t.observe(std::abs(int_f - 1.0), format("int f, a=%g", a));
      }
    }, {&t});
    out.push_back(t.finish("densities g and f integrate to 1"));
  }
  {
    ToleranceCheck t(1e-8);
    guarded([&] {
      for (double a : {1.0, 10.0, 100.0}) {
        for (double beta : {0.5, 1.0, 3.0}) {
          const double via_moment = 1.0 / proof_kit::moment_y(a, beta, cfg);
          const double direct = erlang::erlang_c_real(halfin_whitt::staffing(a, beta), a, cfg).value;
          t.observe(rel_diff(via_moment, direct), format("a=%g beta=%g", a, beta));
        }
      }
    }, {&t});
    out.push_back(t.finish("1/E[Y_a^beta] == C(a+beta*sqrt(a),a)"));
  }
  {
    ToleranceCheck three(1e-10);
    ToleranceCheck bd(1e-12);
    for (int n : {1, 2, 5, 10, 20, 50, 100, 500}) {
      for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9, 0.95}) {
        const double a = rho * n;
        const double rec = erlang::erlang_c_integer(n, a).value;
        const double gam = erlang::erlang_c_gamma(n, a).value;
        const std::string at = format("n=%d rho=%g", n, rho);
        bd.observe(rel_diff(rec, mmn::birth_death_wait_prob(n, a)), at);
        guarded([&] {
          const double quad = erlang::erlang_c_real(n, a, cfg).value;
          three.observe(std::max({rel_diff(rec, quad), rel_diff(rec, gam), rel_diff(quad, gam)}), at);
        }, {&three});
      }
    }
    out.push_back(three.finish("three-way Erlang C agreement"));
    out.push_back(bd.finish("birth-death solve == recurrence"));
  }
  return out;
}

std::vector<PropertyCheck> verify_all(const numerics::QuadratureConfig& cfg) {
  auto out = verify_monotonicity(cfg);
  for (auto& c : verify_order()) out.push_back(std::move(c));
  for (auto& c : verify_identities(cfg)) out.push_back(std::move(c));
  return out;
}

}  // namespace hwstaff::verification
