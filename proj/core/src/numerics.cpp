#include "hwstaff/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hwstaff/errors.hpp"

namespace hwstaff::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(who) + ": argument must be finite");
  }
}

// 7-point Gauss / 15-point Kronrod on [-1, 1]. Gauss nodes are the odd
// entries of kKronrodNodes.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::size_t kMaxPanels = std::size_t{1} << 16;

// Kronrod and Gauss sums on [lo, hi], both multiplied by exp(-log_scale).
struct Panel {
  double lo;
  double hi;
  double log_scale;
  double kronrod;
  double error;
};

Panel evaluate_panel(const LogIntegrand& log_f, double lo, double hi, long& evaluations) {
  const double half = 0.5 * (hi - lo);
  const double center = lo + half;

  std::array<double, 15> logs{};
  for (std::size_t i = 0; i < 7; ++i) {
    logs[2 * i] = log_f(center - half * kKronrodNodes[i]);
    logs[2 * i + 1] = log_f(center + half * kKronrodNodes[i]);
  }
  logs[14] = log_f(center);
  evaluations += 15;

  double scale = -kInf;
  for (double l : logs) {
    if (std::isnan(l)) {
      throw NumericalError("integrate_semi_infinite: integrand returned NaN", 0.0, kInf, 0);
    }
    scale = std::max(scale, l);
  }
  if (scale == -kInf) return {lo, hi, -kInf, 0.0, 0.0};
  if (scale == kInf) {
    throw NumericalError("integrate_semi_infinite: integrand overflowed to +inf", kInf, kInf, 0);
  }

  double kronrod = kKronrodWeights[7] * std::exp(logs[14] - scale);
  double gauss = kGaussWeights[3] * std::exp(logs[14] - scale);
  for (std::size_t i = 0; i < 7; ++i) {
    const double pair = std::exp(logs[2 * i] - scale) + std::exp(logs[2 * i + 1] - scale);
    kronrod += kKronrodWeights[i] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, scale, kronrod, std::abs(kronrod - gauss)};
}

// Doubling grid 0, 2^-40, 2^-39, ... up to the first point past the sampled
// maximum that sits truncation_log_cutoff below it.
std::vector<double> truncation_grid(const LogIntegrand& log_f, double cutoff, long& evaluations) {
  std::vector<double> grid{0.0};
  double running_max = log_f(0.0);
  double argmax = 0.0;
  ++evaluations;
  if (std::isnan(running_max)) running_max = -kInf;

  for (double t = std::ldexp(1.0, -40); t < 1e300; t *= 2.0) {
    grid.push_back(t);
    const double l = log_f(t);
    ++evaluations;
    if (std::isnan(l)) {
      throw NumericalError("integrate_semi_infinite: integrand returned NaN", 0.0, kInf, 0);
    }
    if (l > running_max) {
      running_max = l;
      argmax = t;
    }
    if (t > argmax && running_max > -kInf && l < running_max - cutoff) return grid;
  }
  if (running_max == -kInf) return grid;  // identically zero
  throw NumericalError("integrate_semi_infinite: integrand does not decay on [0, 1e300]", 0.0,
                       kInf, evaluations);
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureConfig: rel_tol must be > 0");
  if (!(abs_tol > 0.0)) throw DomainError("QuadratureConfig: abs_tol must be > 0");
  if (max_refinements < 1) throw DomainError("QuadratureConfig: max_refinements must be >= 1");
  if (!(truncation_log_cutoff >= 30.0)) {
    throw DomainError("QuadratureConfig: truncation_log_cutoff must be >= 30");
  }
}

double normal_pdf(double x) {
  require_finite(x, "normal_pdf");
  return std::exp(-0.5 * x * x) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

double normal_cdf(double x) {
  require_finite(x, "normal_cdf");
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be finite and > 0");
  }
  if (x == 1.0 || x == 2.0) return 0.0;

  // Shift into the range where the Stirling series is accurate to eps.
  double shift_log = 0.0;
  if (x < 10.0) {
    double product = 1.0;
    while (x < 10.0) {
      product *= x;
      x += 1.0;
    }
    shift_log = std::log(product);
  }

  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli terms B_2k / (2k (2k-1) x^(2k-1)), k = 1..7.
  const double series =
      inv * (1.0 / 12.0 +
             inv2 * (-1.0 / 360.0 +
                     inv2 * (1.0 / 1260.0 +
                             inv2 * (-1.0 / 1680.0 +
                                     inv2 * (1.0 / 1188.0 +
                                             inv2 * (-691.0 / 360360.0 + inv2 / 156.0))))));
  const double half_log_2pi = 0.91893853320467274178032973640562;
  return (x - 0.5) * std::log(x) - x + half_log_2pi + series - shift_log;
}

double log_upper_gamma_regularized(double s, double x) {
  if (!(s > 0.0) || !std::isfinite(s) || !(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("upper_gamma_regularized: requires s > 0 and x >= 0, both finite");
  }
  if (x == 0.0) return 0.0;

  constexpr long kMaxIterations = 1'000'000;
  const double log_prefactor = s * std::log(x) - x - log_gamma(s);

  if (x < s + 1.0) {
    // P(s, x) = x^s e^-x / Gamma(s+1) * sum_n x^n / ((s+1)...(s+n))
    double term = 1.0 / s;
    double sum = term;
    double denom = s;
    for (long n = 1; n <= kMaxIterations; ++n) {
      denom += 1.0;
      term *= x / denom;
      sum += term;
      if (std::abs(term) < std::abs(sum) * kEps) {
        const double lower = std::exp(log_prefactor + std::log(sum));
        return std::log1p(-lower);
      }
    }
    throw NumericalError("upper_gamma_regularized: series did not converge", 0.0, kInf,
                         kMaxIterations);
  }

  // Modified Lentz evaluation of the continued fraction for Gamma(s, x).
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (long i = 1; i <= kMaxIterations; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) return log_prefactor + std::log(h);
  }
  throw NumericalError("upper_gamma_regularized: continued fraction did not converge", 0.0, kInf,
                       kMaxIterations);
}

double upper_gamma_regularized(double s, double x) {
  return std::exp(log_upper_gamma_regularized(s, x));
}

double log1pmx(double x) {
  if (!(x > -1.0)) throw DomainError("log1pmx: requires x > -1");
  if (std::abs(x) > 0.25) return std::log1p(x) - x;
  // -x^2/2 + x^3/3 - x^4/4 + ...
  double power = x * x;
  double sum = 0.0;
  for (int k = 2; k < 60; ++k) {
    const double term = power / k;
    sum += (k % 2 == 0) ? -term : term;
    if (std::abs(term) < kEps * std::abs(sum)) break;
    power *= x;
  }
  return sum;
}

QuadratureResult integrate_semi_infinite(const LogIntegrand& log_integrand,
                                         const QuadratureConfig& cfg) {
  cfg.validate();
  long evaluations = 0;
  const std::vector<double> grid =
      truncation_grid(log_integrand, cfg.truncation_log_cutoff, evaluations);

  std::vector<Panel> panels;
  panels.reserve(2 * grid.size());
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    panels.push_back(evaluate_panel(log_integrand, grid[i], grid[i + 1], evaluations));
  }

  for (int round = 0;; ++round) {
    double log_max = -kInf;
    for (const auto& p : panels) log_max = std::max(log_max, p.log_scale);
    if (log_max == -kInf) {
      return {0.0, 0.0, static_cast<int>(panels.size()), evaluations};
    }

    double total = 0.0;
    double error = 0.0;
    std::vector<double> weights(panels.size());
    for (std::size_t i = 0; i < panels.size(); ++i) {
      weights[i] = std::exp(panels[i].log_scale - log_max);
      total += panels[i].kronrod * weights[i];
      error += panels[i].error * weights[i];
    }
    const double tol = std::max(cfg.abs_tol * std::exp(-log_max), cfg.rel_tol * std::abs(total));

    const auto rescale = [&](double scaled) { return scaled * std::exp(log_max); };
    if (error <= tol) {
      QuadratureResult out;
      out.value = rescale(total);
      out.error_estimate = rescale(error);
      out.panels = static_cast<int>(panels.size());
      out.evaluations = evaluations;
      return out;
    }
    if (round >= cfg.max_refinements) {
      throw NumericalError("integrate_semi_infinite: tolerance not met after " +
                               std::to_string(cfg.max_refinements) + " refinement rounds",
                           rescale(total), rescale(error), round);
    }

    const double share = tol / static_cast<double>(panels.size());
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].error * weights[i] > panels[worst].error * weights[worst]) worst = i;
    }

    std::vector<Panel> next;
    next.reserve(2 * panels.size());
    bool split_any = false;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      const Panel& p = panels[i];
      const double mid = p.lo + 0.5 * (p.hi - p.lo);
      const bool splittable = mid > p.lo && mid < p.hi;
      if (splittable && (i == worst || p.error * weights[i] > share)) {
        next.push_back(evaluate_panel(log_integrand, p.lo, mid, evaluations));
        next.push_back(evaluate_panel(log_integrand, mid, p.hi, evaluations));
        split_any = true;
      } else {
        next.push_back(p);
      }
    }
    if (next.size() > kMaxPanels) {
      throw NumericalError("integrate_semi_infinite: panel budget exhausted after " +
                               std::to_string(round + 1) + " refinement rounds",
                           rescale(total), rescale(error), round + 1);
    }
    if (!split_any) {
      throw NumericalError("integrate_semi_infinite: panels cannot be subdivided further",
                           rescale(total), rescale(error), round);
    }
    panels = std::move(next);
  }
}

BracketedRoot bisect_monotone(const std::function<double(double)>& f, double lo, double hi,
                              double target, double tol) {
  if (!(tol > 0.0)) throw DomainError("bisect_monotone: tol must be > 0");
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("bisect_monotone: requires finite lo <= hi");
  }
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (!(std::min(f_lo, f_hi) <= target && target <= std::max(f_lo, f_hi))) {
    throw BracketError("bisect_monotone: target " + std::to_string(target) +
                           " not bracketed by f(lo) = " + std::to_string(f_lo) +
                           " and f(hi) = " + std::to_string(f_hi),
                       f_lo, f_hi);
  }
  const bool increasing = f_hi >= f_lo;

  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if ((f_mid < target) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double value = lo + 0.5 * (hi - lo);
  return {lo, hi, value, f(value) - target};
}

}  // namespace hwstaff::numerics
