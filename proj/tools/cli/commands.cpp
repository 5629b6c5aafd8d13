#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "config_file.hpp"
#include "hwstaff/erlang.hpp"
#include "hwstaff/errors.hpp"
#include "hwstaff/halfin_whitt.hpp"
#include "hwstaff/mmn_oracle.hpp"
#include "hwstaff/verification.hpp"
#include "output.hpp"

namespace hwstaff::cli {

namespace {

struct QuadratureFlags {
  std::string config;
  double rel_tol = 0.0;
  double abs_tol = 0.0;
  int max_refinements = 0;
  double truncation_log_cutoff = 0.0;
  CLI::Option* rel_tol_opt = nullptr;
  CLI::Option* abs_tol_opt = nullptr;
  CLI::Option* max_refinements_opt = nullptr;
  CLI::Option* cutoff_opt = nullptr;

  // defaults < config file < flags
  numerics::QuadratureConfig resolve() const {
    numerics::QuadratureConfig cfg;
    if (const auto path = resolve_config_path(config)) cfg = load_quadrature_config(*path, cfg);
    if (rel_tol_opt->count()) cfg.rel_tol = rel_tol;
    if (abs_tol_opt->count()) cfg.abs_tol = abs_tol;
    if (max_refinements_opt->count()) cfg.max_refinements = max_refinements;
    if (cutoff_opt->count()) cfg.truncation_log_cutoff = truncation_log_cutoff;
    try {
      cfg.validate();
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    return cfg;
  }
};

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot open output file '" + path + "'");
  file << content;
  if (!file) throw ConfigError("failed writing output file '" + path + "'");
}

std::string g6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------- compute

struct ComputeArgs {
  double s = 0.0;
  double a = 0.0;
  std::string method = "auto";
};

int cmd_compute(const ComputeArgs& args, const numerics::QuadratureConfig& cfg, std::ostream& out) {
  const erlang::LoadPoint point(args.a, args.s);
  const bool integer_s = std::floor(args.s) == args.s;

  std::vector<erlang::Method> methods;
  if (args.method == "auto") {
    methods.push_back(integer_s ? erlang::Method::IntegerRecurrence : erlang::Method::Quadrature);
  } else if (args.method == "recurrence") {
    methods.push_back(erlang::Method::IntegerRecurrence);
  } else if (args.method == "quadrature") {
    methods.push_back(erlang::Method::Quadrature);
  } else if (args.method == "gamma") {
    methods.push_back(erlang::Method::GammaClosedForm);
  } else {
    if (integer_s) methods.push_back(erlang::Method::IntegerRecurrence);
    methods.push_back(erlang::Method::Quadrature);
    methods.push_back(erlang::Method::GammaClosedForm);
  }

  std::vector<erlang::DelayProbability> results;
  for (auto m : methods) results.push_back(erlang::erlang_c(point, m, cfg));

  out << "s,a,method,value,error_bound\n";
  for (const auto& r : results) {
    out << format_double(args.s) << ',' << format_double(args.a) << ',' << erlang::to_string(r.method)
        << ',' << format_double(r.value) << ',' << format_double(r.error_bound) << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------ staff

struct StaffArgs {
  double a = 0.0;
  CLI::Option* a_opt = nullptr;
  double epsilon = 0.0;
  std::string mode = "integer";
};

int cmd_staff(const StaffArgs& args, const numerics::QuadratureConfig& cfg, std::ostream& out) {
  const bool have_a = args.a_opt->count() > 0;
  if (args.mode == "beta") {
    const double beta = halfin_whitt::beta_for_target(args.epsilon);
    out << "epsilon,beta,c_star" << (have_a ? ",a,servers" : "") << '\n';
    out << format_double(args.epsilon) << ',' << format_double(beta) << ','
        << format_double(halfin_whitt::hw_limit(beta));
    if (have_a) {
      out << ',' << format_double(args.a) << ',' << format_double(halfin_whitt::staffing(args.a, beta));
    }
    out << '\n';
    return kExitOk;
  }

  if (!have_a) throw DomainError("staff: --a is required in " + args.mode + " mode");
  out << "a,epsilon,servers\n" << format_double(args.a) << ',' << format_double(args.epsilon) << ',';
  if (args.mode == "integer") {
    out << erlang::min_servers(args.a, args.epsilon) << '\n';
  } else {
    out << format_double(erlang::real_staffing_level(args.a, args.epsilon, cfg)) << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------------------ sweep

struct SweepArgs {
  std::string regime;
  double beta = 0.0;
  double from = 0.0;
  double to = 0.0;
  int points = 0;
  CLI::Option* from_opt = nullptr;
  CLI::Option* to_opt = nullptr;
  CLI::Option* points_opt = nullptr;
  bool log_x = false;
  std::string out = "-";
  std::string format = "csv";
  int width = 640;
  int height = 480;
};

int cmd_sweep(const SweepArgs& args, const numerics::QuadratureConfig& cfg, std::ostream& out,
              std::ostream& err) {
  const bool hw = args.regime == "hw";
  const double beta = args.beta;
  if (!(beta > 0.0)) throw DomainError("sweep: requires --beta > 0");
  if (args.width <= 0 || args.height <= 0) throw DomainError("sweep: svg dimensions must be > 0");
  if (args.format == "both" && args.out == "-") {
    throw DomainError("sweep: --format both needs --out <stem> (writes <stem>.csv and <stem>.svg)");
  }

  const double boundary = beta * beta;
  double from = hw ? 1.0 : boundary + std::max(0.01, boundary / 18.0);
  double to = hw ? 1e4 : (beta <= 1.0 ? 50.0 : 500.0);
  int points = hw ? 40 : 200;
  if (args.from_opt->count()) from = args.from;
  if (args.to_opt->count()) to = args.to;
  if (args.points_opt->count()) points = args.points;

  if (!hw && from <= boundary) {
    const double clamped = boundary * (1.0 + 1e-9);
    err << "warning: --from " << g6(from) << " is not above beta^2 = " << g6(boundary)
        << "; clamped to " << format_double(clamped) << '\n';
    from = clamped;
  }
  const auto grid = halfin_whitt::make_grid(from, to, points, args.log_x);
  const auto sweep =
      hw ? halfin_whitt::hw_sweep(beta, grid, cfg) : halfin_whitt::inverse_sweep(beta, grid, cfg);

  if (args.format == "csv" || args.format == "both") {
    write_output(args.format == "both" ? args.out + ".csv" : args.out, sweep_to_csv(sweep), out);
  }
  if (args.format == "svg" || args.format == "both") {
    write_output(args.format == "both" ? args.out + ".svg" : args.out,
                 sweep_to_svg(sweep, args.width, args.height, args.log_x), out);
  }

  const std::size_t failed = sweep.failed_rows();
  err << args.regime << " sweep, beta = " << g6(beta) << ": " << sweep.rows.size() << " rows, "
      << failed << " failed";
  if (hw) err << ", strictly decreasing above C*: " << (sweep.verified ? "yes" : "no");
  err << '\n';
  return failed < sweep.rows.size() ? kExitOk : kExitNumericalError;
}

// ----------------------------------------------------------------- verify

int cmd_verify(const std::string& suite, const numerics::QuadratureConfig& cfg, std::ostream& out) {
  std::vector<verification::PropertyCheck> checks;
  if (suite == "monotonicity") {
    checks = verification::verify_monotonicity(cfg);
  } else if (suite == "order") {
    checks = verification::verify_order();
  } else if (suite == "identities") {
    checks = verification::verify_identities(cfg);
  } else {
    checks = verification::verify_all(cfg);
  }

  std::size_t passed = 0;
  for (const auto& c : checks) {
    char margin[64];
    std::snprintf(margin, sizeof(margin), "%.3e", c.worst_margin);
    out << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  margin=" << margin << "  "
        << c.detail << '\n';
    passed += c.passed ? 1 : 0;
  }
  out << passed << '/' << checks.size() << " properties passed\n";
  return passed == checks.size() ? kExitOk : kExitVerificationFailed;
}

// --------------------------------------------------------------- simulate

struct SimulateArgs {
  std::int64_t n = 0;
  double lambda = 0.0;
  double mu = 1.0;
  std::uint64_t seed = 1;
  std::int64_t arrivals = 1'000'000;
  std::int64_t warmup = 0;
  CLI::Option* warmup_opt = nullptr;
  int batches = 32;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  auto cfg = mmn::SimConfig::with_default_warmup(args.n, args.lambda, args.mu, args.arrivals, args.seed);
  cfg.batches = args.batches;
  if (args.warmup_opt->count()) cfg.warmup_arrivals = args.warmup;
  cfg.validate();

  const auto est = mmn::simulate_mmn(cfg);
  const double analytic = erlang::erlang_c_integer(cfg.n, cfg.offered_load()).value;
  const double std_error = est.ci_halfwidth / mmn::t_quantile_975(est.batches - 1);
  const double z = std_error > 0.0 ? (est.p_wait - analytic) / std_error : 0.0;

  out << "n,lambda,mu,seed,warmup,arrivals,p_wait,ci_halfwidth,batches,analytic,z\n";
  out << cfg.n << ',' << format_double(cfg.lambda) << ',' << format_double(cfg.mu) << ',' << cfg.seed
      << ',' << cfg.warmup_arrivals << ',' << cfg.measured_arrivals << ',' << format_double(est.p_wait)
      << ',' << format_double(est.ci_halfwidth) << ',' << est.batches << ','
      << format_double(analytic) << ',' << format_double(z) << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Erlang C delay probabilities and square-root staffing", "hwstaff"};
  app.require_subcommand(1);
  app.fallthrough();

  QuadratureFlags qf;
  app.add_option("--config", qf.config,
                 "key = value file presetting quadrature settings (fallback: $HW_STAFFING_CONFIG)");
  qf.rel_tol_opt = app.add_option("--rel-tol", qf.rel_tol, "quadrature relative tolerance");
  qf.abs_tol_opt = app.add_option("--abs-tol", qf.abs_tol, "quadrature absolute tolerance");
  qf.max_refinements_opt =
      app.add_option("--max-refinements", qf.max_refinements, "quadrature subdivision rounds");
  qf.cutoff_opt = app.add_option("--truncation-cutoff", qf.truncation_log_cutoff,
                                 "log-space tail truncation threshold (>= 30)");

  ComputeArgs compute;
  auto* compute_cmd = app.add_subcommand("compute", "Erlang C delay probability C(s, a)");
  compute_cmd->add_option("--s", compute.s, "servers (may be non-integer)")->required();
  compute_cmd->add_option("--a", compute.a, "offered load in erlangs")->required();
  compute_cmd->add_option("--method", compute.method, "evaluation route")
      ->check(CLI::IsMember({"auto", "recurrence", "quadrature", "gamma", "all"}));

  StaffArgs staff;
  auto* staff_cmd = app.add_subcommand("staff", "staffing level for a target delay probability");
  staff.a_opt = staff_cmd->add_option("--a", staff.a, "offered load in erlangs");
  staff_cmd->add_option("--epsilon", staff.epsilon, "target delay probability, 0 < epsilon < 1")
      ->required();
  staff_cmd->add_option("--mode", staff.mode, "integer servers, real servers, or Halfin-Whitt beta")
      ->check(CLI::IsMember({"integer", "real", "beta"}));

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate and plot C along a staffing regime");
  sweep_cmd->add_option("--regime", sweep.regime, "hw: s = a + beta sqrt(a); inverse: a = s - beta sqrt(s)")
      ->required()
      ->check(CLI::IsMember({"hw", "inverse"}));
  sweep_cmd->add_option("--beta", sweep.beta, "slack parameter beta > 0")->required();
  sweep.from_opt = sweep_cmd->add_option("--from", sweep.from, "first grid value");
  sweep.to_opt = sweep_cmd->add_option("--to", sweep.to, "last grid value");
  sweep.points_opt = sweep_cmd->add_option("--points", sweep.points, "grid size");
  sweep_cmd->add_flag("--log-x", sweep.log_x, "geometric grid and log x axis");
  sweep_cmd->add_option("--out", sweep.out, "output path, '-' for stdout (stem when --format both)");
  sweep_cmd->add_option("--format", sweep.format, "csv, svg or both")
      ->check(CLI::IsMember({"csv", "svg", "both"}));
  sweep_cmd->add_option("--width", sweep.width, "svg width in pixels");
  sweep_cmd->add_option("--height", sweep.height, "svg height in pixels");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "run the monotonicity, ordering and identity suites");
  verify_cmd->add_option("--suite", suite, "which properties to check")
      ->check(CLI::IsMember({"all", "monotonicity", "order", "identities"}));

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "discrete-event M/M/n estimate of the delay probability");
  sim_cmd->add_option("--n", sim.n, "servers")->required();
  sim_cmd->add_option("--lambda", sim.lambda, "arrival rate")->required();
  sim_cmd->add_option("--mu", sim.mu, "service rate per server");
  sim_cmd->add_option("--seed", sim.seed, "random seed");
  sim_cmd->add_option("--arrivals", sim.arrivals, "measured arrivals");
  sim.warmup_opt = sim_cmd->add_option("--warmup", sim.warmup, "discarded arrivals (default 10 n / (1 - rho))");
  sim_cmd->add_option("--batches", sim.batches, "batch means (>= 10)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomainError;
  }

  try {
    if (*sim_cmd) return cmd_simulate(sim, out);
    const auto cfg = qf.resolve();
    if (*compute_cmd) return cmd_compute(compute, cfg, out);
    if (*staff_cmd) return cmd_staff(staff, cfg, out);
    if (*sweep_cmd) return cmd_sweep(sweep, cfg, out, err);
    if (*verify_cmd) return cmd_verify(suite, cfg, out);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumericalError;
  }
  return kExitDomainError;
}

}  // namespace hwstaff::cli
