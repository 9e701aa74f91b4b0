#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ldar/diagnostics.hpp"
#include "ldar/error.hpp"
#include "ldar/estimation.hpp"
#include "ldar/experiments.hpp"
#include "ldar/io.hpp"
#include "ldar/model.hpp"
#include "ldar/parallel.hpp"
#include "ldar/risk.hpp"
#include "ldar/selection.hpp"

namespace ldar::cli {

namespace {

void write_error(std::ostream& err, const std::string& category, const std::string& code,
                 const std::string& message) {
  nlohmann::json j = {{"error", {{"category", category}, {"code", code}, {"message", message}}}};
  err << j.dump() << '\n';
}

std::vector<Method> methods_of(const std::string& text) {
  if (text == "both") return {Method::gqmle, Method::eqmle};
  return {parse_method(text)};
}

std::uint64_t require_seed(const RunConfig& c) {
  if (!c.seed) throw DomainError("--seed is required for " + c.command, "usage.seed");
  return *c.seed;
}

TimeSeries load_series(const RunConfig& c) {
  if (c.input.empty()) throw DomainError("--in is required for " + c.command, "usage.input");
  TimeSeries y = ingest_csv(c.input, c.column);
  if (!c.demean) return y;
  std::vector<double> v(y.values().begin(), y.values().end());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  for (double& x : v) x -= mean;
  return TimeSeries(std::move(v));
}

FitOptions fit_options(const RunConfig& c) {
  FitOptions opts;
  opts.seed = c.seed.value_or(0);
  return opts;
}

FitReport fit_report(std::span<const double> y, std::size_t p, Method method,
                     const FitOptions& opts) {
  FitReport r;
  r.fit = fit(y, p, method, opts);
  try {
    r.cov = sandwich_covariance(y, r.fit);
  } catch (const SingularityError& e) {
    r.fit.warnings.push_back(std::string("standard errors unavailable: ") + e.what());
  }
  return r;
}

std::string plot_path(const std::string& base, Method method, bool several) {
  if (!several) return base;
  const auto dot = base.find_last_of('.');
  const auto slash = base.find_last_of('/');
  const std::string tag = "." + to_string(method);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return base + tag;
  return base.substr(0, dot) + tag + base.substr(dot);
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const std::uint64_t seed = require_seed(c);
  if (c.alpha.empty() || c.alpha.size() != c.beta.size()) {
    throw DomainError("--alpha and --beta need the same number (p) of values", "usage.params");
  }
  if (c.p != c.alpha.size()) {
    throw DomainError("--p does not match the number of --alpha values", "usage.params");
  }
  const LdarParams params(c.alpha, c.omega, c.beta);
  const InnovationSpec innov = InnovationSpec::make(Distribution::parse(c.dist), parse_mode(c.mode));
  const TimeSeries y = simulate(params, innov, c.n, c.burn_in, seed);
  if (c.out.empty() || c.out == "-") {
    out << "y\n";
    char buf[64];
    for (double v : y.values()) {
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
      out.write(buf, ptr - buf);
      out << '\n';
    }
  } else {
    write_series_csv(c.out, y.values());
  }
  return 0;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    const Format format = parse_format(c.format);
    std::vector<Report> reports;
    if (c.command == "simulate") return cmd_simulate(c, out);

    if (c.command == "fit") {
      const TimeSeries y = load_series(c);
      for (Method m : methods_of(c.method)) reports.emplace_back(fit_report(y, c.p, m, fit_options(c)));
    } else if (c.command == "select") {
      const TimeSeries y = load_series(c);
      for (Method m : methods_of(c.method)) {
        OrderSelection s = select_order(y, c.pmax, m, fit_options(c));
        s.fits.clear();
        reports.emplace_back(std::move(s));
      }
    } else if (c.command == "diagnose") {
      const TimeSeries y = load_series(c);
      if (c.M == 0) throw DomainError("--M must be at least 1", "usage.M");
      const auto methods = methods_of(c.method);
      for (Method m : methods) {
        DiagnoseReport r;
        r.fit = fit_report(y, c.p, m, fit_options(c));
        r.diagnostics = portmanteau_test(y, r.fit.fit, c.M);
        if (!c.plot_out.empty()) {
          write_plot_data(plot_path(c.plot_out, m, methods.size() > 1), r.diagnostics);
        }
        reports.emplace_back(std::move(r));
      }
    } else if (c.command == "backtest") {
      const TimeSeries y = load_series(c);
      for (Method m : methods_of(c.method)) {
        BacktestConfig bc;
        bc.window = c.window;
        bc.p = c.p;
        bc.method = m;
        bc.taus = c.taus;
        bc.warm_start = c.warm_start;
        bc.jobs = c.jobs;
        bc.fit_options = fit_options(c);
        reports.emplace_back(rolling_backtest(y, bc));
      }
    } else if (c.command == "mc") {
      McConfig mc;
      mc.seed = require_seed(c);
      mc.experiment = c.experiment;
      mc.dist = Distribution::parse(c.dist);
      mc.n = c.n;
      mc.reps = c.reps;
      mc.jobs = c.jobs;
      mc.burn_in = c.burn_in;
      mc.pmax = c.pmax;
      mc.M = c.M;
      mc.c1 = c.c1;
      mc.c2 = c.c2;
      mc.window = c.window;
      mc.taus = c.taus;
      mc.warm_start = c.warm_start;
      for (Method m : methods_of(c.method)) {
        mc.method = m;
        reports.emplace_back(run_experiment(mc));
      }
    } else {
      throw DomainError("unknown command '" + c.command + "'", "usage.command");
    }

    if (c.out.empty() || c.out == "-") {
      out << render(reports, format);
    } else {
      emit_report(reports, format, c.out);
    }
    return 0;
  } catch (const Error& e) {
    write_error(err, to_string(e.category()), e.code(), e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    write_error(err, "numerical", "internal", e.what());
    return static_cast<int>(ErrorCategory::numerical);
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Linear double autoregressive model toolkit", "ldar"};
  app.set_config("--config", "", "File of key = value lines; command-line flags take precedence");
  app.require_subcommand(1, 1);

  std::uint64_t seed = 0;
  CLI::Option* seed_opt = app.add_option("--seed", seed, "Random seed");
  app.add_option("--in", c.input, "Input CSV file");
  app.add_option("--column", c.column, "Column name or 0-based index");
  CLI::Option* p_opt = app.add_option("--p", c.p, "Model order")->check(CLI::PositiveNumber);
  app.add_option("--pmax", c.pmax, "Largest order for selection")->check(CLI::PositiveNumber);
  app.add_option("--method", c.method, "gqmle, eqmle or both")
      ->check(CLI::IsMember({"gqmle", "eqmle", "both"}));
  app.add_option("--M", c.M, "Number of autocorrelation lags");
  app.add_option("--taus", c.taus, "Quantile levels")->delimiter(',');
  app.add_option("--window", c.window, "Rolling window length");
  app.add_option("--reps", c.reps, "Monte Carlo replications")->check(CLI::PositiveNumber);
  app.add_option("--out", c.out, "Output path (default stdout)");
  app.add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--plot-out", c.plot_out, "Plot-data file for diagnose");
  app.add_flag("--demean", c.demean, "Subtract the sample mean before modeling");
  bool no_warm = false;
  app.add_flag("--no-warm-start", no_warm, "Fit every rolling window from least squares");
  c.jobs = default_jobs();
  app.add_option("--jobs", c.jobs, "Worker threads (default LDAR_JOBS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--alpha", c.alpha, "Mean coefficients")->delimiter(',');
  app.add_option("--omega", c.omega, "Scale intercept");
  app.add_option("--beta", c.beta, "Scale coefficients")->delimiter(',');
  app.add_option("--dist", c.dist, "normal, laplace or tNU");
  app.add_option("--mode", c.mode, "var or absmean");
  app.add_option("--n", c.n, "Sample size")->check(CLI::PositiveNumber);
  app.add_option("--burn-in", c.burn_in, "Discarded initial draws");
  app.add_option("--experiment", c.experiment, "Monte Carlo experiment 1-4")
      ->check(CLI::Range(1, 4));
  app.add_option("--c1", c.c1, "Experiment 3 mean departure");
  app.add_option("--c2", c.c2, "Experiment 3 scale departure");

  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "Simulate a series to CSV"},
      {"fit", "Estimate parameters with standard errors"},
      {"select", "Choose the order by BIC"},
      {"diagnose", "Residual autocorrelations and portmanteau test"},
      {"backtest", "Rolling-window quantile forecasts and coverage tests"},
      {"mc", "Monte Carlo experiments"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    write_error(err, "usage", "usage.parse", e.what());
    return static_cast<int>(ErrorCategory::usage);
  }
  c.command = app.get_subcommands().front()->get_name();
  if (seed_opt->count() > 0) c.seed = seed;
  if (p_opt->count() == 0 && c.command == "simulate") c.p = c.alpha.size();
  c.warm_start = !no_warm;
  return run(c, out, err);
}

}  // namespace ldar::cli
