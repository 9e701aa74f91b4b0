#include "ldar/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "ldar/diagnostics.hpp"
#include "ldar/parallel.hpp"
#include "ldar/risk.hpp"
#include "ldar/selection.hpp"

namespace ldar {

namespace {

struct RepOutcome {
  bool ok = false;
  std::string error;
  std::vector<double> theta;
  std::vector<double> ase;
  std::size_t chosen = 0;
  double q = 0.0;
  bool reject = false;
  std::vector<double> ecr;
  std::vector<int> cc_reject;
  std::vector<int> dq_reject;  // -1 when unavailable
};

FitOptions rep_fit_options(const McConfig& config, std::size_t r) {
  FitOptions opts = config.fit_options;
  opts.seed = derive_seed(derive_seed(config.seed, r), 1);
  return opts;
}

RepOutcome run_rep(const McConfig& config, std::size_t r) {
  RepOutcome out;
  try {
    const TimeSeries y = experiment_series(config, r);
    const FitOptions opts = rep_fit_options(config, r);
    switch (config.experiment) {
      case 1: {
        const FitResult f = fit(y, 1, config.method, opts);
        const CovarianceReport cov = sandwich_covariance(y, f);
        out.theta = f.params.to_vector();
        out.ase = cov.ase;
        break;
      }
      case 2: {
        const OrderSelection sel = select_order(y, config.pmax, config.method, opts);
        out.chosen = sel.chosen;
        break;
      }
      case 3: {
        const FitResult f = fit(y, 1, config.method, opts);
        const DiagnosticsReport d = portmanteau_test(y, f, config.M);
        out.q = d.q_stat;
        out.reject = d.p_value < config.level;
        break;
      }
      case 4: {
        BacktestConfig bc;
        bc.window = config.window;
        bc.p = 1;
        bc.method = config.method;
        bc.taus = config.taus;
        bc.warm_start = config.warm_start;
        bc.jobs = 1;
        bc.fit_options = opts;
        const BacktestReport rep = rolling_backtest(y, bc);
        for (const auto& e : rep.entries) {
          out.ecr.push_back(e.ecr);
          out.cc_reject.push_back(e.cc_p < config.level ? 1 : 0);
          out.dq_reject.push_back(e.dq_p ? (*e.dq_p < config.level ? 1 : 0) : -1);
        }
        break;
      }
      default:
        throw DomainError("unknown experiment");
    }
    out.ok = true;
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

void McConfig::validate() const {
  if (experiment < 1 || experiment > 4) throw DomainError("experiment must be 1, 2, 3 or 4");
  if (reps == 0) throw DomainError("reps must be at least 1");
  if (n < 20) throw DomainError("n must be at least 20");
  if (experiment == 2 && pmax < 2) throw DomainError("pmax must be at least 2");
  if (experiment == 3 && M == 0) throw DomainError("M must be at least 1");
  if (experiment == 4 && window + 10 >= n) throw DomainError("n must exceed window + 10");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0, 1)");
  if (c2 < 0.0) throw DomainError("c2 must be nonnegative");
  fit_options.validate();
}

LdarParams experiment_params(const McConfig& config) {
  switch (config.experiment) {
    case 1:
    case 4:
      return {{0.5}, 1.0, {0.4}};
    case 2:
      return {{0.1, 0.4}, 1.0, {0.1, 0.4}};
    case 3:
      return {{0.1, config.c1}, 1.0, {0.2, config.c2}};
    default:
      throw DomainError("experiment must be 1, 2, 3 or 4");
  }
}

TimeSeries experiment_series(const McConfig& config, std::size_t r) {
  const InnovationSpec innov =
      InnovationSpec::make(config.dist, identification_mode(config.method));
  return simulate(experiment_params(config), innov, config.n, config.burn_in,
                  derive_seed(config.seed, r));
}

McSummary run_experiment(const McConfig& config) {
  config.validate();
  std::vector<RepOutcome> outcomes(config.reps);
  parallel_for(config.reps, config.jobs,
               [&](std::size_t r) { outcomes[r] = run_rep(config, r); });

  McSummary s;
  s.config = config;
  for (const auto& o : outcomes) {
    if (o.ok) {
      ++s.completed;
    } else {
      ++s.failures;
      if (s.warnings.size() < 10) s.warnings.push_back(o.error);
    }
  }
  if (s.completed == 0) {
    throw Error(ErrorCategory::numerical, "mc_failed", "every replication failed");
  }
  const double done = static_cast<double>(s.completed);

  switch (config.experiment) {
    case 1: {
      const LdarParams truth = experiment_params(config);
      const std::vector<double> t0 = truth.to_vector();
      const char* names[] = {"alpha", "omega", "beta"};
      for (std::size_t j = 0; j < t0.size(); ++j) {
        std::vector<double> est, ase;
        for (const auto& o : outcomes) {
          if (!o.ok) continue;
          est.push_back(o.theta[j]);
          ase.push_back(o.ase[j]);
        }
        s.params.push_back({names[j], t0[j], mean_of(est) - t0[j], sd_of(est), mean_of(ase)});
      }
      break;
    }
    case 2: {
      s.selection.true_order = 2;
      double under = 0, exact = 0, over = 0;
      for (const auto& o : outcomes) {
        if (!o.ok) continue;
        (o.chosen < 2 ? under : o.chosen == 2 ? exact : over) += 1.0;
      }
      s.selection.under = 100.0 * under / done;
      s.selection.exact = 100.0 * exact / done;
      s.selection.over = 100.0 * over / done;
      break;
    }
    case 3: {
      double rej = 0.0, q = 0.0;
      for (const auto& o : outcomes) {
        if (!o.ok) continue;
        rej += o.reject ? 1.0 : 0.0;
        q += o.q;
      }
      s.test.rejection_rate = rej / done;
      s.test.mean_q = q / done;
      break;
    }
    case 4: {
      for (std::size_t j = 0; j < config.taus.size(); ++j) {
        BacktestSummary b;
        b.tau = config.taus[j];
        double ecr = 0.0, cc = 0.0, dq = 0.0, dq_n = 0.0;
        for (const auto& o : outcomes) {
          if (!o.ok) continue;
          ecr += o.ecr[j];
          cc += o.cc_reject[j];
          if (o.dq_reject[j] < 0) {
            ++b.dq_unavailable;
          } else {
            dq += o.dq_reject[j];
            dq_n += 1.0;
          }
        }
        b.mean_ecr = ecr / done;
        b.cc_rejection = cc / done;
        b.dq_rejection = dq_n > 0.0 ? dq / dq_n : 0.0;
        s.backtest.push_back(b);
      }
      break;
    }
    default:
      break;
  }
  return s;
}

}  // namespace ldar
