#include "ldar/risk.hpp"

#include <algorithm>
#include <cmath>

#include "ldar/parallel.hpp"
#include "linalg.hpp"

namespace ldar {

namespace {

void check_tau(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError("quantile level tau must lie in (0, 1)");
}

double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

double bernoulli_loglik(double zeros, double ones, double prob) {
  return xlogy(zeros, 1.0 - prob) + xlogy(ones, prob);
}

struct WindowForecast {
  bool ok = false;
  std::vector<double> q;  // one per tau
  std::string error;
  std::optional<LdarParams> params;
};

WindowForecast forecast_window(std::span<const double> y, std::size_t origin,
                               const BacktestConfig& config, const FitOptions& options) {
  WindowForecast out;
  const auto window = y.subspan(origin + 1 - config.window, config.window);
  try {
    const FitResult fitted = fit(window, config.p, config.method, options);
    const auto history = y.subspan(origin + 1 - config.p, config.p);
    out.q.reserve(config.taus.size());
    for (double tau : config.taus) out.q.push_back(quantile_forecast(fitted, history, tau).q);
    out.params = fitted.params;
    out.ok = true;
  } catch (const Error& e) {
    out.error = e.what();
  }
  return out;
}

}  // namespace

QuantileForecast quantile_forecast(const FitResult& fit, std::span<const double> history,
                                   double tau) {
  check_tau(tau);
  const std::size_t p = fit.params.order();
  if (history.size() != p) throw DomainError("forecast history must hold exactly p values");
  if (fit.residuals.empty()) throw DegenerateSampleError("fit carries no residuals");
  QuantileForecast out;
  out.tau = tau;
  out.mu = 0.0;
  out.sigma = fit.params.omega;
  for (std::size_t i = 1; i <= p; ++i) {
    const double lag = history[p - i];
    out.mu += fit.params.alpha[i - 1] * lag;
    out.sigma += fit.params.beta[i - 1] * std::abs(lag);
  }
  out.b_tau = type7_quantile(fit.residuals, tau);
  out.q = out.mu + out.sigma * out.b_tau;
  return out;
}

TestResult cc_test(std::span<const int> hits, double tau) {
  check_tau(tau);
  if (hits.size() < 2) throw DomainError("conditional coverage test needs at least 2 hits");
  double n0 = 0.0, n1 = 0.0;
  double n00 = 0.0, n01 = 0.0, n10 = 0.0, n11 = 0.0;
  for (std::size_t t = 0; t < hits.size(); ++t) {
    (hits[t] != 0 ? n1 : n0) += 1.0;
    if (t == 0) continue;
    const bool prev = hits[t - 1] != 0;
    const bool cur = hits[t] != 0;
    if (!prev) {
      (cur ? n01 : n00) += 1.0;
    } else {
      (cur ? n11 : n10) += 1.0;
    }
  }
  const double pi_hat = n1 / (n0 + n1);
  const double lr_uc =
      -2.0 * (bernoulli_loglik(n0, n1, tau) - bernoulli_loglik(n0, n1, pi_hat));

  const double pi01 = n00 + n01 > 0.0 ? n01 / (n00 + n01) : 0.0;
  const double pi11 = n10 + n11 > 0.0 ? n11 / (n10 + n11) : 0.0;
  const double pi2 = (n01 + n11) / (n00 + n01 + n10 + n11);
  const double restricted = bernoulli_loglik(n00 + n10, n01 + n11, pi2);
  const double markov = bernoulli_loglik(n00, n01, pi01) + bernoulli_loglik(n10, n11, pi11);
  const double lr_ind = -2.0 * (restricted - markov);

  TestResult out;
  out.stat = std::max(lr_uc, 0.0) + std::max(lr_ind, 0.0);
  out.p_value = chi2_survival(out.stat, 2);
  return out;
}

TestResult dq_test(std::span<const int> hits, std::span<const double> var_forecasts, double tau,
                   std::size_t n_lags) {
  check_tau(tau);
  if (hits.size() != var_forecasts.size()) {
    throw DomainError("hits and forecasts must have equal length");
  }
  if (hits.size() <= n_lags || hits.size() - n_lags < 10 * (n_lags + 2)) {
    throw DomainError("dynamic quantile test needs at least 10(n_lags+2) usable observations");
  }
  const auto rows = static_cast<Eigen::Index>(hits.size() - n_lags);
  const auto cols = static_cast<Eigen::Index>(n_lags + 2);
  Eigen::MatrixXd X(rows, cols);
  Eigen::VectorXd e(rows);
  for (std::size_t t = n_lags; t < hits.size(); ++t) {
    const auto r = static_cast<Eigen::Index>(t - n_lags);
    X(r, 0) = 1.0;
    for (std::size_t i = 1; i <= n_lags; ++i) {
      X(r, static_cast<Eigen::Index>(i)) = hits[t - i] != 0 ? 1.0 : 0.0;
    }
    X(r, cols - 1) = var_forecasts[t];
    e[r] = (hits[t] != 0 ? 1.0 : 0.0) - tau;
  }
  const Eigen::MatrixXd xtx_inv =
      detail::symmetric_inverse(X.transpose() * X, "DQ regressor cross-product X'X");
  const Eigen::VectorXd xte = X.transpose() * e;
  TestResult out;
  out.stat = std::max(xte.dot(xtx_inv * xte) / (tau * (1.0 - tau)), 0.0);
  out.p_value = chi2_survival(out.stat, static_cast<int>(n_lags + 2));
  return out;
}

BacktestReport rolling_backtest(std::span<const double> y, const BacktestConfig& config) {
  if (config.p == 0) throw DomainError("model order p must be at least 1");
  if (config.window <= 5 * (2 * config.p + 1)) {
    throw DomainError("window must exceed 5(2p+1) observations");
  }
  if (y.size() <= config.window + 10) {
    throw DomainError("series must be longer than the window plus 10 observations");
  }
  if (config.taus.empty()) throw DomainError("at least one quantile level is required");
  for (double tau : config.taus) check_tau(tau);
  config.fit_options.validate();

  const std::size_t first_origin = config.window - 1;
  const std::size_t n_origins = y.size() - 1 - first_origin;
  std::vector<WindowForecast> windows(n_origins);

  auto window_options = [&](std::size_t origin) {
    FitOptions opts = config.fit_options;
    opts.seed = derive_seed(config.fit_options.seed, origin);
    return opts;
  };

  if (config.warm_start) {
    std::optional<LdarParams> previous;
    for (std::size_t k = 0; k < n_origins; ++k) {
      const std::size_t origin = first_origin + k;
      FitOptions opts = window_options(origin);
      if (previous) {
        opts.init = InitStrategy::warm_start;
        opts.start = previous;
      }
      windows[k] = forecast_window(y, origin, config, opts);
      if (windows[k].ok) previous = windows[k].params;
    }
  } else {
    parallel_for(n_origins, config.jobs, [&](std::size_t k) {
      const std::size_t origin = first_origin + k;
      windows[k] = forecast_window(y, origin, config, window_options(origin));
    });
  }

  BacktestReport rep;
  rep.method = config.method;
  rep.window = config.window;
  rep.p = config.p;
  rep.entries.resize(config.taus.size());
  for (std::size_t j = 0; j < config.taus.size(); ++j) rep.entries[j].tau = config.taus[j];
  for (std::size_t k = 0; k < n_origins; ++k) {
    if (!windows[k].ok) {
      ++rep.n_missing;
      if (rep.warnings.size() < 20) {
        rep.warnings.push_back("window ending at " + std::to_string(first_origin + k) +
                               " skipped: " + windows[k].error);
      }
      continue;
    }
    const std::size_t target = first_origin + k + 1;
    rep.targets.push_back(target);
    for (std::size_t j = 0; j < config.taus.size(); ++j) {
      const double q = windows[k].q[j];
      rep.entries[j].forecasts.push_back(q);
      rep.entries[j].hits.push_back(y[target] < q ? 1 : 0);
    }
  }
  if (rep.targets.size() < 2) {
    throw Error(ErrorCategory::numerical, "backtest_failed", "too few successful window fits");
  }
  for (auto& entry : rep.entries) {
    const double hits = static_cast<double>(std::count(entry.hits.begin(), entry.hits.end(), 1));
    entry.ecr = hits / static_cast<double>(entry.hits.size());
    const TestResult cc = cc_test(entry.hits, entry.tau);
    entry.cc_stat = cc.stat;
    entry.cc_p = cc.p_value;
    try {
      const TestResult dq = dq_test(entry.hits, entry.forecasts, entry.tau, config.dq_lags);
      entry.dq_stat = dq.stat;
      entry.dq_p = dq.p_value;
    } catch (const Error& e) {
      entry.dq_error = e.what();
    }
  }
  return rep;
}

}  // namespace ldar
