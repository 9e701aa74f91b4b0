#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ldar/estimation.hpp"

namespace ldar {

struct QuantileForecast {
  std::size_t t_index = 0;  // index of the forecast target (0-based)
  double tau = 0.0;
  double mu = 0.0;
  double sigma = 0.0;
  double b_tau = 0.0;
  double q = 0.0;  // mu + sigma * b_tau
};

/// One-step-ahead tau-quantile from a fit. `history` holds the last p
/// observations in chronological order (history.back() is the latest).
/// b_tau is the type-7 sample quantile of fit.residuals.
QuantileForecast quantile_forecast(const FitResult& fit, std::span<const double> history,
                                   double tau);

struct TestResult {
  double stat = 0.0;
  double p_value = 1.0;
};

/// Christoffersen conditional coverage: LR_uc + LR_ind against chi-square(2),
/// with the 0 ln 0 = 0 convention for empty transition cells.
TestResult cc_test(std::span<const int> hits, double tau);

/// Engle-Manganelli dynamic quantile test. Regresses H_t - tau on a constant,
/// n_lags lagged hits and the quantile forecast; the statistic
/// e'X(X'X)^{-1}X'e / (tau (1 - tau)) is chi-square with n_lags + 2 degrees of freedom.
TestResult dq_test(std::span<const int> hits, std::span<const double> var_forecasts, double tau,
                   std::size_t n_lags = 4);

struct BacktestConfig {
  std::size_t window = 350;
  std::size_t p = 1;
  Method method = Method::eqmle;
  std::vector<double> taus{0.05, 0.10, 0.90, 0.95};
  /// Start each window's fit from the previous window's estimate. Windows
  /// then run sequentially; without it they are spread over `jobs` threads.
  bool warm_start = true;
  std::size_t jobs = 1;
  std::size_t dq_lags = 4;
  FitOptions fit_options;
};

struct TauBacktest {
  double tau = 0.0;
  std::vector<double> forecasts;
  std::vector<int> hits;
  double ecr = 0.0;
  double cc_stat = 0.0;
  double cc_p = 1.0;
  /// Empty when the DQ regression could not be formed (see dq_error).
  std::optional<double> dq_stat;
  std::optional<double> dq_p;
  std::string dq_error;
};

struct BacktestReport {
  Method method = Method::eqmle;
  std::size_t window = 0;
  std::size_t p = 0;
  /// Index of each evaluated target observation y_{t+1}.
  std::vector<std::size_t> targets;
  std::size_t n_missing = 0;
  std::vector<TauBacktest> entries;
  std::vector<std::string> warnings;
};

/// Rolling fixed-window forecasts: for each origin t = window-1 .. n-2
/// (0-based) the model is fitted to y[t-window+1 .. t] and the quantiles of
/// y[t+1] are forecast. Windows whose fit fails are skipped and counted.
BacktestReport rolling_backtest(std::span<const double> y, const BacktestConfig& config);

}  // namespace ldar
