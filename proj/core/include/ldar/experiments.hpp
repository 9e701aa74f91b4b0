#pragma once

// Monte Carlo harness. Replication r simulates from seed derive_seed(seed, r),
// so every summary depends only on the configuration and not on `jobs`.
//
//   1: y_t = 0.5 y_{t-1} + eta_t (1 + 0.4 |y_{t-1}|), estimation accuracy
//   2: y_t = 0.1 y_{t-1} + 0.4 y_{t-2} + eta_t (1 + 0.1 |y_{t-1}| + 0.4 |y_{t-2}|),
//      order selection with pmax
//   3: y_t = 0.1 y_{t-1} + c1 y_{t-2} + eta_t (1 + 0.2 |y_{t-1}| + c2 |y_{t-2}|),
//      portmanteau test after fitting p = 1
//   4: experiment-1 process, rolling-window backtest calibration

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ldar/estimation.hpp"
#include "ldar/model.hpp"
#include "ldar/probability.hpp"

namespace ldar {

struct McConfig {
  int experiment = 1;
  Method method = Method::gqmle;
  Distribution dist = Distribution::normal();
  std::size_t n = 500;
  std::size_t reps = 1000;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::size_t burn_in = kDefaultBurnIn;
  std::size_t pmax = 5;  // experiment 2
  std::size_t M = 6;     // experiment 3
  double c1 = 0.0;       // experiment 3
  double c2 = 0.0;       // experiment 3
  double level = 0.05;   // nominal test size for experiments 3 and 4
  std::size_t window = 350;               // experiment 4
  std::vector<double> taus{0.05};          // experiment 4
  bool warm_start = true;                  // experiment 4
  FitOptions fit_options;

  void validate() const;
};

/// Data-generating parameters of an experiment.
LdarParams experiment_params(const McConfig& config);

struct ParamSummary {
  std::string name;
  double truth = 0.0;
  double bias = 0.0;  // plain bias, not scaled
  double esd = 0.0;
  double mean_asd = 0.0;
};

struct SelectionSummary {
  std::size_t true_order = 0;
  double under = 0.0;  // percentages
  double exact = 0.0;
  double over = 0.0;
};

struct TestSummary {
  double rejection_rate = 0.0;
  double mean_q = 0.0;
};

struct BacktestSummary {
  double tau = 0.0;
  double mean_ecr = 0.0;
  double cc_rejection = 0.0;
  double dq_rejection = 0.0;  // over replications with a DQ statistic
  std::size_t dq_unavailable = 0;
};

struct McSummary {
  McConfig config;
  std::size_t completed = 0;  // replications entering the summary
  std::size_t failures = 0;
  std::vector<ParamSummary> params;          // experiment 1
  SelectionSummary selection;                // experiment 2
  TestSummary test;                          // experiment 3
  std::vector<BacktestSummary> backtest;     // experiment 4
  std::vector<std::string> warnings;
};

/// Series used by replication r.
TimeSeries experiment_series(const McConfig& config, std::size_t r);

McSummary run_experiment(const McConfig& config);

}  // namespace ldar
