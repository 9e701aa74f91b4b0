#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "ldar/error.hpp"
#include "ldar/experiments.hpp"
#include "ldar/risk.hpp"

namespace {

using ldar::Method;

ldar::FitResult fixed_fit(ldar::LdarParams params, std::vector<double> residuals) {
  ldar::FitResult f;
  f.method = Method::eqmle;
  f.params = std::move(params);
  f.residuals = std::move(residuals);
  f.converged = true;
  return f;
}

// DQ statistic from an independent least-squares solve.
double dq_oracle(const std::vector<int>& hits, const std::vector<double>& q, double tau) {
  const std::size_t L = 4, T = hits.size();
  Eigen::MatrixXd X(T - L, L + 2);
  Eigen::VectorXd e(T - L);
  for (std::size_t t = L; t < T; ++t) {
    X(t - L, 0) = 1.0;
    for (std::size_t i = 1; i <= L; ++i) X(t - L, i) = hits[t - i];
    X(t - L, L + 1) = q[t];
    e[t - L] = hits[t] - tau;
  }
  const Eigen::VectorXd b = X.colPivHouseholderQr().solve(e);
  return (X * b).squaredNorm() / (tau * (1.0 - tau));
}

std::vector<int> bernoulli(ldar::Rng& rng, std::size_t n, double p) {
  std::vector<int> h(n);
  for (int& v : h) v = rng.uniform() < p ? 1 : 0;
  return h;
}

}  // namespace

TEST(QuantileForecast, Examples) {
  {
    // Residual sample whose 5% quantile is exactly -1.6.
    std::vector<double> r(21, 0.0);
    r[0] = -2.0;
    r[1] = -1.6;
    const auto f = fixed_fit(ldar::LdarParams({0.0}, 1.0, {0.0}), r);
    const auto q = ldar::quantile_forecast(f, std::vector<double>{3.0}, 0.05);
    EXPECT_DOUBLE_EQ(q.mu, 0.0);
    EXPECT_DOUBLE_EQ(q.sigma, 1.0);
    EXPECT_DOUBLE_EQ(q.b_tau, -1.6);
    EXPECT_DOUBLE_EQ(q.q, -1.6);
  }
  {
    const auto f = fixed_fit(ldar::LdarParams({0.5}, 1.0, {0.5}), {-1.0, 0.0, 1.0});
    const auto q = ldar::quantile_forecast(f, std::vector<double>{2.0}, 0.5);
    EXPECT_DOUBLE_EQ(q.mu, 1.0);
    EXPECT_DOUBLE_EQ(q.sigma, 2.0);
    EXPECT_DOUBLE_EQ(q.b_tau, 0.0);
    EXPECT_DOUBLE_EQ(q.q, 1.0);
  }
}

TEST(QuantileForecast, NormalResidualQuantile) {
  const auto r = ldar::innovation_sampler(ldar::Distribution::normal(),
                                          ldar::StandardizationMode::mean_zero_unit_variance,
                                          100000, 3);
  const auto f = fixed_fit(ldar::LdarParams({0.0}, 1.0, {0.0}), r);
  EXPECT_NEAR(ldar::quantile_forecast(f, std::vector<double>{0.0}, 0.05).b_tau, -1.645, 0.02);
}

TEST(QuantileForecast, MonotoneAndLocationScaleCoherent) {
  ldar::Rng rng(5);
  std::vector<double> r(300);
  for (double& v : r) v = rng.laplace();
  const auto f = fixed_fit(ldar::LdarParams({0.2, -0.1}, 0.5, {0.3, 0.2}), r);
  const std::vector<double> hist{1.5, -0.7};
  double prev = -INFINITY;
  for (double tau = 0.01; tau < 1.0; tau += 0.01) {
    const auto q = ldar::quantile_forecast(f, hist, tau);
    EXPECT_GE(q.q, prev);
    prev = q.q;
    EXPECT_GT(q.sigma, 0.0);
  }
  // history.back() is the latest value: mu = 0.2 * (-0.7) - 0.1 * 1.5.
  const auto q = ldar::quantile_forecast(f, hist, 0.1);
  EXPECT_NEAR(q.mu, 0.2 * -0.7 - 0.1 * 1.5, 1e-15);
  EXPECT_NEAR(q.sigma, 0.5 + 0.3 * 0.7 + 0.2 * 1.5, 1e-15);
  auto shifted = f;
  for (double& v : shifted.residuals) v += 0.25;
  const auto qs = ldar::quantile_forecast(shifted, hist, 0.1);
  EXPECT_NEAR(qs.q - q.q, q.sigma * 0.25, 1e-12);
}

TEST(QuantileForecast, Preconditions) {
  const auto f = fixed_fit(ldar::LdarParams({0.0}, 1.0, {0.0}), {0.0, 1.0});
  EXPECT_THROW(ldar::quantile_forecast(f, std::vector<double>{0.0}, 0.0), ldar::DomainError);
  EXPECT_THROW(ldar::quantile_forecast(f, std::vector<double>{0.0}, 1.0), ldar::DomainError);
  EXPECT_THROW(ldar::quantile_forecast(f, std::vector<double>{0.0, 1.0}, 0.5), ldar::DomainError);
}

TEST(CcTest, IdenticalModelsGiveZero) {
  // Hit rate 0.3 and P(hit | previous) = 1/3 after both a miss and a hit.
  const std::vector<int> h{0, 0, 0, 0, 0, 1, 0, 1, 1, 0};
  const auto r = ldar::cc_test(h, 0.3);
  EXPECT_NEAR(r.stat, 0.0, 1e-12);
  EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(CcTest, AllZeros) {
  const std::vector<int> h(176, 0);
  const auto r = ldar::cc_test(h, 0.05);
  EXPECT_NEAR(r.stat, -2.0 * 176.0 * std::log(0.95), 1e-9);
  EXPECT_NEAR(r.stat, 18.055, 1e-3);
  EXPECT_NEAR(r.p_value, std::exp(-r.stat / 2.0), 1e-12);
  EXPECT_NEAR(r.p_value, 1.2e-4, 1e-5);
}

TEST(CcTest, DependsOnlyOnCounts) {
  const std::vector<int> a{0, 0, 1, 0, 1, 1, 0};
  const std::vector<int> b{0, 1, 1, 0, 0, 1, 0};
  EXPECT_DOUBLE_EQ(ldar::cc_test(a, 0.3).stat, ldar::cc_test(b, 0.3).stat);
}

TEST(CcTest, NullRejectionRate) {
  ldar::Rng rng(71);
  int rejects = 0;
  const int reps = 1000;
  for (int r = 0; r < reps; ++r) rejects += ldar::cc_test(bernoulli(rng, 500, 0.05), 0.05).p_value < 0.05;
  EXPECT_GE(rejects / double(reps), 0.02);
  EXPECT_LE(rejects / double(reps), 0.09);
}

TEST(DqTest, OrthogonalResidualGivesZero) {
  // Period-16 hit pattern whose centred hits are orthogonal to lags 1-4 and lag 6.
  const int pattern[16] = {1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0, 0};
  const std::size_t T = 4 + 16 * 20;
  std::vector<int> h(T);
  std::vector<double> q(T);
  for (std::size_t t = 0; t < T; ++t) {
    h[t] = pattern[t % 16];
    q[t] = -1.0 - 0.5 * pattern[(t + 16 - 6) % 16];
  }
  const auto r = ldar::dq_test(h, q, 0.5);
  EXPECT_NEAR(r.stat, 0.0, 1e-10);
  EXPECT_NEAR(r.p_value, 1.0, 1e-10);
}

TEST(DqTest, MatchesLeastSquaresOracle) {
  ldar::Rng rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    const auto h = bernoulli(rng, 400, 0.1);
    std::vector<double> q(400);
    for (double& v : q) v = -1.3 + 0.2 * rng.normal();
    EXPECT_NEAR(ldar::dq_test(h, q, 0.1).stat, dq_oracle(h, q, 0.1), 1e-8);
  }
}

TEST(DqTest, NullRejectionRate) {
  ldar::Rng rng(72);
  int rejects = 0, valid = 0;
  for (int r = 0; r < 1000; ++r) {
    const auto h = bernoulli(rng, 500, 0.05);
    std::vector<double> q(500);
    for (double& v : q) v = -1.645 + 0.3 * rng.normal();
    try {
      rejects += ldar::dq_test(h, q, 0.05).p_value < 0.05;
      ++valid;
    } catch (const ldar::SingularityError&) {
    }
  }
  EXPECT_GE(valid, 990);
  EXPECT_GE(rejects / double(valid), 0.02);
  EXPECT_LE(rejects / double(valid), 0.09);
}

TEST(DqTest, DetectsClusteredHits) {
  ldar::Rng rng(9);
  std::vector<int> h(500, 0);
  for (std::size_t t = 1; t < h.size(); ++t) h[t] = rng.uniform() < (h[t - 1] ? 0.9 : 0.01);
  std::vector<double> q(500);
  for (double& v : q) v = -1.645 + 0.3 * rng.normal();
  EXPECT_LT(ldar::dq_test(h, q, 0.05).p_value, 1e-3);
}

TEST(DqTest, SingularDesign) {
  const std::vector<int> h(300, 0);
  const std::vector<double> q(300, -1.645);
  EXPECT_THROW(ldar::dq_test(h, q, 0.05), ldar::SingularityError);
  EXPECT_THROW(ldar::dq_test(std::vector<int>(30, 0), std::vector<double>(30, 1.0), 0.05),
               ldar::DomainError);
}

TEST(RollingBacktest, ReportShapeAndDeterminism) {
  ldar::McConfig c;
  c.experiment = 4;
  c.method = Method::eqmle;
  c.dist = ldar::Distribution::laplace();
  c.n = 420;
  const auto y = ldar::experiment_series(c, 0);
  ldar::BacktestConfig bc;
  bc.window = 350;
  bc.method = Method::eqmle;
  bc.taus = {0.05, 0.10, 0.90, 0.95};
  const auto a = ldar::rolling_backtest(y, bc);
  const auto b = ldar::rolling_backtest(y, bc);
  ASSERT_EQ(a.entries.size(), 4u);
  EXPECT_EQ(a.targets.size() + a.n_missing, 70u);
  EXPECT_EQ(a.targets.front(), 350u);
  for (std::size_t j = 0; j < 4; ++j) {
    const auto& e = a.entries[j];
    EXPECT_EQ(e.forecasts, b.entries[j].forecasts);
    EXPECT_EQ(e.hits, b.entries[j].hits);
    const double mean = std::accumulate(e.hits.begin(), e.hits.end(), 0.0) / e.hits.size();
    EXPECT_DOUBLE_EQ(e.ecr, mean);
    EXPECT_GE(e.cc_p, 0.0);
    EXPECT_LE(e.cc_p, 1.0);
    for (std::size_t k = 0; k < e.hits.size(); ++k) {
      EXPECT_EQ(e.hits[k], y[a.targets[k]] < e.forecasts[k] ? 1 : 0);
    }
  }
  for (std::size_t k = 0; k < a.targets.size(); ++k) {
    EXPECT_LE(a.entries[0].forecasts[k], a.entries[1].forecasts[k]);
    EXPECT_LE(a.entries[2].forecasts[k], a.entries[3].forecasts[k]);
  }
}

TEST(RollingBacktest, ParallelWindowsMatchSerial) {
  ldar::McConfig c;
  c.experiment = 4;
  c.method = Method::gqmle;
  c.n = 400;
  const auto y = ldar::experiment_series(c, 1);
  ldar::BacktestConfig bc;
  bc.window = 300;
  bc.method = Method::gqmle;
  bc.warm_start = false;
  bc.jobs = 1;
  const auto a = ldar::rolling_backtest(y, bc);
  bc.jobs = 3;
  const auto b = ldar::rolling_backtest(y, bc);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t j = 0; j < a.entries.size(); ++j) {
    EXPECT_EQ(a.entries[j].forecasts, b.entries[j].forecasts);
  }
}

TEST(RollingBacktest, Preconditions) {
  const std::vector<double> y(400, 0.1);
  ldar::BacktestConfig bc;
  bc.window = 395;
  EXPECT_THROW(ldar::rolling_backtest(y, bc), ldar::DomainError);
  bc.window = 300;
  bc.taus = {1.2};
  EXPECT_THROW(ldar::rolling_backtest(y, bc), ldar::DomainError);
}
