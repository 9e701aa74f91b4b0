#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>
#include <vector>

#include "ldar/error.hpp"
#include "ldar/experiments.hpp"
#include "ldar/parallel.hpp"

TEST(ParallelFor, EachIndexOnce) {
  for (std::size_t jobs : {1u, 2u, 5u}) {
    std::vector<std::atomic<int>> seen(257);
    ldar::parallel_for(seen.size(), jobs, [&](std::size_t i) { ++seen[i]; });
    for (const auto& s : seen) EXPECT_EQ(s.load(), 1);
  }
  ldar::parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(ParallelFor, PropagatesException) {
  EXPECT_THROW(ldar::parallel_for(50, 3,
                                  [](std::size_t i) {
                                    if (i == 17) throw std::runtime_error("boom");
                                  }),
               std::runtime_error);
}

TEST(Experiments, DataGeneratingParameters) {
  ldar::McConfig c;
  c.experiment = 3;
  c.c1 = 0.3;
  c.c2 = 0.1;
  EXPECT_EQ(ldar::experiment_params(c), ldar::LdarParams({0.1, 0.3}, 1.0, {0.2, 0.1}));
  c.experiment = 2;
  EXPECT_EQ(ldar::experiment_params(c), ldar::LdarParams({0.1, 0.4}, 1.0, {0.1, 0.4}));
  c.experiment = 1;
  EXPECT_EQ(ldar::experiment_params(c), ldar::LdarParams({0.5}, 1.0, {0.4}));
}

TEST(Experiments, ReproducibleAndIndependentOfJobs) {
  ldar::McConfig c;
  c.experiment = 1;
  c.method = ldar::Method::eqmle;
  c.dist = ldar::Distribution::laplace();
  c.n = 300;
  c.reps = 12;
  c.seed = 5;
  const auto a = ldar::run_experiment(c);
  c.jobs = 3;
  const auto b = ldar::run_experiment(c);
  ASSERT_EQ(a.params.size(), 3u);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(a.params[j].bias, b.params[j].bias);
    EXPECT_EQ(a.params[j].esd, b.params[j].esd);
    EXPECT_EQ(a.params[j].mean_asd, b.params[j].mean_asd);
    EXPECT_GE(a.params[j].esd, 0.0);
  }
  c.seed = 6;
  EXPECT_NE(ldar::run_experiment(c).params[0].bias, a.params[0].bias);
}

TEST(Experiments, ReplicationSeriesDependOnlyOnSeedAndIndex) {
  ldar::McConfig c;
  c.seed = 9;
  const auto a = ldar::experiment_series(c, 4);
  const auto b = ldar::experiment_series(c, 4);
  const auto d = ldar::experiment_series(c, 5);
  EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  EXPECT_FALSE(std::equal(a.values().begin(), a.values().end(), d.values().begin()));
}

TEST(Experiments, SelectionPercentagesSumToHundred) {
  ldar::McConfig c;
  c.experiment = 2;
  c.n = 150;
  c.reps = 30;
  c.seed = 2;
  const auto s = ldar::run_experiment(c);
  EXPECT_NEAR(s.selection.under + s.selection.exact + s.selection.over, 100.0, 0.1);
}

TEST(Experiments, Validation) {
  ldar::McConfig c;
  c.experiment = 7;
  EXPECT_THROW(ldar::run_experiment(c), ldar::DomainError);
  c.experiment = 4;
  c.n = 300;
  EXPECT_THROW(ldar::run_experiment(c), ldar::DomainError);
}
