#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ldar/error.hpp"
#include "ldar/probability.hpp"

namespace {

using ldar::Distribution;
using ldar::StandardizationMode;

constexpr auto kVar = StandardizationMode::mean_zero_unit_variance;
constexpr auto kAbs = StandardizationMode::median_zero_unit_abs_mean;

// E|T_nu| = 2 sqrt(nu) Gamma((nu+1)/2) / (sqrt(pi) (nu-1) Gamma(nu/2)).
double abs_mean_t_closed_form(double nu) {
  return 2.0 * std::sqrt(nu) * std::exp(std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2)) /
         (std::sqrt(M_PI) * (nu - 1.0));
}

// Regularized lower incomplete gamma by its power series.
double lower_gamma_series(double a, double x) {
  double term = 1.0 / a, sum = term;
  for (int k = 1; k < 2000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double bisect_normal_quantile(double p) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (0.5 * std::erfc(-mid / std::sqrt(2.0)) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct Moments {
  double mean, var, abs_mean, median;
};

Moments moments(std::vector<double> x) {
  const double n = static_cast<double>(x.size());
  Moments m{};
  m.mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  for (double v : x) {
    m.var += (v - m.mean) * (v - m.mean);
    m.abs_mean += std::abs(v);
  }
  m.var /= n - 1.0;
  m.abs_mean /= n;
  std::nth_element(x.begin(), x.begin() + x.size() / 2, x.end());
  m.median = x[x.size() / 2];
  return m;
}

}  // namespace

TEST(Standardization, ClosedForms) {
  auto c = ldar::standardization(Distribution::normal(), kVar);
  EXPECT_EQ(c.shift, 0.0);
  EXPECT_EQ(c.scale, 1.0);
  c = ldar::standardization(Distribution::laplace(), kVar);
  EXPECT_EQ(c.shift, 0.0);
  EXPECT_NEAR(c.scale, std::sqrt(2.0), 1e-15);
  c = ldar::standardization(Distribution::laplace(), kAbs);
  EXPECT_NEAR(c.scale, 1.0, 1e-15);
  c = ldar::standardization(Distribution::normal(), kAbs);
  EXPECT_NEAR(c.scale, std::sqrt(2.0 / M_PI), 1e-15);
  c = ldar::standardization(Distribution::student_t(5), kVar);
  EXPECT_NEAR(c.scale, std::sqrt(5.0 / 3.0), 1e-15);
}

TEST(Standardization, StudentAbsMeanQuadratureMatchesClosedForm) {
  const auto c = ldar::standardization(Distribution::student_t(3), kAbs);
  EXPECT_EQ(c.shift, 0.0);
  EXPECT_NEAR(c.scale, 2.0 * std::sqrt(3.0) / M_PI, 1e-9);
  EXPECT_NEAR(c.scale, 1.10266, 1e-5);
  for (double nu : {1.5, 2.5, 4.0, 7.5, 30.0}) {
    EXPECT_NEAR(ldar::student_t_abs_mean(nu), abs_mean_t_closed_form(nu), 1e-9) << nu;
  }
}

TEST(Standardization, DomainErrors) {
  EXPECT_THROW(ldar::standardization(Distribution::student_t(2), kVar), ldar::DomainError);
  EXPECT_THROW(ldar::standardization(Distribution::student_t(1), kAbs), ldar::DomainError);
  EXPECT_NO_THROW(ldar::standardization(Distribution::student_t(1.5), kAbs));
}

TEST(Distribution, Parse) {
  EXPECT_EQ(Distribution::parse("normal").family, ldar::Family::normal);
  EXPECT_EQ(Distribution::parse("laplace").family, ldar::Family::laplace);
  EXPECT_EQ(Distribution::parse("t3").dof, 3.0);
  EXPECT_EQ(Distribution::parse("student_t(4.5)").dof, 4.5);
  EXPECT_THROW(Distribution::parse("cauchy"), ldar::DomainError);
  EXPECT_EQ(ldar::parse_mode("var"), kVar);
  EXPECT_EQ(ldar::parse_mode("absmean"), kAbs);
}

TEST(InnovationSampler, MomentConditions) {
  const std::size_t n = 1000000;
  const Distribution dists[] = {Distribution::normal(), Distribution::laplace(),
                                Distribution::student_t(5)};
  for (const auto& d : dists) {
    const Moments v = moments(ldar::innovation_sampler(d, kVar, n, 101));
    // var(eta^2) is 2 (normal), 5 (Laplace), 8 (t5); three standard errors.
    EXPECT_NEAR(v.mean, 0.0, 3.0 / std::sqrt(n)) << d.name();
    EXPECT_NEAR(v.var, 1.0, 3.0 * std::sqrt(8.0 / n)) << d.name();
    const Moments a = moments(ldar::innovation_sampler(d, kAbs, n, 202));
    EXPECT_NEAR(a.abs_mean, 1.0, 3.0 * std::sqrt(2.0 / n)) << d.name();
    EXPECT_NEAR(a.median, 0.0, 0.01) << d.name();
  }
  EXPECT_NEAR(moments(ldar::innovation_sampler(Distribution::normal(), kVar, n, 7)).var, 1.0, 0.01);
  EXPECT_NEAR(moments(ldar::innovation_sampler(Distribution::laplace(), kAbs, n, 7)).abs_mean, 1.0,
              0.005);
}

TEST(InnovationSampler, StudentT3VarianceModeIsApplied) {
  const auto c = ldar::standardization(Distribution::student_t(3), kVar);
  EXPECT_NEAR(c.scale, std::sqrt(3.0), 1e-15);
  const auto x = ldar::innovation_sampler(Distribution::student_t(3), kVar, 1000, 1);
  for (double v : x) EXPECT_TRUE(std::isfinite(v));
}

TEST(InnovationSampler, Deterministic) {
  const auto a = ldar::innovation_sampler(Distribution::laplace(), kAbs, 1000, 99);
  const auto b = ldar::innovation_sampler(Distribution::laplace(), kAbs, 1000, 99);
  EXPECT_EQ(a, b);
}

TEST(InnovationSampler, DistinctSeedsUncorrelated) {
  const std::size_t n = 100000;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto a = ldar::innovation_sampler(Distribution::normal(), kVar, n, s);
    const auto b = ldar::innovation_sampler(Distribution::normal(), kVar, n, s + 1);
    const double r = std::inner_product(a.begin(), a.end(), b.begin(), 0.0) / n;
    EXPECT_LT(std::abs(r), 0.01);
  }
  EXPECT_NE(ldar::derive_seed(1, 0), ldar::derive_seed(1, 1));
  EXPECT_NE(ldar::derive_seed(1, 0), ldar::derive_seed(2, 0));
}

TEST(Rng, UniformOpenInterval) {
  ldar::Rng rng(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(ChiSquare, Survival) {
  for (int df : {1, 2, 5, 12}) EXPECT_EQ(ldar::chi2_survival(0.0, df), 1.0);
  EXPECT_NEAR(ldar::chi2_survival(5.991, 2), 0.05, 1e-4);
  for (double x : {0.1, 1.0, 5.991, 20.0, 60.0}) {
    EXPECT_NEAR(ldar::chi2_survival(x, 2), std::exp(-x / 2.0), 1e-14);
  }
  EXPECT_NEAR(ldar::chi2_survival(21.026, 12), 0.05, 5e-4);
  for (int df : {1, 3, 6, 12}) {
    for (double x : {0.5, 3.0, 10.0, 25.0}) {
      EXPECT_NEAR(ldar::chi2_cdf(x, df), lower_gamma_series(df / 2.0, x / 2.0), 1e-12);
      EXPECT_NEAR(ldar::chi2_survival(x, df) + ldar::chi2_cdf(x, df), 1.0, 1e-12);
    }
  }
  EXPECT_THROW(ldar::chi2_survival(-1.0, 2), ldar::DomainError);
  EXPECT_THROW(ldar::chi2_survival(1.0, 0), ldar::DomainError);
}

TEST(NormalQuantile, OracleAndSymmetry) {
  EXPECT_EQ(ldar::normal_quantile(0.5), 0.0);
  EXPECT_NEAR(ldar::normal_quantile(0.975), 1.959964, 1e-5);
  for (double p : {1e-10, 1e-4, 0.01, 0.05, 0.3, 0.7, 0.975, 0.999}) {
    EXPECT_NEAR(ldar::normal_quantile(p), bisect_normal_quantile(p), 1e-9) << p;
  }
  for (double p : {1e-4, 0.01, 0.05, 0.3, 0.7, 0.975, 0.999}) {
    EXPECT_NEAR(ldar::normal_quantile(p), -ldar::normal_quantile(1.0 - p), 1e-10);
  }
  EXPECT_THROW(ldar::normal_quantile(0.0), ldar::DomainError);
  EXPECT_THROW(ldar::normal_quantile(1.0), ldar::DomainError);
  EXPECT_NEAR(ldar::normal_cdf(1.959963984540054), 0.975, 1e-15);
}

TEST(Type7Quantile, HandValues) {
  const std::vector<double> x{4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(ldar::type7_quantile(x, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(ldar::type7_quantile(x, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(ldar::type7_quantile(x, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(ldar::type7_quantile(x, 0.25), 1.75);
}
