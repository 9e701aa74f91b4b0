#include "ldar/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ldar/error.hpp"

namespace ldar {

LdarParams::LdarParams(std::vector<double> alpha_, double omega_, std::vector<double> beta_)
    : alpha(std::move(alpha_)), omega(omega_), beta(std::move(beta_)) {}

void LdarParams::validate() const {
  if (alpha.empty()) throw DomainError("model order p must be at least 1", "params");
  if (alpha.size() != beta.size()) {
    throw DomainError("alpha and beta must have the same length", "params");
  }
  if (!std::isfinite(omega) || !(omega > 0.0)) {
    throw DomainError("omega must be positive and finite", "params");
  }
  for (double a : alpha) {
    if (!std::isfinite(a)) throw DomainError("alpha entries must be finite", "params");
  }
  for (double b : beta) {
    if (!std::isfinite(b) || b < 0.0) {
      throw DomainError("beta entries must be finite and nonnegative", "params");
    }
  }
}

std::vector<double> LdarParams::to_vector() const {
  std::vector<double> theta;
  theta.reserve(dimension());
  theta.insert(theta.end(), alpha.begin(), alpha.end());
  theta.push_back(omega);
  theta.insert(theta.end(), beta.begin(), beta.end());
  return theta;
}

LdarParams LdarParams::from_vector(std::span<const double> theta) {
  if (theta.size() < 3 || theta.size() % 2 == 0) {
    throw DomainError("parameter vector must have length 2p+1 with p >= 1", "params");
  }
  const std::size_t p = (theta.size() - 1) / 2;
  return LdarParams(std::vector<double>(theta.begin(), theta.begin() + p), theta[p],
                    std::vector<double>(theta.begin() + p + 1, theta.end()));
}

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DataError("series.non_finite", "observation " + std::to_string(i) + " is not finite");
    }
  }
}

InnovationSpec InnovationSpec::make(const Distribution& dist, StandardizationMode mode) {
  return {dist, mode, standardization(dist, mode)};
}

namespace {

void check_index(std::span<const double> y, std::size_t t, std::size_t p) {
  if (t < p || t >= y.size()) {
    throw RangeError("time index " + std::to_string(t) + " outside [" + std::to_string(p) + ", " +
                     std::to_string(y.size()) + ")");
  }
}

}  // namespace

ResidualAndScale mean_residual_and_scale(std::span<const double> y, std::size_t t,
                                         const LdarParams& params) {
  const std::size_t p = params.order();
  check_index(y, t, p);
  double eps = y[t];
  double h = params.omega;
  for (std::size_t i = 1; i <= p; ++i) {
    const double lag = y[t - i];
    eps -= params.alpha[i - 1] * lag;
    h += params.beta[i - 1] * std::abs(lag);
  }
  return {eps, h};
}

RegressorPair regressor_vectors(std::span<const double> y, std::size_t t,
                                const LdarParams& params) {
  const std::size_t p = params.order();
  const double h = mean_residual_and_scale(y, t, params).h;
  RegressorPair out{std::vector<double>(p), std::vector<double>(p + 1)};
  out.y2[0] = 1.0 / h;
  for (std::size_t i = 1; i <= p; ++i) {
    out.y1[i - 1] = y[t - i] / h;
    out.y2[i] = std::abs(y[t - i]) / h;
  }
  return out;
}

double standardized_residual(std::span<const double> y, std::size_t t, const LdarParams& params) {
  const auto [eps, h] = mean_residual_and_scale(y, t, params);
  return eps / h;
}

TimeSeries simulate(const LdarParams& params, const InnovationSpec& innov, std::size_t n,
                    std::size_t burn_in, std::uint64_t seed) {
  params.validate();
  if (n == 0) throw DomainError("simulate requires n >= 1");
  const std::size_t p = params.order();
  const std::size_t total = n + burn_in;
  const std::vector<double> eta = innovation_sampler(innov.dist, innov.mode, total, seed);

  // p leading zeros hold the initial lags.
  std::vector<double> path(p + total, 0.0);
  for (std::size_t s = 0; s < total; ++s) {
    const std::size_t t = s + p;
    double mean = 0.0;
    double scale = params.omega;
    for (std::size_t i = 1; i <= p; ++i) {
      mean += params.alpha[i - 1] * path[t - i];
      scale += params.beta[i - 1] * std::abs(path[t - i]);
    }
    path[t] = mean + eta[s] * scale;
  }
  const auto first = path.begin() + static_cast<std::ptrdiff_t>(p + burn_in);
  return TimeSeries(std::vector<double>(first, path.end()));
}

double stationarity_margin(const LdarParams& params, const InnovationSpec& innov, double kappa,
                           std::size_t n_mc, std::uint64_t seed) {
  params.validate();
  if (!(kappa > 0.0 && kappa <= 1.0)) throw DomainError("kappa must lie in (0, 1]");
  if (n_mc < 10000) throw DomainError("stationarity_margin requires n_mc >= 10000");
  const std::vector<double> eta = innovation_sampler(innov.dist, innov.mode, n_mc, seed);
  double total = 0.0;
  for (std::size_t i = 0; i < params.order(); ++i) {
    const double a = params.alpha[i];
    const double b = params.beta[i];
    double minus = 0.0;
    double plus = 0.0;
    for (double e : eta) {
      minus += std::pow(std::abs(a - b * e), kappa);
      plus += std::pow(std::abs(a + b * e), kappa);
    }
    total += std::max(minus, plus) / static_cast<double>(n_mc);
  }
  return total;
}

}  // namespace ldar
