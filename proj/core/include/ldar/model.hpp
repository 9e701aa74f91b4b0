#pragma once

// Linear double autoregressive model of order p:
//
//   y_t = sum_i alpha_i y_{t-i} + eta_t (omega + sum_i beta_i |y_{t-i}|),
//
// with omega > 0, beta_i >= 0 and iid innovations eta_t.
//
// Time indices in this library are 0-based: an observation index t refers to
// values()[t] and needs t >= p so that all p lags exist. The mathematical
// index 1..n maps to 0..n-1.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ldar/probability.hpp"

namespace ldar {

/// theta = (alpha', omega, beta')'. Flattened vectors use exactly that order.
struct LdarParams {
  std::vector<double> alpha;
  double omega = 1.0;
  std::vector<double> beta;

  LdarParams() = default;
  LdarParams(std::vector<double> alpha_, double omega_, std::vector<double> beta_);

  std::size_t order() const noexcept { return alpha.size(); }
  std::size_t dimension() const noexcept { return 2 * alpha.size() + 1; }

  /// Throws DomainError unless the invariants hold.
  void validate() const;

  std::vector<double> to_vector() const;
  /// Inverse of to_vector(); the length must be odd.
  static LdarParams from_vector(std::span<const double> theta);

  friend bool operator==(const LdarParams&, const LdarParams&) = default;
};

/// Owned, finite-valued observation sequence.
class TimeSeries {
 public:
  TimeSeries() = default;
  /// Throws DataError if any value is not finite.
  explicit TimeSeries(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  operator std::span<const double>() const noexcept { return values_; }  // NOLINT

 private:
  std::vector<double> values_;
};

struct InnovationSpec {
  Distribution dist;
  StandardizationMode mode = StandardizationMode::mean_zero_unit_variance;
  StandardizationConstants constants;

  static InnovationSpec make(const Distribution& dist, StandardizationMode mode);
};

struct ResidualAndScale {
  double eps;  // y_t - sum alpha_i y_{t-i}
  double h;    // omega + sum beta_i |y_{t-i}|
};

ResidualAndScale mean_residual_and_scale(std::span<const double> y, std::size_t t,
                                         const LdarParams& params);

/// Y1 = (y_{t-1}, ..., y_{t-p})' / h_t and Y2 = (1, |y_{t-1}|, ..., |y_{t-p}|)' / h_t.
struct RegressorPair {
  std::vector<double> y1;
  std::vector<double> y2;
};

RegressorPair regressor_vectors(std::span<const double> y, std::size_t t,
                                const LdarParams& params);

/// Standardized residual eta_t(theta) = eps_t / h_t.
double standardized_residual(std::span<const double> y, std::size_t t, const LdarParams& params);

/// Simulates n observations after discarding burn_in values. The first p lags
/// of the recursion are zero. Deterministic in seed.
TimeSeries simulate(const LdarParams& params, const InnovationSpec& innov, std::size_t n,
                    std::size_t burn_in, std::uint64_t seed);

inline constexpr std::size_t kDefaultBurnIn = 500;

/// Monte Carlo estimate of sum_i max{E|alpha_i - beta_i eta|^kappa, E|alpha_i + beta_i eta|^kappa}.
/// A value below 1 indicates the sufficient strict-stationarity condition holds.
double stationarity_margin(const LdarParams& params, const InnovationSpec& innov, double kappa,
                           std::size_t n_mc, std::uint64_t seed);

}  // namespace ldar
