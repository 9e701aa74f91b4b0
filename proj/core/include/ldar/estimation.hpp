#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ldar/error.hpp"
#include "ldar/model.hpp"

namespace ldar {

/// gqmle minimizes mean(ln h_t + eps_t^2 / (2 h_t^2));
/// eqmle minimizes mean(ln h_t + |eps_t| / h_t).
enum class Method { gqmle, eqmle };

std::string to_string(Method method);
Method parse_method(const std::string& text);

/// Standardization the innovations must satisfy for `method` to identify theta.
StandardizationMode identification_mode(Method method) noexcept;

enum class InitStrategy {
  least_squares,  // OLS for alpha, then LS of |residual| on (1, |y_{t-i}|)
  warm_start,     // start from FitOptions::start
};

struct FitOptions {
  std::size_t max_iter = 5000;
  /// Stopping tolerance: projected-gradient norm for gqmle (relative to
  /// 1 + ||theta||_inf) and the accepted objective improvement between restarts.
  double tolerance = 1e-6;
  /// Extra optimizer runs from jittered starts around the incumbent.
  std::size_t restarts = 5;
  /// Lower bound on omega.
  double omega_floor = 1e-6;
  /// Lower clip for the least-squares starting values of (omega, beta).
  double init_floor = 1e-4;
  InitStrategy init = InitStrategy::least_squares;
  std::optional<LdarParams> start;
  /// Seeds the restart jitter; fits are reproducible for a fixed seed.
  std::uint64_t seed = 0;
  /// First response index (0-based) entering the objective. Zero means p.
  /// Order selection sets this to pmax so every order shares one sample.
  std::size_t sample_start = 0;

  void validate() const;
};

struct FitResult {
  Method method = Method::gqmle;
  LdarParams params;
  double loss = 0.0;
  /// eta_t = eps_t(alpha) / h_t(delta) for t = sample_start .. n-1.
  std::vector<double> residuals;
  std::size_t sample_start = 0;
  std::size_t n_obs = 0;
  bool converged = false;
  std::size_t iterations = 0;
  std::size_t restarts_used = 0;
  std::vector<std::string> warnings;
};

/// Thrown when no optimizer run satisfies the stopping rule. Carries the best
/// iterate found.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& message, FitResult best)
      : Error(ErrorCategory::numerical, "non_convergence", message), best_(std::move(best)) {}
  const FitResult& best() const noexcept { return best_; }

 private:
  FitResult best_;
};

// Losses average over t = sample_start .. n-1 (sample_start = 0 means p).

double gaussian_loss(std::span<const double> y, const LdarParams& theta,
                     std::size_t sample_start = 0);

/// Gradient of gaussian_loss in the order (alpha_1..alpha_p, omega, beta_1..beta_p).
std::vector<double> gaussian_gradient(std::span<const double> y, const LdarParams& theta,
                                      std::size_t sample_start = 0);

double exponential_loss(std::span<const double> y, const LdarParams& theta,
                        std::size_t sample_start = 0);

double quasi_loss(Method method, std::span<const double> y, const LdarParams& theta,
                  std::size_t sample_start = 0);

std::vector<double> fitted_residuals(std::span<const double> y, const LdarParams& theta,
                                     std::size_t sample_start = 0);

/// Constrained minimizer of the chosen quasi-likelihood (omega >= omega_floor,
/// beta_i >= 0). gqmle runs BFGS on (alpha, log(omega - floor), sqrt(beta))
/// with the analytic gradient; eqmle warms up on a smoothed objective and
/// finishes with Nelder-Mead restarts on the exact one.
FitResult fit(std::span<const double> y, std::size_t p, Method method,
              const FitOptions& options = {});

struct MomentSummary {
  double kappa1 = 0.0;     // E(eta)
  double kappa2 = 0.0;     // E(eta^2) - 1
  double kappa3 = 0.0;     // E(eta^3)
  double kappa4 = 0.0;     // E(eta^4) - 1
  double tau1 = 0.0;       // E sgn(eta)
  double tau2 = 0.0;       // E|eta|
  double sigma1_sq = 0.0;  // var(eta), 1/n normalization
  double sigma2_sq = 0.0;  // var(|eta|), 1/n normalization
};

MomentSummary moment_summary(std::span<const double> residuals);

struct KdeEstimate {
  double f0 = 0.0;
  double bandwidth = 0.0;
};

/// 0.9 n^{-1/5} min{sd, iqr / 1.34}.
double rule_of_thumb_bandwidth(std::size_t n, double sd, double iqr);

/// Gaussian-kernel density estimate at x.
double gaussian_kde(std::span<const double> sample, double x, double bandwidth);

/// Density at zero with the rule-of-thumb bandwidth (sd with n-1 divisor,
/// type-7 interquartile range). Falls back to sd alone when the IQR is zero.
KdeEstimate kde_density_at_zero(std::span<const double> residuals);

struct CovarianceReport {
  Method method = Method::gqmle;
  Eigen::MatrixXd sigma_hat;
  Eigen::MatrixXd omega_hat;
  Eigen::MatrixXd xi_hat;
  /// sqrt(Xi_ii / n_eff) with n_eff the number of residuals.
  std::vector<double> ase;
  std::optional<double> f0;
  std::optional<double> bandwidth;
  MomentSummary moments;
  std::vector<std::string> warnings;
};

/// Plug-in sandwich covariance Xi = Sigma^{-1} Omega Sigma^{-1} (divided by 4
/// for eqmle). Throws SingularityError if Sigma has reciprocal condition
/// number below 1e-12.
CovarianceReport sandwich_covariance(std::span<const double> y, const FitResult& fit);

/// Sample means of Y1 Y1', Y1 Y2', Y2 Y2' over the fitted sample.
struct RegressorMoments {
  Eigen::MatrixXd y1y1;
  Eigen::MatrixXd y1y2;
  Eigen::MatrixXd y2y2;
};

RegressorMoments regressor_moments(std::span<const double> y, const LdarParams& theta,
                                   std::size_t sample_start);

/// Sigma_1 = diag{E Y1Y1', 2 E Y2Y2'} (gqmle) or
/// Sigma_2 = diag{f(0) E Y1Y1', E Y2Y2' / 2} (eqmle).
Eigen::MatrixXd hessian_block_matrix(Method method, const RegressorMoments& m, double f0);

}  // namespace ldar
