#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ldar/estimation.hpp"

namespace ldar {

/// Lag-1..M sample autocorrelations. Numerators sum over the lagged pairs
/// only, denominators over the whole sample, so every |value| <= 1.
std::vector<double> sample_acf(std::span<const double> x, std::size_t M);

/// sample_acf of the residuals (rho) and of their absolute values (gamma).
struct AcfPair {
  std::vector<double> rho;
  std::vector<double> gamma;
};

AcfPair residual_acfs(std::span<const double> residuals, std::size_t M);

/// Rows k = 1..M of U_rho and U_gamma, the derivatives of the lag-k
/// autocovariances with respect to theta (before division by sigma1^2, sigma2^2).
struct AcfJacobian {
  Eigen::MatrixXd u_rho;    // M x (2p+1)
  Eigen::MatrixXd u_gamma;  // M x (2p+1)
};

AcfJacobian acf_jacobian(std::span<const double> y, const FitResult& fit, const MomentSummary& moments,
                         std::size_t M);

/// Estimated asymptotic covariance V G V' of sqrt(n) (rho', gamma')'.
///
/// Every expectation is a sample average at the fitted parameters, with the
/// residual moments (kappa1, sigma1^2, tau1, tau2, sigma2^2) estimated from
/// the residuals rather than fixed at their identification values.
Eigen::MatrixXd acf_covariance(std::span<const double> y, const FitResult& fit, std::size_t M);
Eigen::MatrixXd acf_covariance(std::span<const double> y, const FitResult& fit,
                               const CovarianceReport& cov, std::size_t M);

struct PortmanteauResult {
  double q_stat = 0.0;
  int df = 0;
  double p_value = 1.0;
};

/// n r' C^{-1} r with r = (rho', gamma')' against chi-square with 2M degrees
/// of freedom. A positive ridge is added to the diagonal of C before
/// inversion; the default is none.
PortmanteauResult portmanteau_statistic(const AcfPair& acf, const Eigen::MatrixXd& cov,
                                        std::size_t n, double ridge = 0.0);

struct DiagnosticsReport {
  Method method = Method::gqmle;
  std::size_t M = 0;
  std::size_t n = 0;
  AcfPair acf;
  Eigen::MatrixXd cov;
  /// z_{0.975} sqrt(cov_ii / n); first M entries for rho, next M for gamma.
  std::vector<double> pointwise_ci;
  double q_stat = 0.0;
  int df = 0;
  double p_value = 1.0;
  std::vector<std::string> warnings;
};

DiagnosticsReport portmanteau_test(std::span<const double> y, const FitResult& fit, std::size_t M,
                                   double ridge = 0.0);

}  // namespace ldar
