#include "ldar/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linalg.hpp"

namespace ldar {

namespace {

std::vector<double> autocorrelations(std::span<const double> x, std::size_t M, const char* what) {
  if (M == 0) throw DomainError("number of lags M must be at least 1");
  if (x.size() <= M) throw DomainError("need more observations than lags");
  const std::size_t n = x.size();
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double denom = 0.0;
  for (double v : x) denom += (v - mean) * (v - mean);
  if (!(denom > 0.0)) {
    throw DegenerateSampleError(std::string(what) + " are constant; autocorrelation undefined");
  }
  std::vector<double> acf(M);
  for (std::size_t k = 1; k <= M; ++k) {
    double num = 0.0;
    for (std::size_t t = k; t < n; ++t) num += (x[t] - mean) * (x[t - k] - mean);
    acf[k - 1] = num / denom;
  }
  return acf;
}

}  // namespace

std::vector<double> sample_acf(std::span<const double> x, std::size_t M) {
  return autocorrelations(x, M, "observations");
}

AcfPair residual_acfs(std::span<const double> residuals, std::size_t M) {
  if (M == 0) throw DomainError("number of lags M must be at least 1");
  if (residuals.size() <= M) throw DomainError("need more residuals than lags");
  std::vector<double> abs_resid(residuals.size());
  std::transform(residuals.begin(), residuals.end(), abs_resid.begin(),
                 [](double e) { return std::abs(e); });
  return {autocorrelations(residuals, M, "residuals"),
          autocorrelations(abs_resid, M, "absolute residuals")};
}

namespace {

void aligned_regressors(std::span<const double> y, const FitResult& fit,
                        std::vector<Eigen::VectorXd>& y1, std::vector<Eigen::VectorXd>& y2) {
  const std::size_t n = fit.residuals.size();
  const auto P = static_cast<Eigen::Index>(fit.params.order());
  y1.assign(n, Eigen::VectorXd(P));
  y2.assign(n, Eigen::VectorXd(P + 1));
  for (std::size_t j = 0; j < n; ++j) {
    const auto reg = regressor_vectors(y, fit.sample_start + j, fit.params);
    for (Eigen::Index i = 0; i < P; ++i) y1[j][i] = reg.y1[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i <= P; ++i) y2[j][i] = reg.y2[static_cast<std::size_t>(i)];
  }
}

}  // namespace

AcfJacobian acf_jacobian(std::span<const double> y, const FitResult& fit,
                         const MomentSummary& mom, std::size_t M) {
  if (M == 0) throw DomainError("number of lags M must be at least 1");
  const std::span<const double> eta = fit.residuals;
  const std::size_t n = eta.size();
  if (n <= M + 1) throw DomainError("need more residuals than lags");
  const auto P = static_cast<Eigen::Index>(fit.params.order());
  const auto D = 2 * P + 1;
  const auto MM = static_cast<Eigen::Index>(M);
  std::vector<Eigen::VectorXd> y1, y2;
  aligned_regressors(y, fit, y1, y2);

  Eigen::MatrixXd u_rho(MM, D);
  Eigen::MatrixXd u_gamma(MM, D);
  for (std::size_t k = 1; k <= M; ++k) {
    Eigen::VectorXd a1 = Eigen::VectorXd::Zero(P);
    Eigen::VectorXd a2 = Eigen::VectorXd::Zero(P + 1);
    Eigen::VectorXd b1 = Eigen::VectorXd::Zero(P);
    Eigen::VectorXd b2 = Eigen::VectorXd::Zero(P + 1);
    for (std::size_t j = k; j < n; ++j) {
      const double c_rho = eta[j - k] - mom.kappa1;
      const double c_gamma = std::abs(eta[j - k]) - mom.tau2;
      a1 += c_rho * y1[j];
      a2 += c_rho * y2[j];
      b1 += c_gamma * y1[j];
      b2 += c_gamma * y2[j];
    }
    const double count = static_cast<double>(n - k);
    const auto row = static_cast<Eigen::Index>(k - 1);
    u_rho.row(row).head(P) = -(a1 / count).transpose();
    u_rho.row(row).tail(P + 1) = -(mom.kappa1 * a2 / count).transpose();
    u_gamma.row(row).head(P) = -(mom.tau1 * b1 / count).transpose();
    u_gamma.row(row).tail(P + 1) = -(mom.tau2 * b2 / count).transpose();
  }

  return {u_rho, u_gamma};
}

Eigen::MatrixXd acf_covariance(std::span<const double> y, const FitResult& fit, std::size_t M) {
  return acf_covariance(y, fit, sandwich_covariance(y, fit), M);
}

Eigen::MatrixXd acf_covariance(std::span<const double> y, const FitResult& fit,
                               const CovarianceReport& cov, std::size_t M) {
  if (M == 0) throw DomainError("number of lags M must be at least 1");
  const std::span<const double> eta = fit.residuals;
  const std::size_t n = eta.size();
  if (n <= M + 1) throw DomainError("need more residuals than lags");
  const std::size_t p = fit.params.order();
  const auto P = static_cast<Eigen::Index>(p);
  const auto D = 2 * P + 1;
  const auto MM = static_cast<Eigen::Index>(M);
  const MomentSummary& mom = cov.moments;
  if (!(mom.sigma1_sq > 0.0) || !(mom.sigma2_sq > 0.0)) {
    throw DegenerateSampleError("residuals have zero spread");
  }
  const bool gaussian = fit.method == Method::gqmle;

  std::vector<Eigen::VectorXd> y1, y2;
  aligned_regressors(y, fit, y1, y2);
  const AcfJacobian u = acf_jacobian(y, fit, mom, M);

  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(2 * MM, 2 * MM + D);
  V.topLeftCorner(MM, MM).setIdentity();
  V.block(MM, MM, MM, MM).setIdentity();
  V.block(0, 2 * MM, MM, D) = u.u_rho / mom.sigma1_sq;
  V.block(MM, 2 * MM, MM, D) = u.u_gamma / mom.sigma2_sq;

  const Eigen::MatrixXd sigma_inv =
      detail::symmetric_inverse(cov.sigma_hat, "Sigma-hat (try a smaller order p)");
  const double score_scale = gaussian ? 1.0 : 0.5;

  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * MM + D, 2 * MM + D);
  Eigen::VectorXd v(2 * MM + D);
  Eigen::VectorXd score(D);
  for (std::size_t j = M; j < n; ++j) {
    const double e = eta[j];
    const double ae = std::abs(e);
    for (std::size_t k = 1; k <= M; ++k) {
      const auto i = static_cast<Eigen::Index>(k - 1);
      v[i] = (e - mom.kappa1) * (eta[j - k] - mom.kappa1) / mom.sigma1_sq;
      v[MM + i] = (ae - mom.tau2) * (std::abs(eta[j - k]) - mom.tau2) / mom.sigma2_sq;
    }
    if (gaussian) {
      score.head(P) = -e * y1[j];
      score.tail(P + 1) = (1.0 - e * e) * y2[j];
    } else {
      const double sign = (e < 0.0 ? 1.0 : 0.0) - (e > 0.0 ? 1.0 : 0.0);
      score.head(P) = sign * y1[j];
      score.tail(P + 1) = (1.0 - ae) * y2[j];
    }
    v.tail(D) = -score_scale * (sigma_inv * score);
    G.noalias() += v * v.transpose();
  }
  G /= static_cast<double>(n - M);
  return detail::symmetrized(V * G * V.transpose());
}

PortmanteauResult portmanteau_statistic(const AcfPair& acf, const Eigen::MatrixXd& cov,
                                        std::size_t n, double ridge) {
  const auto M = static_cast<Eigen::Index>(acf.rho.size());
  if (M == 0 || acf.gamma.size() != acf.rho.size()) {
    throw DomainError("ACF vectors must be non-empty and of equal length");
  }
  if (cov.rows() != 2 * M || cov.cols() != 2 * M) {
    throw DomainError("ACF covariance must be 2M x 2M");
  }
  if (ridge < 0.0) throw DomainError("ridge must be nonnegative");
  Eigen::VectorXd r(2 * M);
  for (Eigen::Index k = 0; k < M; ++k) {
    r[k] = acf.rho[static_cast<std::size_t>(k)];
    r[M + k] = acf.gamma[static_cast<std::size_t>(k)];
  }
  Eigen::MatrixXd c = cov;
  if (ridge > 0.0) c.diagonal().array() += ridge;
  const Eigen::MatrixXd inv =
      detail::symmetric_inverse(c, "ACF covariance (try a smaller M)");
  PortmanteauResult out;
  out.df = static_cast<int>(2 * M);
  out.q_stat = std::max(static_cast<double>(n) * r.dot(inv * r), 0.0);
  out.p_value = chi2_survival(out.q_stat, out.df);
  return out;
}

DiagnosticsReport portmanteau_test(std::span<const double> y, const FitResult& fit, std::size_t M,
                                   double ridge) {
  if (M == 0) throw DomainError("number of lags M must be at least 1");
  DiagnosticsReport rep;
  rep.method = fit.method;
  rep.M = M;
  rep.n = fit.residuals.size();
  if (4 * M >= rep.n) {
    rep.warnings.push_back("M is large relative to the sample (M >= n/4)");
  }
  rep.acf = residual_acfs(fit.residuals, M);
  const CovarianceReport cov = sandwich_covariance(y, fit);
  rep.warnings.insert(rep.warnings.end(), cov.warnings.begin(), cov.warnings.end());
  rep.cov = acf_covariance(y, fit, cov, M);
  const PortmanteauResult q = portmanteau_statistic(rep.acf, rep.cov, rep.n, ridge);
  rep.q_stat = q.q_stat;
  rep.df = q.df;
  rep.p_value = q.p_value;
  const double z = normal_quantile(0.975);
  rep.pointwise_ci.resize(2 * M);
  for (std::size_t i = 0; i < 2 * M; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    rep.pointwise_ci[i] =
        z * std::sqrt(std::max(rep.cov(ii, ii), 0.0) / static_cast<double>(rep.n));
  }
  return rep;
}

}  // namespace ldar
