#include "ldar/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ldar/optimize.hpp"
#include "linalg.hpp"

namespace ldar {

std::string to_string(Method method) { return method == Method::gqmle ? "gqmle" : "eqmle"; }

Method parse_method(const std::string& text) {
  if (text == "gqmle" || text == "g" || text == "gaussian") return Method::gqmle;
  if (text == "eqmle" || text == "e" || text == "exponential") return Method::eqmle;
  throw DomainError("unknown method '" + text + "' (expected gqmle or eqmle)", "method");
}

StandardizationMode identification_mode(Method method) noexcept {
  return method == Method::gqmle ? StandardizationMode::mean_zero_unit_variance
                                 : StandardizationMode::median_zero_unit_abs_mean;
}

void FitOptions::validate() const {
  if (!(tolerance > 0.0)) throw DomainError("fit tolerance must be positive", "options");
  if (!(omega_floor > 0.0)) throw DomainError("omega floor must be positive", "options");
  if (!(init_floor > 0.0)) throw DomainError("initial clip must be positive", "options");
  if (max_iter == 0) throw DomainError("max_iter must be positive", "options");
  if (init == InitStrategy::warm_start && !start) {
    throw DomainError("warm_start initialization needs FitOptions::start", "options");
  }
}

namespace {

enum class Kernel { gaussian, laplace, smooth_laplace };

/// Mean loss over t = first..n-1 and, if grad is non-null, its gradient in
/// natural coordinates (alpha, omega, beta).
double evaluate(Kernel kernel, std::span<const double> y, std::size_t p, const double* alpha,
                double omega, const double* beta, std::size_t first, double mu, double* grad) {
  const std::size_t n = y.size();
  const std::size_t dim = 2 * p + 1;
  if (grad != nullptr) std::fill(grad, grad + dim, 0.0);
  double total = 0.0;
  const double mu_sq = mu * mu;
  for (std::size_t t = first; t < n; ++t) {
    double eps = y[t];
    double h = omega;
    for (std::size_t i = 1; i <= p; ++i) {
      const double lag = y[t - i];
      eps -= alpha[i - 1] * lag;
      h += beta[i - 1] * std::abs(lag);
    }
    const double inv_h = 1.0 / h;
    const double eta = eps * inv_h;
    double mean_weight = 0.0;   // d loss / d eps, times h
    double scale_weight = 0.0;  // d loss / d h, times h
    switch (kernel) {
      case Kernel::gaussian:
        total += std::log(h) + 0.5 * eta * eta;
        mean_weight = eta;
        scale_weight = 1.0 - eta * eta;
        break;
      case Kernel::laplace:
        total += std::log(h) + std::abs(eta);
        mean_weight = eta > 0.0 ? 1.0 : (eta < 0.0 ? -1.0 : 0.0);
        scale_weight = 1.0 - std::abs(eta);
        break;
      case Kernel::smooth_laplace: {
        const double s = std::sqrt(eta * eta + mu_sq);
        total += std::log(h) + s;
        mean_weight = eta / s;
        scale_weight = 1.0 - eta * eta / s;
        break;
      }
    }
    if (grad != nullptr) {
      const double gm = mean_weight * inv_h;
      const double gs = scale_weight * inv_h;
      grad[p] += gs;
      for (std::size_t i = 1; i <= p; ++i) {
        const double lag = y[t - i];
        grad[i - 1] -= gm * lag;
        grad[p + i] += gs * std::abs(lag);
      }
    }
  }
  const double count = static_cast<double>(n - first);
  if (grad != nullptr) {
    for (std::size_t j = 0; j < dim; ++j) grad[j] /= count;
  }
  return total / count;
}

std::size_t resolve_start(std::span<const double> y, std::size_t p, std::size_t sample_start) {
  const std::size_t first = sample_start == 0 ? p : sample_start;
  if (first < p) throw DomainError("sample start must be at least the model order");
  if (first >= y.size()) {
    throw DomainError("series of length " + std::to_string(y.size()) +
                      " leaves no observations for order " + std::to_string(p));
  }
  return first;
}

double checked_loss(Kernel kernel, std::span<const double> y, const LdarParams& theta,
                    std::size_t sample_start, double* grad = nullptr) {
  theta.validate();
  const std::size_t p = theta.order();
  const std::size_t first = resolve_start(y, p, sample_start);
  return evaluate(kernel, y, p, theta.alpha.data(), theta.omega, theta.beta.data(), first, 0.0,
                  grad);
}

// Unconstrained coordinates x = (alpha, u, v): omega = floor + exp(u), beta = v^2.
class Transform {
 public:
  Transform(std::size_t p, double floor) : p_(p), floor_(floor) {}

  optim::Vector to_x(const LdarParams& theta, double clip) const {
    optim::Vector x(static_cast<Eigen::Index>(2 * p_ + 1));
    for (std::size_t i = 0; i < p_; ++i) x[idx(i)] = theta.alpha[i];
    x[idx(p_)] = std::log(std::max(theta.omega - floor_, clip));
    for (std::size_t i = 0; i < p_; ++i) x[idx(p_ + 1 + i)] = std::sqrt(std::max(theta.beta[i], 0.0));
    return x;
  }

  void to_natural(const optim::Vector& x, std::vector<double>& alpha, double& omega,
                  std::vector<double>& beta) const {
    alpha.resize(p_);
    beta.resize(p_);
    for (std::size_t i = 0; i < p_; ++i) alpha[i] = x[idx(i)];
    omega = floor_ + std::exp(x[idx(p_)]);
    for (std::size_t i = 0; i < p_; ++i) {
      const double v = x[idx(p_ + 1 + i)];
      beta[i] = v * v;
    }
  }

  LdarParams params(const optim::Vector& x) const {
    LdarParams out;
    to_natural(x, out.alpha, out.omega, out.beta);
    return out;
  }

  /// Chain rule from natural-coordinate gradient to x-gradient.
  void pull_back(const optim::Vector& x, const std::vector<double>& natural,
                 optim::Vector& grad) const {
    for (std::size_t i = 0; i < p_; ++i) grad[idx(i)] = natural[i];
    grad[idx(p_)] = natural[p_] * std::exp(x[idx(p_)]);
    for (std::size_t i = 0; i < p_; ++i) {
      grad[idx(p_ + 1 + i)] = natural[p_ + 1 + i] * 2.0 * x[idx(p_ + 1 + i)];
    }
  }

  std::size_t order() const noexcept { return p_; }
  double floor() const noexcept { return floor_; }

 private:
  static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }
  std::size_t p_;
  double floor_;
};

LdarParams least_squares_start(std::span<const double> y, std::size_t p, std::size_t first,
                               double clip) {
  const std::size_t n = y.size();
  const auto rows = static_cast<Eigen::Index>(n - first);
  const auto cols = static_cast<Eigen::Index>(p);
  Eigen::MatrixXd lags(rows, cols);
  Eigen::VectorXd response(rows);
  for (std::size_t t = first; t < n; ++t) {
    const auto r = static_cast<Eigen::Index>(t - first);
    response[r] = y[t];
    for (std::size_t i = 1; i <= p; ++i) lags(r, static_cast<Eigen::Index>(i - 1)) = y[t - i];
  }
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(cols);
  {
    const Eigen::MatrixXd gram = lags.transpose() * lags;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() == Eigen::Success && ldlt.isPositive() && gram.trace() > 0.0 &&
        detail::reciprocal_condition(gram) > 1e-12) {
      alpha = ldlt.solve(lags.transpose() * response);
    }
  }
  const Eigen::VectorXd abs_resid = (response - lags * alpha).cwiseAbs();
  Eigen::MatrixXd design(rows, cols + 1);
  design.col(0).setOnes();
  design.rightCols(cols) = lags.cwiseAbs();
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(cols + 1);
  delta[0] = std::max(abs_resid.mean(), clip);
  {
    const Eigen::MatrixXd gram = design.transpose() * design;
    if (detail::reciprocal_condition(gram) > 1e-12) {
      delta = gram.ldlt().solve(design.transpose() * abs_resid);
    }
  }
  LdarParams out;
  out.alpha.assign(alpha.data(), alpha.data() + cols);
  out.omega = std::max(delta[0], clip);
  out.beta.resize(p);
  for (std::size_t i = 0; i < p; ++i) out.beta[i] = std::max(delta[static_cast<Eigen::Index>(i + 1)], clip);
  if (!std::isfinite(out.omega)) out.omega = 1.0;
  return out;
}

struct Problem {
  std::span<const double> y;
  std::size_t p;
  std::size_t first;
  Transform transform;
};

double objective(const Problem& prob, Kernel kernel, double mu, const optim::Vector& x,
                 optim::Vector* grad) {
  thread_local std::vector<double> alpha;
  thread_local std::vector<double> beta;
  thread_local std::vector<double> natural;
  double omega = 0.0;
  prob.transform.to_natural(x, alpha, omega, beta);
  natural.resize(2 * prob.p + 1);
  const double value = evaluate(kernel, prob.y, prob.p, alpha.data(), omega, beta.data(),
                                prob.first, mu, grad != nullptr ? natural.data() : nullptr);
  if (grad != nullptr) prob.transform.pull_back(x, natural, *grad);
  return std::isfinite(value) ? value : std::numeric_limits<double>::infinity();
}

/// Projected natural-coordinate gradient test for the smooth Gaussian loss.
bool gaussian_stationary(const Problem& prob, const optim::Vector& x, const optim::Vector& gx,
                         double tolerance) {
  const std::size_t p = prob.p;
  const auto dim = static_cast<Eigen::Index>(2 * p + 1);
  double worst = 0.0;
  double norm = 0.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    double g = 0.0;
    double value = 0.0;
    if (uj < p) {
      g = gx[j];
      value = x[j];
    } else if (uj == p) {
      const double excess = std::exp(x[j]);
      g = gx[j] / excess;
      value = prob.transform.floor() + excess;
      if (excess <= 1e-10 && g > 0.0) g = 0.0;
    } else {
      const double v = x[j];
      value = v * v;
      if (value <= 1e-12) {
        // At the beta >= 0 bound only a negative slope violates stationarity.
        const double slope = v != 0.0 ? gx[j] / (2.0 * v) : 0.0;
        g = slope < 0.0 ? slope : 0.0;
      } else {
        g = gx[j] / (2.0 * v);
      }
    }
    worst = std::max(worst, std::abs(g));
    norm = std::max(norm, std::abs(value));
  }
  return worst <= tolerance * (1.0 + norm) ||
         gx.lpNorm<Eigen::Infinity>() <= 1e-2 * tolerance;
}

optim::Vector jitter(const optim::Vector& x, Rng& rng, double scale) {
  optim::Vector out = x;
  for (Eigen::Index j = 0; j < out.size(); ++j) out[j] += scale * rng.normal();
  return out;
}

struct RunSummary {
  optim::OptimResult best;
  bool converged = false;
  std::size_t iterations = 0;
  std::size_t restarts_used = 0;
};

RunSummary run_gaussian(const Problem& prob, const optim::Vector& x0, const FitOptions& options) {
  optim::BfgsOptions bopts;
  bopts.max_iter = options.max_iter;
  bopts.stop = [&](const optim::Vector& x, double, const optim::Vector& g) {
    return gaussian_stationary(prob, x, g, options.tolerance);
  };
  const optim::ObjectiveWithGradient f = [&](const optim::Vector& x, optim::Vector& g) {
    return objective(prob, Kernel::gaussian, 0.0, x, &g);
  };
  RunSummary out;
  out.best = optim::bfgs(f, x0, bopts);
  out.iterations = out.best.iterations;
  out.converged = out.best.converged;
  Rng rng(derive_seed(options.seed, 0x6761757373ULL));
  for (std::size_t r = 0; r < options.restarts && !out.converged; ++r) {
    ++out.restarts_used;
    const auto run = optim::bfgs(f, jitter(out.best.x, rng, 0.1), bopts);
    out.iterations += run.iterations;
    if (run.converged || run.value < out.best.value) {
      out.converged = run.converged;
      out.best = run;
    }
  }
  return out;
}

RunSummary run_exponential(const Problem& prob, optim::Vector x0, const FitOptions& options) {
  if (options.init == InitStrategy::least_squares) {
    // Smoothed continuation: |eta| ~ sqrt(eta^2 + mu^2).
    optim::BfgsOptions bopts;
    bopts.max_iter = 200;
    bopts.gradient_tolerance = 1e-6;
    for (double mu : {0.2, 0.05, 0.01, 0.002}) {
      const optim::ObjectiveWithGradient f = [&](const optim::Vector& x, optim::Vector& g) {
        return objective(prob, Kernel::smooth_laplace, mu, x, &g);
      };
      const auto run = optim::bfgs(f, x0, bopts);
      if (run.x.allFinite() && std::isfinite(run.value)) x0 = run.x;
    }
  }

  const optim::Objective f = [&](const optim::Vector& x) {
    return objective(prob, Kernel::laplace, 0.0, x, nullptr);
  };
  optim::NelderMeadOptions nopts;
  nopts.max_iter = options.max_iter;
  nopts.value_tolerance = 1e-3 * options.tolerance;
  nopts.x_tolerance = options.tolerance;
  const optim::Vector base_step = optim::Vector::Constant(x0.size(), 0.02);

  RunSummary out;
  out.best = optim::nelder_mead(f, x0, base_step, nopts);
  out.iterations = out.best.iterations;
  out.converged = out.best.converged;
  Rng rng(derive_seed(options.seed, 0x6c61706c616365ULL));
  for (std::size_t r = 0; r < options.restarts; ++r) {
    ++out.restarts_used;
    optim::Vector step(x0.size());
    for (Eigen::Index j = 0; j < step.size(); ++j) {
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      step[j] = sign * 0.02 * (0.5 + rng.uniform());
    }
    const auto run = optim::nelder_mead(f, jitter(out.best.x, rng, 0.005), step, nopts);
    out.iterations += run.iterations;
    const double improvement = out.best.value - run.value;
    const double slack = options.tolerance * (1.0 + std::abs(out.best.value));
    if (run.value < out.best.value) {
      out.converged = run.converged || (out.converged && improvement <= slack);
      out.best = run;
    } else if (run.converged && run.value <= out.best.value + slack) {
      out.converged = true;
    }
    if (improvement <= slack && out.converged) break;
  }
  return out;
}

}  // namespace

double gaussian_loss(std::span<const double> y, const LdarParams& theta,
                     std::size_t sample_start) {
  return checked_loss(Kernel::gaussian, y, theta, sample_start);
}

std::vector<double> gaussian_gradient(std::span<const double> y, const LdarParams& theta,
                                      std::size_t sample_start) {
  std::vector<double> grad(theta.dimension());
  checked_loss(Kernel::gaussian, y, theta, sample_start, grad.data());
  return grad;
}

double exponential_loss(std::span<const double> y, const LdarParams& theta,
                        std::size_t sample_start) {
  return checked_loss(Kernel::laplace, y, theta, sample_start);
}

double quasi_loss(Method method, std::span<const double> y, const LdarParams& theta,
                  std::size_t sample_start) {
  return method == Method::gqmle ? gaussian_loss(y, theta, sample_start)
                                 : exponential_loss(y, theta, sample_start);
}

std::vector<double> fitted_residuals(std::span<const double> y, const LdarParams& theta,
                                     std::size_t sample_start) {
  theta.validate();
  const std::size_t first = resolve_start(y, theta.order(), sample_start);
  std::vector<double> out;
  out.reserve(y.size() - first);
  for (std::size_t t = first; t < y.size(); ++t) out.push_back(standardized_residual(y, t, theta));
  return out;
}

FitResult fit(std::span<const double> y, std::size_t p, Method method, const FitOptions& options) {
  options.validate();
  if (p == 0) throw DomainError("model order p must be at least 1");
  const std::size_t first = resolve_start(y, p, options.sample_start);
  const std::size_t dim = 2 * p + 1;
  if (y.size() - first <= dim) {
    throw DomainError("need more than " + std::to_string(dim) + " usable observations to fit order " +
                      std::to_string(p));
  }
  FitResult result;
  result.method = method;
  result.sample_start = first;
  result.n_obs = y.size();
  if (y.size() <= 5 * dim) {
    result.warnings.push_back("series length " + std::to_string(y.size()) +
                              " is at most 5(2p+1); estimates may be unreliable");
  }

  LdarParams start;
  if (options.init == InitStrategy::warm_start) {
    start = *options.start;
    start.validate();
    if (start.order() != p) throw DomainError("warm start has the wrong order", "options");
  } else {
    start = least_squares_start(y, p, first, options.init_floor);
  }

  const Problem prob{y, p, first, Transform(p, options.omega_floor)};
  const optim::Vector x0 = prob.transform.to_x(start, options.init_floor);
  const RunSummary run = method == Method::gqmle ? run_gaussian(prob, x0, options)
                                                 : run_exponential(prob, x0, options);

  result.params = prob.transform.params(run.best.x);
  result.loss = quasi_loss(method, y, result.params, first);
  result.residuals = fitted_residuals(y, result.params, first);
  result.converged = run.converged;
  result.iterations = run.iterations;
  result.restarts_used = run.restarts_used;
  if (!run.converged) {
    throw NonConvergenceError(to_string(method) + " optimizer did not converge after " +
                                  std::to_string(run.restarts_used) + " restarts",
                              result);
  }
  return result;
}

MomentSummary moment_summary(std::span<const double> residuals) {
  if (residuals.empty()) throw DegenerateSampleError("moment summary of an empty sample");
  const double n = static_cast<double>(residuals.size());
  double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0, sgn = 0.0, abs1 = 0.0;
  for (double e : residuals) {
    const double e2 = e * e;
    m1 += e;
    m2 += e2;
    m3 += e2 * e;
    m4 += e2 * e2;
    sgn += (e > 0.0) - (e < 0.0);
    abs1 += std::abs(e);
  }
  MomentSummary m;
  m.kappa1 = m1 / n;
  m.kappa2 = m2 / n - 1.0;
  m.kappa3 = m3 / n;
  m.kappa4 = m4 / n - 1.0;
  m.tau1 = sgn / n;
  m.tau2 = abs1 / n;
  m.sigma1_sq = std::max(m2 / n - m.kappa1 * m.kappa1, 0.0);
  m.sigma2_sq = std::max(m2 / n - m.tau2 * m.tau2, 0.0);
  return m;
}

double rule_of_thumb_bandwidth(std::size_t n, double sd, double iqr) {
  return 0.9 * std::pow(static_cast<double>(n), -0.2) * std::min(sd, iqr / 1.34);
}

double gaussian_kde(std::span<const double> sample, double x, double bandwidth) {
  if (sample.empty()) throw DegenerateSampleError("density estimate of an empty sample");
  if (!(bandwidth > 0.0)) throw DomainError("bandwidth must be positive");
  double total = 0.0;
  for (double e : sample) total += normal_pdf((x - e) / bandwidth);
  return total / (static_cast<double>(sample.size()) * bandwidth);
}

KdeEstimate kde_density_at_zero(std::span<const double> residuals) {
  const std::size_t n = residuals.size();
  if (n < 10) throw DegenerateSampleError("density at zero needs at least 10 residuals");
  const double mean = std::accumulate(residuals.begin(), residuals.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double e : residuals) ss += (e - mean) * (e - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  std::vector<double> sorted(residuals.begin(), residuals.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = type7_quantile_sorted(sorted, 0.75) - type7_quantile_sorted(sorted, 0.25);
  double bandwidth = rule_of_thumb_bandwidth(n, sd, iqr);
  if (!(iqr > 0.0)) bandwidth = 0.9 * std::pow(static_cast<double>(n), -0.2) * sd;
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw DegenerateSampleError("residuals have zero spread; density at zero is undefined");
  }
  return {gaussian_kde(residuals, 0.0, bandwidth), bandwidth};
}

RegressorMoments regressor_moments(std::span<const double> y, const LdarParams& theta,
                                   std::size_t sample_start) {
  theta.validate();
  const std::size_t p = theta.order();
  const std::size_t first = resolve_start(y, p, sample_start);
  const auto pp = static_cast<Eigen::Index>(p);
  RegressorMoments m{Eigen::MatrixXd::Zero(pp, pp), Eigen::MatrixXd::Zero(pp, pp + 1),
                     Eigen::MatrixXd::Zero(pp + 1, pp + 1)};
  Eigen::VectorXd y1(pp);
  Eigen::VectorXd y2(pp + 1);
  for (std::size_t t = first; t < y.size(); ++t) {
    const auto reg = regressor_vectors(y, t, theta);
    for (Eigen::Index i = 0; i < pp; ++i) y1[i] = reg.y1[static_cast<std::size_t>(i)];
    for (Eigen::Index i = 0; i <= pp; ++i) y2[i] = reg.y2[static_cast<std::size_t>(i)];
    m.y1y1.noalias() += y1 * y1.transpose();
    m.y1y2.noalias() += y1 * y2.transpose();
    m.y2y2.noalias() += y2 * y2.transpose();
  }
  const double count = static_cast<double>(y.size() - first);
  m.y1y1 /= count;
  m.y1y2 /= count;
  m.y2y2 /= count;
  return m;
}

Eigen::MatrixXd hessian_block_matrix(Method method, const RegressorMoments& m, double f0) {
  const Eigen::Index p = m.y1y1.rows();
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(2 * p + 1, 2 * p + 1);
  if (method == Method::gqmle) {
    sigma.topLeftCorner(p, p) = m.y1y1;
    sigma.bottomRightCorner(p + 1, p + 1) = 2.0 * m.y2y2;
  } else {
    sigma.topLeftCorner(p, p) = f0 * m.y1y1;
    sigma.bottomRightCorner(p + 1, p + 1) = 0.5 * m.y2y2;
  }
  return sigma;
}

CovarianceReport sandwich_covariance(std::span<const double> y, const FitResult& fit) {
  if (!fit.converged) throw DomainError("sandwich covariance needs a converged fit", "fit");
  const RegressorMoments m = regressor_moments(y, fit.params, fit.sample_start);
  const Eigen::Index p = m.y1y1.rows();
  CovarianceReport rep;
  rep.method = fit.method;
  rep.moments = moment_summary(fit.residuals);

  double f0 = 0.0;
  double cross = 0.0;
  double scale_var = 0.0;
  if (fit.method == Method::gqmle) {
    cross = rep.moments.kappa3;
    scale_var = rep.moments.kappa4;
    if (rep.moments.kappa4 - rep.moments.kappa3 * rep.moments.kappa3 <= 0.0) {
      rep.warnings.push_back(
          "kappa4 - kappa3^2 <= 0: the fourth-moment matrix is not positive definite");
    }
  } else {
    const KdeEstimate kde = kde_density_at_zero(fit.residuals);
    f0 = kde.f0;
    rep.f0 = kde.f0;
    rep.bandwidth = kde.bandwidth;
    cross = rep.moments.kappa1;
    scale_var = rep.moments.kappa2;
  }

  rep.sigma_hat = hessian_block_matrix(fit.method, m, f0);
  rep.omega_hat = Eigen::MatrixXd::Zero(2 * p + 1, 2 * p + 1);
  rep.omega_hat.topLeftCorner(p, p) = m.y1y1;
  rep.omega_hat.topRightCorner(p, p + 1) = cross * m.y1y2;
  rep.omega_hat.bottomLeftCorner(p + 1, p) = cross * m.y1y2.transpose();
  rep.omega_hat.bottomRightCorner(p + 1, p + 1) = scale_var * m.y2y2;

  const Eigen::MatrixXd sigma_inv = detail::symmetric_inverse(
      rep.sigma_hat, "Sigma-hat (try a smaller order p or a longer series)");
  Eigen::MatrixXd xi = sigma_inv * rep.omega_hat * sigma_inv;
  if (fit.method == Method::eqmle) xi /= 4.0;
  rep.xi_hat = detail::symmetrized(xi);

  const double count = static_cast<double>(fit.residuals.size());
  rep.ase.resize(static_cast<std::size_t>(2 * p + 1));
  for (Eigen::Index j = 0; j < 2 * p + 1; ++j) {
    rep.ase[static_cast<std::size_t>(j)] = std::sqrt(std::max(rep.xi_hat(j, j), 0.0) / count);
  }
  return rep;
}

}  // namespace ldar
