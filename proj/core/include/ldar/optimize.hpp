#pragma once

// Unconstrained minimizers used by the estimators. Constraints are handled by
// the callers through reparameterization.

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace ldar::optim {

using Vector = Eigen::VectorXd;

struct OptimResult {
  Vector x;
  double value = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
};

/// Returns f(x) and writes the gradient into grad (already sized).
using ObjectiveWithGradient = std::function<double(const Vector& x, Vector& grad)>;
using Objective = std::function<double(const Vector& x)>;

struct BfgsOptions {
  std::size_t max_iter = 500;
  /// Used when no stopping test is supplied: converged once ||g||_inf <= this.
  double gradient_tolerance = 1e-8;
  /// Longest step accepted along a search direction.
  double max_step = 2.0;
  /// Optional problem-specific convergence test evaluated at every iterate.
  std::function<bool(const Vector& x, double value, const Vector& grad)> stop;
};

/// Quasi-Newton (inverse-Hessian BFGS) with Armijo backtracking.
OptimResult bfgs(const ObjectiveWithGradient& f, Vector x0, const BfgsOptions& options);

struct NelderMeadOptions {
  std::size_t max_iter = 4000;
  /// Converged when the spread of simplex values is below
  /// value_tolerance * (1 + |f_best|) and every vertex lies within
  /// x_tolerance * (1 + ||x_best||_inf) of the best one.
  double value_tolerance = 1e-11;
  double x_tolerance = 1e-7;
};

/// Nelder-Mead simplex with dimension-adaptive coefficients. The initial
/// simplex is x0 plus step_j along each coordinate axis j.
OptimResult nelder_mead(const Objective& f, const Vector& x0, const Vector& step,
                        const NelderMeadOptions& options);

}  // namespace ldar::optim
