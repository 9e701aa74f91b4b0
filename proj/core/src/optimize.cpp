#include "ldar/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace ldar::optim {

namespace {

constexpr double kArmijo = 1e-4;

}  // namespace

OptimResult bfgs(const ObjectiveWithGradient& f, Vector x0, const BfgsOptions& options) {
  const Eigen::Index n = x0.size();
  OptimResult out;
  out.x = std::move(x0);
  Vector grad(n);
  out.value = f(out.x, grad);
  out.evaluations = 1;

  auto stop = [&](const Vector& x, double value, const Vector& g) {
    if (options.stop) return options.stop(x, value, g);
    return g.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance;
  };

  if (!std::isfinite(out.value)) return out;

  Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(n, n);
  bool fresh_hessian = true;
  Vector trial(n);
  Vector trial_grad(n);

  for (out.iterations = 0; out.iterations < options.max_iter; ++out.iterations) {
    if (stop(out.x, out.value, grad)) {
      out.converged = true;
      return out;
    }
    Vector direction = -inv_hessian * grad;
    double slope = grad.dot(direction);
    if (!(slope < 0.0)) {
      inv_hessian.setIdentity();
      fresh_hessian = true;
      direction = -grad;
      slope = -grad.squaredNorm();
    }
    double step = 1.0;
    const double length = direction.norm();
    if (length * step > options.max_step) step = options.max_step / length;

    double trial_value = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int k = 0; k < 60; ++k) {
      trial = out.x + step * direction;
      trial_value = f(trial, trial_grad);
      ++out.evaluations;
      if (std::isfinite(trial_value) && trial_value <= out.value + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (fresh_hessian) {
        out.converged = stop(out.x, out.value, grad);
        return out;
      }
      inv_hessian.setIdentity();
      fresh_hessian = true;
      continue;
    }

    const Vector s = trial - out.x;
    const Vector y = trial_grad - grad;
    const double sy = s.dot(y);
    out.x = trial;
    out.value = trial_value;
    grad = trial_grad;

    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (fresh_hessian) {
        // Rescale the identity before the first update.
        inv_hessian *= sy / y.squaredNorm();
        fresh_hessian = false;
      }
      const double rho = 1.0 / sy;
      const Vector hy = inv_hessian * y;
      inv_hessian += rho * ((1.0 + rho * y.dot(hy)) * (s * s.transpose()) -
                            (hy * s.transpose() + s * hy.transpose()));
    }
  }
  out.converged = stop(out.x, out.value, grad);
  return out;
}

OptimResult nelder_mead(const Objective& f, const Vector& x0, const Vector& step,
                        const NelderMeadOptions& options) {
  const auto n = static_cast<std::size_t>(x0.size());
  const double dim = static_cast<double>(n);
  // Gao & Han (2012) adaptive coefficients.
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dim;
  const double contract = 0.75 - 1.0 / (2.0 * dim);
  const double shrink = 1.0 - 1.0 / dim;

  std::vector<Vector> simplex(n + 1, x0);
  std::vector<double> values(n + 1);
  OptimResult out;
  auto eval = [&](const Vector& x) {
    ++out.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  for (std::size_t j = 0; j < n; ++j) simplex[j + 1][static_cast<Eigen::Index>(j)] += step[static_cast<Eigen::Index>(j)];
  for (std::size_t j = 0; j <= n; ++j) values[j] = eval(simplex[j]);

  std::vector<std::size_t> order(n + 1);
  Vector centroid(x0.size());

  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<Vector> s2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
      s2[j] = simplex[order[j]];
      v2[j] = values[order[j]];
    }
    simplex.swap(s2);
    values.swap(v2);
  };

  auto converged = [&] {
    const double spread = values[n] - values[0];
    if (!(spread <= options.value_tolerance * (1.0 + std::abs(values[0])))) return false;
    const double scale = 1.0 + simplex[0].lpNorm<Eigen::Infinity>();
    for (std::size_t j = 1; j <= n; ++j) {
      if ((simplex[j] - simplex[0]).lpNorm<Eigen::Infinity>() > options.x_tolerance * scale) {
        return false;
      }
    }
    return true;
  };

  sort_simplex();
  for (out.iterations = 0; out.iterations < options.max_iter; ++out.iterations) {
    if (converged()) {
      out.converged = true;
      break;
    }
    centroid.setZero();
    for (std::size_t j = 0; j < n; ++j) centroid += simplex[j];
    centroid /= dim;

    const Vector xr = centroid + reflect * (centroid - simplex[n]);
    const double fr = eval(xr);
    if (fr < values[0]) {
      const Vector xe = centroid + expand * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        simplex[n] = xe;
        values[n] = fe;
      } else {
        simplex[n] = xr;
        values[n] = fr;
      }
    } else if (fr < values[n - 1]) {
      simplex[n] = xr;
      values[n] = fr;
    } else {
      const bool outside = fr < values[n];
      const Vector xc = outside ? Vector(centroid + contract * (xr - centroid))
                                : Vector(centroid + contract * (simplex[n] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : values[n])) {
        simplex[n] = xc;
        values[n] = fc;
      } else {
        for (std::size_t j = 1; j <= n; ++j) {
          simplex[j] = simplex[0] + shrink * (simplex[j] - simplex[0]);
          values[j] = eval(simplex[j]);
        }
      }
    }
    sort_simplex();
  }
  out.x = simplex[0];
  out.value = values[0];
  return out;
}

}  // namespace ldar::optim
