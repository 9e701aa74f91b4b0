#pragma once

#include <string>

#include <Eigen/Dense>

namespace ldar::detail {

/// lambda_min / lambda_max of a symmetric matrix; 0 when not positive definite.
double reciprocal_condition(const Eigen::MatrixXd& a);

/// Inverse of a symmetric positive definite matrix through its eigen
/// decomposition. Throws SingularityError naming `what` when the reciprocal
/// condition number is below min_rcond.
Eigen::MatrixXd symmetric_inverse(const Eigen::MatrixXd& a, const std::string& what,
                                  double min_rcond = 1e-12);

inline Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& a) {
  return 0.5 * (a + a.transpose());
}

}  // namespace ldar::detail
