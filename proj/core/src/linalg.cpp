#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ldar/error.hpp"

namespace ldar::detail {

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> decompose(const Eigen::MatrixXd& a) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(symmetrized(a));
}

double rcond_of(const Eigen::VectorXd& eigenvalues) {
  const double hi = eigenvalues.maxCoeff();
  const double lo = eigenvalues.minCoeff();
  if (!(hi > 0.0) || !(lo > 0.0) || !std::isfinite(hi)) return 0.0;
  return lo / hi;
}

}  // namespace

double reciprocal_condition(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  return rcond_of(decompose(a).eigenvalues());
}

Eigen::MatrixXd symmetric_inverse(const Eigen::MatrixXd& a, const std::string& what,
                                  double min_rcond) {
  if (a.size() == 0 || !a.allFinite()) {
    throw SingularityError(what + " is empty or has non-finite entries", 0.0);
  }
  const auto solver = decompose(a);
  const double rcond = rcond_of(solver.eigenvalues());
  if (rcond < min_rcond) {
    std::ostringstream os;
    os << what << " is numerically singular (reciprocal condition " << rcond << ")";
    throw SingularityError(os.str(), rcond);
  }
  const Eigen::VectorXd inv_values = solver.eigenvalues().cwiseInverse();
  return solver.eigenvectors() * inv_values.asDiagonal() * solver.eigenvectors().transpose();
}

}  // namespace ldar::detail
