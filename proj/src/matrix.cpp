#include "polytree/matrix.hpp"

#include <cmath>
#include <string>

#include "polytree/errors.hpp"

namespace polytree {

CorrelationMatrix::CorrelationMatrix(Eigen::MatrixXd values, double tol) : values_(std::move(values)) {
  if (values_.rows() != values_.cols()) throw DimensionMismatch("correlation matrix must be square");
  const Eigen::Index p = values_.rows();
  for (Eigen::Index i = 0; i < p; ++i) {
    if (std::abs(values_(i, i) - 1.0) > tol)
      throw InvalidArgument("correlation matrix diagonal entry " + std::to_string(i) + " is not 1");
    for (Eigen::Index j = 0; j < p; ++j) {
      const double v = values_(i, j);
      if (!std::isfinite(v) || std::abs(v) > 1.0 + tol)
        throw InvalidArgument("correlation entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") outside [-1, 1]");
      if (std::abs(v - values_(j, i)) > tol) throw InvalidArgument("correlation matrix is not symmetric");
    }
  }
}

bool CorrelationMatrix::is_positive_semidefinite(double tol) const {
  if (values_.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(values_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

}  // namespace polytree
