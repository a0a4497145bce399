#pragma once

#include <Eigen/Dense>
#include <cstddef>

namespace polytree {

/// Observations, one sample per row and one variable per column.
class DataMatrix {
 public:
  DataMatrix() = default;
  explicit DataMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {}

  std::size_t samples() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t variables() const { return static_cast<std::size_t>(values_.cols()); }
  const Eigen::MatrixXd& values() const { return values_; }

  bool operator==(const DataMatrix& other) const { return values_ == other.values_; }

 private:
  Eigen::MatrixXd values_;
};

/**
 * Symmetric matrix with unit diagonal and entries in [-1, 1]. Construction
 * checks those properties; positive semidefiniteness is only checked on
 * request since sample correlations satisfy it by construction.
 */
class CorrelationMatrix {
 public:
  CorrelationMatrix() = default;
  explicit CorrelationMatrix(Eigen::MatrixXd values, double tol = 1e-9);

  std::size_t size() const { return static_cast<std::size_t>(values_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& values() const { return values_; }

  bool is_positive_semidefinite(double tol = 1e-9) const;

 private:
  Eigen::MatrixXd values_;
};

/// Inverse correlation matrix.
class PrecisionMatrix {
 public:
  PrecisionMatrix() = default;
  explicit PrecisionMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {}

  std::size_t size() const { return static_cast<std::size_t>(values_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  Eigen::MatrixXd values_;
};

}  // namespace polytree
