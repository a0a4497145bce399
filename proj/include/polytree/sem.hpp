#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "polytree/graph.hpp"
#include "polytree/matrix.hpp"

namespace polytree {

// Noise distributions, each scaled to variance omega_jj.
enum class NoiseFamily {
  gaussian,
  uniform,            // U[-sqrt(3 w), sqrt(3 w)]
  rademacher_scaled,  // +-sqrt(w)
};

std::string_view to_string(NoiseFamily f);
NoiseFamily parse_noise_family(std::string_view name);

struct WeightedEdge {
  Node from = 0;
  Node to = 0;
  double beta = 0.0;
};

/**
 * Linear SEM X = B^T X + eps over a DAG. Edge coefficients are stored in the
 * order of dag().edges(); omega holds the noise variances.
 */
class LinearSem {
 public:
  LinearSem() = default;
  LinearSem(Dag dag, std::vector<double> edge_betas, std::vector<double> omega);
  LinearSem(std::size_t p, const std::vector<WeightedEdge>& edges, std::vector<double> omega);

  std::size_t size() const { return dag_.size(); }
  const Dag& dag() const { return dag_; }
  std::span<const double> edge_betas() const { return betas_; }
  std::span<const double> omega() const { return omega_; }

  // Zero when i -> j is absent.
  double beta(Node i, Node j) const;
  Eigen::MatrixXd coefficient_matrix() const;

  // omega_jj + sum_{i in Pa(j)} beta_ij^2 == 1 for every j.
  bool is_standardized(double tol = 1e-12) const;

 private:
  Dag dag_;
  std::vector<double> betas_;
  std::vector<double> omega_;
};

struct RhoBounds {
  double rho_min = 0.0;
  double rho_max = 0.0;
};

// Throws SingularModel when an implied variance is at or below 1e-12.
LinearSem standardize(const LinearSem& m);

// (I - B)^{-T} Omega (I - B)^{-1}, by forward substitution in topological order.
Eigen::MatrixXd covariance_matrix(const LinearSem& m);

CorrelationMatrix population_correlations(const LinearSem& m);

/**
 * Correlation of i and j from the unique skeleton path: the product of edge
 * coefficients when that path is a simple trek, zero when it has a collider
 * or when no path exists. The model must be standardized and its skeleton a
 * forest.
 */
double correlation_by_treks(const LinearSem& m, Node i, Node j);

// Full matrix assembled from correlation_by_treks.
Eigen::MatrixXd trek_correlation_matrix(const LinearSem& m);

/**
 * n i.i.d. rows, each solving (I - B)^T x = eps. Noise terms are drawn row by
 * row in node-label order from a generator seeded with `seed`.
 */
DataMatrix sample(const LinearSem& m, std::size_t n, NoiseFamily family, std::uint64_t seed);

// Min / max |beta| over edges. Throws EmptyGraph when there are none.
RhoBounds rho_bounds(const LinearSem& m);

}  // namespace polytree
