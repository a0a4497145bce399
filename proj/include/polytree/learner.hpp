#pragma once

#include <cstddef>
#include <optional>

#include "polytree/graph.hpp"
#include "polytree/matrix.hpp"

namespace polytree {

struct LearnConfig {
  double alpha = 0.1;                     // level of the zero-correlation test
  std::optional<double> rho_crit_override;  // explicit threshold, bypasses alpha

  void validate() const;
};

// Pearson correlations of the columns. Throws ConstantColumn.
CorrelationMatrix sample_correlations(const DataMatrix& data);

/**
 * Maximum-weight spanning tree on |rho_ij| by Kruskal. Ties are broken by
 * (min(i,j), max(i,j)) ascending.
 */
Skeleton chow_liu_skeleton(const CorrelationMatrix& corr);

/// sqrt(1 - 1 / (1 + t^2 / (n - 2))) with t the 1 - alpha/2 quantile of
/// Student-t on n - 2 degrees of freedom.
double rho_crit(std::size_t n, double alpha);

struct VStructureDetection {
  Cpdag graph;            // v-structure edges directed, the rest undirected
  std::size_t conflicts;  // edges demanded in both directions, left undirected
};

/**
 * Orients i -> k <- j for every path i - k - j of the tree with
 * |rho_ij| < rho_crit. An edge demanded in both directions by different
 * triples is left undirected and counted.
 */
VStructureDetection detect_v_structures_lenient(const Skeleton& tree, const CorrelationMatrix& corr,
                                                double rho_crit);

// As above, but throws OrientationConflict on any conflict.
Cpdag detect_v_structures(const Skeleton& tree, const CorrelationMatrix& corr, double rho_crit);

struct LearnResult {
  Skeleton skeleton;
  Cpdag cpdag;
  double rho_crit = 0.0;
  std::size_t conflicts = 0;
};

// Chow-Liu tree, v-structure thresholding and Rule 1 on given correlations.
LearnResult learn_from_correlations(const CorrelationMatrix& corr, double rho_crit);

LearnResult learn(const DataMatrix& data, const LearnConfig& cfg);
Cpdag learn_cpdag(const DataMatrix& data, const LearnConfig& cfg);

}  // namespace polytree
