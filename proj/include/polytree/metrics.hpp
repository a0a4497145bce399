#pragma once

#include <cstddef>

#include "polytree/graph.hpp"

namespace polytree {

// Edge-level comparison of an estimated CPDAG against the true one.
struct EdgeClassification {
  std::size_t correct = 0;          // same pair, same orientation status
  std::size_t wrong_direction = 0;  // same pair, different orientation status
  std::size_t missing = 0;          // only in the truth
  std::size_t extra = 0;            // only in the estimate
  std::size_t true_size = 0;
  std::size_t est_size = 0;

  bool operator==(const EdgeClassification&) const = default;
};

// A pair counts as correct when directed the same way in both graphs or
// undirected in both. Throws DimensionMismatch.
EdgeClassification classify_edges(const Cpdag& truth, const Cpdag& estimate);

// extra / est_size. Throws EmptyEstimate.
double fdr_skeleton(const EdgeClassification& ec);
// (correct + wrong_direction) / (missing + est_size). Throws EmptyUnion.
double jaccard_skeleton(const EdgeClassification& ec);
// (extra + wrong_direction) / est_size. Throws EmptyEstimate.
double fdr_cpdag(const EdgeClassification& ec);
// correct / (true_size + est_size - correct). Throws EmptyUnion.
double jaccard_cpdag(const EdgeClassification& ec);

}  // namespace polytree
