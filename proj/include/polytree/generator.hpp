#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "polytree/graph.hpp"
#include "polytree/sem.hpp"

namespace polytree {

struct GenConfig {
  std::size_t p = 100;
  std::size_t d_in_max = 10;  // forced maximum in-degree
  double rho_min = 0.3;
  double rho_max = 0.8;
  double omega_min = 0.1;
  std::uint64_t seed = 0;

  // Throws InvalidArgument / InfeasibleConfig.
  void validate() const;
};

// Decodes a Prüfer sequence of length p-2 with labels in [0, p).
Skeleton decode_prufer(std::size_t p, std::span<const Node> sequence);
std::vector<Node> encode_prufer(const Skeleton& tree);

// Uniform labelled tree on p >= 3 nodes.
Skeleton random_prufer_tree(std::size_t p, std::uint64_t seed);

struct HubTree {
  Skeleton tree;
  Node hub = 0;  // has degree >= the requested in-degree
};

// Random Prüfer tree in which a uniformly chosen hub occupies at least
// d_in_max - 1 sequence positions.
HubTree random_tree_with_hub(std::size_t p, std::size_t d_in_max, std::uint64_t seed);

/**
 * Orients a tree so that `hub` has in-degree exactly d_in_max (its remaining
 * edges point outward) and every other edge gets a uniformly random
 * direction. An edge whose random direction would push a node above
 * d_in_max is flipped, so the maximum in-degree is exactly d_in_max.
 * Throws InfeasibleDegree if the hub's degree is below d_in_max.
 */
Dag orient_with_forced_indegree(const Skeleton& tree, std::size_t d_in_max, Node hub, std::uint64_t seed);

// As above with the hub drawn uniformly among nodes of degree >= d_in_max.
Dag orient_with_forced_indegree(const Skeleton& tree, std::size_t d_in_max, std::uint64_t seed);

/**
 * Standardized coefficients for g: one edge at |beta| = rho_max, one at
 * rho_min, the rest drawn sequentially in random order from a Beta(1, d)
 * stick-breaking scheme that keeps every omega_jj >= omega_min, then random
 * signs. Uses cfg.seed. Throws InfeasibleConfig when no node can carry the
 * rho_max or rho_min edge.
 */
LinearSem sample_betas(const Dag& g, const GenConfig& cfg);

// Tree, orientation and coefficients from streams derived from cfg.seed.
LinearSem generate_polytree_sem(const GenConfig& cfg);

/**
 * p - 2 models sharing the edges i -> p-2 for i < p-2; member j adds
 * p-1 -> j. All edge correlations equal rho. Requires p >= 4 and
 * 0 < rho < 1/sqrt(p) (InvalidRho otherwise).
 */
std::vector<LinearSem> hardness_ensemble_skeleton(std::size_t p, double rho);

/**
 * Stars with hub p-1; each member points one pair {a, b} of leaves into the
 * hub and the hub into every other leaf. Pairs in lexicographic order.
 * Requires p >= 5 and 0 < rho < 1/2.
 */
std::vector<LinearSem> hardness_ensemble_cpdag(std::size_t p, double rho);

}  // namespace polytree
