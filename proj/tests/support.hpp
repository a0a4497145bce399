// Shared helpers for the test binaries: random model draws and brute-force oracles.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "polytree/errors.hpp"
#include "polytree/generator.hpp"
#include "polytree/graph.hpp"
#include "polytree/rng.hpp"
#include "polytree/sem.hpp"

namespace testing_support {

using namespace polytree;

inline std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// A feasible generator configuration with p in [p_lo, p_hi] and in-degree cap <= d_hi.
inline GenConfig random_config(Rng& rng, std::size_t p_lo, std::size_t p_hi, std::size_t d_hi) {
  GenConfig cfg;
  cfg.p = uniform_index(rng, p_lo, p_hi);
  cfg.d_in_max = uniform_index(rng, 1, std::min(d_hi, cfg.p - 2));
  cfg.omega_min = 0.1;
  const double rho_cap = std::min(0.45, std::sqrt((1.0 - cfg.omega_min) / static_cast<double>(cfg.d_in_max)));
  cfg.rho_min = uniform_real(rng, 0.1, 0.98 * rho_cap);
  cfg.rho_max = uniform_real(rng, std::max(cfg.rho_min, 0.5), 0.9);
  cfg.seed = rng();
  return cfg;
}

// Draws configurations until the generator accepts one.
inline LinearSem random_sem(Rng& rng, std::size_t p_lo, std::size_t p_hi, std::size_t d_hi,
                            GenConfig* used = nullptr) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const GenConfig cfg = random_config(rng, p_lo, p_hi, d_hi);
    try {
      LinearSem m = generate_polytree_sem(cfg);
      if (used) *used = cfg;
      return m;
    } catch (const InfeasibleConfig&) {
    } catch (const InfeasibleDegree&) {
    }
  }
  throw InternalError("no feasible random configuration found");
}

// Random correlation matrix from a Gram matrix of Gaussian vectors.
inline Eigen::MatrixXd random_correlation(Rng& rng, std::size_t p) {
  std::normal_distribution<double> normal;
  const auto ip = static_cast<Eigen::Index>(p);
  Eigen::MatrixXd a(ip, ip + 2);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = normal(rng);
  Eigen::MatrixXd s = a * a.transpose();
  const Eigen::VectorXd inv = s.diagonal().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd c = inv.asDiagonal() * s * inv.asDiagonal();
  c = 0.5 * (c + c.transpose());
  c.diagonal().setOnes();
  return c;
}

// Maximum of sum |c_ij| over every spanning tree, found by checking every
// (p-1)-subset of pairs for connectivity.
inline double brute_force_max_tree_weight(const Eigen::MatrixXd& c) {
  const std::size_t p = static_cast<std::size_t>(c.rows());
  if (p < 2) return 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) pairs.emplace_back(i, j);

  std::vector<bool> pick(pairs.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(p - 1), true);
  double best = -1.0;
  do {
    std::vector<std::size_t> label(p);
    for (std::size_t v = 0; v < p; ++v) label[v] = v;
    double weight = 0.0;
    bool acyclic = true;
    for (std::size_t k = 0; k < pairs.size() && acyclic; ++k) {
      if (!pick[k]) continue;
      const auto [a, b] = pairs[k];
      const std::size_t la = label[a];
      const std::size_t lb = label[b];
      if (la == lb) {
        acyclic = false;
        break;
      }
      for (std::size_t& l : label)
        if (l == lb) l = la;
      weight += std::abs(c(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
    }
    if (acyclic) best = std::max(best, weight);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

inline double tree_weight(const Skeleton& t, const Eigen::MatrixXd& c) {
  double w = 0.0;
  for (const UEdge& e : t.edges()) w += std::abs(c(static_cast<Eigen::Index>(e.a), static_cast<Eigen::Index>(e.b)));
  return w;
}

/**
 * CPDAG by enumeration: every orientation of the skeleton with the same
 * v-structures is a member of the class; an edge stays directed only when
 * all members agree on it. Exponential in the edge count.
 */
inline Cpdag brute_force_cpdag(const Dag& g) {
  const Skeleton sk = skeleton(g);
  const auto edges = sk.edges();
  const auto target = find_v_structures(g);
  const std::size_t m = edges.size();
  std::vector<int> agreed(m, -1);  // -1 unseen, 0 a->b, 1 b->a, 2 both
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<Edge> directed;
    for (std::size_t k = 0; k < m; ++k)
      directed.push_back(((mask >> k) & 1) ? Edge{edges[k].b, edges[k].a} : Edge{edges[k].a, edges[k].b});
    const Dag candidate(g.size(), directed);
    if (find_v_structures(candidate) != target) continue;
    for (std::size_t k = 0; k < m; ++k) {
      const int dir = static_cast<int>((mask >> k) & 1);
      if (agreed[k] == -1)
        agreed[k] = dir;
      else if (agreed[k] != dir)
        agreed[k] = 2;
    }
  }
  std::vector<Edge> directed;
  std::vector<UEdge> undirected;
  for (std::size_t k = 0; k < m; ++k) {
    if (agreed[k] == 0)
      directed.push_back({edges[k].a, edges[k].b});
    else if (agreed[k] == 1)
      directed.push_back({edges[k].b, edges[k].a});
    else
      undirected.push_back(edges[k]);
  }
  return Cpdag(g.size(), directed, undirected);
}

// Uniformly random orientation of a random tree.
inline Dag random_polytree(Rng& rng, std::size_t p) {
  std::vector<Edge> edges;
  for (Node v = 1; v < p; ++v) {
    const Node u = uniform_index(rng, 0, v - 1);
    if (rng() & 1)
      edges.push_back({u, v});
    else
      edges.push_back({v, u});
  }
  // Relabel so the structure is not tied to label order.
  std::vector<Node> perm(p);
  for (Node v = 0; v < p; ++v) perm[v] = v;
  std::shuffle(perm.begin(), perm.end(), rng);
  for (Edge& e : edges) e = {perm[e.from], perm[e.to]};
  return Dag(p, edges);
}

inline double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testing_support
