#include "polytree/generator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <string>

#include "polytree/errors.hpp"
#include "polytree/rng.hpp"

namespace polytree {

namespace {

// Slack for feasibility comparisons that are exact equalities, e.g.
// d_in_max * rho_min^2 == 1 - omega_min.
constexpr double kFeasibilityTol = 1e-12;

template <typename T>
const T& pick(const std::vector<T>& items, Rng& rng) {
  std::uniform_int_distribution<std::size_t> index(0, items.size() - 1);
  return items[index(rng)];
}

}  // namespace

void GenConfig::validate() const {
  if (p < 3) throw InvalidArgument("p must be at least 3");
  if (d_in_max < 1 || d_in_max > p - 1) throw InvalidArgument("d_in_max must lie in [1, p-1]");
  if (!(rho_min > 0.0 && rho_min <= rho_max && rho_max < 1.0))
    throw InvalidArgument("need 0 < rho_min <= rho_max < 1");
  if (!(omega_min > 0.0)) throw InvalidArgument("omega_min must be positive");
  if (rho_max * rho_max + omega_min > 1.0 + kFeasibilityTol)
    throw InfeasibleConfig("rho_max^2 + omega_min exceeds 1");
  if (static_cast<double>(d_in_max) * rho_min * rho_min > 1.0 - omega_min + kFeasibilityTol)
    throw InfeasibleConfig("d_in_max * rho_min^2 exceeds 1 - omega_min");
}

// ---------------------------------------------------------------------------
// Prüfer trees

Skeleton decode_prufer(std::size_t p, std::span<const Node> sequence) {
  if (p < 2) throw InvalidArgument("Prüfer decoding needs p >= 2");
  if (sequence.size() != p - 2) throw InvalidArgument("Prüfer sequence must have length p-2");
  std::vector<std::size_t> degree(p, 1);
  for (Node v : sequence) {
    if (v >= p) throw InvalidArgument("Prüfer label out of range");
    ++degree[v];
  }
  std::priority_queue<Node, std::vector<Node>, std::greater<>> leaves;
  for (Node v = 0; v < p; ++v)
    if (degree[v] == 1) leaves.push(v);

  std::vector<UEdge> edges;
  edges.reserve(p - 1);
  for (Node v : sequence) {
    Node leaf = leaves.top();
    leaves.pop();
    edges.push_back(UEdge::of(leaf, v));
    if (--degree[v] == 1) leaves.push(v);
  }
  Node u = leaves.top();
  leaves.pop();
  Node w = leaves.top();
  edges.push_back(UEdge::of(u, w));
  return Skeleton(p, std::move(edges));
}

std::vector<Node> encode_prufer(const Skeleton& tree) {
  if (!tree.is_tree() || tree.size() < 2) throw InvalidArgument("Prüfer encoding needs a tree on >= 2 nodes");
  const std::size_t p = tree.size();
  std::vector<std::size_t> degree(p);
  std::vector<bool> removed(p, false);
  std::priority_queue<Node, std::vector<Node>, std::greater<>> leaves;
  for (Node v = 0; v < p; ++v) {
    degree[v] = tree.neighbors(v).size();
    if (degree[v] == 1) leaves.push(v);
  }
  std::vector<Node> sequence;
  sequence.reserve(p - 2);
  while (sequence.size() < p - 2) {
    Node leaf = leaves.top();
    leaves.pop();
    removed[leaf] = true;
    for (Node w : tree.neighbors(leaf)) {
      if (removed[w]) continue;
      sequence.push_back(w);
      if (--degree[w] == 1) leaves.push(w);
    }
  }
  return sequence;
}

Skeleton random_prufer_tree(std::size_t p, std::uint64_t seed) {
  if (p < 3) throw InvalidArgument("random trees need p >= 3");
  Rng rng = make_rng(seed);
  std::uniform_int_distribution<Node> label(0, p - 1);
  std::vector<Node> sequence(p - 2);
  for (Node& v : sequence) v = label(rng);
  return decode_prufer(p, sequence);
}

HubTree random_tree_with_hub(std::size_t p, std::size_t d_in_max, std::uint64_t seed) {
  if (p < 3) throw InvalidArgument("random trees need p >= 3");
  if (d_in_max < 1 || d_in_max > p - 1) throw InfeasibleDegree("d_in_max must lie in [1, p-1]");
  Rng rng = make_rng(seed);
  std::uniform_int_distribution<Node> label(0, p - 1);
  const Node hub = label(rng);

  std::vector<Node> sequence(p - 2);
  for (Node& v : sequence) v = label(rng);
  std::vector<std::size_t> positions(p - 2);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  std::shuffle(positions.begin(), positions.end(), rng);
  for (std::size_t k = 0; k + 1 < d_in_max; ++k) sequence[positions[k]] = hub;
  return {decode_prufer(p, sequence), hub};
}

// ---------------------------------------------------------------------------
// Orientation

Dag orient_with_forced_indegree(const Skeleton& tree, std::size_t d_in_max, Node hub, std::uint64_t seed) {
  if (!tree.is_tree()) throw InvalidArgument("orientation needs a tree");
  if (d_in_max < 1) throw InfeasibleDegree("d_in_max must be at least 1");
  if (hub >= tree.size()) throw InvalidArgument("hub out of range");
  if (tree.neighbors(hub).size() < d_in_max)
    throw InfeasibleDegree("hub degree " + std::to_string(tree.neighbors(hub).size()) + " is below d_in_max " +
                           std::to_string(d_in_max));

  Rng rng = make_rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<Edge> edges;
  edges.reserve(tree.edge_count());
  std::vector<std::size_t> in_degree(tree.size(), 0);

  std::vector<Node> spokes = tree.neighbors(hub);
  std::shuffle(spokes.begin(), spokes.end(), rng);
  for (std::size_t k = 0; k < spokes.size(); ++k) {
    if (k < d_in_max) {
      edges.push_back({spokes[k], hub});
      ++in_degree[hub];
    } else {
      edges.push_back({hub, spokes[k]});
      ++in_degree[spokes[k]];
    }
  }

  // Breadth-first from the hub; the edge towards the hub is already set
  // when a node is reached, so its cap can be enforced on the child edges.
  std::vector<Node> tree_parent(tree.size(), tree.size());
  std::queue<Node> frontier;
  for (Node s : tree.neighbors(hub)) {
    tree_parent[s] = hub;
    frontier.push(s);
  }
  while (!frontier.empty()) {
    const Node v = frontier.front();
    frontier.pop();
    for (Node w : tree.neighbors(v)) {
      if (w == tree_parent[v]) continue;
      tree_parent[w] = v;
      bool into_v = coin(rng);
      if (into_v && in_degree[v] >= d_in_max) into_v = false;
      if (into_v) {
        edges.push_back({w, v});
        ++in_degree[v];
      } else {
        edges.push_back({v, w});
        ++in_degree[w];
      }
      frontier.push(w);
    }
  }
  return Dag(tree.size(), std::move(edges));
}

Dag orient_with_forced_indegree(const Skeleton& tree, std::size_t d_in_max, std::uint64_t seed) {
  std::vector<Node> eligible;
  for (Node v = 0; v < tree.size(); ++v)
    if (tree.neighbors(v).size() >= d_in_max) eligible.push_back(v);
  if (eligible.empty()) throw InfeasibleDegree("no node has degree >= " + std::to_string(d_in_max));
  Rng rng = make_rng(derive_seed(seed, {0}));
  const Node hub = pick(eligible, rng);
  return orient_with_forced_indegree(tree, d_in_max, hub, derive_seed(seed, {1}));
}

// ---------------------------------------------------------------------------
// Coefficients

LinearSem sample_betas(const Dag& g, const GenConfig& cfg) {
  cfg.validate();
  if (!is_polytree(g)) throw NotAPolytree("coefficients are sampled for polytrees only");
  if (g.max_in_degree() > cfg.d_in_max)
    throw InfeasibleConfig("graph in-degree " + std::to_string(g.max_in_degree()) + " exceeds d_in_max");

  const std::size_t p = g.size();
  const auto edges = g.edges();
  const double rmin2 = cfg.rho_min * cfg.rho_min;
  const double rmax2 = cfg.rho_max * cfg.rho_max;
  const double budget = 1.0 - cfg.omega_min;
  Rng rng = make_rng(cfg.seed);

  std::vector<double> magnitude(edges.size(), 0.0);
  std::vector<bool> chosen(edges.size(), false);
  std::vector<std::size_t> unchosen_in(p);
  std::vector<double> chosen_sq(p, 0.0);
  for (Node j = 0; j < p; ++j) unchosen_in[j] = g.in_degree(j);

  auto edge_index = [&](Node from, Node to) {
    return static_cast<std::size_t>(std::lower_bound(edges.begin(), edges.end(), Edge{from, to}) - edges.begin());
  };
  auto fix = [&](Node target, double value) {
    const Node parent = pick(g.parents(target), rng);
    const std::size_t k = edge_index(parent, target);
    magnitude[k] = value;
    chosen[k] = true;
    --unchosen_in[target];
    chosen_sq[target] += value * value;
  };

  std::vector<Node> max_candidates;
  for (Node j = 0; j < p; ++j) {
    const auto d = static_cast<double>(g.in_degree(j));
    if (d > 0 && rmin2 * (d - 1.0) + rmax2 <= budget + kFeasibilityTol) max_candidates.push_back(j);
  }
  if (max_candidates.empty()) throw InfeasibleConfig("no node can carry an edge at rho_max");
  const Node max_node = pick(max_candidates, rng);
  fix(max_node, cfg.rho_max);

  // With rho_min == rho_max the first fixed edge already attains both bounds.
  if (cfg.rho_min < cfg.rho_max) {
    std::vector<Node> min_candidates;
    for (Node j = 0; j < p; ++j)
      if (j != max_node && g.in_degree(j) > 0) min_candidates.push_back(j);
    if (min_candidates.empty()) throw InfeasibleConfig("no second node with incoming edges for rho_min");
    fix(pick(min_candidates, rng), cfg.rho_min);
  }

  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (!chosen[k]) order.push_back(k);
  std::shuffle(order.begin(), order.end(), rng);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k : order) {
    const Node j = edges[k].to;
    const auto remaining = static_cast<double>(unchosen_in[j]);
    // Slack left once every unchosen edge into j is at rho_min^2.
    const double slack = std::max(0.0, budget - remaining * rmin2 - chosen_sq[j]);
    const double x = 1.0 - std::pow(unit(rng), 1.0 / remaining);
    const double sq = std::min(rmax2, rmin2 + slack * x);
    magnitude[k] = std::clamp(std::sqrt(sq), cfg.rho_min, cfg.rho_max);
    chosen[k] = true;
    --unchosen_in[j];
    chosen_sq[j] += magnitude[k] * magnitude[k];
  }

  std::bernoulli_distribution coin(0.5);
  std::vector<double> betas(edges.size());
  std::vector<double> omega(p, 1.0);
  for (std::size_t k = 0; k < edges.size(); ++k) {
    betas[k] = coin(rng) ? magnitude[k] : -magnitude[k];
    omega[edges[k].to] -= magnitude[k] * magnitude[k];
  }
  return LinearSem(g, std::move(betas), std::move(omega));
}

LinearSem generate_polytree_sem(const GenConfig& cfg) {
  cfg.validate();
  const HubTree t = random_tree_with_hub(cfg.p, cfg.d_in_max, derive_seed(cfg.seed, {1}));
  const Dag g = orient_with_forced_indegree(t.tree, cfg.d_in_max, t.hub, derive_seed(cfg.seed, {2}));
  GenConfig beta_cfg = cfg;
  beta_cfg.seed = derive_seed(cfg.seed, {3});
  return sample_betas(g, beta_cfg);
}

// ---------------------------------------------------------------------------
// Lower-bound ensembles

std::vector<LinearSem> hardness_ensemble_skeleton(std::size_t p, double rho) {
  if (p < 4) throw InvalidArgument("skeleton ensemble needs p >= 4");
  if (!(rho > 0.0 && rho < 1.0 / std::sqrt(static_cast<double>(p))))
    throw InvalidRho("skeleton ensemble needs 0 < rho < 1/sqrt(p)");
  const Node collector = p - 2;
  const Node source = p - 1;
  std::vector<LinearSem> out;
  out.reserve(p - 2);
  for (Node member = 0; member + 2 < p; ++member) {
    std::vector<WeightedEdge> edges;
    for (Node i = 0; i + 2 < p; ++i) edges.push_back({i, collector, rho});
    edges.push_back({source, member, rho});
    std::vector<double> omega(p, 1.0);
    omega[collector] = 1.0 - static_cast<double>(p - 2) * rho * rho;
    omega[member] = 1.0 - rho * rho;
    out.emplace_back(p, edges, std::move(omega));
  }
  return out;
}

std::vector<LinearSem> hardness_ensemble_cpdag(std::size_t p, double rho) {
  if (p < 5) throw InvalidArgument("star ensemble needs p >= 5");
  if (!(rho > 0.0 && rho < 0.5)) throw InvalidRho("star ensemble needs 0 < rho < 1/2");
  const Node hub = p - 1;
  std::vector<LinearSem> out;
  out.reserve((p - 1) * (p - 2) / 2);
  for (Node a = 0; a + 1 < hub; ++a) {
    for (Node b = a + 1; b < hub; ++b) {
      std::vector<WeightedEdge> edges;
      std::vector<double> omega(p, 1.0);
      for (Node leaf = 0; leaf < hub; ++leaf) {
        if (leaf == a || leaf == b) {
          edges.push_back({leaf, hub, rho});
        } else {
          edges.push_back({hub, leaf, rho});
          omega[leaf] = 1.0 - rho * rho;
        }
      }
      omega[hub] = 1.0 - 2.0 * rho * rho;
      out.emplace_back(p, edges, std::move(omega));
    }
  }
  return out;
}

}  // namespace polytree
