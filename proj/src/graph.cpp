#include "polytree/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <string>

#include "disjoint_sets.hpp"
#include "polytree/errors.hpp"
#include "polytree/rng.hpp"

namespace polytree {

namespace {

using detail::DisjointSets;

std::string edge_text(Node a, const char* arrow, Node b) {
  return std::to_string(a) + arrow + std::to_string(b);
}

void check_node(std::size_t p, Node v) {
  if (v >= p) throw InvalidGraph("node " + std::to_string(v) + " out of range for p=" + std::to_string(p));
}

bool sorted_contains(const std::vector<Node>& v, Node x) { return std::binary_search(v.begin(), v.end(), x); }

// Kahn's algorithm over directed edges; returns an empty optional on a cycle.
std::optional<std::vector<Node>> topological_sort(std::size_t p, const std::vector<std::vector<Node>>& children,
                                                  const std::vector<std::vector<Node>>& parents) {
  std::vector<std::size_t> pending(p);
  std::priority_queue<Node, std::vector<Node>, std::greater<>> ready;
  for (Node v = 0; v < p; ++v) {
    pending[v] = parents[v].size();
    if (pending[v] == 0) ready.push(v);
  }
  std::vector<Node> order;
  order.reserve(p);
  while (!ready.empty()) {
    Node v = ready.top();
    ready.pop();
    order.push_back(v);
    for (Node c : children[v])
      if (--pending[c] == 0) ready.push(c);
  }
  if (order.size() != p) return std::nullopt;
  return order;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dag

Dag::Dag(std::size_t p, std::vector<Edge> edges) : p_(p), edges_(std::move(edges)), parents_(p), children_(p) {
  std::set<UEdge> pairs;
  for (const Edge& e : edges_) {
    check_node(p_, e.from);
    check_node(p_, e.to);
    if (e.from == e.to) throw InvalidGraph("self-loop at node " + std::to_string(e.from));
    if (!pairs.insert(UEdge::of(e.from, e.to)).second)
      throw InvalidGraph("duplicate or antiparallel edge " + edge_text(e.from, " -> ", e.to));
  }
  std::sort(edges_.begin(), edges_.end());
  for (const Edge& e : edges_) {
    parents_[e.to].push_back(e.from);
    children_[e.from].push_back(e.to);
  }
  for (auto& v : parents_) std::sort(v.begin(), v.end());
  auto order = topological_sort(p_, children_, parents_);
  if (!order) throw InvalidGraph("directed cycle");
  topo_ = std::move(*order);
}

std::size_t Dag::max_in_degree() const {
  std::size_t d = 0;
  for (const auto& pa : parents_) d = std::max(d, pa.size());
  return d;
}

bool Dag::has_edge(Node from, Node to) const {
  return from < p_ && to < p_ && sorted_contains(children_[from], to);
}

// ---------------------------------------------------------------------------
// Skeleton

Skeleton::Skeleton(std::size_t p, std::vector<UEdge> edges) : p_(p), adj_(p) {
  edges_.reserve(edges.size());
  for (const UEdge& e : edges) {
    check_node(p_, e.a);
    check_node(p_, e.b);
    if (e.a == e.b) throw InvalidGraph("self-loop at node " + std::to_string(e.a));
    edges_.push_back(UEdge::of(e.a, e.b));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) throw InvalidGraph("duplicate edge");
  for (const UEdge& e : edges_) {
    adj_[e.a].push_back(e.b);
    adj_[e.b].push_back(e.a);
  }
  for (auto& v : adj_) std::sort(v.begin(), v.end());
}

bool Skeleton::adjacent(Node x, Node y) const { return x < p_ && y < p_ && sorted_contains(adj_[x], y); }

bool Skeleton::is_forest() const {
  DisjointSets sets(p_);
  for (const UEdge& e : edges_)
    if (!sets.unite(e.a, e.b)) return false;
  return true;
}

bool Skeleton::is_tree() const { return p_ > 0 && edges_.size() == p_ - 1 && is_forest(); }

// ---------------------------------------------------------------------------
// Cpdag

Cpdag::Cpdag(std::size_t p, std::vector<Edge> directed, std::vector<UEdge> undirected)
    : p_(p), directed_(std::move(directed)), parents_(p), children_(p), undirected_adj_(p) {
  std::set<UEdge> pairs;
  for (const Edge& e : directed_) {
    check_node(p_, e.from);
    check_node(p_, e.to);
    if (e.from == e.to) throw InvalidGraph("self-loop at node " + std::to_string(e.from));
    if (!pairs.insert(UEdge::of(e.from, e.to)).second)
      throw InvalidGraph("node pair used twice: " + edge_text(e.from, " -> ", e.to));
  }
  undirected_.reserve(undirected.size());
  for (const UEdge& u : undirected) {
    check_node(p_, u.a);
    check_node(p_, u.b);
    if (u.a == u.b) throw InvalidGraph("self-loop at node " + std::to_string(u.a));
    UEdge e = UEdge::of(u.a, u.b);
    if (!pairs.insert(e).second) throw InvalidGraph("node pair used twice: " + edge_text(e.a, " -- ", e.b));
    undirected_.push_back(e);
  }
  std::sort(directed_.begin(), directed_.end());
  std::sort(undirected_.begin(), undirected_.end());
  for (const Edge& e : directed_) {
    parents_[e.to].push_back(e.from);
    children_[e.from].push_back(e.to);
  }
  for (const UEdge& e : undirected_) {
    undirected_adj_[e.a].push_back(e.b);
    undirected_adj_[e.b].push_back(e.a);
  }
  for (auto& v : parents_) std::sort(v.begin(), v.end());
  for (auto& v : undirected_adj_) std::sort(v.begin(), v.end());
  if (!topological_sort(p_, children_, parents_)) throw InvalidGraph("directed cycle");
}

bool Cpdag::has_directed(Node from, Node to) const {
  return from < p_ && to < p_ && sorted_contains(children_[from], to);
}

bool Cpdag::has_undirected(Node x, Node y) const {
  return x < p_ && y < p_ && sorted_contains(undirected_adj_[x], y);
}

bool Cpdag::adjacent(Node x, Node y) const {
  return has_undirected(x, y) || has_directed(x, y) || has_directed(y, x);
}

Skeleton Cpdag::skeleton() const {
  std::vector<UEdge> all(undirected_.begin(), undirected_.end());
  for (const Edge& e : directed_) all.push_back(UEdge::of(e.from, e.to));
  return Skeleton(p_, std::move(all));
}

// ---------------------------------------------------------------------------
// Operations

Skeleton skeleton(const Dag& g) {
  std::vector<UEdge> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges()) out.push_back(UEdge::of(e.from, e.to));
  return Skeleton(g.size(), std::move(out));
}

bool is_polytree(const Dag& g) { return skeleton(g).is_tree(); }

namespace {

template <typename Graph>
std::vector<VStructure> colliders_of(const Graph& g) {
  std::vector<VStructure> out;
  for (Node k = 0; k < g.size(); ++k) {
    const auto& pa = g.parents(k);
    for (std::size_t x = 0; x < pa.size(); ++x)
      for (std::size_t y = x + 1; y < pa.size(); ++y)
        if (!g.adjacent(pa[x], pa[y])) out.push_back({pa[x], k, pa[y]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<VStructure> find_v_structures(const Dag& g) { return colliders_of(g); }
std::vector<VStructure> find_v_structures(const Cpdag& c) { return colliders_of(c); }

namespace {

Cpdag propagate_rule1(const Cpdag& c, Rng* shuffle) {
  const std::size_t p = c.size();
  std::vector<std::set<Node>> undirected(p);
  for (const UEdge& e : c.undirected_edges()) {
    undirected[e.a].insert(e.b);
    undirected[e.b].insert(e.a);
  }
  std::vector<Edge> directed(c.directed_edges().begin(), c.directed_edges().end());
  if (shuffle) std::shuffle(directed.begin(), directed.end(), *shuffle);

  std::deque<Edge> queue(directed.begin(), directed.end());
  while (!queue.empty()) {
    const Edge e = queue.front();
    queue.pop_front();
    std::vector<Node> targets(undirected[e.to].begin(), undirected[e.to].end());
    if (shuffle) std::shuffle(targets.begin(), targets.end(), *shuffle);
    for (Node k : targets) {
      // The undirected set may have shrunk while iterating the copy.
      if (k == e.from || !undirected[e.to].count(k)) continue;
      if (c.adjacent(e.from, k)) continue;
      undirected[e.to].erase(k);
      undirected[k].erase(e.to);
      Edge oriented{e.to, k};
      directed.push_back(oriented);
      queue.push_back(oriented);
    }
  }

  std::vector<UEdge> remaining;
  for (Node v = 0; v < p; ++v)
    for (Node k : undirected[v])
      if (v < k) remaining.push_back({v, k});
  return Cpdag(p, std::move(directed), std::move(remaining));
}

}  // namespace

Cpdag apply_rule1(const Cpdag& c) { return propagate_rule1(c, nullptr); }

Cpdag apply_rule1(const Cpdag& c, std::uint64_t visit_seed) {
  Rng rng = make_rng(visit_seed);
  return propagate_rule1(c, &rng);
}

Cpdag cpdag_of_polytree(const Dag& g) {
  if (!is_polytree(g)) throw NotAPolytree("graph skeleton is not a tree");
  std::set<Edge> compelled;
  for (const VStructure& v : find_v_structures(g)) {
    compelled.insert({v.left, v.collider});
    compelled.insert({v.right, v.collider});
  }
  std::vector<UEdge> undirected;
  for (const Edge& e : g.edges())
    if (!compelled.count(e)) undirected.push_back(UEdge::of(e.from, e.to));
  Cpdag partial(g.size(), {compelled.begin(), compelled.end()}, std::move(undirected));
  return apply_rule1(partial);
}

void validate_polytree_cpdag(const Cpdag& c) {
  if (!c.skeleton().is_forest()) throw InvalidCpdag("skeleton contains a cycle");
  for (Node v = 0; v < c.size(); ++v) {
    if (!c.undirected_neighbors(v).empty() && !c.parents(v).empty())
      throw InvalidCpdag("node " + std::to_string(v) +
                         " has an undirected edge and an incoming directed edge (Rule 1 not closed)");
  }
}

NodePartition vm_vd_partition(const Cpdag& c) {
  validate_polytree_cpdag(c);
  NodePartition out;
  for (Node v = 0; v < c.size(); ++v) {
    if (c.undirected_neighbors(v).empty())
      out.directed_only.push_back(v);
    else
      out.mixed.push_back(v);
  }
  return out;
}

namespace {

// Node lists of the undirected components with at least two nodes.
std::vector<std::vector<Node>> undirected_components(const Cpdag& c) {
  std::vector<bool> seen(c.size(), false);
  std::vector<std::vector<Node>> out;
  for (Node start = 0; start < c.size(); ++start) {
    if (seen[start] || c.undirected_neighbors(start).empty()) continue;
    std::vector<Node> comp;
    std::vector<Node> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      Node v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Node w : c.undirected_neighbors(v)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

std::uint64_t equivalence_class_size(const Cpdag& c) {
  validate_polytree_cpdag(c);
  std::uint64_t count = 1;
  for (const auto& comp : undirected_components(c)) {
    if (count > std::numeric_limits<std::uint64_t>::max() / comp.size())
      throw LimitExceeded("equivalence class size exceeds 64 bits");
    count *= comp.size();
  }
  return count;
}

std::vector<Dag> enumerate_equivalent_dags(const Cpdag& c, std::uint64_t limit) {
  const std::uint64_t total = equivalence_class_size(c);
  if (total > limit)
    throw LimitExceeded("equivalence class has " + std::to_string(total) + " members, limit " + std::to_string(limit));

  const auto comps = undirected_components(c);
  std::vector<std::size_t> root_index(comps.size(), 0);
  std::vector<Dag> out;
  out.reserve(static_cast<std::size_t>(total));

  for (std::uint64_t member = 0; member < total; ++member) {
    std::vector<Edge> edges(c.directed_edges().begin(), c.directed_edges().end());
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      // Orient the component away from its chosen root.
      Node root = comps[ci][root_index[ci]];
      std::vector<std::pair<Node, Node>> stack{{root, root}};
      while (!stack.empty()) {
        auto [v, from] = stack.back();
        stack.pop_back();
        for (Node w : c.undirected_neighbors(v)) {
          if (w == from) continue;
          edges.push_back({v, w});
          stack.push_back({w, v});
        }
      }
    }
    out.emplace_back(c.size(), std::move(edges));

    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      if (++root_index[ci] < comps[ci].size()) break;
      root_index[ci] = 0;
    }
  }
  return out;
}

}  // namespace polytree
