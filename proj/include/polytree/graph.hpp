#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace polytree {

// Nodes are dense labels 0..p-1.
using Node = std::size_t;

struct Edge {
  Node from = 0;
  Node to = 0;
  auto operator<=>(const Edge&) const = default;
};

// Unordered pair, stored with a < b.
struct UEdge {
  Node a = 0;
  Node b = 0;
  static UEdge of(Node x, Node y) { return x < y ? UEdge{x, y} : UEdge{y, x}; }
  auto operator<=>(const UEdge&) const = default;
};

// i -> collider <- j with left < right and left, right non-adjacent.
struct VStructure {
  Node left = 0;
  Node collider = 0;
  Node right = 0;
  auto operator<=>(const VStructure&) const = default;
};

/**
 * Directed acyclic graph. Edges are kept sorted; construction rejects
 * self-loops, duplicates, antiparallel pairs and directed cycles.
 */
class Dag {
 public:
  Dag() = default;
  Dag(std::size_t p, std::vector<Edge> edges);

  std::size_t size() const { return p_; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  const std::vector<Node>& parents(Node j) const { return parents_[j]; }
  const std::vector<Node>& children(Node j) const { return children_[j]; }
  std::size_t in_degree(Node j) const { return parents_[j].size(); }
  std::size_t max_in_degree() const;

  bool has_edge(Node from, Node to) const;
  bool adjacent(Node x, Node y) const { return has_edge(x, y) || has_edge(y, x); }

  // A fixed topological order (Kahn, smallest ready label first).
  const std::vector<Node>& topological_order() const { return topo_; }

  bool operator==(const Dag& other) const { return p_ == other.p_ && edges_ == other.edges_; }

 private:
  std::size_t p_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Node>> parents_;
  std::vector<std::vector<Node>> children_;
  std::vector<Node> topo_;
};

class Skeleton {
 public:
  Skeleton() = default;
  Skeleton(std::size_t p, std::vector<UEdge> edges);

  std::size_t size() const { return p_; }
  std::span<const UEdge> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Node>& neighbors(Node v) const { return adj_[v]; }
  bool adjacent(Node x, Node y) const;

  bool is_forest() const;
  // Connected and acyclic.
  bool is_tree() const;

  bool operator==(const Skeleton& other) const { return p_ == other.p_ && edges_ == other.edges_; }

 private:
  std::size_t p_ = 0;
  std::vector<UEdge> edges_;
  std::vector<std::vector<Node>> adj_;
};

/**
 * Mixed graph holding directed and undirected edges. Construction checks
 * that each node pair is used at most once and that the directed part is
 * acyclic. The polytree-specific invariants are checked separately by
 * validate_polytree_cpdag.
 */
class Cpdag {
 public:
  Cpdag() = default;
  Cpdag(std::size_t p, std::vector<Edge> directed, std::vector<UEdge> undirected);

  std::size_t size() const { return p_; }
  std::span<const Edge> directed_edges() const { return directed_; }
  std::span<const UEdge> undirected_edges() const { return undirected_; }
  std::size_t edge_count() const { return directed_.size() + undirected_.size(); }

  const std::vector<Node>& parents(Node j) const { return parents_[j]; }
  const std::vector<Node>& children(Node j) const { return children_[j]; }
  const std::vector<Node>& undirected_neighbors(Node j) const { return undirected_adj_[j]; }

  bool has_directed(Node from, Node to) const;
  bool has_undirected(Node x, Node y) const;
  bool adjacent(Node x, Node y) const;

  Skeleton skeleton() const;

  bool operator==(const Cpdag& other) const {
    return p_ == other.p_ && directed_ == other.directed_ && undirected_ == other.undirected_;
  }

 private:
  std::size_t p_ = 0;
  std::vector<Edge> directed_;
  std::vector<UEdge> undirected_;
  std::vector<std::vector<Node>> parents_;
  std::vector<std::vector<Node>> children_;
  std::vector<std::vector<Node>> undirected_adj_;
};

struct NodePartition {
  std::vector<Node> mixed;          // at least one incident undirected edge
  std::vector<Node> directed_only;  // every incident edge directed
};

bool is_polytree(const Dag& g);
Skeleton skeleton(const Dag& g);

// Sorted, canonical (left < right).
std::vector<VStructure> find_v_structures(const Dag& g);
std::vector<VStructure> find_v_structures(const Cpdag& c);

/**
 * CPDAG of a polytree: the skeleton with every v-structure oriented, then
 * Rule 1 propagated to a fixpoint. Throws NotAPolytree otherwise.
 */
Cpdag cpdag_of_polytree(const Dag& g);

/**
 * Rule 1 to a fixpoint: orient j - k as j -> k whenever some i -> j exists
 * with i not adjacent to k. Newly directed edges are fed through a work
 * queue. The overload taking a seed shuffles the initial queue and the
 * neighbour visitation order.
 */
Cpdag apply_rule1(const Cpdag& c);
Cpdag apply_rule1(const Cpdag& c, std::uint64_t visit_seed);

// Throws InvalidCpdag when c could not have come from a polytree.
void validate_polytree_cpdag(const Cpdag& c);

// Throws InvalidCpdag if a node with an undirected edge has an incoming
// directed edge.
NodePartition vm_vd_partition(const Cpdag& c);

// Product of the node counts of the undirected components. Throws
// LimitExceeded if the count does not fit in 64 bits.
std::uint64_t equivalence_class_size(const Cpdag& c);

// Every DAG in the class, one per choice of root in each undirected tree.
std::vector<Dag> enumerate_equivalent_dags(const Cpdag& c, std::uint64_t limit);

}  // namespace polytree
