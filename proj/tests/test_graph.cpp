#include <gtest/gtest.h>

#include <set>

#include "polytree/errors.hpp"
#include "polytree/graph.hpp"
#include "support.hpp"

using namespace polytree;
using testing_support::brute_force_cpdag;
using testing_support::random_polytree;

namespace {

Dag chain3() { return Dag(3, {{0, 1}, {1, 2}}); }
Dag collider3() { return Dag(3, {{0, 2}, {1, 2}}); }

}  // namespace

TEST(Dag, RejectsMalformedEdgeSets) {
  EXPECT_THROW(Dag(3, {{0, 0}}), InvalidGraph);
  EXPECT_THROW(Dag(3, {{0, 3}}), InvalidGraph);
  EXPECT_THROW(Dag(3, {{0, 1}, {0, 1}}), InvalidGraph);
  EXPECT_THROW(Dag(3, {{0, 1}, {1, 0}}), InvalidGraph);
  EXPECT_THROW(Dag(3, {{0, 1}, {1, 2}, {2, 0}}), InvalidGraph);
}

TEST(Dag, TopologicalOrderRespectsEdges) {
  Rng rng(make_rng(1));
  for (int t = 0; t < 50; ++t) {
    const Dag g = random_polytree(rng, 30);
    std::vector<std::size_t> pos(g.size());
    const auto& order = g.topological_order();
    ASSERT_EQ(order.size(), g.size());
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
    for (const Edge& e : g.edges()) EXPECT_LT(pos[e.from], pos[e.to]);
  }
}

TEST(Polytree, Recognition) {
  EXPECT_TRUE(is_polytree(chain3()));
  EXPECT_FALSE(is_polytree(Dag(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})));
  EXPECT_FALSE(is_polytree(Dag(4, {{0, 1}, {2, 3}})));
}

TEST(Skeleton, ErasesDirections) {
  EXPECT_EQ(skeleton(Dag(3, {{0, 1}, {2, 1}})), Skeleton(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(skeleton(Dag(4, {})).edge_count(), 0u);
  const Skeleton star = skeleton(Dag(5, {{4, 0}, {4, 1}, {4, 2}, {4, 3}}));
  EXPECT_EQ(star.edge_count(), 4u);
  EXPECT_TRUE(star.is_tree());
}

TEST(VStructures, Examples) {
  EXPECT_EQ(find_v_structures(collider3()), (std::vector<VStructure>{{0, 2, 1}}));
  EXPECT_TRUE(find_v_structures(chain3()).empty());
  const auto hub = find_v_structures(Dag(4, {{0, 3}, {1, 3}, {2, 3}}));
  EXPECT_EQ(hub, (std::vector<VStructure>{{0, 3, 1}, {0, 3, 2}, {1, 3, 2}}));
}

TEST(VStructures, MatchTripleEnumeration) {
  Rng rng(make_rng(2));
  for (int t = 0; t < 100; ++t) {
    const Dag g = random_polytree(rng, 12);
    std::vector<VStructure> expect;
    for (Node k = 0; k < g.size(); ++k)
      for (Node i = 0; i < g.size(); ++i)
        for (Node j = i + 1; j < g.size(); ++j)
          if (g.has_edge(i, k) && g.has_edge(j, k) && !g.adjacent(i, j)) expect.push_back({i, k, j});
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(find_v_structures(g), expect);
  }
}

TEST(CpdagOfPolytree, Examples) {
  EXPECT_EQ(cpdag_of_polytree(collider3()), Cpdag(3, {{0, 2}, {1, 2}}, {}));
  EXPECT_EQ(cpdag_of_polytree(chain3()), Cpdag(3, {}, {{0, 1}, {1, 2}}));
  EXPECT_EQ(cpdag_of_polytree(Dag(4, {{0, 2}, {1, 2}, {2, 3}})), Cpdag(4, {{0, 2}, {1, 2}, {2, 3}}, {}));
  EXPECT_THROW(cpdag_of_polytree(Dag(4, {{0, 1}, {2, 3}})), NotAPolytree);
}

TEST(CpdagOfPolytree, MatchesOrientationEnumeration) {
  Rng rng(make_rng(3));
  for (int t = 0; t < 300; ++t) {
    const Dag g = random_polytree(rng, 2 + t % 9);
    EXPECT_EQ(cpdag_of_polytree(g), brute_force_cpdag(g));
  }
}

TEST(CpdagOfPolytree, StructuralProperties) {
  Rng rng(make_rng(4));
  for (int t = 0; t < 200; ++t) {
    const Dag g = random_polytree(rng, 3 + t % 40);
    const Cpdag c = cpdag_of_polytree(g);
    EXPECT_EQ(c.skeleton(), skeleton(g));
    EXPECT_EQ(find_v_structures(c), find_v_structures(g));
    EXPECT_NO_THROW(validate_polytree_cpdag(c));
    EXPECT_TRUE(Skeleton(c.size(), {c.undirected_edges().begin(), c.undirected_edges().end()}).is_forest());
    for (Node v : vm_vd_partition(c).mixed) EXPECT_TRUE(c.parents(v).empty());
  }
}

TEST(Rule1, OrderIndependent) {
  Rng rng(make_rng(5));
  for (int t = 0; t < 100; ++t) {
    const Dag g = random_polytree(rng, 25);
    const Cpdag expect = cpdag_of_polytree(g);
    // Only the v-structure edges directed; Rule 1 has to do the rest.
    std::set<Edge> v_edges;
    for (const VStructure& v : find_v_structures(g)) {
      v_edges.insert({v.left, v.collider});
      v_edges.insert({v.right, v.collider});
    }
    std::vector<UEdge> rest;
    for (const Edge& e : g.edges())
      if (!v_edges.count(e)) rest.push_back(UEdge::of(e.from, e.to));
    const Cpdag start(g.size(), {v_edges.begin(), v_edges.end()}, rest);
    for (std::uint64_t seed = 0; seed < 10; ++seed) EXPECT_EQ(apply_rule1(start, seed), expect);
    EXPECT_EQ(apply_rule1(start), expect);
  }
}

TEST(Partition, Examples) {
  const NodePartition chain = vm_vd_partition(Cpdag(3, {}, {{0, 1}, {1, 2}}));
  EXPECT_EQ(chain.mixed, (std::vector<Node>{0, 1, 2}));
  EXPECT_TRUE(chain.directed_only.empty());

  const NodePartition v = vm_vd_partition(Cpdag(3, {{0, 2}, {1, 2}}, {}));
  EXPECT_TRUE(v.mixed.empty());
  EXPECT_EQ(v.directed_only, (std::vector<Node>{0, 1, 2}));

  // Rule 1 would orient 3 - 4, so the undirected edge cannot appear here.
  EXPECT_THROW(vm_vd_partition(Cpdag(5, {{0, 2}, {1, 2}, {2, 3}}, {{3, 4}})), InvalidCpdag);
}

TEST(Cpdag, RejectsPairUsedTwice) {
  EXPECT_THROW(Cpdag(3, {{0, 1}}, {{0, 1}}), InvalidGraph);
  EXPECT_THROW(Cpdag(3, {}, {{0, 1}, {0, 1}}), InvalidGraph);
}

TEST(EquivalenceClass, SizesAndMembers) {
  EXPECT_EQ(equivalence_class_size(Cpdag(3, {}, {{0, 1}, {1, 2}})), 3u);
  EXPECT_EQ(equivalence_class_size(Cpdag(3, {{0, 2}, {1, 2}}, {})), 1u);
  EXPECT_EQ(equivalence_class_size(Cpdag(5, {}, {{0, 1}, {2, 3}, {3, 4}})), 6u);

  const auto chain = enumerate_equivalent_dags(Cpdag(3, {}, {{0, 1}, {1, 2}}), 10);
  const std::set<std::vector<Edge>> got = [&] {
    std::set<std::vector<Edge>> s;
    for (const Dag& d : chain) s.insert({d.edges().begin(), d.edges().end()});
    return s;
  }();
  const std::set<std::vector<Edge>> want = {{{0, 1}, {1, 2}}, {{1, 0}, {1, 2}}, {{1, 0}, {2, 1}}};
  EXPECT_EQ(got, want);

  const Dag g(4, {{0, 2}, {1, 2}, {2, 3}});
  const auto single = enumerate_equivalent_dags(cpdag_of_polytree(g), 10);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single.front(), g);

  EXPECT_THROW(enumerate_equivalent_dags(Cpdag(3, {}, {{0, 1}, {1, 2}}), 2), LimitExceeded);
}

TEST(EquivalenceClass, EnumerationProperties) {
  Rng rng(make_rng(6));
  for (int t = 0; t < 150; ++t) {
    const Dag g = random_polytree(rng, 2 + t % 9);
    const Cpdag c = cpdag_of_polytree(g);
    const auto members = enumerate_equivalent_dags(c, 1u << 20);
    ASSERT_EQ(members.size(), equivalence_class_size(c));
    bool found = false;
    std::set<std::vector<Edge>> distinct;
    for (const Dag& d : members) {
      EXPECT_EQ(skeleton(d), skeleton(g));
      EXPECT_EQ(find_v_structures(d), find_v_structures(g));
      distinct.insert({d.edges().begin(), d.edges().end()});
      found = found || d == g;
    }
    EXPECT_TRUE(found);
    EXPECT_EQ(distinct.size(), members.size());

    // Brute-force count over all orientations with the same v-structures.
    const Skeleton sk = skeleton(g);
    const auto edges = sk.edges();
    std::size_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << edges.size()); ++mask) {
      std::vector<Edge> dir;
      for (std::size_t k = 0; k < edges.size(); ++k)
        dir.push_back(((mask >> k) & 1) ? Edge{edges[k].b, edges[k].a} : Edge{edges[k].a, edges[k].b});
      if (find_v_structures(Dag(g.size(), dir)) == find_v_structures(g)) ++count;
    }
    EXPECT_EQ(count, members.size());
  }
}
