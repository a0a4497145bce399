#include <gtest/gtest.h>

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>

#include "polytree/errors.hpp"
#include "polytree/learner.hpp"
#include "polytree/sem.hpp"
#include "support.hpp"

using namespace polytree;
using testing_support::random_sem;

namespace {

CorrelationMatrix chain_correlations(std::size_t p, double rho) {
  Eigen::MatrixXd c(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j)
      c(i, j) = std::pow(rho, std::abs(static_cast<double>(i) - static_cast<double>(j)));
  return CorrelationMatrix(c);
}

Cpdag relabel(const Cpdag& c, const std::vector<Node>& perm) {
  std::vector<Edge> d;
  std::vector<UEdge> u;
  for (const Edge& e : c.directed_edges()) d.push_back({perm[e.from], perm[e.to]});
  for (const UEdge& e : c.undirected_edges()) u.push_back(UEdge::of(perm[e.a], perm[e.b]));
  return Cpdag(c.size(), d, u);
}

}  // namespace

TEST(SampleCorrelations, Basics) {
  Eigen::MatrixXd x(5, 3);
  x << 1, 2, -1, 2, 4, -2, 3, 6, -3.5, 4, 8, -4, 5.5, 11, -5;
  const CorrelationMatrix c = sample_correlations(DataMatrix(x));
  EXPECT_DOUBLE_EQ(c(0, 1), 1.0);
  EXPECT_LT(c(0, 2), -0.98);
  EXPECT_EQ(c(1, 1), 1.0);
  EXPECT_EQ(c(0, 2), c(2, 0));

  Eigen::MatrixXd dup(4, 2);
  dup << 1, -1, 2, -2, 0.5, -0.5, 7, -7;
  EXPECT_DOUBLE_EQ(sample_correlations(DataMatrix(dup))(0, 1), -1.0);
}

TEST(SampleCorrelations, MatchesNaiveFormula) {
  Rng rng(make_rng(41));
  std::normal_distribution<double> normal;
  Eigen::MatrixXd x(37, 5);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = normal(rng) * (j + 1) + j;
  const CorrelationMatrix c = sample_correlations(DataMatrix(x));
  for (Eigen::Index a = 0; a < 5; ++a) {
    for (Eigen::Index b = 0; b < 5; ++b) {
      const double ma = x.col(a).mean();
      const double mb = x.col(b).mean();
      double sab = 0, saa = 0, sbb = 0;
      for (Eigen::Index i = 0; i < x.rows(); ++i) {
        sab += (x(i, a) - ma) * (x(i, b) - mb);
        saa += (x(i, a) - ma) * (x(i, a) - ma);
        sbb += (x(i, b) - mb) * (x(i, b) - mb);
      }
      EXPECT_NEAR(c(a, b), sab / std::sqrt(saa * sbb), 1e-14);
    }
  }
}

TEST(SampleCorrelations, Errors) {
  Eigen::MatrixXd x(4, 3);
  x << 1, 3, 0, 2, 3, 1, 3, 3, 0, 4, 3, 1;
  try {
    sample_correlations(DataMatrix(x));
    FAIL() << "expected ConstantColumn";
  } catch (const ConstantColumn& e) {
    EXPECT_EQ(e.column(), 1u);
  }
  EXPECT_THROW(sample_correlations(DataMatrix(Eigen::MatrixXd::Ones(1, 3))), InsufficientSamples);
}

TEST(ChowLiu, Examples) {
  EXPECT_EQ(chow_liu_skeleton(chain_correlations(4, 0.5)), Skeleton(4, {{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_EQ(chow_liu_skeleton(population_correlations(LinearSem(3, {{0, 2, 0.5}, {1, 2, 0.6}}, {1, 1, 0.39}))),
            Skeleton(3, {{0, 2}, {1, 2}}));
  // All weights tied: the (i, j) order makes a star at node 0.
  EXPECT_EQ(chow_liu_skeleton(CorrelationMatrix(Eigen::MatrixXd::Identity(4, 4))),
            Skeleton(4, {{0, 1}, {0, 2}, {0, 3}}));
}

TEST(ChowLiu, MatchesBruteForce) {
  Rng rng(make_rng(42));
  for (int t = 0; t < 1000; ++t) {
    const std::size_t p = testing_support::uniform_index(rng, 2, 6);
    const Eigen::MatrixXd c = testing_support::random_correlation(rng, p);
    const Skeleton tree = chow_liu_skeleton(CorrelationMatrix(c));
    ASSERT_TRUE(tree.is_tree());
    EXPECT_NEAR(testing_support::tree_weight(tree, c), testing_support::brute_force_max_tree_weight(c), 1e-12);
  }
}

TEST(ChowLiu, InvariantUnderMonotoneTransform) {
  Rng rng(make_rng(43));
  for (int t = 0; t < 200; ++t) {
    const Eigen::MatrixXd c = testing_support::random_correlation(rng, 12);
    Eigen::MatrixXd squashed = c;
    for (Eigen::Index i = 0; i < c.rows(); ++i)
      for (Eigen::Index j = 0; j < c.cols(); ++j)
        if (i != j) squashed(i, j) = std::copysign(std::pow(std::abs(c(i, j)), 3.0), -c(i, j));
    EXPECT_EQ(chow_liu_skeleton(CorrelationMatrix(c)), chow_liu_skeleton(CorrelationMatrix(squashed)));
  }
}

TEST(RhoCrit, Values) {
  EXPECT_NEAR(rho_crit(12, 0.1), 0.4973, 1e-4);
  const double t = 1.812461122811;
  EXPECT_NEAR(rho_crit(12, 0.1), std::sqrt(1 - 1 / (1 + t * t / 10)), 1e-12);
  for (std::size_t n : {3u, 10u, 100u, 1000u, 100000u}) {
    const double q = boost::math::quantile(boost::math::students_t(static_cast<double>(n - 2)), 0.95);
    EXPECT_NEAR(rho_crit(n, 0.1), q / std::sqrt(q * q + static_cast<double>(n - 2)), 1e-12);
  }
  double prev = 1.0;
  for (std::size_t n = 3; n < 2000; n += 7) {
    const double r = rho_crit(n, 0.1);
    EXPECT_LT(r, prev);
    prev = r;
  }
  EXPECT_LT(rho_crit(50, 0.999999), 1e-6);
  EXPECT_THROW(rho_crit(2, 0.1), InsufficientSamples);
  EXPECT_THROW(rho_crit(10, 0.0), InvalidArgument);
}

TEST(VStructureDetection, Examples) {
  const LinearSem collider(3, {{0, 2, 0.5}, {1, 2, 0.6}}, {1, 1, 0.39});
  const CorrelationMatrix cc = population_correlations(collider);
  EXPECT_EQ(detect_v_structures(skeleton(collider.dag()), cc, 0.2), Cpdag(3, {{0, 2}, {1, 2}}, {}));

  const CorrelationMatrix chain = chain_correlations(3, 0.5);
  EXPECT_EQ(detect_v_structures(Skeleton(3, {{0, 1}, {1, 2}}), chain, 0.2), Cpdag(3, {}, {{0, 1}, {1, 2}}));

  const LinearSem star(4, {{0, 3, 0.4}, {1, 3, 0.4}, {2, 3, 0.4}}, {1, 1, 1, 0.52});
  EXPECT_EQ(detect_v_structures(skeleton(star.dag()), population_correlations(star), 0.1),
            Cpdag(4, {{0, 3}, {1, 3}, {2, 3}}, {}));
}

TEST(VStructureDetection, Conflicts) {
  // Path 0 - 1 - 2 - 3 with both outer pairs uncorrelated: edge 1 - 2 is pulled both ways.
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(4, 4);
  c(0, 1) = c(1, 0) = 0.5;
  c(1, 2) = c(2, 1) = 0.5;
  c(2, 3) = c(3, 2) = 0.5;
  const Skeleton path(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto lenient = detect_v_structures_lenient(path, CorrelationMatrix(c), 0.1);
  EXPECT_EQ(lenient.conflicts, 1u);
  EXPECT_EQ(lenient.graph, Cpdag(4, {{0, 1}, {3, 2}}, {{1, 2}}));
  EXPECT_THROW(detect_v_structures(path, CorrelationMatrix(c), 0.1), OrientationConflict);

  const LearnResult r = learn_from_correlations(CorrelationMatrix(c), 0.1);
  EXPECT_EQ(r.conflicts, 1u);
  EXPECT_EQ(r.skeleton, path);
}

TEST(Learn, PopulationCorrelationsAreExact) {
  Rng rng(make_rng(44));
  for (int t = 0; t < 200; ++t) {
    const LinearSem m = random_sem(rng, 3, 60, 6);
    const double rmin = rho_bounds(m).rho_min;
    const Cpdag truth = cpdag_of_polytree(m.dag());
    const CorrelationMatrix c = population_correlations(m);
    for (double frac : {0.01, 0.5, 0.99}) EXPECT_EQ(learn_from_correlations(c, frac * rmin * rmin).cpdag, truth);
  }
}

TEST(Learn, LargeSampleChain) {
  std::vector<WeightedEdge> edges;
  std::vector<double> omega(10, 0.64);
  omega[0] = 1.0;
  for (Node j = 1; j < 10; ++j) edges.push_back({j - 1, j, 0.6});
  const LinearSem chain(10, edges, omega);
  const Cpdag truth = cpdag_of_polytree(chain.dag());
  int exact = 0;
  for (std::uint64_t s = 0; s < 100; ++s)
    exact += learn_cpdag(sample(chain, 5000, NoiseFamily::gaussian, s), LearnConfig{}) == truth;
  EXPECT_GE(exact, 99);
}

TEST(Learn, EquivariantUnderRelabelingAndScaling) {
  Rng rng(make_rng(45));
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    const LinearSem m = random_sem(rng, 5, 25, 4);
    const DataMatrix d = sample(m, 400, NoiseFamily::gaussian, static_cast<std::uint64_t>(t));
    const LearnResult base_result = learn(d, LearnConfig{});
    if (base_result.conflicts > 0) continue;  // conflict resolution depends on queue order
    const Cpdag& base = base_result.cpdag;

    std::vector<Node> perm(m.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::MatrixXd permuted(d.values().rows(), d.values().cols());
    for (std::size_t j = 0; j < m.size(); ++j) {
      // Powers of two keep the rescaled data bit-exact.
      const double scale = std::ldexp(1.0, static_cast<int>(testing_support::uniform_index(rng, 0, 8)) - 4);
      permuted.col(static_cast<Eigen::Index>(perm[j])) = scale * d.values().col(static_cast<Eigen::Index>(j));
    }
    EXPECT_EQ(learn_cpdag(DataMatrix(permuted), LearnConfig{}), relabel(base, perm));
    ++checked;
  }
  EXPECT_GE(checked, 15);
}

TEST(Learn, OverrideBypassesAlpha) {
  const DataMatrix d = sample(LinearSem(3, {{0, 2, 0.5}, {1, 2, 0.6}}, {1, 1, 0.39}), 500, NoiseFamily::gaussian, 1);
  LearnConfig cfg;
  cfg.rho_crit_override = 0.3;
  EXPECT_DOUBLE_EQ(learn(d, cfg).rho_crit, 0.3);
  cfg.rho_crit_override = 1.5;
  EXPECT_THROW(learn(d, cfg), InvalidArgument);
}
