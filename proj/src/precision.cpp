#include "polytree/precision.hpp"

#include <cassert>
#include <cmath>
#include <set>
#include <vector>

#include "polytree/errors.hpp"

namespace polytree {
namespace {

constexpr double kVarianceFloor = 1e-10;

void add_symmetric(Eigen::MatrixXd& theta, Node i, Node j, double value) {
  const auto a = static_cast<Eigen::Index>(i);
  const auto b = static_cast<Eigen::Index>(j);
  theta(a, b) += value;
  theta(b, a) += value;
}

#ifndef NDEBUG
// A pair of nodes can share at most one child in a polytree.
void check_unique_collider(std::set<UEdge>& seen, Node i, Node j) {
  const bool inserted = seen.insert(UEdge::of(i, j)).second;
  assert(inserted && "co-parent pair with two colliders");
  (void)inserted;
}
#endif

}  // namespace

PrecisionMatrix true_inverse_correlation(const LinearSem& m) {
  if (!m.is_standardized(1e-9)) throw InvalidModel("inverse correlation needs a standardized model");
  const Dag& g = m.dag();
  if (!skeleton(g).is_forest()) throw InvalidModel("inverse correlation needs a polytree");

  const std::size_t p = m.size();
  const auto omega = m.omega();
  const auto ip = static_cast<Eigen::Index>(p);
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(ip, ip);
#ifndef NDEBUG
  std::set<UEdge> seen;
#endif

  for (Node j = 0; j < p; ++j) {
    double diag = 1.0 / omega[j];
    for (Node k : g.children(j)) {
      const double b = m.beta(j, k);
      diag += b * b / omega[k];
    }
    theta(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = diag;

    const auto& pa = g.parents(j);
    for (std::size_t x = 0; x < pa.size(); ++x) {
      add_symmetric(theta, pa[x], j, -m.beta(pa[x], j) / omega[j]);
      for (std::size_t y = x + 1; y < pa.size(); ++y) {
#ifndef NDEBUG
        check_unique_collider(seen, pa[x], pa[y]);
#endif
        add_symmetric(theta, pa[x], pa[y], m.beta(pa[x], j) * m.beta(pa[y], j) / omega[j]);
      }
    }
  }
  return PrecisionMatrix(std::move(theta));
}

PrecisionMatrix estimate_inverse_correlation(const Cpdag& cpdag, const CorrelationMatrix& corr) {
  const std::size_t p = cpdag.size();
  if (corr.size() != p) throw DimensionMismatch("CPDAG and correlation matrix sizes differ");
  const NodePartition part = vm_vd_partition(cpdag);

  // Residual variance for directed-only nodes; mixed nodes keep NaN and are never read.
  std::vector<double> omega(p, std::nan(""));
  for (Node j : part.directed_only) {
    double w = 1.0;
    for (Node i : cpdag.parents(j)) w -= corr(i, j) * corr(i, j);
    if (!(w > kVarianceFloor)) throw DegenerateVariance(j, "1 - sum of squared parent correlations");
    omega[j] = w;
  }
  auto undirected_residual = [&](Node a, Node b) {
    const double r = 1.0 - corr(a, b) * corr(a, b);
    if (!(r > kVarianceFloor)) throw DegenerateVariance(b, "1 - rho^2 on an undirected edge");
    return r;
  };

  const auto ip = static_cast<Eigen::Index>(p);
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(ip, ip);
#ifndef NDEBUG
  std::set<UEdge> seen;
#endif

  for (const UEdge& e : cpdag.undirected_edges())
    add_symmetric(theta, e.a, e.b, -corr(e.a, e.b) / undirected_residual(e.a, e.b));

  for (Node k : part.directed_only) {
    const auto& pa = cpdag.parents(k);
    for (std::size_t x = 0; x < pa.size(); ++x) {
      add_symmetric(theta, pa[x], k, -corr(pa[x], k) / omega[k]);
      for (std::size_t y = x + 1; y < pa.size(); ++y) {
#ifndef NDEBUG
        check_unique_collider(seen, pa[x], pa[y]);
#endif
        add_symmetric(theta, pa[x], pa[y], corr(pa[x], k) * corr(pa[y], k) / omega[k]);
      }
    }
  }

  auto child_terms = [&](Node j) {
    double s = 0.0;
    for (Node k : cpdag.children(j)) s += corr(j, k) * corr(j, k) / omega[k];
    return s;
  };
  for (Node j : part.directed_only)
    theta(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = 1.0 / omega[j] + child_terms(j);
  for (Node j : part.mixed) {
    double diag = 1.0 + child_terms(j);
    for (Node k : cpdag.undirected_neighbors(j)) diag += corr(j, k) * corr(j, k) / undirected_residual(j, k);
    theta(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) = diag;
  }
  return PrecisionMatrix(std::move(theta));
}

L1Errors l1_errors(const PrecisionMatrix& estimate, const PrecisionMatrix& truth) {
  if (estimate.size() != truth.size()) throw DimensionMismatch("precision matrices differ in size");
  const Eigen::MatrixXd& a = estimate.values();
  const Eigen::MatrixXd& b = truth.values();
  L1Errors out;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const double d = std::abs(a(i, j) - b(i, j));
      (i == j ? out.diagonal : out.off_diagonal) += d;
    }
  }
  return out;
}

}  // namespace polytree
