#include "polytree/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "disjoint_sets.hpp"
#include "polytree/errors.hpp"
#include "polytree/student_t.hpp"

namespace polytree {

void LearnConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  if (rho_crit_override && !(*rho_crit_override > 0.0 && *rho_crit_override < 1.0))
    throw InvalidArgument("rho_crit override must lie in (0, 1)");
}

CorrelationMatrix sample_correlations(const DataMatrix& data) {
  const auto n = static_cast<Eigen::Index>(data.samples());
  const auto p = static_cast<Eigen::Index>(data.variables());
  if (n < 2) throw InsufficientSamples("correlations need at least 2 samples");
  if (!data.values().allFinite()) throw InvalidArgument("data contains non-finite values");

  Eigen::MatrixXd centered = data.values().rowwise() - data.values().colwise().mean();
  Eigen::VectorXd ss = centered.colwise().squaredNorm();
  for (Eigen::Index j = 0; j < p; ++j) {
    // Rounding in the mean leaves tiny residues on constant columns.
    const double scale = data.values().col(j).cwiseAbs().maxCoeff();
    const double floor = static_cast<double>(n) * std::pow(8.0 * std::numeric_limits<double>::epsilon() * scale, 2);
    if (!(ss(j) > floor)) throw ConstantColumn(static_cast<std::size_t>(j));
  }

  const Eigen::VectorXd inv_sd = ss.cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd corr = inv_sd.asDiagonal() * (centered.transpose() * centered) * inv_sd.asDiagonal();
  corr = 0.5 * (corr + corr.transpose());
  corr = corr.cwiseMax(-1.0).cwiseMin(1.0);
  corr.diagonal().setOnes();
  return CorrelationMatrix(std::move(corr));
}

Skeleton chow_liu_skeleton(const CorrelationMatrix& corr) {
  const std::size_t p = corr.size();
  struct Candidate {
    double weight;
    Node a;
    Node b;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(p * (p - (p > 0)) / 2);
  for (Node a = 0; a < p; ++a)
    for (Node b = a + 1; b < p; ++b) candidates.push_back({std::abs(corr(a, b)), a, b});
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });

  detail::DisjointSets sets(p);
  std::vector<UEdge> tree;
  tree.reserve(p > 0 ? p - 1 : 0);
  for (const Candidate& c : candidates) {
    if (tree.size() + 1 >= p) break;
    if (sets.unite(c.a, c.b)) tree.push_back({c.a, c.b});
  }
  return Skeleton(p, std::move(tree));
}

double rho_crit(std::size_t n, double alpha) {
  if (n < 3) throw InsufficientSamples("rho_crit needs n >= 3");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  const double df = static_cast<double>(n - 2);
  const double t = student_t_quantile(1.0 - alpha / 2.0, df);
  return std::sqrt(1.0 - 1.0 / (1.0 + t * t / df));
}

VStructureDetection detect_v_structures_lenient(const Skeleton& tree, const CorrelationMatrix& corr,
                                                double rho_crit) {
  if (corr.size() != tree.size()) throw DimensionMismatch("skeleton and correlation matrix sizes differ");
  if (!tree.is_forest()) throw InvalidArgument("v-structure detection needs a tree skeleton");

  // Per edge: bit 1 = demanded a -> b, bit 2 = demanded b -> a.
  std::map<UEdge, unsigned> demand;
  auto require_into = [&](Node from, Node collider) {
    demand[UEdge::of(from, collider)] |= (from < collider) ? 1u : 2u;
  };
  for (Node k = 0; k < tree.size(); ++k) {
    const auto& nb = tree.neighbors(k);
    for (std::size_t x = 0; x < nb.size(); ++x) {
      for (std::size_t y = x + 1; y < nb.size(); ++y) {
        const Node i = nb[x];
        const Node j = nb[y];
        if (tree.adjacent(i, j)) continue;
        if (std::abs(corr(i, j)) < rho_crit) {
          require_into(i, k);
          require_into(j, k);
        }
      }
    }
  }

  std::vector<Edge> directed;
  std::vector<UEdge> undirected;
  std::size_t conflicts = 0;
  for (const UEdge& e : tree.edges()) {
    auto it = demand.find(e);
    const unsigned d = it == demand.end() ? 0u : it->second;
    if (d == 1u)
      directed.push_back({e.a, e.b});
    else if (d == 2u)
      directed.push_back({e.b, e.a});
    else {
      if (d == 3u) ++conflicts;
      undirected.push_back(e);
    }
  }
  return {Cpdag(tree.size(), std::move(directed), std::move(undirected)), conflicts};
}

Cpdag detect_v_structures(const Skeleton& tree, const CorrelationMatrix& corr, double rho_crit) {
  auto result = detect_v_structures_lenient(tree, corr, rho_crit);
  if (result.conflicts > 0)
    throw OrientationConflict(std::to_string(result.conflicts) + " edge(s) demanded in both directions");
  return std::move(result.graph);
}

LearnResult learn_from_correlations(const CorrelationMatrix& corr, double rho_crit) {
  LearnResult out;
  out.skeleton = chow_liu_skeleton(corr);
  auto detection = detect_v_structures_lenient(out.skeleton, corr, rho_crit);
  out.cpdag = apply_rule1(detection.graph);
  out.rho_crit = rho_crit;
  out.conflicts = detection.conflicts;
  return out;
}

LearnResult learn(const DataMatrix& data, const LearnConfig& cfg) {
  cfg.validate();
  const CorrelationMatrix corr = sample_correlations(data);
  const double crit = cfg.rho_crit_override ? *cfg.rho_crit_override : rho_crit(data.samples(), cfg.alpha);
  return learn_from_correlations(corr, crit);
}

Cpdag learn_cpdag(const DataMatrix& data, const LearnConfig& cfg) { return learn(data, cfg).cpdag; }

}  // namespace polytree
