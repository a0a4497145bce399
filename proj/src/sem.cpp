#include "polytree/sem.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "polytree/errors.hpp"
#include "polytree/rng.hpp"

namespace polytree {

std::string_view to_string(NoiseFamily f) {
  switch (f) {
    case NoiseFamily::gaussian:
      return "gaussian";
    case NoiseFamily::uniform:
      return "uniform";
    case NoiseFamily::rademacher_scaled:
      return "rademacher_scaled";
  }
  return "unknown";
}

NoiseFamily parse_noise_family(std::string_view name) {
  if (name == "gaussian") return NoiseFamily::gaussian;
  if (name == "uniform") return NoiseFamily::uniform;
  if (name == "rademacher_scaled" || name == "rademacher") return NoiseFamily::rademacher_scaled;
  throw InvalidArgument("unknown noise family '" + std::string(name) + "'");
}

namespace {

Dag dag_of(std::size_t p, const std::vector<WeightedEdge>& edges) {
  std::vector<Edge> plain;
  plain.reserve(edges.size());
  for (const auto& e : edges) plain.push_back({e.from, e.to});
  return Dag(p, std::move(plain));
}

std::vector<double> betas_in_dag_order(const Dag& dag, const std::vector<WeightedEdge>& edges) {
  std::vector<WeightedEdge> sorted = edges;
  std::sort(sorted.begin(), sorted.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return Edge{a.from, a.to} < Edge{b.from, b.to};
  });
  std::vector<double> out;
  out.reserve(sorted.size());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (dag.edges()[k] != Edge{sorted[k].from, sorted[k].to}) throw InternalError("edge order mismatch");
    out.push_back(sorted[k].beta);
  }
  return out;
}

}  // namespace

LinearSem::LinearSem(Dag dag, std::vector<double> edge_betas, std::vector<double> omega)
    : dag_(std::move(dag)), betas_(std::move(edge_betas)), omega_(std::move(omega)) {
  if (betas_.size() != dag_.edge_count())
    throw InvalidModel("expected " + std::to_string(dag_.edge_count()) + " coefficients, got " +
                       std::to_string(betas_.size()));
  if (omega_.size() != dag_.size())
    throw InvalidModel("expected " + std::to_string(dag_.size()) + " noise variances, got " +
                       std::to_string(omega_.size()));
  for (std::size_t k = 0; k < betas_.size(); ++k) {
    if (!std::isfinite(betas_[k]) || betas_[k] == 0.0) {
      const Edge& e = dag_.edges()[k];
      throw InvalidModel("coefficient on " + std::to_string(e.from) + " -> " + std::to_string(e.to) +
                         " must be finite and nonzero");
    }
  }
  for (std::size_t j = 0; j < omega_.size(); ++j)
    if (!std::isfinite(omega_[j]) || omega_[j] <= 0.0)
      throw InvalidModel("noise variance of node " + std::to_string(j) + " must be positive");
}

LinearSem::LinearSem(std::size_t p, const std::vector<WeightedEdge>& edges, std::vector<double> omega)
    : LinearSem(dag_of(p, edges), betas_in_dag_order(dag_of(p, edges), edges), std::move(omega)) {}

double LinearSem::beta(Node i, Node j) const {
  const auto edges = dag_.edges();
  auto it = std::lower_bound(edges.begin(), edges.end(), Edge{i, j});
  if (it == edges.end() || *it != Edge{i, j}) return 0.0;
  return betas_[static_cast<std::size_t>(it - edges.begin())];
}

Eigen::MatrixXd LinearSem::coefficient_matrix() const {
  const auto p = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(p, p);
  const auto edges = dag_.edges();
  for (std::size_t k = 0; k < edges.size(); ++k)
    b(static_cast<Eigen::Index>(edges[k].from), static_cast<Eigen::Index>(edges[k].to)) = betas_[k];
  return b;
}

bool LinearSem::is_standardized(double tol) const {
  std::vector<double> total(omega_.begin(), omega_.end());
  const auto edges = dag_.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) total[edges[k].to] += betas_[k] * betas_[k];
  return std::all_of(total.begin(), total.end(), [tol](double t) { return std::abs(t - 1.0) <= tol; });
}

namespace {

// Columns of (I - B)^{-T}: column k holds the total effect of eps_k.
Eigen::MatrixXd total_effects(const LinearSem& m) {
  const std::size_t p = m.size();
  const auto& dag = m.dag();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t k = 0; k < p; ++k) {
    auto col = a.col(static_cast<Eigen::Index>(k));
    for (Node j : dag.topological_order()) {
      double x = (j == k) ? 1.0 : 0.0;
      for (Node i : dag.parents(j)) x += m.beta(i, j) * col(static_cast<Eigen::Index>(i));
      col(static_cast<Eigen::Index>(j)) = x;
    }
  }
  return a;
}

}  // namespace

Eigen::MatrixXd covariance_matrix(const LinearSem& m) {
  const Eigen::MatrixXd a = total_effects(m);
  Eigen::VectorXd w(static_cast<Eigen::Index>(m.size()));
  for (std::size_t j = 0; j < m.size(); ++j) w(static_cast<Eigen::Index>(j)) = m.omega()[j];
  Eigen::MatrixXd sigma = a * w.asDiagonal() * a.transpose();
  return 0.5 * (sigma + sigma.transpose());
}

CorrelationMatrix population_correlations(const LinearSem& m) {
  const Eigen::MatrixXd sigma = covariance_matrix(m);
  const Eigen::VectorXd sd = sigma.diagonal().cwiseSqrt();
  Eigen::MatrixXd rho = sd.cwiseInverse().asDiagonal() * sigma * sd.cwiseInverse().asDiagonal();
  rho.diagonal().setOnes();
  return CorrelationMatrix(std::move(rho));
}

LinearSem standardize(const LinearSem& m) {
  const Eigen::VectorXd var = covariance_matrix(m).diagonal();
  for (Eigen::Index j = 0; j < var.size(); ++j)
    if (!(var(j) > 1e-12)) throw SingularModel("implied variance of node " + std::to_string(j) + " is not positive");

  const auto edges = m.dag().edges();
  std::vector<double> betas(edges.size());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const double sd_from = std::sqrt(var(static_cast<Eigen::Index>(edges[k].from)));
    const double sd_to = std::sqrt(var(static_cast<Eigen::Index>(edges[k].to)));
    betas[k] = m.edge_betas()[k] * sd_from / sd_to;
  }
  std::vector<double> omega(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) omega[j] = m.omega()[j] / var(static_cast<Eigen::Index>(j));
  return LinearSem(m.dag(), std::move(betas), std::move(omega));
}

namespace {

void require_standardized_forest(const LinearSem& m) {
  if (!m.is_standardized(1e-9)) throw InvalidModel("model is not standardized");
  if (!skeleton(m.dag()).is_forest()) throw NotAPolytree("skeleton contains a cycle");
}

// Trek-rule correlations from `source` to every node. Walking away from the
// source, a path may climb against edge direction and then descend along it;
// descending then climbing means a collider, after which everything is 0.
std::vector<double> trek_row(const LinearSem& m, Node source) {
  const auto& dag = m.dag();
  std::vector<double> row(m.size(), 0.0);
  std::vector<bool> seen(m.size(), false);
  struct Step {
    Node node;
    double product;
    bool descending;
    bool blocked;
  };
  std::vector<Step> stack{{source, 1.0, false, false}};
  seen[source] = true;
  while (!stack.empty()) {
    const Step s = stack.back();
    stack.pop_back();
    row[s.node] = s.blocked ? 0.0 : s.product;
    for (Node u : dag.parents(s.node)) {
      if (seen[u]) continue;
      seen[u] = true;
      const bool blocked = s.blocked || s.descending;
      stack.push_back({u, blocked ? 0.0 : s.product * m.beta(u, s.node), s.descending, blocked});
    }
    for (Node w : dag.children(s.node)) {
      if (seen[w]) continue;
      seen[w] = true;
      stack.push_back({w, s.blocked ? 0.0 : s.product * m.beta(s.node, w), true, s.blocked});
    }
  }
  return row;
}

}  // namespace

double correlation_by_treks(const LinearSem& m, Node i, Node j) {
  if (i >= m.size() || j >= m.size()) throw InvalidArgument("node out of range");
  require_standardized_forest(m);
  if (i == j) return 1.0;
  return trek_row(m, i)[j];
}

Eigen::MatrixXd trek_correlation_matrix(const LinearSem& m) {
  require_standardized_forest(m);
  const auto p = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd out(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const auto row = trek_row(m, static_cast<Node>(i));
    for (Eigen::Index j = 0; j < p; ++j) out(i, j) = row[static_cast<std::size_t>(j)];
  }
  return out;
}

DataMatrix sample(const LinearSem& m, std::size_t n, NoiseFamily family, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample count must be positive");
  const std::size_t p = m.size();
  const auto& dag = m.dag();

  std::vector<double> scale(p);
  for (std::size_t j = 0; j < p; ++j) {
    const double w = m.omega()[j];
    scale[j] = family == NoiseFamily::uniform ? std::sqrt(3.0 * w) : std::sqrt(w);
  }
  // Parent lists with coefficients, in topological order.
  std::vector<std::vector<std::pair<Node, double>>> parents(p);
  for (Node j = 0; j < p; ++j)
    for (Node i : dag.parents(j)) parents[j].push_back({i, m.beta(i, j)});

  Rng rng = make_rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);

  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  std::vector<double> eps(p);
  std::vector<double> row(p);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t j = 0; j < p; ++j) {
      double z = 0.0;
      switch (family) {
        case NoiseFamily::gaussian:
          z = normal(rng);
          break;
        case NoiseFamily::uniform:
          z = uniform(rng);
          break;
        case NoiseFamily::rademacher_scaled:
          z = coin(rng) ? 1.0 : -1.0;
          break;
      }
      eps[j] = scale[j] * z;
    }
    for (Node j : dag.topological_order()) {
      double v = eps[j];
      for (const auto& [i, b] : parents[j]) v += b * row[i];
      row[j] = v;
    }
    for (std::size_t j = 0; j < p; ++j) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = row[j];
  }
  return DataMatrix(std::move(x));
}

RhoBounds rho_bounds(const LinearSem& m) {
  if (m.dag().edge_count() == 0) throw EmptyGraph("model has no edges");
  if (!m.is_standardized(1e-9)) throw InvalidModel("model is not standardized");
  RhoBounds b{std::abs(m.edge_betas()[0]), std::abs(m.edge_betas()[0])};
  for (double beta : m.edge_betas()) {
    b.rho_min = std::min(b.rho_min, std::abs(beta));
    b.rho_max = std::max(b.rho_max, std::abs(beta));
  }
  return b;
}

}  // namespace polytree
