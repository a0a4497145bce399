#include "polytree/metrics.hpp"

#include <map>

#include "polytree/errors.hpp"

namespace polytree {
namespace {

// Orientation of a pair: 0 undirected, 1 low -> high, 2 high -> low.
std::map<UEdge, int> orientation_map(const Cpdag& c) {
  std::map<UEdge, int> out;
  for (const Edge& e : c.directed_edges()) out.emplace(UEdge::of(e.from, e.to), e.from < e.to ? 1 : 2);
  for (const UEdge& e : c.undirected_edges()) out.emplace(e, 0);
  return out;
}

double ratio(std::size_t num, std::size_t den) { return static_cast<double>(num) / static_cast<double>(den); }

}  // namespace

EdgeClassification classify_edges(const Cpdag& truth, const Cpdag& estimate) {
  if (truth.size() != estimate.size()) throw DimensionMismatch("CPDAGs are over different node counts");
  const auto t = orientation_map(truth);
  const auto e = orientation_map(estimate);

  EdgeClassification ec;
  ec.true_size = t.size();
  ec.est_size = e.size();
  for (const auto& [pair, dir] : t) {
    auto it = e.find(pair);
    if (it == e.end())
      ++ec.missing;
    else if (it->second == dir)
      ++ec.correct;
    else
      ++ec.wrong_direction;
  }
  ec.extra = ec.est_size - ec.correct - ec.wrong_direction;
  return ec;
}

double fdr_skeleton(const EdgeClassification& ec) {
  if (ec.est_size == 0) throw EmptyEstimate("estimated graph has no edges");
  return ratio(ec.extra, ec.est_size);
}

double jaccard_skeleton(const EdgeClassification& ec) {
  const std::size_t den = ec.missing + ec.est_size;
  if (den == 0) throw EmptyUnion("both graphs are empty");
  return ratio(ec.correct + ec.wrong_direction, den);
}

double fdr_cpdag(const EdgeClassification& ec) {
  if (ec.est_size == 0) throw EmptyEstimate("estimated graph has no edges");
  return ratio(ec.extra + ec.wrong_direction, ec.est_size);
}

double jaccard_cpdag(const EdgeClassification& ec) {
  const std::size_t den = ec.true_size + ec.est_size - ec.correct;
  if (den == 0) throw EmptyUnion("both graphs are empty");
  return ratio(ec.correct, den);
}

}  // namespace polytree
