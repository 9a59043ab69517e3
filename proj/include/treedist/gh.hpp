#pragma once

#include "treedist/optimization.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace treedist {

struct GHResult {
  Rational mu;
  Rational lower;  // mu / 14
  Rational upper;  // 2 mu
  std::string root1;
  std::string root2;
  SearchStats search;
  std::size_t pair_decides = 0;  // decide calls summed over root pairs
};

/// Candidate (value, u, w) triples over every root pair, sorted by value then pair.
struct RootedCandidates {
  std::vector<std::tuple<Rational, NodeIndex, NodeIndex>> triples;
  std::vector<Rational> values;  // deduplicated
};

namespace detail {

inline std::vector<MergeTree> rooted_all(const MetricTree& m) {
  std::vector<MergeTree> out;
  for (std::size_t u = 0; u < m.size(); ++u) out.push_back(merge_tree_from_root(m, static_cast<NodeIndex>(u)));
  return out;
}

}  // namespace detail

inline RootedCandidates gh_candidates(const MetricTree& m1, const MetricTree& m2) {
  const auto r1 = detail::rooted_all(m1);
  const auto r2 = detail::rooted_all(m2);
  RootedCandidates rc;
  for (std::size_t u = 0; u < r1.size(); ++u)
    for (std::size_t w = 0; w < r2.size(); ++w)
      for (const auto& v : candidate_set(r1[u], r2[w]).values)
        rc.triples.emplace_back(v, static_cast<NodeIndex>(u), static_cast<NodeIndex>(w));
  std::sort(rc.triples.begin(), rc.triples.end());
  for (const auto& t : rc.triples)
    if (rc.values.empty() || rc.values.back() != std::get<0>(t)) rc.values.push_back(std::get<0>(t));
  return rc;
}

/// mu = min over root pairs (u, w) of d_I between the geodesic merge trees.
/// Probes "some pair decides true at delta" over the global candidate list,
/// pairs in lexicographic order with early exit; the certificate is the first
/// pair that answers true at mu.
inline GHResult min_interleaving_over_roots(const MetricTree& m1, const MetricTree& m2, Engine engine = Engine::Fast) {
  const auto r1 = detail::rooted_all(m1);
  const auto r2 = detail::rooted_all(m2);
  const RootedCandidates rc = gh_candidates(m1, m2);
  GHResult res;

  auto witness = [&](const Rational& delta) -> std::optional<std::pair<NodeIndex, NodeIndex>> {
    for (std::size_t u = 0; u < r1.size(); ++u)
      for (std::size_t w = 0; w < r2.size(); ++w) {
        ++res.pair_decides;
        if (decide(r1[u], r2[w], delta, engine)) return std::make_pair(static_cast<NodeIndex>(u), static_cast<NodeIndex>(w));
      }
    return std::nullopt;
  };

  std::size_t idx = double_binary_search(
      rc.values.size(), [&](std::size_t i) { return witness(rc.values[i]).has_value(); },
      [&](std::size_t i) { return metric_degree_bound(m1, m2, rc.values[i]); }, res.search);
  res.mu = rc.values[idx];
  auto cert = witness(res.mu);
  if (!cert) throw std::logic_error("min_interleaving_over_roots: no certificate at mu");
  res.root1 = m1.id(cert->first);
  res.root2 = m2.id(cert->second);
  res.lower = res.mu / Rational(14);
  res.upper = res.mu * Rational(2);
  return res;
}

/// 14-approximation of the Gromov-Hausdorff distance: mu / 14 <= d_GH <= 2 mu.
inline GHResult approx_gh(const MetricTree& m1, const MetricTree& m2, Engine engine = Engine::Fast) {
  return min_interleaving_over_roots(m1, m2, engine);
}

/// mu by computing d_I separately for every root pair; for cross-checking.
inline Rational min_interleaving_exhaustive(const MetricTree& m1, const MetricTree& m2, Engine engine = Engine::Fast) {
  std::optional<Rational> best;
  for (std::size_t u = 0; u < m1.size(); ++u) {
    auto t1 = merge_tree_from_root(m1, static_cast<NodeIndex>(u));
    for (std::size_t w = 0; w < m2.size(); ++w) {
      Rational d = compute_interleaving(t1, merge_tree_from_root(m2, static_cast<NodeIndex>(w)), engine);
      if (!best || d < *best) best = d;
    }
  }
  return *best;
}

}  // namespace treedist
