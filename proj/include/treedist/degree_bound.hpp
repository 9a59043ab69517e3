#pragma once

#include "treedist/merge_tree.hpp"
#include "treedist/metric_tree.hpp"

#include <algorithm>
#include <vector>

namespace treedist {

/// How a merge-tree node's degree is counted inside an eps-ball.
/// Downward is the merge-tree notion; Full counts the edge to the parent too
/// (the ray is never counted), matching metric-tree degrees node for node.
enum class DegreeConvention { Downward, Full };

namespace detail {

inline int merge_node_degree(const MergeTree& t, NodeIndex v, DegreeConvention conv) {
  int d = static_cast<int>(t.children(v).size());
  if (conv == DegreeConvention::Full && !t.is_root(v)) ++d;
  return d;
}

// Candidate ball centers: every node, plus every point at height h(v) +- eps
// on any edge or on the ray. Ball contents only change when the center crosses
// one of those heights, and each node's membership interval is closed.
inline std::vector<MergePoint> merge_ball_centers(const MergeTree& t, const Rational& eps) {
  std::vector<MergePoint> centers;
  std::vector<Rational> marks;
  for (std::size_t v = 0; v < t.size(); ++v) {
    centers.push_back(node_point(t, static_cast<NodeIndex>(v)));
    marks.push_back(t.height(static_cast<NodeIndex>(v)) - eps);
    marks.push_back(t.height(static_cast<NodeIndex>(v)) + eps);
  }
  for (std::size_t c = 0; c < t.size(); ++c) {
    auto lower = static_cast<NodeIndex>(c);
    for (const auto& h : marks) {
      MergePoint p{lower, h};
      if (is_valid_point(t, p) && h != t.height(lower)) centers.push_back(p);
    }
  }
  return centers;
}

}  // namespace detail

/// Largest degree sum of tree nodes inside one eps-ball of a single merge tree.
///
/// A node x lies in the ball around a point p at height c exactly when the
/// path p -> lca -> x stays inside [c - eps, c + eps], i.e. when
/// h(x) >= c - eps and h(lca(p, x)) <= c + eps.
inline int merge_tree_ball_bound(const MergeTree& t, const Rational& eps,
                                 DegreeConvention conv = DegreeConvention::Downward) {
  if (eps < 0) throw std::invalid_argument("degree bound: negative eps");
  int best = 0;
  for (const auto& p : detail::merge_ball_centers(t, eps)) {
    const Rational lo = p.height - eps;
    const Rational hi = p.height + eps;
    int sum = 0;
    for (std::size_t x = 0; x < t.size(); ++x) {
      auto v = static_cast<NodeIndex>(x);
      if (t.height(v) < lo) continue;
      if (lca(t, p, node_point(t, v)).height > hi) continue;
      sum += detail::merge_node_degree(t, v, conv);
    }
    best = std::max(best, sum);
  }
  return best;
}

/// tau_eps(T1, T2): the FPT parameter of the decision procedure. Never below 1.
inline int merge_degree_bound(const MergeTree& t1, const MergeTree& t2, const Rational& eps,
                              DegreeConvention conv = DegreeConvention::Downward) {
  return std::max({1, merge_tree_ball_bound(t1, eps, conv), merge_tree_ball_bound(t2, eps, conv)});
}

/// Largest full-degree sum of nodes inside one geodesic eps-ball of a metric tree.
///
/// Centers are the nodes plus, on every edge, the points at distance exactly
/// eps from each node (measured through the near endpoint).
inline int metric_tree_ball_bound(const MetricTree& t, const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("degree bound: negative eps");
  const auto dist = all_pairs_distances(t);
  const std::size_t n = t.size();
  int best = 0;

  auto ball_sum = [&](auto&& distance_to) {
    int sum = 0;
    for (std::size_t x = 0; x < n; ++x)
      if (distance_to(x) <= eps) sum += t.degree(static_cast<NodeIndex>(x));
    best = std::max(best, sum);
  };

  for (std::size_t c = 0; c < n; ++c) ball_sum([&](std::size_t x) { return dist[c][x]; });

  for (const auto& e : t.edges()) {
    const NodeIndex a = *t.find(e.u);
    const NodeIndex b = *t.find(e.v);
    // A center at offset s from a (0 < s < len) sees x at min(s + d(a,x), len - s + d(b,x)).
    auto at_offset = [&](const Rational& s) {
      ball_sum([&](std::size_t x) { return min(s + dist[a][x], e.length - s + dist[b][x]); });
    };
    for (std::size_t x = 0; x < n; ++x) {
      Rational from_a = eps - dist[a][x];
      if (from_a > 0 && from_a < e.length) at_offset(from_a);
      Rational from_b = e.length - (eps - dist[b][x]);
      if (from_b > 0 && from_b < e.length) at_offset(from_b);
    }
  }
  return best;
}

/// tau-hat_eps(M1, M2), the metric analogue of merge_degree_bound. Never below 1.
inline int metric_degree_bound(const MetricTree& m1, const MetricTree& m2, const Rational& eps) {
  return std::max({1, metric_tree_ball_bound(m1, eps), metric_tree_ball_bound(m2, eps)});
}

}  // namespace treedist
