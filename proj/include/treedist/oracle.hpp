#pragma once

#include "treedist/merge_tree.hpp"
#include "treedist/metric_tree.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <vector>

namespace treedist {

/// Thrown when an exhaustive oracle would exceed its configured size limits.
class OracleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleLimits {
  std::size_t max_grid = 200000;            // level-subdivided nodes of T1 times level count
  std::size_t max_states = 20'000'000;      // partial maps visited per decide
  std::size_t max_gh_nodes = 5;             // per metric tree
};

namespace oracle_detail {

// A merge tree cut at the given heights; node k is the point (host, heights[level]).
struct Grid {
  std::vector<MergePoint> point;
  std::vector<int> level;
  std::vector<int> parent;                 // -1 on the top level
  std::vector<std::vector<int>> children;
  std::vector<std::vector<int>> by_level;
};

inline Grid cut(const MergeTree& t, const std::vector<Rational>& heights) {
  Grid g;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    g.by_level.emplace_back();
    for (std::size_t c = 0; c < t.size(); ++c) {
      MergePoint p{static_cast<NodeIndex>(c), heights[i]};
      if (!is_valid_point(t, p)) continue;
      g.by_level[i].push_back(static_cast<int>(g.point.size()));
      g.point.push_back(p);
      g.level.push_back(static_cast<int>(i));
    }
  }
  g.parent.assign(g.point.size(), -1);
  g.children.assign(g.point.size(), {});
  for (std::size_t k = 0; k < g.point.size(); ++k) {
    const int i = g.level[k];
    if (i + 1 >= static_cast<int>(heights.size())) continue;
    MergePoint up = ancestor_at_height(t, g.point[k], heights[i + 1] - heights[i]);
    for (int q : g.by_level[i + 1])
      if (g.point[q] == up) {
        g.parent[k] = q;
        g.children[q].push_back(static_cast<int>(k));
      }
  }
  return g;
}

inline bool grid_ancestor(const Grid& g, int a, int b) {
  while (b != -1 && g.level[b] < g.level[a]) b = g.parent[b];
  return a == b;
}

}  // namespace oracle_detail

/// Exhaustive search for a level-aligned, parent-consistent map from T1 to T2
/// satisfying the 2 delta ancestor-lift property (all node pairs) and the 2 delta
/// coverage property. Partial maps are abandoned as soon as either property
/// fails on the part already assigned.
inline bool brute_force_decide(const MergeTree& t1, const MergeTree& t2, const Rational& delta,
                               const OracleLimits& limits = {}) {
  using namespace oracle_detail;
  if (delta < 0) throw std::invalid_argument("brute_force_decide: negative delta");

  std::set<Rational> hs;
  for (std::size_t v = 0; v < t1.size(); ++v) hs.insert(t1.height(static_cast<NodeIndex>(v)));
  for (std::size_t v = 0; v < t2.size(); ++v) hs.insert(t2.height(static_cast<NodeIndex>(v)) - delta);
  std::vector<Rational> h1(hs.begin(), hs.end());
  std::vector<Rational> h2;
  for (const auto& h : h1) h2.push_back(h + delta);
  const int levels = static_cast<int>(h1.size());

  const Grid g1 = cut(t1, h1);
  const Grid g2 = cut(t2, h2);
  if (g1.point.size() * h1.size() > limits.max_grid)
    throw OracleCapExceeded("brute_force_decide: instance beyond the grid cap");

  const Rational two = delta + delta;
  std::vector<MergePoint> lifted;
  for (const auto& p : g1.point) lifted.push_back(ancestor_at_height(t1, p, two));
  // lift_ok[a][b]: lifted a is an ancestor of lifted b (-1 = not yet computed).
  const std::size_t n1 = g1.point.size();
  std::vector<std::int8_t> lift_memo(n1 * n1, -1);
  auto lift_ok = [&](int a, int b) {
    auto& m = lift_memo[static_cast<std::size_t>(a) * n1 + b];
    if (m < 0) m = is_ancestor(t1, lifted[a], lifted[b]) ? 1 : 0;
    return m == 1;
  };

  // Assign top level first, then downward.
  std::vector<int> order;
  for (int i = levels - 1; i >= 0; --i) order.insert(order.end(), g1.by_level[i].begin(), g1.by_level[i].end());

  std::vector<int> image(n1, -1);
  std::vector<int> hits(g2.point.size(), 0);
  std::size_t states = 0;

  // Coverage on level i of T2: an uncovered node's lowest covered ancestor lies within 2 delta.
  auto coverage_ok = [&](int i) {
    for (int w : g2.by_level[i]) {
      if (hits[w] > 0) continue;
      int up = w;
      while (up != -1 && hits[up] == 0) up = g2.parent[up];
      if (up == -1) return false;
      if (h2[g2.level[up]] - h2[i] > two) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t pos, int checked_down_to) -> bool {
    if (++states > limits.max_states) throw OracleCapExceeded("brute_force_decide: search-state cap exceeded");
    const int next_level = pos < order.size() ? g1.level[order[pos]] : -1;
    for (int i = checked_down_to - 1; i > next_level; --i)
      if (!coverage_ok(i)) return false;
    const int done_to = std::min(checked_down_to, next_level + 1);
    if (pos == order.size()) return true;

    const int x = order[pos];
    std::vector<int> options;
    if (g1.parent[x] == -1) {
      options = g2.by_level[g1.level[x]];
    } else {
      options = g2.children[image[g1.parent[x]]];
    }
    for (int y : options) {
      bool ok = true;
      for (std::size_t q = 0; q < pos && ok; ++q) {
        const int z = order[q];
        const int iz = image[z];
        if (grid_ancestor(g2, y, iz) && !lift_ok(x, z)) ok = false;
        else if (grid_ancestor(g2, iz, y) && !lift_ok(z, x)) ok = false;
      }
      if (!ok) continue;
      image[x] = y;
      ++hits[y];
      bool found = self(self, pos + 1, done_to);
      --hits[y];
      image[x] = -1;
      if (found) return true;
    }
    return false;
  };
  return search(search, 0, levels);
}

/// Every |f(u) - g(w)|, |f(u) - f(u')| / 2 and |g(w) - g(w')| / 2, ascending.
inline std::vector<Rational> brute_force_candidates(const MergeTree& t1, const MergeTree& t2) {
  std::set<Rational> c;
  for (std::size_t a = 0; a < t1.size(); ++a) {
    const Rational& fa = t1.height(static_cast<NodeIndex>(a));
    for (std::size_t b = 0; b < t2.size(); ++b) c.insert((fa - t2.height(static_cast<NodeIndex>(b))).abs());
    for (std::size_t b = 0; b < t1.size(); ++b) c.insert((fa - t1.height(static_cast<NodeIndex>(b))).abs() / 2);
  }
  for (std::size_t a = 0; a < t2.size(); ++a)
    for (std::size_t b = 0; b < t2.size(); ++b)
      c.insert((t2.height(static_cast<NodeIndex>(a)) - t2.height(static_cast<NodeIndex>(b))).abs() / 2);
  return {c.begin(), c.end()};
}

/// Smallest candidate delta accepted by brute_force_decide.
inline Rational brute_force_interleaving(const MergeTree& t1, const MergeTree& t2, const OracleLimits& limits = {}) {
  for (const auto& d : brute_force_candidates(t1, t2))
    if (brute_force_decide(t1, t2, d, limits)) return d;
  throw std::logic_error("brute_force_interleaving: no candidate accepted");
}

/// Half the least distortion of a correspondence between the node sets, over
/// correspondences of the form graph(phi) U graph(psi).
inline Rational brute_force_gh_discrete(const MetricTree& m1, const MetricTree& m2, const OracleLimits& limits = {}) {
  if (m1.size() > limits.max_gh_nodes || m2.size() > limits.max_gh_nodes)
    throw OracleCapExceeded("brute_force_gh_discrete: more than " + std::to_string(limits.max_gh_nodes) + " nodes");

  // Scale every length to an integer.
  BigInt scale = 1;
  auto absorb = [&](const MetricTree& m) {
    for (const auto& e : m.edges()) scale = boost::multiprecision::lcm(scale, e.length.denominator());
  };
  absorb(m1);
  absorb(m2);
  auto scaled = [&](const MetricTree& m) {
    auto d = all_pairs_distances(m);
    std::vector<std::vector<std::int64_t>> out(d.size(), std::vector<std::int64_t>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i)
      for (std::size_t j = 0; j < d.size(); ++j) {
        Rational v = d[i][j] * Rational(scale, BigInt(1));
        if (v.numerator() > BigInt(std::numeric_limits<std::int64_t>::max() / 4))
          throw OracleCapExceeded("brute_force_gh_discrete: distances too large");
        out[i][j] = v.numerator().convert_to<std::int64_t>();
      }
    return out;
  };
  const auto d1 = scaled(m1);
  const auto d2 = scaled(m2);
  const std::size_t n1 = m1.size();
  const std::size_t n2 = m2.size();

  std::vector<std::pair<int, int>> rel;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();

  // Slots 0..n1-1 choose phi(x); slots n1..n1+n2-1 choose psi(y).
  auto search = [&](auto&& self, std::size_t slot, std::int64_t cur) -> void {
    if (cur >= best) return;
    if (slot == n1 + n2) {
      best = cur;
      return;
    }
    const bool first = slot < n1;
    const std::size_t range = first ? n2 : n1;
    for (std::size_t c = 0; c < range; ++c) {
      std::pair<int, int> p = first ? std::pair<int, int>(static_cast<int>(slot), static_cast<int>(c))
                                    : std::pair<int, int>(static_cast<int>(c), static_cast<int>(slot - n1));
      std::int64_t worst = cur;
      for (const auto& [x, y] : rel) {
        std::int64_t diff = d1[p.first][x] - d2[p.second][y];
        worst = std::max(worst, diff < 0 ? -diff : diff);
        if (worst >= best) break;
      }
      if (worst >= best) continue;
      rel.push_back(p);
      self(self, slot + 1, worst);
      rel.pop_back();
    }
  };
  search(search, 0, 0);
  return Rational(BigInt(best), scale * 2);
}

}  // namespace treedist
