#pragma once

#include "treedist/merge_tree.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <span>
#include <stdexcept>
#include <vector>

namespace treedist {

using AugIndex = int;
/// Identifies a base edge by its lower endpoint; the root ray is `tree.size()`
/// and therefore sorts after every real edge.
using EdgeId = int;

inline EdgeId edge_id(const MergeTree& t, NodeIndex lower) {
  return t.is_root(lower) ? static_cast<EdgeId>(t.size()) : lower;
}
inline EdgeId ray_id(const MergeTree& t) { return static_cast<EdgeId>(t.size()); }

/// Aligned super-level heights: heights2[i] == heights1[i] + delta.
struct SuperLevels {
  std::vector<Rational> heights1;
  std::vector<Rational> heights2;
  Rational delta;

  std::size_t size() const { return heights1.size(); }
};

inline SuperLevels build_super_levels(const MergeTree& t1, const MergeTree& t2, const Rational& delta) {
  if (delta < 0) throw std::invalid_argument("build_super_levels: negative delta");
  SuperLevels sl;
  sl.delta = delta;
  for (std::size_t v = 0; v < t1.size(); ++v) sl.heights1.push_back(t1.height(static_cast<NodeIndex>(v)));
  for (std::size_t v = 0; v < t2.size(); ++v) sl.heights1.push_back(t2.height(static_cast<NodeIndex>(v)) - delta);
  std::sort(sl.heights1.begin(), sl.heights1.end());
  sl.heights1.erase(std::unique(sl.heights1.begin(), sl.heights1.end()), sl.heights1.end());
  for (const auto& h : sl.heights1) sl.heights2.push_back(h + delta);
  return sl;
}

struct AugNode {
  NodeIndex host = kNoNode;      // lower endpoint of the base edge holding this node
  int level = 0;
  NodeIndex original = kNoNode;  // base node at this position, if any
  AugIndex parent = kNoNode;     // kNoNode only at the top level
  std::vector<AugIndex> children;
  Rational depth;                // depth_below in the base tree
};

/// A merge tree subdivided at every super-level height. Every augmented node
/// sits on a level and its children sit on the level directly below.
class AugmentedTree {
 public:
  const MergeTree& base() const { return base_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t level_count() const { return heights_.size(); }
  const Rational& level_height(int i) const { return heights_[i]; }
  std::span<const AugIndex> level(int i) const { return levels_[i]; }
  const AugNode& node(AugIndex a) const { return nodes_[a]; }
  bool is_original(AugIndex a) const { return nodes_[a].original != kNoNode; }
  EdgeId edge(AugIndex a) const { return edge_id(base_, nodes_[a].host); }
  MergePoint point(AugIndex a) const { return {nodes_[a].host, heights_[nodes_[a].level]}; }
  AugIndex root() const { return levels_.back().front(); }

  /// Node on level i hosted by the edge above `host`, or kNoNode.
  AugIndex at(int level, NodeIndex host) const {
    return by_level_host_[static_cast<std::size_t>(level) * base_.size() + host];
  }

  friend AugmentedTree augment(const MergeTree& t, std::span<const Rational> level_heights);

 private:
  MergeTree base_;
  std::vector<Rational> heights_;
  std::vector<AugNode> nodes_;
  std::vector<std::vector<AugIndex>> levels_;
  std::vector<AugIndex> by_level_host_;
};

/// Subdivides every edge (and the ray, up to the top level) at each level height.
/// `level_heights` must be strictly increasing and contain every node height of t.
inline AugmentedTree augment(const MergeTree& t, std::span<const Rational> level_heights) {
  if (level_heights.empty()) throw std::invalid_argument("augment: no levels");
  for (std::size_t i = 1; i < level_heights.size(); ++i)
    if (!(level_heights[i - 1] < level_heights[i])) throw std::invalid_argument("augment: levels not increasing");
  for (std::size_t v = 0; v < t.size(); ++v)
    if (!std::binary_search(level_heights.begin(), level_heights.end(), t.height(static_cast<NodeIndex>(v))))
      throw std::invalid_argument("augment: height of '" + t.id(static_cast<NodeIndex>(v)) + "' is not a level");
  if (level_heights.back() < t.height(t.root())) throw std::invalid_argument("augment: top level below root");

  AugmentedTree a;
  a.base_ = t;
  a.heights_.assign(level_heights.begin(), level_heights.end());
  const std::size_t m = level_heights.size();
  const std::size_t n = t.size();
  a.levels_.assign(m, {});
  a.by_level_host_.assign(m * n, kNoNode);

  for (std::size_t i = 0; i < m; ++i) {
    const Rational& h = level_heights[i];
    for (std::size_t c = 0; c < n; ++c) {
      auto host = static_cast<NodeIndex>(c);
      if (!is_valid_point(t, {host, h})) continue;
      AugNode node;
      node.host = host;
      node.level = static_cast<int>(i);
      node.original = (h == t.height(host)) ? host : kNoNode;
      node.depth = h - t.subtree_min(host);
      auto idx = static_cast<AugIndex>(a.nodes_.size());
      a.nodes_.push_back(std::move(node));
      a.levels_[i].push_back(idx);
      a.by_level_host_[i * n + c] = idx;
    }
  }

  for (std::size_t idx = 0; idx < a.nodes_.size(); ++idx) {
    AugNode& node = a.nodes_[idx];
    if (node.level == 0) continue;
    const int below = node.level - 1;
    if (node.original != kNoNode) {
      for (NodeIndex c : t.children(node.host)) node.children.push_back(a.at(below, c));
    } else if (AugIndex c = a.at(below, node.host); c != kNoNode) {
      node.children.push_back(c);
    }
    for (AugIndex c : node.children) a.nodes_[c].parent = static_cast<AugIndex>(idx);
  }
  return a;
}

/// (S, w) on one level: S from tree 1, w from tree 2, all of S sharing the
/// ancestor at height h_i + 2 delta.
struct ValidPair {
  std::vector<AugIndex> S;
  AugIndex w = kNoNode;
  int level = 0;

  friend bool operator==(const ValidPair&, const ValidPair&) = default;
  friend auto operator<=>(const ValidPair&, const ValidPair&) = default;
};

/// For each augmented node of tree 1, the base node below its ancestor at
/// height level + 2 delta. Two nodes of one level may share a valid set iff
/// their keys agree.
inline std::vector<NodeIndex> valid_group_keys(const AugmentedTree& a1, const Rational& delta) {
  std::vector<NodeIndex> keys(a1.size(), kNoNode);
  const Rational up = delta + delta;
  for (std::size_t x = 0; x < a1.size(); ++x)
    keys[x] = ancestor_at_height(a1.base(), a1.point(static_cast<AugIndex>(x)), up).lower;
  return keys;
}

/// Level-i nodes of tree 1 partitioned by shared 2 delta-ancestor, in level order.
inline std::vector<std::vector<AugIndex>> valid_groups(const AugmentedTree& a1, int level,
                                                       std::span<const NodeIndex> keys) {
  std::vector<std::vector<AugIndex>> groups;
  std::map<NodeIndex, std::size_t> slot;
  for (AugIndex x : a1.level(level)) {
    auto [it, fresh] = slot.emplace(keys[x], groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(x);
  }
  return groups;
}

/// Upper limit on a single 2 delta-group; subsets are enumerated exhaustively.
inline constexpr std::size_t kMaxGroupSize = 24;

/// Every nonempty subset of every group on the level, members ascending.
inline std::vector<std::vector<AugIndex>> enumerate_valid_sets(const AugmentedTree& a1, int level,
                                                               std::span<const NodeIndex> keys) {
  std::vector<std::vector<AugIndex>> sets;
  for (const auto& g : valid_groups(a1, level, keys)) {
    if (g.size() > kMaxGroupSize)
      throw std::length_error("valid-pair group of size " + std::to_string(g.size()) + " is beyond the enumeration limit");
    const std::uint32_t full = (std::uint32_t{1} << g.size()) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      std::vector<AugIndex> s;
      for (std::size_t b = 0; b < g.size(); ++b)
        if (mask & (std::uint32_t{1} << b)) s.push_back(g[b]);
      sets.push_back(std::move(s));
    }
  }
  return sets;
}

inline std::vector<std::vector<ValidPair>> enumerate_valid_pairs(const AugmentedTree& a1, const AugmentedTree& a2,
                                                                 const Rational& delta) {
  const auto keys = valid_group_keys(a1, delta);
  std::vector<std::vector<ValidPair>> out(a1.level_count());
  for (std::size_t i = 0; i < a1.level_count(); ++i) {
    const int lvl = static_cast<int>(i);
    for (auto& s : enumerate_valid_sets(a1, lvl, keys))
      for (AugIndex w : a2.level(lvl)) out[i].push_back({s, w, lvl});
  }
  return out;
}

/// Union of the children of S, ascending.
inline std::vector<AugIndex> children_of_set(const AugmentedTree& a, std::span<const AugIndex> s) {
  std::vector<AugIndex> c;
  for (AugIndex x : s) c.insert(c.end(), a.node(x).children.begin(), a.node(x).children.end());
  std::sort(c.begin(), c.end());
  return c;
}

/// (C-1): S, its children, or its parents contain an original node of tree 1.
inline bool touches_original_set(const AugmentedTree& a1, std::span<const AugIndex> s) {
  for (AugIndex x : s) {
    const AugNode& node = a1.node(x);
    if (node.original != kNoNode) return true;
    if (node.parent != kNoNode && a1.is_original(node.parent)) return true;
    for (AugIndex c : node.children)
      if (a1.is_original(c)) return true;
  }
  return false;
}

/// (C-2): w, its children, or its parent is an original node of tree 2.
inline bool touches_original_node(const AugmentedTree& a2, AugIndex w) {
  std::array<AugIndex, 1> one{w};
  return touches_original_set(a2, one);
}

/// Sorted host edges of S in tree 1, plus the host edge of w in tree 2.
struct EdgeListPair {
  std::vector<EdgeId> A;
  EdgeId alpha = 0;

  friend bool operator==(const EdgeListPair&, const EdgeListPair&) = default;
  friend auto operator<=>(const EdgeListPair&, const EdgeListPair&) = default;

  /// [A..., alpha]: the key sequence of the edge-list index.
  std::vector<EdgeId> key() const {
    std::vector<EdgeId> k = A;
    k.push_back(alpha);
    return k;
  }
};

inline EdgeListPair edge_list_of(const AugmentedTree& a1, const AugmentedTree& a2, std::span<const AugIndex> s,
                                 AugIndex w) {
  EdgeListPair p;
  for (AugIndex x : s) p.A.push_back(a1.edge(x));
  std::sort(p.A.begin(), p.A.end());
  p.A.erase(std::unique(p.A.begin(), p.A.end()), p.A.end());
  p.alpha = a2.edge(w);
  return p;
}

struct SensiblePairs {
  std::vector<std::vector<ValidPair>> by_level;
  /// Each supporting edge-list pair -> (level, position in by_level[level]).
  std::map<EdgeListPair, std::vector<std::pair<int, std::size_t>>> buckets;
};

/// Valid pairs satisfying (C-1) or (C-2). Sets that fail (C-1) are only paired
/// with the few w that satisfy (C-2), so the valid pairs are never materialized.
inline SensiblePairs enumerate_sensible_pairs(const AugmentedTree& a1, const AugmentedTree& a2,
                                              const Rational& delta) {
  const auto keys = valid_group_keys(a1, delta);
  SensiblePairs out;
  out.by_level.assign(a1.level_count(), {});
  for (std::size_t i = 0; i < a1.level_count(); ++i) {
    const int lvl = static_cast<int>(i);
    std::vector<AugIndex> c2;
    for (AugIndex w : a2.level(lvl))
      if (touches_original_node(a2, w)) c2.push_back(w);
    for (auto& s : enumerate_valid_sets(a1, lvl, keys)) {
      const bool c1 = touches_original_set(a1, s);
      std::span<const AugIndex> partners = c1 ? a2.level(lvl) : std::span<const AugIndex>(c2);
      for (AugIndex w : partners) {
        out.buckets[edge_list_of(a1, a2, s, w)].emplace_back(lvl, out.by_level[i].size());
        out.by_level[i].push_back({s, w, lvl});
      }
    }
  }
  return out;
}

}  // namespace treedist
