#pragma once

#include "treedist/augmentation.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace treedist {

enum class Engine { Slow, Fast };

/// Work counters of a single decide call.
struct DecisionStats {
  std::size_t levels = 0;
  std::size_t pairs_inspected = 0;   // F entries computed
  std::size_t valid_sets = 0;        // valid S enumerated
  std::size_t max_set_size = 0;      // largest |S|
  std::size_t max_children = 0;      // largest |C(S)|
  std::size_t max_bucket = 0;        // largest edge-list bucket (fast only)
  std::size_t assignments = 0;       // complete partitions examined
  std::size_t index_queries = 0;     // edge-list lookups (fast only)

  void absorb_set(const AugmentedTree& a1, std::span<const AugIndex> s) {
    ++valid_sets;
    max_set_size = std::max(max_set_size, s.size());
    std::size_t c = 0;
    for (AugIndex x : s) c += a1.node(x).children.size();
    max_children = std::max(max_children, c);
  }
};

/// Searches for a partition of C(S) over the children of w.
///
/// Each member of `cs` is assigned to one child in `cw`. Members sharing a
/// child must share `group_key`. A child left empty needs `empty_ok[j]`; a
/// nonempty class S_j needs `lookup(S_j, w_j)`. With no children on either
/// side the answer is true; children in S but none in w is false.
template <class GroupKey, class Lookup>
bool feasibility_recurrence(std::span<const AugIndex> cs, std::span<const AugIndex> cw,
                            const std::vector<bool>& empty_ok, GroupKey group_key, Lookup lookup,
                            DecisionStats* stats = nullptr) {
  if (cw.empty()) return cs.empty();
  const std::size_t k = cw.size();
  const std::size_t m = cs.size();

  std::size_t forced = 0;
  for (std::size_t j = 0; j < k; ++j)
    if (!empty_ok[j]) ++forced;
  if (forced > m) return false;

  std::vector<std::vector<AugIndex>> classes(k);
  std::map<std::pair<std::size_t, std::vector<AugIndex>>, bool> memo;

  auto class_ok = [&](std::size_t j) {
    if (classes[j].empty()) return static_cast<bool>(empty_ok[j]);
    auto key = std::make_pair(j, classes[j]);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool v = lookup(std::span<const AugIndex>(classes[j]), cw[j]);
    memo.emplace(std::move(key), v);
    return v;
  };

  // Assign members in order; `unfilled` counts children that still need one.
  auto search = [&](auto&& self, std::size_t pos, std::size_t unfilled) -> bool {
    if (unfilled > m - pos) return false;
    if (pos == m) {
      if (stats) ++stats->assignments;
      for (std::size_t j = 0; j < k; ++j)
        if (!class_ok(j)) return false;
      return true;
    }
    const AugIndex x = cs[pos];
    for (std::size_t j = 0; j < k; ++j) {
      auto& cl = classes[j];
      if (!cl.empty() && group_key(cl.front()) != group_key(x)) continue;
      const bool fills = cl.empty() && !empty_ok[j];
      cl.push_back(x);
      bool ok = self(self, pos + 1, unfilled - (fills ? 1 : 0));
      cl.pop_back();
      if (ok) return true;
    }
    return false;
  };
  return search(search, 0, forced);
}

namespace detail {

using PairKey = std::pair<std::vector<AugIndex>, AugIndex>;
using LevelTable = std::map<PairKey, bool>;

struct DecideSetup {
  SuperLevels levels;
  AugmentedTree a1;
  AugmentedTree a2;
  std::vector<NodeIndex> keys;
  Rational two_delta;
};

inline DecideSetup setup(const MergeTree& t1, const MergeTree& t2, const Rational& delta) {
  if (delta < 0) throw std::invalid_argument("decide: negative delta");
  SuperLevels sl = build_super_levels(t1, t2, delta);
  AugmentedTree a1 = augment(t1, sl.heights1);
  AugmentedTree a2 = augment(t2, sl.heights2);
  auto keys = valid_group_keys(a1, delta);
  return {std::move(sl), std::move(a1), std::move(a2), std::move(keys), delta + delta};
}

// Evaluates F(S, w) on level i > 0 given a lookup for level i-1 pairs.
template <class Lookup>
bool recurrence_at(const DecideSetup& d, const std::vector<AugIndex>& s, AugIndex w, int level, Lookup lookup,
                   DecisionStats& stats) {
  const auto cs = children_of_set(d.a1, s);
  const auto& cw = d.a2.node(w).children;
  const Rational budget = d.two_delta - (d.a2.level_height(level) - d.a2.level_height(level - 1));
  std::vector<bool> empty_ok(cw.size());
  for (std::size_t j = 0; j < cw.size(); ++j) empty_ok[j] = d.a2.node(cw[j]).depth <= budget;
  return feasibility_recurrence(
      std::span<const AugIndex>(cs), std::span<const AugIndex>(cw), empty_ok,
      [&](AugIndex x) { return d.keys[x]; }, lookup, &stats);
}

inline bool base_value(const DecideSetup& d, AugIndex w) { return d.a2.node(w).depth <= d.two_delta; }

}  // namespace detail

/// Is d_I(T1, T2) <= delta? Evaluates F on every valid pair, level by level.
inline bool decide_slow(const MergeTree& t1, const MergeTree& t2, const Rational& delta,
                        DecisionStats* stats_out = nullptr) {
  auto d = detail::setup(t1, t2, delta);
  DecisionStats stats;
  stats.levels = d.levels.size();
  detail::LevelTable prev;
  detail::LevelTable cur;
  for (std::size_t i = 0; i < d.levels.size(); ++i) {
    const int lvl = static_cast<int>(i);
    cur.clear();
    auto lookup = [&](std::span<const AugIndex> s, AugIndex w) {
      auto it = prev.find({std::vector<AugIndex>(s.begin(), s.end()), w});
      return it != prev.end() && it->second;
    };
    for (auto& s : enumerate_valid_sets(d.a1, lvl, d.keys)) {
      stats.absorb_set(d.a1, s);
      for (AugIndex w : d.a2.level(lvl)) {
        ++stats.pairs_inspected;
        bool v = lvl == 0 ? detail::base_value(d, w) : detail::recurrence_at(d, s, w, lvl, lookup, stats);
        cur.emplace(detail::PairKey{s, w}, v);
      }
    }
    std::swap(prev, cur);
  }
  if (stats_out) *stats_out = stats;
  auto it = prev.find({{d.a1.root()}, d.a2.root()});
  return it != prev.end() && it->second;
}

/// Ordered trie over edge-list keys [A..., alpha]; each leaf holds the
/// sensible pairs it supports as (level, F), ascending by level.
class EdgeListIndex {
 public:
  void insert(const EdgeListPair& p, int level, bool value) {
    Node* node = &root_;
    for (EdgeId e : p.key()) {
      auto& slot = node->next[e];
      if (!slot) slot = std::make_unique<Node>();
      node = slot.get();
    }
    auto& payload = node->payload;
    auto pos = std::upper_bound(payload.begin(), payload.end(), level,
                                [](int l, const std::pair<int, bool>& e) { return l < e.first; });
    payload.insert(pos, {level, value});
    max_bucket_ = std::max(max_bucket_, payload.size());
  }

  /// F of the highest supported sensible pair strictly below `level`.
  std::optional<bool> highest_below(const EdgeListPair& p, int level) const {
    const Node* node = &root_;
    for (EdgeId e : p.key()) {
      auto it = node->next.find(e);
      if (it == node->next.end()) return std::nullopt;
      node = it->second.get();
    }
    const auto& payload = node->payload;
    auto pos = std::lower_bound(payload.begin(), payload.end(), level,
                                [](const std::pair<int, bool>& e, int l) { return e.first < l; });
    if (pos == payload.begin()) return std::nullopt;
    return std::prev(pos)->second;
  }

  std::size_t max_bucket() const { return max_bucket_; }

 private:
  struct Node {
    std::map<EdgeId, std::unique_ptr<Node>> next;
    std::vector<std::pair<int, bool>> payload;
  };
  Node root_;
  std::size_t max_bucket_ = 0;
};

/// Same answer as decide_slow, computing F only on sensible pairs. A valid
/// pair that is not sensible inherits F from the highest sensible pair below
/// it on the same edge list, or 0 when there is none.
inline bool decide_fast(const MergeTree& t1, const MergeTree& t2, const Rational& delta,
                        DecisionStats* stats_out = nullptr) {
  auto d = detail::setup(t1, t2, delta);
  DecisionStats stats;
  stats.levels = d.levels.size();
  SensiblePairs sp = enumerate_sensible_pairs(d.a1, d.a2, delta);
  EdgeListIndex index;
  detail::LevelTable prev;
  detail::LevelTable cur;
  bool answer = false;

  for (std::size_t i = 0; i < d.levels.size(); ++i) {
    const int lvl = static_cast<int>(i);
    cur.clear();
    auto lookup = [&](std::span<const AugIndex> s, AugIndex w) {
      std::vector<AugIndex> key(s.begin(), s.end());
      if (auto it = prev.find({key, w}); it != prev.end()) return it->second;
      ++stats.index_queries;
      return index.highest_below(edge_list_of(d.a1, d.a2, s, w), lvl - 1).value_or(false);
    };
    const std::vector<AugIndex>* last = nullptr;
    for (const auto& pair : sp.by_level[i]) {
      if (last == nullptr || *last != pair.S) stats.absorb_set(d.a1, pair.S);
      last = &pair.S;
      ++stats.pairs_inspected;
      bool v = lvl == 0 ? detail::base_value(d, pair.w) : detail::recurrence_at(d, pair.S, pair.w, lvl, lookup, stats);
      cur.emplace(detail::PairKey{pair.S, pair.w}, v);
    }
    for (const auto& [key, v] : prev) index.insert(edge_list_of(d.a1, d.a2, key.first, key.second), lvl - 1, v);
    std::swap(prev, cur);
  }
  if (auto it = prev.find({{d.a1.root()}, d.a2.root()}); it != prev.end()) answer = it->second;
  stats.max_bucket = index.max_bucket();
  for (const auto& [p, v] : sp.buckets) stats.max_bucket = std::max(stats.max_bucket, v.size());
  if (stats_out) *stats_out = stats;
  return answer;
}

inline bool decide(const MergeTree& t1, const MergeTree& t2, const Rational& delta, Engine engine = Engine::Fast,
                   DecisionStats* stats = nullptr) {
  return engine == Engine::Slow ? decide_slow(t1, t2, delta, stats) : decide_fast(t1, t2, delta, stats);
}

}  // namespace treedist
