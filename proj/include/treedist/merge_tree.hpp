#pragma once

#include "treedist/rational.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace treedist {

using NodeIndex = int;
inline constexpr NodeIndex kNoNode = -1;

enum class TreeErrorKind {
  Empty,
  DuplicateNode,
  UnknownNode,
  MultipleParents,
  MultipleRoots,
  NoRoot,
  Cycle,
  NonIncreasingHeight,
  NonPositiveLength,
  SelfLoop,
  Disconnected,
};

class TreeError : public std::runtime_error {
 public:
  TreeError(TreeErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  TreeErrorKind kind() const { return kind_; }

 private:
  TreeErrorKind kind_;
};

struct MergeNodeSpec {
  std::string id;
  Rational height;
};

struct MergeEdgeSpec {
  std::string child;
  std::string parent;
};

/// Rooted tree whose height strictly increases from child to parent.
///
/// The root carries an implicit ray to +infinity, so every height at or above
/// the root's height is a valid point. Node degree means downward degree.
class MergeTree {
 public:
  std::size_t size() const { return ids_.size(); }
  NodeIndex root() const { return root_; }
  const std::string& id(NodeIndex v) const { return ids_[v]; }
  const Rational& height(NodeIndex v) const { return heights_[v]; }
  NodeIndex parent(NodeIndex v) const { return parents_[v]; }
  std::span<const NodeIndex> children(NodeIndex v) const { return children_[v]; }
  bool is_root(NodeIndex v) const { return v == root_; }
  bool is_leaf(NodeIndex v) const { return children_[v].empty(); }

  /// Lowest height found in the subtree of v (v included).
  const Rational& subtree_min(NodeIndex v) const { return subtree_min_[v]; }
  /// Number of edges between v and the root.
  int node_depth(NodeIndex v) const { return node_depth_[v]; }

  std::optional<NodeIndex> find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// a is an ancestor of b (a == b counts).
  bool is_ancestor_node(NodeIndex a, NodeIndex b) const {
    while (b != kNoNode && node_depth_[b] > node_depth_[a]) b = parents_[b];
    return a == b;
  }

  NodeIndex lca_node(NodeIndex a, NodeIndex b) const {
    while (node_depth_[a] > node_depth_[b]) a = parents_[a];
    while (node_depth_[b] > node_depth_[a]) b = parents_[b];
    while (a != b) {
      a = parents_[a];
      b = parents_[b];
    }
    return a;
  }

  std::vector<Rational> node_heights() const { return heights_; }

  /// Same tree with every height moved by `offset`.
  MergeTree shifted(const Rational& offset) const {
    MergeTree t = *this;
    for (auto& h : t.heights_) h += offset;
    for (auto& h : t.subtree_min_) h += offset;
    return t;
  }

  std::vector<MergeNodeSpec> node_specs() const {
    std::vector<MergeNodeSpec> out;
    for (std::size_t v = 0; v < size(); ++v) out.push_back({ids_[v], heights_[v]});
    return out;
  }

  /// Edges grouped by parent in children order; rebuilding from these keeps children order.
  std::vector<MergeEdgeSpec> edge_specs() const {
    std::vector<MergeEdgeSpec> out;
    for (std::size_t p = 0; p < size(); ++p)
      for (NodeIndex c : children_[p]) out.push_back({ids_[c], ids_[p]});
    return out;
  }

  friend bool operator==(const MergeTree& a, const MergeTree& b) {
    return a.ids_ == b.ids_ && a.heights_ == b.heights_ && a.parents_ == b.parents_ &&
           a.children_ == b.children_;
  }

  friend MergeTree validate_merge_tree(const std::vector<MergeNodeSpec>& nodes,
                                       const std::vector<MergeEdgeSpec>& edges);

 private:
  std::vector<std::string> ids_;
  std::vector<Rational> heights_;
  std::vector<NodeIndex> parents_;
  std::vector<std::vector<NodeIndex>> children_;
  std::vector<Rational> subtree_min_;
  std::vector<int> node_depth_;
  std::unordered_map<std::string, NodeIndex> index_;
  NodeIndex root_ = kNoNode;
};

/// Builds a MergeTree, rejecting anything that is not a single rooted tree with
/// strictly increasing heights toward the root.
inline MergeTree validate_merge_tree(const std::vector<MergeNodeSpec>& nodes,
                                     const std::vector<MergeEdgeSpec>& edges) {
  if (nodes.empty()) throw TreeError(TreeErrorKind::Empty, "merge tree has no nodes");

  MergeTree t;
  const std::size_t n = nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!t.index_.emplace(nodes[i].id, static_cast<NodeIndex>(i)).second)
      throw TreeError(TreeErrorKind::DuplicateNode, "duplicate node id '" + nodes[i].id + "'");
    t.ids_.push_back(nodes[i].id);
    t.heights_.push_back(nodes[i].height);
  }
  t.parents_.assign(n, kNoNode);
  t.children_.assign(n, {});

  auto lookup = [&](const std::string& id) {
    auto it = t.index_.find(id);
    if (it == t.index_.end()) throw TreeError(TreeErrorKind::UnknownNode, "unknown node id '" + id + "'");
    return it->second;
  };
  for (const auto& e : edges) {
    NodeIndex c = lookup(e.child);
    NodeIndex p = lookup(e.parent);
    if (c == p) throw TreeError(TreeErrorKind::SelfLoop, "self loop at '" + e.child + "'");
    if (t.parents_[c] != kNoNode)
      throw TreeError(TreeErrorKind::MultipleParents, "node '" + e.child + "' has more than one parent");
    t.parents_[c] = p;
    t.children_[p].push_back(c);
  }

  std::vector<NodeIndex> roots;
  for (std::size_t v = 0; v < n; ++v)
    if (t.parents_[v] == kNoNode) roots.push_back(static_cast<NodeIndex>(v));
  if (roots.empty()) throw TreeError(TreeErrorKind::NoRoot, "no root: every node has a parent (cycle)");
  if (roots.size() > 1)
    throw TreeError(TreeErrorKind::MultipleRoots,
                    "multiple roots: '" + t.ids_[roots[0]] + "' and '" + t.ids_[roots[1]] + "'");
  t.root_ = roots.front();

  // Preorder from the root; anything unreached sits on a cycle.
  t.node_depth_.assign(n, -1);
  std::vector<NodeIndex> order{t.root_};
  t.node_depth_[t.root_] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    NodeIndex v = order[k];
    for (NodeIndex c : t.children_[v]) {
      t.node_depth_[c] = t.node_depth_[v] + 1;
      order.push_back(c);
    }
  }
  if (order.size() != n) throw TreeError(TreeErrorKind::Cycle, "cycle detected: not every node reaches the root");

  for (std::size_t v = 0; v < n; ++v) {
    NodeIndex p = t.parents_[v];
    if (p != kNoNode && !(t.heights_[p] > t.heights_[v]))
      throw TreeError(TreeErrorKind::NonIncreasingHeight,
                      "height of '" + t.ids_[v] + "' (" + t.heights_[v].str() + ") is not below its parent '" +
                          t.ids_[p] + "' (" + t.heights_[p].str() + ")");
  }

  t.subtree_min_ = t.heights_;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeIndex p = t.parents_[*it];
    if (p != kNoNode) t.subtree_min_[p] = min(t.subtree_min_[p], t.subtree_min_[*it]);
  }
  return t;
}

/// A point of |T|. `lower` is the lower endpoint of the edge holding the point:
/// height(lower) <= height < height(parent(lower)), or height >= height(root)
/// when lower is the root (the ray). A tree node v is {v, height(v)}.
struct MergePoint {
  NodeIndex lower = kNoNode;
  Rational height;

  friend bool operator==(const MergePoint&, const MergePoint&) = default;
};

inline MergePoint node_point(const MergeTree& t, NodeIndex v) { return {v, t.height(v)}; }

inline bool is_valid_point(const MergeTree& t, const MergePoint& p) {
  if (p.lower < 0 || static_cast<std::size_t>(p.lower) >= t.size()) return false;
  if (p.height < t.height(p.lower)) return false;
  NodeIndex up = t.parent(p.lower);
  return up == kNoNode || p.height < t.height(up);
}

/// Canonical point at `height` on the edge above `lower` (or the ray).
inline MergePoint make_point(const MergeTree& t, NodeIndex lower, const Rational& height) {
  MergePoint p{lower, height};
  if (!is_valid_point(t, p)) throw std::out_of_range("height " + height.str() + " is off the edge above '" + t.id(lower) + "'");
  return p;
}

/// The unique ancestor of p lying `eps` higher; lands on the ray past the root.
inline MergePoint ancestor_at_height(const MergeTree& t, const MergePoint& p, const Rational& eps) {
  if (eps < 0) throw std::invalid_argument("ancestor_at_height: negative eps");
  Rational target = p.height + eps;
  NodeIndex v = p.lower;
  for (NodeIndex up = t.parent(v); up != kNoNode && t.height(up) <= target; up = t.parent(v)) v = up;
  return {v, target};
}

/// Largest height drop from p to a point in its subtree.
inline Rational depth_below(const MergeTree& t, const MergePoint& p) { return p.height - t.subtree_min(p.lower); }

/// p is an ancestor of q (p == q counts).
inline bool is_ancestor(const MergeTree& t, const MergePoint& p, const MergePoint& q) {
  if (p.height < q.height) return false;
  return ancestor_at_height(t, q, p.height - q.height) == p;
}

inline MergePoint lca(const MergeTree& t, const MergePoint& p, const MergePoint& q) {
  NodeIndex x = t.lca_node(p.lower, q.lower);
  if (x == p.lower && x == q.lower) return p.height >= q.height ? p : q;
  if (x == p.lower) return p;  // q hangs strictly below p's edge
  if (x == q.lower) return q;
  return node_point(t, x);
}

}  // namespace treedist
