#pragma once

#include "treedist/merge_tree.hpp"

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace treedist {

struct MetricEdgeSpec {
  std::string u;
  std::string v;
  Rational length;
};

struct Neighbor {
  NodeIndex node;
  Rational length;
};

/// Positively weighted unrooted tree under its shortest-path metric.
class MetricTree {
 public:
  std::size_t size() const { return ids_.size(); }
  const std::string& id(NodeIndex v) const { return ids_[v]; }
  std::span<const Neighbor> neighbors(NodeIndex v) const { return adj_[v]; }
  int degree(NodeIndex v) const { return static_cast<int>(adj_[v].size()); }
  const std::vector<MetricEdgeSpec>& edges() const { return edges_; }

  std::optional<NodeIndex> find(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Same structure with every edge length multiplied by `factor` (> 0).
  MetricTree scaled(const Rational& factor) const;

  friend bool operator==(const MetricTree& a, const MetricTree& b) {
    if (a.ids_ != b.ids_ || a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
      const auto& x = a.edges_[i];
      const auto& y = b.edges_[i];
      if (x.u != y.u || x.v != y.v || x.length != y.length) return false;
    }
    return true;
  }

  friend MetricTree validate_metric_tree(const std::vector<std::string>& nodes,
                                         const std::vector<MetricEdgeSpec>& edges);

 private:
  std::vector<std::string> ids_;
  std::vector<MetricEdgeSpec> edges_;
  std::vector<std::vector<Neighbor>> adj_;
  std::unordered_map<std::string, NodeIndex> index_;
};

inline MetricTree validate_metric_tree(const std::vector<std::string>& nodes,
                                       const std::vector<MetricEdgeSpec>& edges) {
  if (nodes.empty()) throw TreeError(TreeErrorKind::Empty, "metric tree has no nodes");
  MetricTree t;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!t.index_.emplace(nodes[i], static_cast<NodeIndex>(i)).second)
      throw TreeError(TreeErrorKind::DuplicateNode, "duplicate node id '" + nodes[i] + "'");
    t.ids_.push_back(nodes[i]);
  }
  t.adj_.assign(nodes.size(), {});
  auto lookup = [&](const std::string& id) {
    auto it = t.index_.find(id);
    if (it == t.index_.end()) throw TreeError(TreeErrorKind::UnknownNode, "unknown node id '" + id + "'");
    return it->second;
  };
  for (const auto& e : edges) {
    NodeIndex a = lookup(e.u);
    NodeIndex b = lookup(e.v);
    if (a == b) throw TreeError(TreeErrorKind::SelfLoop, "self loop at '" + e.u + "'");
    if (!(e.length > 0))
      throw TreeError(TreeErrorKind::NonPositiveLength, "edge " + e.u + "-" + e.v + " has non-positive length");
    t.adj_[a].push_back({b, e.length});
    t.adj_[b].push_back({a, e.length});
    t.edges_.push_back(e);
  }
  if (edges.size() + 1 != nodes.size()) {
    if (edges.size() + 1 > nodes.size())
      throw TreeError(TreeErrorKind::Cycle, "cycle detected: too many edges for a tree");
    throw TreeError(TreeErrorKind::Disconnected, "metric tree is disconnected");
  }
  // n-1 edges plus connectivity means acyclic.
  std::vector<bool> seen(nodes.size(), false);
  std::vector<NodeIndex> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeIndex v = stack.back();
    stack.pop_back();
    for (const auto& nb : t.adj_[v])
      if (!seen[nb.node]) {
        seen[nb.node] = true;
        ++reached;
        stack.push_back(nb.node);
      }
  }
  if (reached != nodes.size()) throw TreeError(TreeErrorKind::Cycle, "cycle detected: edges do not span the nodes");
  return t;
}

inline MetricTree MetricTree::scaled(const Rational& factor) const {
  if (!(factor > 0)) throw std::invalid_argument("scale factor must be positive");
  std::vector<MetricEdgeSpec> es = edges_;
  for (auto& e : es) e.length *= factor;
  return validate_metric_tree(ids_, es);
}

/// Distances from `source` to every node, plus the BFS parent of each node.
struct SingleSourcePaths {
  std::vector<Rational> dist;
  std::vector<NodeIndex> parent;
  std::vector<NodeIndex> order;
};

inline SingleSourcePaths single_source(const MetricTree& t, NodeIndex source) {
  SingleSourcePaths sp;
  sp.dist.assign(t.size(), Rational(0));
  sp.parent.assign(t.size(), kNoNode);
  std::vector<bool> seen(t.size(), false);
  sp.order.push_back(source);
  seen[source] = true;
  for (std::size_t k = 0; k < sp.order.size(); ++k) {
    NodeIndex v = sp.order[k];
    for (const auto& nb : t.neighbors(v))
      if (!seen[nb.node]) {
        seen[nb.node] = true;
        sp.dist[nb.node] = sp.dist[v] + nb.length;
        sp.parent[nb.node] = v;
        sp.order.push_back(nb.node);
      }
  }
  return sp;
}

inline Rational geodesic_distance(const MetricTree& t, NodeIndex x, NodeIndex y) {
  return single_source(t, x).dist[y];
}

inline std::vector<std::vector<Rational>> all_pairs_distances(const MetricTree& t) {
  std::vector<std::vector<Rational>> d;
  d.reserve(t.size());
  for (std::size_t v = 0; v < t.size(); ++v) d.push_back(single_source(t, static_cast<NodeIndex>(v)).dist);
  return d;
}

/// Merge tree of the height function x -> -d(x, u): the tree re-rooted at u.
inline MergeTree merge_tree_from_root(const MetricTree& t, NodeIndex u) {
  if (u < 0 || static_cast<std::size_t>(u) >= t.size()) throw std::out_of_range("merge_tree_from_root: unknown node");
  SingleSourcePaths sp = single_source(t, u);
  std::vector<MergeNodeSpec> nodes;
  for (std::size_t v = 0; v < t.size(); ++v) nodes.push_back({t.id(static_cast<NodeIndex>(v)), -sp.dist[v]});
  std::vector<MergeEdgeSpec> edges;
  for (NodeIndex v : sp.order)
    if (sp.parent[v] != kNoNode) edges.push_back({t.id(v), t.id(sp.parent[v])});
  return validate_merge_tree(nodes, edges);
}

inline MergeTree merge_tree_from_root(const MetricTree& t, const std::string& u) {
  auto idx = t.find(u);
  if (!idx) throw TreeError(TreeErrorKind::UnknownNode, "unknown node id '" + u + "'");
  return merge_tree_from_root(t, *idx);
}

}  // namespace treedist
