#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace treedist;
using namespace treedist::testing;

namespace {

MergeTree two_leaves() { return merge({{"a", 0}, {"b", 2}, {"r", 4}}, {{"a", "r"}, {"b", "r"}}); }

TreeErrorKind error_kind(const std::vector<MergeNodeSpec>& n, const std::vector<MergeEdgeSpec>& e) {
  try {
    validate_merge_tree(n, e);
  } catch (const TreeError& err) {
    return err.kind();
  }
  ADD_FAILURE() << "tree accepted";
  return TreeErrorKind::Empty;
}

}  // namespace

TEST(ValidateMergeTree, MinimalTree) {
  auto t = merge({{"a", 0}, {"r", 5}}, {{"a", "r"}});
  EXPECT_EQ(t.id(t.root()), "r");
  EXPECT_EQ(t.size(), 2u);
}

TEST(ValidateMergeTree, ChildrenKeepOrder) {
  auto t = merge({{"a", 0}, {"b", 0}, {"r", 4}}, {{"a", "r"}, {"b", "r"}});
  ASSERT_EQ(t.children(t.root()).size(), 2u);
  EXPECT_EQ(t.id(t.children(t.root())[0]), "a");
  EXPECT_EQ(t.id(t.children(t.root())[1]), "b");
}

TEST(ValidateMergeTree, Rejections) {
  EXPECT_EQ(error_kind({{"a", 3}, {"r", 3}}, {{"a", "r"}}), TreeErrorKind::NonIncreasingHeight);
  EXPECT_EQ(error_kind({{"a", 4}, {"r", 3}}, {{"a", "r"}}), TreeErrorKind::NonIncreasingHeight);
  EXPECT_EQ(error_kind({{"a", 0}, {"a", 1}}, {}), TreeErrorKind::DuplicateNode);
  EXPECT_EQ(error_kind({{"a", 0}, {"b", 1}}, {}), TreeErrorKind::MultipleRoots);
  EXPECT_EQ(error_kind({{"a", 0}, {"b", 1}}, {{"a", "b"}, {"b", "a"}}), TreeErrorKind::NoRoot);
  EXPECT_EQ(error_kind({{"a", 0}, {"b", 1}, {"c", 2}, {"r", 9}}, {{"b", "c"}, {"c", "b"}, {"a", "r"}}),
            TreeErrorKind::Cycle);
  EXPECT_EQ(error_kind({{"a", 0}, {"b", 1}, {"r", 2}}, {{"a", "b"}, {"a", "r"}}), TreeErrorKind::MultipleParents);
  EXPECT_EQ(error_kind({{"a", 0}}, {{"a", "zz"}}), TreeErrorKind::UnknownNode);
  EXPECT_EQ(error_kind({{"a", 0}}, {{"a", "a"}}), TreeErrorKind::SelfLoop);
  EXPECT_EQ(error_kind({}, {}), TreeErrorKind::Empty);
}

TEST(AncestorAtHeight, IdentityEdgeAndRay) {
  auto t = merge({{"a", 0}, {"r", 5}}, {{"a", "r"}});
  MergePoint a = node_point(t, idx(t, "a"));
  EXPECT_EQ(ancestor_at_height(t, a, 0), a);
  MergePoint mid = ancestor_at_height(t, a, 3);
  EXPECT_EQ(mid.lower, idx(t, "a"));
  EXPECT_EQ(mid.height, Rational(3));
  MergePoint ray = ancestor_at_height(t, a, 7);
  EXPECT_EQ(ray.lower, t.root());
  EXPECT_EQ(ray.height, Rational(7));
  EXPECT_EQ(ancestor_at_height(t, a, 5), node_point(t, t.root()));
}

TEST(AncestorAtHeight, Composes) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto t = random_merge(seed, 8, 8, 2);
    for (std::size_t v = 0; v < t.size(); ++v)
      for (int a = 0; a <= 6; ++a)
        for (int b = 0; b <= 6; ++b) {
          MergePoint p = node_point(t, static_cast<NodeIndex>(v));
          Rational ra(a, 2), rb(b, 3);
          EXPECT_EQ(ancestor_at_height(t, p, ra + rb), ancestor_at_height(t, ancestor_at_height(t, p, ra), rb));
        }
  }
}

TEST(DepthBelow, Examples) {
  auto t = two_leaves();
  EXPECT_EQ(depth_below(t, node_point(t, idx(t, "a"))), Rational(0));
  EXPECT_EQ(depth_below(t, node_point(t, t.root())), Rational(4));
  EXPECT_EQ(depth_below(t, make_point(t, idx(t, "b"), 3)), Rational(1));
}

TEST(Lca, Examples) {
  auto t = two_leaves();
  MergePoint a = node_point(t, idx(t, "a"));
  MergePoint b = node_point(t, idx(t, "b"));
  MergePoint r = node_point(t, t.root());
  EXPECT_EQ(lca(t, a, a), a);
  EXPECT_EQ(lca(t, a, b), r);
  EXPECT_EQ(lca(t, a, r), r);
  MergePoint up = make_point(t, t.root(), 9);
  EXPECT_EQ(lca(t, b, up), up);
  MergePoint a3 = make_point(t, idx(t, "a"), 3);
  EXPECT_EQ(lca(t, a, a3), a3);
}

TEST(Lca, CommutativeIdempotentAndAbove) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto t = random_merge(seed, 9, 8, 2);
    std::vector<MergePoint> pts;
    for (std::size_t v = 0; v < t.size(); ++v) {
      pts.push_back(node_point(t, static_cast<NodeIndex>(v)));
      pts.push_back(ancestor_at_height(t, pts.back(), Rational(1, 2)));
    }
    for (const auto& p : pts)
      for (const auto& q : pts) {
        MergePoint l = lca(t, p, q);
        EXPECT_EQ(l, lca(t, q, p));
        EXPECT_TRUE(is_ancestor(t, l, p));
        EXPECT_TRUE(is_ancestor(t, l, q));
        EXPECT_EQ(lca(t, p, p), p);
      }
  }
}

TEST(Geodesic, Examples) {
  auto m = metric({"u", "v"}, {{"u", "v", 5}});
  EXPECT_EQ(geodesic_distance(m, 0, 1), Rational(5));
  EXPECT_EQ(geodesic_distance(m, 1, 1), Rational(0));
  auto p = metric({"u", "v", "w", "x"}, {{"u", "v", 3}, {"v", "w", 5}, {"v", "x", 2}});
  EXPECT_EQ(geodesic_distance(p, *p.find("u"), *p.find("w")), Rational(8));
  EXPECT_EQ(geodesic_distance(p, *p.find("x"), *p.find("w")), Rational(7));
}

TEST(Geodesic, MetricAxiomsAndPathAdditivity) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto m = random_metric(seed, 9, 5);
    auto d = all_pairs_distances(m);
    const std::size_t n = m.size();
    for (std::size_t x = 0; x < n; ++x) {
      EXPECT_EQ(d[x][x], Rational(0));
      for (std::size_t y = 0; y < n; ++y) {
        EXPECT_EQ(d[x][y], d[y][x]);
        if (x != y) EXPECT_GT(d[x][y], Rational(0));
        for (std::size_t z = 0; z < n; ++z) EXPECT_LE(d[x][z], d[x][y] + d[y][z]);
      }
    }
    // Along the BFS tree from 0, every node splits its root path additively.
    auto sp = single_source(m, 0);
    for (std::size_t v = 0; v < n; ++v)
      for (NodeIndex a = static_cast<NodeIndex>(v); a != kNoNode; a = sp.parent[a])
        EXPECT_EQ(d[0][v], d[0][a] + d[a][v]);
  }
}

TEST(MetricTree, Rejections) {
  EXPECT_THROW(metric({"u", "v"}, {{"u", "v", 0}}), TreeError);
  EXPECT_THROW(metric({"u", "v"}, {{"u", "v", -1}}), TreeError);
  EXPECT_THROW(metric({"u", "v", "w"}, {{"u", "v", 1}}), TreeError);
  EXPECT_THROW(metric({"u", "v", "w"}, {{"u", "v", 1}, {"v", "u", 1}}), TreeError);
  EXPECT_THROW(metric({"u", "v"}, {{"u", "v", 1}, {"v", "u", 1}}), TreeError);
  EXPECT_THROW(metric({"u", "u"}), TreeError);
}

TEST(MergeTreeFromRoot, Examples) {
  auto e = metric({"u", "v"}, {{"u", "v", 3}});
  auto t = merge_tree_from_root(e, "u");
  EXPECT_EQ(t.id(t.root()), "u");
  EXPECT_EQ(t.height(t.root()), Rational(0));
  EXPECT_EQ(t.height(idx(t, "v")), Rational(-3));

  auto star = metric({"c", "x", "y"}, {{"c", "x", 1}, {"c", "y", 2}});
  auto s = merge_tree_from_root(star, "c");
  EXPECT_EQ(s.height(idx(s, "x")), Rational(-1));
  EXPECT_EQ(s.height(idx(s, "y")), Rational(-2));
  EXPECT_EQ(s.children(s.root()).size(), 2u);

  auto chain = merge_tree_from_root(star, "x");
  EXPECT_EQ(chain.id(chain.root()), "x");
  EXPECT_EQ(chain.height(idx(chain, "c")), Rational(-1));
  EXPECT_EQ(chain.height(idx(chain, "y")), Rational(-3));
  EXPECT_EQ(chain.parent(idx(chain, "y")), idx(chain, "c"));
  EXPECT_EQ(chain.parent(idx(chain, "c")), chain.root());

  EXPECT_THROW(merge_tree_from_root(star, "nope"), TreeError);
}

TEST(MergeTreeFromRoot, HeightsAreNegatedDistances) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto m = random_metric(seed, 8);
    for (std::size_t u = 0; u < m.size(); ++u) {
      auto t = merge_tree_from_root(m, static_cast<NodeIndex>(u));
      EXPECT_EQ(t.height(t.root()), Rational(0));
      for (std::size_t v = 0; v < m.size(); ++v)
        EXPECT_EQ(t.height(*t.find(m.id(static_cast<NodeIndex>(v)))),
                  -geodesic_distance(m, static_cast<NodeIndex>(v), static_cast<NodeIndex>(u)));
    }
  }
}

TEST(MergeDegreeBound, SmallEpsAndFullCover) {
  auto t1 = merge({{"a", 0}, {"r", 5}}, {{"a", "r"}});
  auto t2 = merge({{"b", 1}, {"s", 7}}, {{"b", "s"}});
  EXPECT_EQ(merge_degree_bound(t1, t2, Rational(1, 2)), 1);

  auto t = merge({{"a", 0}, {"b", 1}, {"c", 2}, {"m", 3}, {"r", 5}}, {{"a", "m"}, {"b", "m"}, {"m", "r"}, {"c", "r"}});
  // Downward degrees sum to n - 1 once the ball covers everything.
  EXPECT_EQ(merge_tree_ball_bound(t, 5), 4);
  EXPECT_EQ(merge_tree_ball_bound(t, 100), 4);
  EXPECT_EQ(merge_tree_ball_bound(t, 100, DegreeConvention::Full), 8);
}

TEST(MergeDegreeBound, BallAroundPoint) {
  // Balls reach sideways through the LCA: around b at eps 1 the ball climbs to
  // height 3, which includes m and then a and b below it, but not r.
  auto t = merge({{"a", 2}, {"b", 2}, {"m", 3}, {"r", 6}}, {{"a", "m"}, {"b", "m"}, {"m", "r"}});
  EXPECT_EQ(merge_tree_ball_bound(t, 1), 2);
  EXPECT_EQ(merge_tree_ball_bound(t, Rational(3, 2)), 3);
}

TEST(MergeDegreeBound, MonotoneInEps) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto t1 = random_merge(seed, 9);
    auto t2 = random_merge(seed + 1000, 9);
    int prev = 0;
    for (int k = 0; k <= 20; ++k) {
      int tau = merge_degree_bound(t1, t2, Rational(k, 2));
      EXPECT_GE(tau, prev);
      EXPECT_GE(tau, 1);
      prev = tau;
    }
  }
}

TEST(MetricDegreeBound, Examples) {
  auto star = metric({"c", "x", "y", "z"}, {{"c", "x", 1}, {"c", "y", 1}, {"c", "z", 1}});
  auto edge = metric({"u", "v"}, {{"u", "v", 1}});
  EXPECT_EQ(metric_degree_bound(star, edge, 0), 3);
  EXPECT_EQ(metric_degree_bound(star, edge, 10), 6);

  // Path p0-p1-p2-p3 with unit edges: radius 1 around p1 sees p0, p1, p2.
  auto path = metric({"p0", "p1", "p2", "p3"}, {{"p0", "p1", 1}, {"p1", "p2", 1}, {"p2", "p3", 1}});
  EXPECT_EQ(metric_tree_ball_bound(path, 1), 5);
  // Radius 3/2 from the middle of the path covers everything.
  EXPECT_EQ(metric_tree_ball_bound(path, Rational(3, 2)), 6);
  EXPECT_EQ(metric_tree_ball_bound(path, Rational(1, 2)), 4);
}

TEST(MetricDegreeBound, MonotoneInEps) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto m1 = random_metric(seed, 9);
    auto m2 = random_metric(seed + 77, 9);
    int prev = 0;
    for (int k = 0; k <= 24; ++k) {
      int tau = metric_degree_bound(m1, m2, Rational(k, 3));
      EXPECT_GE(tau, prev);
      prev = tau;
    }
  }
}

TEST(DegreeSandwich, FullConventionOnRootedTrees) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto m1 = random_metric(seed, 6);
    auto m2 = random_metric(seed + 500, 6);
    for (std::size_t u = 0; u < m1.size(); ++u)
      for (std::size_t w = 0; w < m2.size(); ++w) {
        auto t1 = merge_tree_from_root(m1, static_cast<NodeIndex>(u));
        auto t2 = merge_tree_from_root(m2, static_cast<NodeIndex>(w));
        for (int k = 0; k <= 8; ++k) {
          Rational d(k, 2);
          int full = merge_degree_bound(t1, t2, d, DegreeConvention::Full);
          int down = merge_degree_bound(t1, t2, d);
          EXPECT_LE(metric_degree_bound(m1, m2, d), full);
          EXPECT_LE(full, metric_degree_bound(m1, m2, d + d));
          EXPECT_LE(down, metric_degree_bound(m1, m2, d + d));
        }
      }
  }
}
