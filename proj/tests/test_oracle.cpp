#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace treedist;
using namespace treedist::testing;

namespace {

MergeTree leaf_at(long long h) { return merge({{"a", h}, {"r", 20}}, {{"a", "r"}}); }

}  // namespace

TEST(BruteForceDecide, Examples) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto t = random_merge(seed, 7);
    EXPECT_TRUE(brute_force_decide(t, t, 0));
  }
  EXPECT_FALSE(brute_force_decide(leaf_at(0), leaf_at(3), 2));
  EXPECT_TRUE(brute_force_decide(leaf_at(0), leaf_at(3), 3));
  auto branch = merge({{"a", 0}, {"b", 0}, {"r", 4}}, {{"a", "r"}, {"b", "r"}});
  auto path = merge({{"a", 0}, {"r", 4}}, {{"a", "r"}});
  EXPECT_TRUE(brute_force_decide(branch, path, 2));
  EXPECT_FALSE(brute_force_decide(branch, path, 1));
  EXPECT_THROW(brute_force_decide(path, path, -1), std::invalid_argument);
}

TEST(BruteForceDecide, MonotoneInDelta) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto t1 = random_merge(seed, 6);
    auto t2 = random_merge(seed + 17, 6);
    bool prev = false;
    for (int k = 0; k <= 18; ++k) {
      bool v = brute_force_decide(t1, t2, Rational(k, 2));
      EXPECT_TRUE(v || !prev);
      prev = v;
    }
  }
}

TEST(BruteForceDecide, AgreesWithBothEngines) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto t1 = random_merge(seed, 6, 6, 2);
    auto t2 = random_merge(seed + 606, 6, 6, 2);
    for (const auto& d : candidate_set(t1, t2).values) {
      bool b = brute_force_decide(t1, t2, d);
      ASSERT_EQ(b, decide_slow(t1, t2, d)) << serialize(t1) << serialize(t2) << d;
      ASSERT_EQ(b, decide_fast(t1, t2, d)) << serialize(t1) << serialize(t2) << d;
    }
  }
}

TEST(BruteForceDecide, CapsThrow) {
  auto t = random_merge(3, 7);
  OracleLimits tiny;
  tiny.max_grid = 1;
  EXPECT_THROW(brute_force_decide(t, t, 1, tiny), OracleCapExceeded);
  OracleLimits few;
  few.max_states = 1;
  auto branch = merge({{"a", 0}, {"b", 0}, {"r", 4}}, {{"a", "r"}, {"b", "r"}});
  EXPECT_THROW(brute_force_decide(branch, branch, 0, few), OracleCapExceeded);
}

TEST(BruteForceInterleaving, Examples) {
  auto t = random_merge(9, 6);
  EXPECT_EQ(brute_force_interleaving(t, t), Rational(0));
  EXPECT_EQ(brute_force_interleaving(leaf_at(0), leaf_at(3)), Rational(3));
  for (const Rational& c : {Rational(2), Rational(-3, 2)}) EXPECT_EQ(brute_force_interleaving(t, t.shifted(c)), c.abs());
}

TEST(BruteForceInterleaving, OwnCandidatesMatchLibrary) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto t1 = random_merge(seed, 7, 8, 3);
    auto t2 = random_merge(seed + 1, 7, 8, 3);
    EXPECT_EQ(brute_force_candidates(t1, t2), candidate_set(t1, t2).values);
  }
}

TEST(BruteForceGh, Examples) {
  auto m = random_metric(4, 5);
  EXPECT_EQ(brute_force_gh_discrete(m, m), Rational(0));
  auto s2 = metric({"p", "q"}, {{"p", "q", 2}});
  auto s6 = metric({"p", "q"}, {{"p", "q", 6}});
  EXPECT_EQ(brute_force_gh_discrete(s2, s6), Rational(2));
  auto pt = metric({"o"});
  auto seg = metric({"p", "q"}, {{"p", "q", Rational(7, 3)}});
  EXPECT_EQ(brute_force_gh_discrete(pt, seg), Rational(7, 6));
}

TEST(BruteForceGh, MetricAxioms) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto a = random_metric(seed, 4);
    auto b = random_metric(seed + 50, 4);
    auto c = random_metric(seed + 90, 4);
    Rational ab = brute_force_gh_discrete(a, b);
    EXPECT_EQ(ab, brute_force_gh_discrete(b, a));
    EXPECT_GE(ab, Rational(0));
    EXPECT_LE(brute_force_gh_discrete(a, c), ab + brute_force_gh_discrete(b, c));
  }
}

TEST(BruteForceGh, NodeCap) {
  GenOptions o;
  o.kind = TreeKind::Metric;
  o.n = 6;
  auto big = generate_metric_tree(o);
  EXPECT_THROW(brute_force_gh_discrete(big, big), OracleCapExceeded);
}
