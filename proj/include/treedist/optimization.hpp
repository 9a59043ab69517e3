#pragma once

#include "treedist/decision.hpp"
#include "treedist/degree_bound.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace treedist {

enum CandidateSource : std::uint8_t {
  kCrossHeight = 1,   // |f(u) - g(w)|
  kHalfGapFirst = 2,  // |f(u) - f(u')| / 2
  kHalfGapSecond = 4, // |g(w) - g(w')| / 2
};

/// Sorted, deduplicated candidate values for d_I, each tagged with the
/// CandidateSource bits that produced it.
struct CandidateSet {
  std::vector<Rational> values;
  std::vector<std::uint8_t> provenance;

  std::size_t size() const { return values.size(); }
  std::optional<std::size_t> index_of(const Rational& v) const {
    auto it = std::lower_bound(values.begin(), values.end(), v);
    if (it == values.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - values.begin());
  }
};

inline CandidateSet candidate_set(const MergeTree& t1, const MergeTree& t2) {
  std::map<Rational, std::uint8_t> acc;
  const auto h1 = t1.node_heights();
  const auto h2 = t2.node_heights();
  for (const auto& a : h1)
    for (const auto& b : h2) acc[(a - b).abs()] |= kCrossHeight;
  for (const auto& a : h1)
    for (const auto& b : h1) acc[(a - b).abs().half()] |= kHalfGapFirst;
  for (const auto& a : h2)
    for (const auto& b : h2) acc[(a - b).abs().half()] |= kHalfGapSecond;
  CandidateSet c;
  for (const auto& [v, bits] : acc) {
    c.values.push_back(v);
    c.provenance.push_back(bits);
  }
  return c;
}

struct SearchStats {
  std::size_t candidates = 0;
  std::size_t decide_calls = 0;
  int max_tau_probed = 0;  // largest tau class among probed candidates
  int tau_star = 0;        // tau at the answer
  std::vector<std::size_t> probed;
};

/// Smallest index in [l, r] whose probe is true, assuming probes are monotone.
/// Tests r first; returns nullopt if it fails.
template <class Probe>
std::optional<std::size_t> smallest_valid_delta(std::size_t l, std::size_t r, Probe&& probe) {
  if (l > r) throw std::invalid_argument("smallest_valid_delta: empty range");
  if (!probe(r)) return std::nullopt;
  std::size_t lo = l;
  std::size_t hi = r;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (probe(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return hi;
}

/// Finds the smallest true index of a monotone predicate over `count` sorted
/// candidates whose tau classes `tau_of` are non-decreasing.
///
/// Found(k) asks the predicate at the last candidate with tau <= k. k doubles
/// from 1 until Found holds, is binary searched in (k/2, k], and the answer is
/// then located inside the single class tau == k*.
template <class Probe, class TauOf>
std::size_t double_binary_search(std::size_t count, Probe&& raw_probe, TauOf&& raw_tau, SearchStats& stats) {
  if (count == 0) throw std::invalid_argument("double_binary_search: no candidates");
  stats.candidates = count;
  if (count == 1) return 0;

  std::map<std::size_t, int> taus;
  auto tau_of = [&](std::size_t i) {
    auto it = taus.find(i);
    if (it == taus.end()) it = taus.emplace(i, raw_tau(i)).first;
    return it->second;
  };
  std::map<std::size_t, bool> seen;
  auto probe = [&](std::size_t i) {
    auto it = seen.find(i);
    if (it != seen.end()) return it->second;
    ++stats.decide_calls;
    stats.probed.push_back(i);
    stats.max_tau_probed = std::max(stats.max_tau_probed, tau_of(i));
    bool v = raw_probe(i);
    seen.emplace(i, v);
    return v;
  };
  auto finish = [&](std::size_t i) {
    stats.tau_star = tau_of(i);
    return i;
  };

  if (probe(0)) return finish(0);

  // Last index with tau <= k, if any.
  auto last_le = [&](int k) -> std::optional<std::size_t> {
    if (tau_of(0) > k) return std::nullopt;
    std::size_t lo = 0;
    std::size_t hi = count - 1;
    while (lo < hi) {
      std::size_t mid = lo + (hi - lo + 1) / 2;
      if (tau_of(mid) <= k)
        lo = mid;
      else
        hi = mid - 1;
    }
    return lo;
  };
  auto found = [&](int k) {
    auto j = last_le(k);
    return j && probe(*j);
  };

  const int tau_max = tau_of(count - 1);
  int k = 1;
  while (!found(k)) {
    if (k >= tau_max) throw std::logic_error("double_binary_search: predicate false at every candidate");
    k *= 2;
  }
  int lo = k / 2;  // Found(lo) is false (or lo == 0)
  int hi = k;
  while (hi - lo > 1) {
    int mid = lo + (hi - lo) / 2;
    if (found(mid))
      hi = mid;
    else
      lo = mid;
  }
  auto below = last_le(hi - 1);
  std::size_t l = below ? *below + 1 : 0;
  std::size_t r = *last_le(hi);
  auto idx = smallest_valid_delta(l, r, probe);
  if (!idx) throw std::logic_error("double_binary_search: class lost its answer");
  return finish(*idx);
}

/// Reference optimizer: first candidate, in ascending order, that decides true.
inline Rational compute_interleaving_scan(const MergeTree& t1, const MergeTree& t2, Engine engine = Engine::Fast,
                                          SearchStats* stats = nullptr) {
  const CandidateSet c = candidate_set(t1, t2);
  SearchStats local;
  local.candidates = c.size();
  for (std::size_t i = 0; i < c.size(); ++i) {
    ++local.decide_calls;
    local.probed.push_back(i);
    if (decide(t1, t2, c.values[i], engine)) {
      if (stats) *stats = local;
      return c.values[i];
    }
  }
  throw std::logic_error("compute_interleaving_scan: no candidate decides true");
}

/// Exact d_I by the tau-class double-binary search over the candidate set.
inline Rational compute_interleaving(const MergeTree& t1, const MergeTree& t2, Engine engine = Engine::Fast,
                                     SearchStats* stats = nullptr) {
  const CandidateSet c = candidate_set(t1, t2);
  SearchStats local;
  std::size_t idx = double_binary_search(
      c.size(), [&](std::size_t i) { return decide(t1, t2, c.values[i], engine); },
      [&](std::size_t i) { return merge_degree_bound(t1, t2, c.values[i]); }, local);
  if (stats) *stats = local;
  return c.values[idx];
}

}  // namespace treedist
