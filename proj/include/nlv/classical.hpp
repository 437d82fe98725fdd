// Copyright 2026 The nlv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NLV_CLASSICAL_HPP_
#define NLV_CLASSICAL_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "nlv/error.hpp"
#include "nlv/game.hpp"
#include "nlv/parallel.hpp"
#include "nlv/rng.hpp"

namespace nlv {

/// Pair of answer functions A, B : [k] -> [n] (0-based values).
struct DeterministicStrategy {
  std::vector<int> alice;
  std::vector<int> bob;

  friend bool operator==(const DeterministicStrategy&, const DeterministicStrategy&) = default;
};

inline void check_deterministic(const DeterministicStrategy& d, int k, int n) {
  if (d.alice.size() != static_cast<std::size_t>(k) || d.bob.size() != static_cast<std::size_t>(k))
    throw DimensionError("deterministic strategy must define A and B on all " + std::to_string(k) + " questions");
  for (int x = 0; x < k; ++x) {
    if (d.alice[x] < 0 || d.alice[x] >= n)
      throw ValidationError("A(" + std::to_string(x + 1) + ") = " + std::to_string(d.alice[x] + 1) +
                            " outside [1.." + std::to_string(n) + "]");
    if (d.bob[x] < 0 || d.bob[x] >= n)
      throw ValidationError("B(" + std::to_string(x + 1) + ") = " + std::to_string(d.bob[x] + 1) +
                            " outside [1.." + std::to_string(n) + "]");
  }
}

// p(a,b|x,y) = 1 iff a = A(x) and b = B(y).
inline Strategy det_to_strategy(const DeterministicStrategy& d, int k, int n) {
  check_deterministic(d, k, n);
  Strategy s(k, n);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) s.at(x, y, d.alice[x], d.bob[y]) = 1.0;
  return s;
}

struct ClassicalResult {
  double value = 0.0;
  DeterministicStrategy argmax;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// n^(2k), saturating at uint64 max.
inline std::uint64_t deterministic_strategy_count(int k, int n) {
  std::uint64_t total = 1;
  for (int i = 0; i < 2 * k; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(n))
      return std::numeric_limits<std::uint64_t>::max();
    total *= static_cast<std::uint64_t>(n);
  }
  return total;
}

namespace detail {

// Decodes index -> answer function, most significant digit first, so that
// increasing index is lexicographic order on the tuple.
inline void decode_function(std::uint64_t index, int k, int n, std::vector<int>& out) {
  for (int x = k - 1; x >= 0; --x) {
    out[x] = static_cast<int>(index % static_cast<std::uint64_t>(n));
    index /= static_cast<std::uint64_t>(n);
  }
}

// Best response of Bob to a fixed A. The objective separates over y, so the
// lexicographically smallest maximizing B picks the first maximizing answer
// independently for each y.
inline double best_bob_response(const Game& g, const std::vector<int>& alice, std::vector<int>& bob) {
  double total = 0.0;
  for (int y = 0; y < g.k; ++y) {
    double best = -1.0;
    int best_b = 0;
    for (int b = 0; b < g.n; ++b) {
      double v = 0.0;
      for (int x = 0; x < g.k; ++x) v += g.prob(x, y) * g.win(x, y, alice[x], b);
      if (v > best) {
        best = v;
        best_b = b;
      }
    }
    bob[y] = best_b;
    total += best;
  }
  return total;
}

inline double best_alice_response(const Game& g, const std::vector<int>& bob, std::vector<int>& alice) {
  double total = 0.0;
  for (int x = 0; x < g.k; ++x) {
    double best = -1.0;
    int best_a = 0;
    for (int a = 0; a < g.n; ++a) {
      double v = 0.0;
      for (int y = 0; y < g.k; ++y) v += g.prob(x, y) * g.win(x, y, a, bob[y]);
      if (v > best) {
        best = v;
        best_a = a;
      }
    }
    alice[x] = best_a;
    total += best;
  }
  return total;
}

}  // namespace detail

/// Exact classical value: maximum of val(G, p) over all n^(2k) deterministic
/// strategies, ties broken by the lexicographically smallest (A, B). The
/// enumeration runs over A (B varies fastest); for each A the maximum over B
/// is taken exactly by a per-question best response. Work over A is split
/// across threads and reduced deterministically.
inline ClassicalResult classical_value(const Game& g, std::uint64_t cap = kDefaultEnumerationCap,
                                       unsigned threads = 1) {
  const auto report = validate_game(g);
  if (!report.ok()) throw ValidationError("invalid game: " + report.summary());
  const std::uint64_t total = deterministic_strategy_count(g.k, g.n);
  if (total > cap)
    throw CapExceeded("enumerating n^(2k) = " +
                      (total == std::numeric_limits<std::uint64_t>::max() ? std::string("(overflow)")
                                                                          : std::to_string(total)) +
                      " deterministic strategies exceeds the cap " + std::to_string(cap) +
                      "; use sampling mode for a lower bound");
  std::uint64_t num_alice = 1;
  for (int i = 0; i < g.k; ++i) num_alice *= static_cast<std::uint64_t>(g.n);

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), num_alice));
  std::vector<ClassicalResult> partial(workers);
  std::vector<bool> found(workers, false);
  parallel_for(workers, workers, [&](std::size_t w) {
    const std::uint64_t begin = num_alice * w / workers;
    const std::uint64_t end = num_alice * (w + 1) / workers;
    std::vector<int> alice(g.k), bob(g.k);
    ClassicalResult best;
    bool have = false;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      detail::decode_function(idx, g.k, g.n, alice);
      const double v = detail::best_bob_response(g, alice, bob);
      if (!have || v > best.value) {
        best.value = v;
        best.argmax = {alice, bob};
        have = true;
      }
    }
    partial[w] = std::move(best);
    found[w] = have;
  });
  // Chunks are in increasing index order, so strict > keeps the smallest.
  ClassicalResult out;
  bool have = false;
  for (unsigned w = 0; w < workers; ++w) {
    if (!found[w]) continue;
    if (!have || partial[w].value > out.value) {
      out = partial[w];
      have = true;
    }
  }
  return out;
}

/// Lower bound on the classical value for games past the enumeration cap:
/// random A, then alternating best responses until neither side improves.
/// Deterministic in seed.
inline ClassicalResult classical_lower_bound_sampled(const Game& g, int restarts, std::uint64_t seed) {
  const auto report = validate_game(g);
  if (!report.ok()) throw ValidationError("invalid game: " + report.summary());
  if (restarts < 1) throw ValidationError("restarts must be >= 1");
  ClassicalResult best;
  best.value = -1.0;
  for (int r = 0; r < restarts; ++r) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<int> alice(g.k), bob(g.k);
    for (auto& a : alice) a = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.n)));
    double v = detail::best_bob_response(g, alice, bob);
    for (int round = 0; round < 1000; ++round) {
      detail::best_alice_response(g, bob, alice);
      const double next = detail::best_bob_response(g, alice, bob);
      if (!(next > v + 1e-15)) break;
      v = next;
    }
    v = game_value(g, det_to_strategy({alice, bob}, g.k, g.n));
    if (v > best.value) best = {v, {alice, bob}};
  }
  return best;
}

/// Convex combination of deterministic strategies (a local strategy with a
/// finite hidden variable).
inline Strategy sample_local(const std::vector<std::pair<double, DeterministicStrategy>>& mixture, int k, int n) {
  if (mixture.empty()) throw ValidationError("mixture must contain at least one strategy");
  double total = 0.0;
  for (const auto& [w, d] : mixture) {
    if (!(w >= 0.0)) throw ValidationError("mixture weights must be non-negative");
    total += w;
  }
  if (!(std::abs(total - 1.0) <= kGameTolerance))
    throw ValidationError("mixture weights sum to " + detail::fmt_num(total) + ", not 1");
  Strategy s(k, n);
  for (const auto& [w, d] : mixture) {
    check_deterministic(d, k, n);
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y) s.at(x, y, d.alice[x], d.bob[y]) += w;
  }
  return s;
}

// p(a,b|x,x) <= tol for every x and a != b.
inline bool is_synchronous(const Strategy& s, double tol = kStrategyTolerance) {
  for (int x = 0; x < s.k; ++x)
    for (int a = 0; a < s.n; ++a)
      for (int b = 0; b < s.n; ++b)
        if (a != b && s.at(x, x, a, b) > tol) return false;
  return true;
}

}  // namespace nlv

#endif  // NLV_CLASSICAL_HPP_
