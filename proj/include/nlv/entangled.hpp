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

#ifndef NLV_ENTANGLED_HPP_
#define NLV_ENTANGLED_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "nlv/classical.hpp"
#include "nlv/error.hpp"
#include "nlv/game.hpp"
#include "nlv/linalg.hpp"
#include "nlv/pvm_search.hpp"
#include "nlv/quantum.hpp"
#include "nlv/rng.hpp"

namespace nlv {

struct EntangledSearchOptions {
  std::size_t dim = 2;    // local dimension of each player
  int restarts = 16;      // random starting points
  std::uint64_t seed = 0;
  int iterations = 200;   // see-saw rounds per restart
  unsigned threads = 1;
  HillClimbSettings climb;
  // Extra starting points, each run as one additional restart after the
  // random ones: the deterministic strategy embedded at the search dimension
  // with the product state e1 (x) e1.
  std::vector<DeterministicStrategy> warm_starts;
};

struct EntangledSearchResult {
  double value = 0.0;  // game_value(g, quantum_correlation(spec))
  QuantumStrategySpec spec;
  std::size_t restart = 0;  // index of the winning restart
};

namespace detail {

// W = sum pi(x,y) sum D(x,y,a,b) A^x_a (x) B^y_b; positive semidefinite.
inline Matrix game_operator(const Game& g, const std::vector<MeasurementFamily>& alice,
                            const std::vector<MeasurementFamily>& bob) {
  const std::size_t da = alice.front().dim(), db = bob.front().dim();
  Matrix w(da * db, da * db);
  for (int x = 0; x < g.k; ++x)
    for (int y = 0; y < g.k; ++y) {
      const double pxy = g.prob(x, y);
      if (pxy == 0.0) continue;
      for (int a = 0; a < g.n; ++a) {
        Matrix bob_sum(db, db);
        bool any = false;
        for (int b = 0; b < g.n; ++b)
          if (g.win(x, y, a, b) != 0.0) {
            bob_sum += bob[y][b];
            any = true;
          }
        if (any) w += kron(alice[x][a], bob_sum) * pxy;
      }
    }
  return w;
}

inline Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

inline Matrix conjugate(const Matrix& m) {
  Matrix c = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = std::conj(m(i, j));
  return c;
}

// Effective operators for one side with the state and the other side fixed.
// For Alice, <(A (x) B) psi, psi> = Tr(A Psi B^T Psi*); for Bob it is
// Tr(B Psi^T A^T conj(Psi)). Entry [x][a] collects the weights of all
// (y, b) that win with answer a to question x.
inline std::vector<std::vector<Matrix>> effective_operators(const Game& g, const Matrix& psi,
                                                            const std::vector<MeasurementFamily>& other,
                                                            bool for_alice) {
  const Matrix psi_t = transpose(psi);
  const Matrix psi_adj = psi.adjoint();
  const Matrix psi_bar = conjugate(psi);
  std::vector<std::vector<Matrix>> out(static_cast<std::size_t>(g.k));
  for (int x = 0; x < g.k; ++x) {
    const std::size_t dim = for_alice ? psi.rows() : psi.cols();
    out[x].assign(static_cast<std::size_t>(g.n), Matrix(dim, dim));
    for (int a = 0; a < g.n; ++a) {
      // Weighted sum of the other side's operators, then one sandwich.
      const std::size_t odim = other.front().dim();
      Matrix weighted(odim, odim);
      bool any = false;
      for (int y = 0; y < g.k; ++y)
        for (int b = 0; b < g.n; ++b) {
          const double w = for_alice ? g.prob(x, y) * g.win(x, y, a, b) : g.prob(y, x) * g.win(y, x, b, a);
          if (w == 0.0) continue;
          weighted += other[y][b] * w;
          any = true;
        }
      if (!any) continue;
      out[x][a] = for_alice ? psi * transpose(weighted) * psi_adj : psi_t * transpose(weighted) * psi_bar;
    }
  }
  return out;
}

inline double linear_score(const MeasurementFamily& f, const std::vector<Matrix>& effective) {
  double s = 0.0;
  for (std::size_t a = 0; a < f.size(); ++a) s += trace_of_product(f[a], effective[a]).real();
  return s;
}

}  // namespace detail

/// Lower bound on the entangled value from tensor strategies with local
/// dimension `dim` on each side. Each restart alternates (1) the state as the
/// top eigenvector of the game operator, by warm-started power iteration, and
/// (2) hill-climbing of each player's PVMs with the other player fixed. The
/// reported value is recomputed from the returned spec, so it certifies
/// itself. Deterministic in the seed for any thread count.
inline EntangledSearchResult entangled_lower_bound(const Game& g, const EntangledSearchOptions& opt) {
  const auto report = validate_game(g);
  if (!report.ok()) throw ValidationError("invalid game: " + report.summary());
  if (opt.dim < 1) throw ValidationError("dim must be >= 1");
  if (opt.restarts < 0 || opt.iterations < 1) throw ValidationError("restarts must be >= 0 and iterations >= 1");
  if (opt.dim > 16) throw CapExceeded("dim must be <= 16");
  for (const auto& w : opt.warm_starts) check_deterministic(w, g.k, g.n);
  const std::size_t total = static_cast<std::size_t>(opt.restarts) + opt.warm_starts.size();
  if (total == 0) throw ValidationError("need at least one restart or warm start");
  const std::size_t d = opt.dim;
  const int k = g.k, n = g.n;

  auto run = [&](std::size_t r) {
    Rng rng(derive_seed(opt.seed, r));
    std::vector<PvmParam> alice, bob;
    Vector state;
    if (r < static_cast<std::size_t>(opt.restarts)) {
      for (int x = 0; x < k; ++x) alice.push_back(random_pvm_param(d, n, rng));
      for (int y = 0; y < k; ++y) bob.push_back(random_pvm_param(d, n, rng));
      state = random_unit_vector(d * d, rng);
    } else {
      const auto& w = opt.warm_starts[r - static_cast<std::size_t>(opt.restarts)];
      for (int x = 0; x < k; ++x) alice.push_back(constant_pvm_param(d, w.alice[x]));
      for (int y = 0; y < k; ++y) bob.push_back(constant_pvm_param(d, w.bob[y]));
      state = basis_vector(d * d, 0);
    }
    auto families = [n](const std::vector<PvmParam>& ps) {
      std::vector<MeasurementFamily> fs;
      for (const auto& p : ps) fs.push_back(p.family(n));
      return fs;
    };
    std::vector<MeasurementFamily> fa = families(alice), fb = families(bob);

    for (int round = 0; round < opt.iterations; ++round) {
      HillClimbSettings climb = opt.climb;
      climb.step = step_schedule(round, opt.iterations, opt.climb.step);
      state = power_iteration(detail::game_operator(g, fa, fb), std::move(state)).vector;
      const Matrix psi(d, d, state);

      const auto eff_a = detail::effective_operators(g, psi, fb, true);
      for (int x = 0; x < k; ++x) {
        auto score = [&](const MeasurementFamily& f) { return detail::linear_score(f, eff_a[x]); };
        hill_climb(alice[x], n, rng, climb, score, score(fa[x]));
        fa[x] = alice[x].family(n);
      }
      const auto eff_b = detail::effective_operators(g, psi, fa, false);
      for (int y = 0; y < k; ++y) {
        auto score = [&](const MeasurementFamily& f) { return detail::linear_score(f, eff_b[y]); };
        hill_climb(bob[y], n, rng, climb, score, score(fb[y]));
        fb[y] = bob[y].family(n);
      }
    }
    state = power_iteration(detail::game_operator(g, fa, fb), std::move(state)).vector;

    EntangledSearchResult res;
    res.spec.flavor = StrategyFlavor::kTensor;
    res.spec.dim_a = res.spec.dim_b = d;
    res.spec.state = StateVector::normalized(std::move(state));
    res.spec.alice = std::move(fa);
    res.spec.bob = std::move(fb);
    res.value = game_value(g, quantum_correlation(res.spec));
    res.restart = r;
    return res;
  };
  return best_of_restarts<EntangledSearchResult>(total, opt.threads, run);
}

}  // namespace nlv

#endif  // NLV_ENTANGLED_HPP_
