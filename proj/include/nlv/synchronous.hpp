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

#ifndef NLV_SYNCHRONOUS_HPP_
#define NLV_SYNCHRONOUS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "nlv/classical.hpp"
#include "nlv/error.hpp"
#include "nlv/game.hpp"
#include "nlv/linalg.hpp"
#include "nlv/measurement.hpp"
#include "nlv/pvm_search.hpp"
#include "nlv/rng.hpp"

namespace nlv {

/// k PVMs with n outcomes each in M_d, paired with the normalized trace.
struct TracialPVMFamily {
  std::size_t d = 1;
  std::vector<MeasurementFamily> families;

  int questions() const { return static_cast<int>(families.size()); }
  int answers() const { return families.empty() ? 0 : static_cast<int>(families.front().size()); }
};

inline ValidationReport validate_tracial_family(const TracialPVMFamily& fam) {
  ValidationReport r;
  if (fam.families.empty()) {
    r.violations.push_back("family has no questions");
    return r;
  }
  const std::size_t n = fam.families.front().size();
  for (std::size_t x = 0; x < fam.families.size(); ++x) {
    const auto& f = fam.families[x];
    const std::string label = "family " + std::to_string(x + 1);
    if (f.size() != n) r.violations.push_back(label + " has a different outcome count");
    if (f.dim() != fam.d) {
      r.violations.push_back(label + " has dim " + std::to_string(f.dim()) + ", expected " + std::to_string(fam.d));
      continue;
    }
    if (f.kind != MeasurementKind::kPvm) r.violations.push_back(label + " is not flagged as a PVM");
    const auto mr = validate_measurement(MeasurementFamily{f.outcomes, MeasurementKind::kPvm});
    if (!mr.ok()) r.violations.push_back(label + ": " + mr.violations.front());
  }
  return r;
}

/// p(a,b|x,y) = (1/d) Tr(f^x_a f^y_b).
inline Strategy tracial_correlation(const TracialPVMFamily& fam) {
  const auto report = validate_tracial_family(fam);
  if (!report.ok()) throw ValidationError("invalid tracial family: " + report.summary());
  const int k = fam.questions(), n = fam.answers();
  const double inv_d = 1.0 / static_cast<double>(fam.d);
  Strategy s(k, n);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const cplx t = trace_of_product(fam.families[x][a], fam.families[y][b]) * inv_d;
          if (std::abs(t.imag()) >= 1e-9)
            throw ValidationError("tracial correlation has imaginary residual " + detail::fmt_num(t.imag()));
          s.at(x, y, a, b) = t.real();
        }
  return s;
}

// d = 1 family realizing the answer function f: f^x_{f(x)} = 1.
inline TracialPVMFamily scalar_tracial_family(const std::vector<int>& answers, int n) {
  TracialPVMFamily fam;
  for (int a : answers) {
    if (a < 0 || a >= n) throw ValidationError("answer outside [1..n]");
    MeasurementFamily f{{}, MeasurementKind::kPvm};
    for (int b = 0; b < n; ++b) f.outcomes.push_back(Matrix(1, 1, {b == a ? 1.0 : 0.0}));
    fam.families.push_back(std::move(f));
  }
  return fam;
}

/// Best synchronous deterministic strategy (A = B), by enumerating all n^k
/// answer functions. Ties go to the lexicographically smallest function.
inline ClassicalResult best_scalar_family(const Game& g, std::uint64_t cap = kDefaultEnumerationCap) {
  std::uint64_t count = 1;
  for (int i = 0; i < g.k; ++i) {
    count *= static_cast<std::uint64_t>(g.n);
    if (count > cap) throw CapExceeded("n^k answer functions exceed the cap " + std::to_string(cap));
  }
  ClassicalResult best;
  best.value = -1.0;
  std::vector<int> f(static_cast<std::size_t>(g.k));
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    detail::decode_function(idx, g.k, g.n, f);
    double v = 0.0;
    for (int x = 0; x < g.k; ++x)
      for (int y = 0; y < g.k; ++y) v += g.prob(x, y) * g.win(x, y, f[x], f[y]);
    if (v > best.value) best = {v, {f, f}};
  }
  return best;
}

struct SyncSearchOptions {
  std::size_t dim = 2;
  int restarts = 16;
  std::uint64_t seed = 0;
  int iterations = 200;
  unsigned threads = 1;
  HillClimbSettings climb;
  // Answer functions used as extra starting points (f^x_{f(x)} = I).
  std::vector<std::vector<int>> warm_starts;
};

struct SyncSearchResult {
  double value = 0.0;  // game_value(g, tracial_correlation(family))
  TracialPVMFamily family;
  std::size_t restart = 0;
};

namespace detail {
// Objective with family `replaced_x` (if >= 0) taken from `replacement`.
inline double tracial_objective(const Game& g, const std::vector<MeasurementFamily>& fams, double inv_d,
                                int replaced_x = -1, const MeasurementFamily* replacement = nullptr) {
  auto f = [&](int x) -> const MeasurementFamily& { return x == replaced_x ? *replacement : fams[x]; };
  double total = 0.0;
  for (int x = 0; x < g.k; ++x)
    for (int y = 0; y < g.k; ++y) {
      const double pxy = g.prob(x, y);
      if (pxy == 0.0) continue;
      for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
          if (g.win(x, y, a, b) != 0.0) total += pxy * trace_of_product(f(x)[a], f(y)[b]).real() * inv_d;
    }
  return total;
}
}  // namespace detail

/// Lower bound on the synchronous entangled value from PVM families in M_d,
/// maximizing sum pi D (1/d) Tr(f^x_a f^y_b) by hill-climbing one family at
/// a time. The value is recomputed from the returned family.
inline SyncSearchResult sync_value_lower_bound(const Game& g, const SyncSearchOptions& opt) {
  const auto report = validate_game(g);
  if (!report.ok()) throw ValidationError("invalid game: " + report.summary());
  if (opt.dim < 1) throw ValidationError("dim must be >= 1");
  if (opt.dim > 32) throw CapExceeded("dim must be <= 32");
  if (opt.restarts < 0 || opt.iterations < 1) throw ValidationError("restarts must be >= 0 and iterations >= 1");
  for (const auto& w : opt.warm_starts)
    if (w.size() != static_cast<std::size_t>(g.k) ||
        std::any_of(w.begin(), w.end(), [&](int a) { return a < 0 || a >= g.n; }))
      throw ValidationError("warm start must map each of the k questions into [1..n]");
  const std::size_t total = static_cast<std::size_t>(opt.restarts) + opt.warm_starts.size();
  if (total == 0) throw ValidationError("need at least one restart or warm start");
  const std::size_t d = opt.dim;
  const int k = g.k, n = g.n;
  const double inv_d = 1.0 / static_cast<double>(d);

  auto run = [&](std::size_t r) {
    Rng rng(derive_seed(opt.seed, r));
    std::vector<PvmParam> params;
    if (r < static_cast<std::size_t>(opt.restarts)) {
      for (int x = 0; x < k; ++x) params.push_back(random_pvm_param(d, n, rng));
    } else {
      const auto& w = opt.warm_starts[r - static_cast<std::size_t>(opt.restarts)];
      for (int x = 0; x < k; ++x) params.push_back(constant_pvm_param(d, w[x]));
    }
    std::vector<MeasurementFamily> fams;
    for (const auto& p : params) fams.push_back(p.family(n));
    double current = detail::tracial_objective(g, fams, inv_d);
    for (int round = 0; round < opt.iterations; ++round) {
      HillClimbSettings climb = opt.climb;
      climb.step = step_schedule(round, opt.iterations, opt.climb.step);
      for (int x = 0; x < k; ++x) {
        auto score = [&](const MeasurementFamily& f) { return detail::tracial_objective(g, fams, inv_d, x, &f); };
        current = hill_climb(params[x], n, rng, climb, score, current);
        fams[x] = params[x].family(n);
      }
    }
    SyncSearchResult res;
    res.family.d = d;
    res.family.families = std::move(fams);
    res.value = game_value(g, tracial_correlation(res.family));
    res.restart = r;
    return res;
  };
  return best_of_restarts<SyncSearchResult>(total, opt.threads, run);
}

/// Rounds a family of near-projections to an exact PVM. The input is made
/// self-adjoint and shifted so that it sums to the identity; the eigenvectors
/// of C = sum_a a g_a are then each assigned to the outcome a maximizing
/// <g_a v, v>, and P_a is the projection onto the vectors assigned to a.
/// For an exact PVM the eigenspaces of C are its ranges, so it is a fixed
/// point; for small defects the output moves by O(defect).
inline MeasurementFamily repair_almost_pvm(const std::vector<Matrix>& near, double max_defect = 0.1) {
  if (near.empty()) throw ValidationError("need at least one operator");
  const std::size_t d = near.front().rows();
  for (const auto& f : near)
    if (f.rows() != d || f.cols() != d) throw DimensionError("operators must share a square shape");
  Matrix sum(d, d);
  double defect = 0.0;
  for (const auto& f : near) {
    sum += f;
    defect = std::max({defect, frobenius_distance(f, f.adjoint()), frobenius_distance(f, f * f)});
  }
  defect = std::max(defect, frobenius_distance(sum, Matrix::identity(d)));
  if (defect > max_defect)
    throw ValidationError("defect " + detail::fmt_num(defect) + " exceeds " + detail::fmt_num(max_defect));

  const std::size_t n = near.size();
  std::vector<Matrix> herm;
  Matrix herm_sum(d, d);
  for (const auto& f : near) {
    herm.push_back((f + f.adjoint()) * 0.5);
    herm_sum += herm.back();
  }
  const Matrix shift = (Matrix::identity(d) - herm_sum) * (1.0 / static_cast<double>(n));
  Matrix score_op(d, d);
  for (std::size_t a = 0; a < n; ++a) {
    herm[a] += shift;
    score_op += herm[a] * static_cast<double>(a);
  }
  const auto eig = hermitian_eigen(score_op);
  MeasurementFamily out{std::vector<Matrix>(n, Matrix(d, d)), MeasurementKind::kPvm};
  for (std::size_t c = 0; c < d; ++c) {
    const Vector v = column(eig.vectors, c);
    std::size_t best = 0;
    double best_score = -1e300;
    for (std::size_t a = 0; a < n; ++a) {
      const double s = inner(herm[a] * std::span<const cplx>(v), v).real();
      if (s > best_score) {
        best_score = s;
        best = a;
      }
    }
    out.outcomes[best] += Matrix::projector(v);
  }
  return out;
}

}  // namespace nlv

#endif  // NLV_SYNCHRONOUS_HPP_
