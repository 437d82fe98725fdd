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

#ifndef NLV_PVM_SEARCH_HPP_
#define NLV_PVM_SEARCH_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "nlv/linalg.hpp"
#include "nlv/measurement.hpp"
#include "nlv/parallel.hpp"
#include "nlv/rng.hpp"

namespace nlv {

/// A PVM on C^d written as a unitary U and an outcome label per column:
/// P_a = sum over columns i with label[i] == a of u_i u_i*. Every d-dimensional
/// PVM with n outcomes has this form, including ones with zero projections.
struct PvmParam {
  Matrix unitary;
  std::vector<int> labels;

  std::size_t dim() const { return labels.size(); }

  MeasurementFamily family(int n) const {
    const std::size_t d = dim();
    MeasurementFamily f{std::vector<Matrix>(static_cast<std::size_t>(n), Matrix(d, d)), MeasurementKind::kPvm};
    for (std::size_t c = 0; c < d; ++c) {
      Matrix& p = f.outcomes[static_cast<std::size_t>(labels[c])];
      for (std::size_t i = 0; i < d; ++i) {
        const cplx ui = unitary(i, c);
        for (std::size_t j = 0; j < d; ++j) p(i, j) += ui * std::conj(unitary(j, c));
      }
    }
    return f;
  }
};

// Near-equal partition of d columns into n outcomes: the first d mod n
// outcomes get ceil(d/n) columns, the rest floor(d/n); empty when n > d.
inline std::vector<int> balanced_labels(std::size_t d, int n) {
  std::vector<int> labels;
  labels.reserve(d);
  const std::size_t base = d / static_cast<std::size_t>(n), extra = d % static_cast<std::size_t>(n);
  for (int a = 0; a < n; ++a) {
    const std::size_t size = base + (static_cast<std::size_t>(a) < extra ? 1 : 0);
    labels.insert(labels.end(), size, a);
  }
  return labels;
}

inline PvmParam random_pvm_param(std::size_t d, int n, Rng& rng) {
  return {random_unitary(d, rng), balanced_labels(d, n)};
}

// All columns labelled `outcome`: the PVM with P_outcome = I.
inline PvmParam constant_pvm_param(std::size_t d, int outcome) {
  return {Matrix::identity(d), std::vector<int>(d, outcome)};
}

namespace detail {

// U <- U G, G a Givens rotation with angle theta and phase phi in the (i, j)
// column plane.
inline void rotate_columns(Matrix& u, std::size_t i, std::size_t j, double theta, double phi) {
  const double c = std::cos(theta), s = std::sin(theta);
  const cplx e = std::polar(1.0, phi);
  for (std::size_t r = 0; r < u.rows(); ++r) {
    const cplx ui = u(r, i), uj = u(r, j);
    u(r, i) = c * ui + s * std::conj(e) * uj;
    u(r, j) = -s * e * ui + c * uj;
  }
}

}  // namespace detail

struct HillClimbSettings {
  int trials = 24;      // random rotations per family per round
  double step = 0.5;    // rotation angle scale
};

/// One round of hill-climbing on a single family: an exhaustive pass over
/// single-column relabelings, then random Givens rotations between columns
/// with different labels. Only strict improvements are kept. `score` maps a
/// MeasurementFamily to the objective being maximized; returns the new score.
template <typename Score>
double hill_climb(PvmParam& param, int n, Rng& rng, const HillClimbSettings& settings, Score&& score,
                  double current) {
  const std::size_t d = param.dim();
  if (n > 1) {
    for (std::size_t c = 0; c < d; ++c) {
      const int original = param.labels[c];
      int best_label = original;
      double best = current;
      for (int a = 0; a < n; ++a) {
        if (a == original) continue;
        param.labels[c] = a;
        const double v = score(param.family(n));
        if (v > best) {
          best = v;
          best_label = a;
        }
      }
      param.labels[c] = best_label;
      current = best;
    }
  }
  if (d < 2) return current;
  for (int t = 0; t < settings.trials; ++t) {
    const std::size_t i = static_cast<std::size_t>(rng.below(d));
    std::size_t j = static_cast<std::size_t>(rng.below(d - 1));
    if (j >= i) ++j;
    const double theta = settings.step * rng.normal();
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    if (param.labels[i] == param.labels[j]) continue;  // rotation inside one block is a no-op
    Matrix saved = param.unitary;
    detail::rotate_columns(param.unitary, i, j, theta, phi);
    const double v = score(param.family(n));
    if (v > current) {
      current = v;
    } else {
      param.unitary = std::move(saved);
    }
  }
  return current;
}

// Geometric decay of the rotation scale from `start` to `end` over `rounds`.
inline double step_schedule(int round, int rounds, double start = 0.5, double end = 1e-6) {
  if (rounds <= 1) return start;
  const double t = static_cast<double>(round) / static_cast<double>(rounds - 1);
  return start * std::pow(end / start, t);
}

/// Runs `restart(i)` for i in [0, count) on worker threads and keeps the
/// result with the largest `.value`; ties go to the lowest index, so the
/// answer does not depend on the thread count.
template <typename Result, typename Restart>
Result best_of_restarts(std::size_t count, unsigned threads, Restart&& restart) {
  std::vector<Result> results(count);
  parallel_for(count, threads, [&](std::size_t i) { results[i] = restart(i); });
  std::size_t best = 0;
  for (std::size_t i = 1; i < count; ++i)
    if (results[i].value > results[best].value) best = i;
  return std::move(results[best]);
}

}  // namespace nlv

#endif  // NLV_PVM_SEARCH_HPP_
