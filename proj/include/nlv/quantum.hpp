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

#ifndef NLV_QUANTUM_HPP_
#define NLV_QUANTUM_HPP_

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "nlv/classical.hpp"
#include "nlv/error.hpp"
#include "nlv/game.hpp"
#include "nlv/linalg.hpp"
#include "nlv/measurement.hpp"

namespace nlv {

enum class StrategyFlavor { kTensor, kCommuting };

inline const char* to_string(StrategyFlavor f) { return f == StrategyFlavor::kTensor ? "tensor" : "commuting"; }

/// Shared state plus one measurement family per question for each player.
/// Tensor flavor: Alice acts on C^dim_a, Bob on C^dim_b, state in
/// C^dim_a (x) C^dim_b. Commuting flavor: everything acts on one space
/// C^dim_a (dim_b == dim_a) and Alice's operators commute with Bob's.
struct QuantumStrategySpec {
  StrategyFlavor flavor = StrategyFlavor::kTensor;
  std::size_t dim_a = 1;
  std::size_t dim_b = 1;
  StateVector state{Vector{1.0}};
  std::vector<MeasurementFamily> alice;
  std::vector<MeasurementFamily> bob;

  int questions() const { return static_cast<int>(alice.size()); }
  int answers() const { return alice.empty() ? 0 : static_cast<int>(alice.front().size()); }
};

inline constexpr double kCommutationTolerance = 1e-9;

struct SpecReport {
  std::vector<std::string> violations;
  double max_commutator = 0.0;
  bool ok() const { return violations.empty(); }
};

inline SpecReport validate_spec(const QuantumStrategySpec& spec) {
  SpecReport r;
  const std::size_t k = spec.alice.size();
  if (k == 0) r.violations.push_back("spec has no questions");
  if (spec.bob.size() != k) r.violations.push_back("Alice and Bob have different question counts");
  if (!r.ok()) return r;
  const std::size_t n = spec.alice.front().size();
  const bool tensor = spec.flavor == StrategyFlavor::kTensor;
  if (!tensor && spec.dim_a != spec.dim_b) r.violations.push_back("commuting spec needs dim_a == dim_b");
  const std::size_t state_dim = tensor ? spec.dim_a * spec.dim_b : spec.dim_a;
  if (spec.state.dim() != state_dim)
    r.violations.push_back("state has dim " + std::to_string(spec.state.dim()) + ", expected " + std::to_string(state_dim));
  auto check_side = [&](const std::vector<MeasurementFamily>& fams, std::size_t dim, const char* who) {
    for (std::size_t x = 0; x < fams.size(); ++x) {
      const auto& f = fams[x];
      const std::string label = std::string(who) + " family " + std::to_string(x + 1);
      if (f.size() != n) r.violations.push_back(label + " has " + std::to_string(f.size()) + " outcomes, expected " + std::to_string(n));
      if (f.dim() != dim) {
        r.violations.push_back(label + " has dim " + std::to_string(f.dim()) + ", expected " + std::to_string(dim));
        continue;
      }
      const auto mr = validate_measurement(f);
      if (!mr.ok()) r.violations.push_back(label + ": " + mr.violations.front());
    }
  };
  check_side(spec.alice, spec.dim_a, "Alice");
  check_side(spec.bob, spec.dim_b, "Bob");
  if (!r.ok() || tensor) return r;
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t y = 0; y < k; ++y)
        for (std::size_t b = 0; b < n; ++b) {
          const double c = commutator(spec.alice[x][a], spec.bob[y][b]).frobenius_norm();
          r.max_commutator = std::max(r.max_commutator, c);
          if (c > kCommutationTolerance)
            r.violations.push_back("A" + detail::tuple1({static_cast<int>(x), static_cast<int>(a)}) + " and B" +
                                   detail::tuple1({static_cast<int>(y), static_cast<int>(b)}) +
                                   " do not commute (residual " + detail::fmt_num(c) + ")");
        }
  return r;
}

/// Tensor: p(a,b|x,y) = <(A^x_a (x) B^y_b) psi, psi>.
/// Commuting: p(a,b|x,y) = <A^x_a B^y_b xi, xi>.
inline Strategy quantum_correlation(const QuantumStrategySpec& spec) {
  const auto report = validate_spec(spec);
  if (!report.ok()) throw ValidationError("invalid quantum strategy: " + report.violations.front());
  const int k = spec.questions(), n = spec.answers();
  Strategy s(k, n);
  const auto& psi = spec.state.amplitudes();
  if (spec.flavor == StrategyFlavor::kTensor) {
    // psi as a dim_a x dim_b matrix: (A (x) B) psi  <->  A Psi B^T.
    const std::size_t da = spec.dim_a, db = spec.dim_b;
    Matrix state_matrix(da, db, psi);
    for (int y = 0; y < k; ++y)
      for (int b = 0; b < n; ++b) {
        // Psi B^T
        const Matrix& bob_op = spec.bob[y][b];
        Matrix right(da, db);
        for (std::size_t i = 0; i < da; ++i)
          for (std::size_t j = 0; j < db; ++j) {
            cplx acc = 0.0;
            for (std::size_t l = 0; l < db; ++l) acc += state_matrix(i, l) * bob_op(j, l);
            right(i, j) = acc;
          }
        for (int x = 0; x < k; ++x)
          for (int a = 0; a < n; ++a) {
            const Matrix& alice_op = spec.alice[x][a];
            cplx v = 0.0;
            for (std::size_t i = 0; i < da; ++i)
              for (std::size_t j = 0; j < db; ++j) {
                cplx row = 0.0;
                for (std::size_t l = 0; l < da; ++l) row += alice_op(i, l) * right(l, j);
                v += row * std::conj(state_matrix(i, j));
              }
            if (std::abs(v.imag()) >= 1e-9)
              throw ValidationError("correlation entry has imaginary residual " + detail::fmt_num(v.imag()));
            s.at(x, y, a, b) = v.real();
          }
      }
  } else {
    for (int y = 0; y < k; ++y)
      for (int b = 0; b < n; ++b) {
        const Vector bxi = spec.bob[y][b] * std::span<const cplx>(psi);
        for (int x = 0; x < k; ++x)
          for (int a = 0; a < n; ++a) {
            const cplx v = inner(spec.alice[x][a] * std::span<const cplx>(bxi), psi);
            if (std::abs(v.imag()) >= 1e-9)
              throw ValidationError("correlation entry has imaginary residual " + detail::fmt_num(v.imag()));
            s.at(x, y, a, b) = v.real();
          }
      }
  }
  return s;
}

/// Same correlation on a single space: A (x) I and I (x) B acting on the
/// product space.
inline QuantumStrategySpec to_commuting(const QuantumStrategySpec& spec) {
  if (spec.flavor != StrategyFlavor::kTensor) return spec;
  QuantumStrategySpec out;
  out.flavor = StrategyFlavor::kCommuting;
  out.dim_a = out.dim_b = spec.dim_a * spec.dim_b;
  out.state = spec.state;
  const Matrix ia = Matrix::identity(spec.dim_a), ib = Matrix::identity(spec.dim_b);
  for (const auto& f : spec.alice) {
    MeasurementFamily g{{}, f.kind};
    for (const auto& p : f.outcomes) g.outcomes.push_back(kron(p, ib));
    out.alice.push_back(std::move(g));
  }
  for (const auto& f : spec.bob) {
    MeasurementFamily g{{}, f.kind};
    for (const auto& p : f.outcomes) g.outcomes.push_back(kron(ia, p));
    out.bob.push_back(std::move(g));
  }
  return out;
}

namespace detail {
inline MeasurementFamily scalar_family(int n, int chosen) {
  MeasurementFamily f{{}, MeasurementKind::kPvm};
  for (int a = 0; a < n; ++a) f.outcomes.push_back(Matrix(1, 1, {a == chosen ? 1.0 : 0.0}));
  return f;
}
}  // namespace detail

/// Deterministic strategy as a one-dimensional quantum strategy: A^x is the
/// scalar POVM with A^x_{A(x)} = 1 and all other outcomes 0.
inline QuantumStrategySpec embed_deterministic(const DeterministicStrategy& d, int k, int n) {
  check_deterministic(d, k, n);
  QuantumStrategySpec spec;
  for (int x = 0; x < k; ++x) {
    spec.alice.push_back(detail::scalar_family(n, d.alice[x]));
    spec.bob.push_back(detail::scalar_family(n, d.bob[x]));
  }
  return spec;
}

/// Local strategy sum_i w_i det_i as a tensor spec on C^m (x) C^m, m the
/// number of mixture terms: psi = sum_i sqrt(w_i) e_i (x) e_i, and A^x_a is
/// the diagonal projection onto the terms i with A_i(x) = a.
inline QuantumStrategySpec local_to_quantum(const std::vector<std::pair<double, DeterministicStrategy>>& mixture, int k,
                                            int n) {
  sample_local(mixture, k, n);  // validates weights and functions
  const std::size_t m = mixture.size();
  Vector psi(m * m);
  for (std::size_t i = 0; i < m; ++i) psi[i * m + i] = std::sqrt(mixture[i].first);
  QuantumStrategySpec spec;
  spec.dim_a = spec.dim_b = m;
  spec.state = StateVector::normalized(std::move(psi));
  auto side = [&](bool alice_side) {
    std::vector<MeasurementFamily> fams;
    for (int x = 0; x < k; ++x) {
      MeasurementFamily f{std::vector<Matrix>(n, Matrix(m, m)), MeasurementKind::kPvm};
      for (std::size_t i = 0; i < m; ++i) {
        const auto& d = mixture[i].second;
        f.outcomes[(alice_side ? d.alice : d.bob)[x]](i, i) = 1.0;
      }
      fams.push_back(std::move(f));
    }
    return fams;
  };
  spec.alice = side(true);
  spec.bob = side(false);
  return spec;
}

inline StateVector epr_state() {
  const double h = 1.0 / std::numbers::sqrt2;
  return StateVector(Vector{h, 0.0, 0.0, h});
}

/// EPR state with rotated-basis PVMs: Alice at angles 0 and pi/4, Bob at
/// pi/8 and -pi/8. Its CHSH value is cos^2(pi/8).
inline QuantumStrategySpec chsh_optimal_spec() {
  constexpr double pi = std::numbers::pi;
  QuantumStrategySpec spec;
  spec.dim_a = spec.dim_b = 2;
  spec.state = epr_state();
  spec.alice = {rotated_pvm(0.0), rotated_pvm(pi / 4)};
  spec.bob = {rotated_pvm(pi / 8), rotated_pvm(-pi / 8)};
  return spec;
}

}  // namespace nlv

#endif  // NLV_QUANTUM_HPP_
