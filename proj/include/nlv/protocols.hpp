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

#ifndef NLV_PROTOCOLS_HPP_
#define NLV_PROTOCOLS_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "nlv/error.hpp"
#include "nlv/linalg.hpp"
#include "nlv/measurement.hpp"
#include "nlv/quantum.hpp"
#include "nlv/rng.hpp"

namespace nlv {

/// Two classical bits, each written 1 or 2.
class TwoBitMessage {
 public:
  TwoBitMessage(int first, int second) : first_(first), second_(second) {
    if (first < 1 || first > 2 || second < 1 || second > 2)
      throw ValidationError("message bits must be 1 or 2, got " + std::to_string(first) + std::to_string(second));
  }
  // "11", "12", "21", "22".
  static TwoBitMessage parse(const std::string& s) {
    if (s.size() != 2 || (s[0] != '1' && s[0] != '2') || (s[1] != '1' && s[1] != '2'))
      throw ValidationError("message must be one of 11, 12, 21, 22; got '" + s + "'");
    return {s[0] - '0', s[1] - '0'};
  }
  static TwoBitMessage from_index(int i) { return {i / 2 + 1, i % 2 + 1}; }

  int first() const { return first_; }
  int second() const { return second_; }
  int index() const { return (first_ - 1) * 2 + (second_ - 1); }  // 0..3
  std::string to_string() const { return std::to_string(first_) + std::to_string(second_); }

  friend bool operator==(const TwoBitMessage&, const TwoBitMessage&) = default;

 private:
  int first_;
  int second_;
};

inline Matrix pauli_x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }
inline Matrix pauli_z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }

// Alice's local operator for each message: I, X, Z, ZX.
inline Matrix encoding_operator(const TwoBitMessage& m) {
  switch (m.index()) {
    case 0:
      return Matrix::identity(2);
    case 1:
      return pauli_x();
    case 2:
      return pauli_z();
    default:
      return pauli_z() * pauli_x();
  }
}

/// psi_ij = (O_ij (x) I) psi_EPR.
inline StateVector superdense_encode(const TwoBitMessage& m) {
  const Matrix op = kron(encoding_operator(m), Matrix::identity(2));
  return StateVector(op * epr_state().span());
}

inline std::array<StateVector, 4> bell_basis() {
  return {superdense_encode({1, 1}), superdense_encode({1, 2}), superdense_encode({2, 1}),
          superdense_encode({2, 2})};
}

// PVM of projections onto the Bell basis, outcome order 11, 12, 21, 22.
inline MeasurementFamily bell_measurement() {
  MeasurementFamily m{{}, MeasurementKind::kPvm};
  for (const auto& v : bell_basis()) m.outcomes.push_back(Matrix::projector(v.span()));
  return m;
}

struct DecodeResult {
  TwoBitMessage message{1, 1};
  std::array<double, 4> probabilities{};  // outcome order 11, 12, 21, 22
};

/// Bell-basis measurement; the message is the most likely outcome (first on
/// ties).
inline DecodeResult superdense_decode(const StateVector& s) {
  if (s.dim() != 4) throw DimensionError("superdense decoding needs a two-qubit state");
  const auto probs = born_probabilities(bell_measurement(), s);
  DecodeResult r;
  int best = 0;
  for (int i = 0; i < 4; ++i) {
    r.probabilities[i] = probs[i];
    if (probs[i] > probs[best]) best = i;
  }
  r.message = TwoBitMessage::from_index(best);
  return r;
}

enum class SpinAxis { kVertical, kHorizontal };

inline const char* to_string(SpinAxis a) { return a == SpinAxis::kVertical ? "vertical" : "horizontal"; }

struct EprStatistics {
  SpinAxis axis = SpinAxis::kVertical;
  std::uint64_t trials = 0;
  std::uint64_t agreements = 0;
  double agreement_frequency = 0.0;
  std::array<double, 2> alice_marginal{};
  // sum_a ||(P_a (x) P_a) psi||^2, from amplitudes alone.
  double exact_agreement_probability = 0.0;
};

/// Alice measures her half of psi_EPR along `axis`, the state collapses to
/// (P_a (x) I) psi / ||.||, and Bob measures along the same axis. Only the
/// outcomes are sampled; probabilities come from the amplitudes, with any
/// outcome of probability below 1e-12 treated as impossible.
inline EprStatistics epr_correlation_demo(std::uint64_t trials, std::uint64_t seed,
                                          SpinAxis axis = SpinAxis::kVertical) {
  if (trials < 1) throw ValidationError("trials must be >= 1");
  const MeasurementFamily local = axis == SpinAxis::kVertical ? coordinate_pvm(2) : rotated_pvm(std::numbers::pi / 4);
  const Matrix id = Matrix::identity(2);
  MeasurementFamily alice_side{{kron(local[0], id), kron(local[1], id)}, MeasurementKind::kPvm};
  MeasurementFamily bob_side{{kron(id, local[0]), kron(id, local[1])}, MeasurementKind::kPvm};
  const StateVector psi = epr_state();

  const auto alice_probs = born_probabilities(alice_side, psi);
  std::array<StateVector, 2> collapsed{collapse(alice_side, psi, 0), collapse(alice_side, psi, 1)};
  std::array<std::array<double, 2>, 2> bob_probs{};
  EprStatistics st;
  st.axis = axis;
  st.trials = trials;
  for (int a = 0; a < 2; ++a) {
    const auto p = born_probabilities(bob_side, collapsed[a]);
    double total = 0.0;
    for (int b = 0; b < 2; ++b) {
      bob_probs[a][b] = p[b] < 1e-12 ? 0.0 : p[b];
      total += bob_probs[a][b];
    }
    for (int b = 0; b < 2; ++b) bob_probs[a][b] /= total;
    st.exact_agreement_probability += alice_probs[a] * p[a];
  }

  Rng rng(seed);
  std::array<std::uint64_t, 2> alice_counts{};
  for (std::uint64_t t = 0; t < trials; ++t) {
    const int a = rng.uniform() < alice_probs[0] ? 0 : 1;
    const double u = rng.uniform();
    const int b = u < bob_probs[a][0] ? 0 : 1;
    ++alice_counts[a];
    if (a == b) ++st.agreements;
  }
  st.agreement_frequency = static_cast<double>(st.agreements) / static_cast<double>(trials);
  for (int a = 0; a < 2; ++a) st.alice_marginal[a] = static_cast<double>(alice_counts[a]) / static_cast<double>(trials);
  return st;
}

}  // namespace nlv

#endif  // NLV_PROTOCOLS_HPP_
