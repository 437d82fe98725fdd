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

// Reference oracles and fixtures shared by the tests. The oracles are
// deliberately naive and do not call the library routines they check.

#ifndef NLV_TESTS_TEST_SUPPORT_HPP_
#define NLV_TESTS_TEST_SUPPORT_HPP_

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nlv/nlv.hpp"

namespace nlv::testing {

inline std::string data_path(const std::string& rel) { return std::string(NLV_DATA_DIR) + "/" + rel; }
inline std::string golden_path(const std::string& rel) { return std::string(NLV_GOLDEN_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// sum_{x,y} pi(x,y) sum_{a,b} D(x,y,a,b) p(a,b|x,y), straight off the arrays.
inline double oracle_value(const Game& g, const Strategy& s) {
  double total = 0.0;
  std::size_t w = 0;
  for (int x = 0; x < g.k; ++x)
    for (int y = 0; y < g.k; ++y) {
      const double q = g.pi[static_cast<std::size_t>(x * g.k + y)];
      for (int ab = 0; ab < g.n * g.n; ++ab, ++w) total += q * g.wins[w] * s.p[w];
    }
  return total;
}

struct OracleOptimum {
  double value = -1.0;
  std::vector<int> alice, bob;
};

// Odometer over all (A, B) pairs in lexicographic order, scoring each full
// deterministic strategy; keeps the first maximum.
inline OracleOptimum oracle_classical(const Game& g) {
  std::vector<int> digits(static_cast<std::size_t>(2 * g.k), 0);
  OracleOptimum best;
  while (true) {
    double v = 0.0;
    for (int x = 0; x < g.k; ++x)
      for (int y = 0; y < g.k; ++y) v += g.prob(x, y) * g.win(x, y, digits[x], digits[g.k + y]);
    if (v > best.value) {
      best.value = v;
      best.alice.assign(digits.begin(), digits.begin() + g.k);
      best.bob.assign(digits.begin() + g.k, digits.end());
    }
    int pos = 2 * g.k - 1;
    while (pos >= 0 && ++digits[pos] == g.n) digits[pos--] = 0;
    if (pos < 0) break;
  }
  return best;
}

// Random PVM with n outcomes on C^d: columns of a random unitary, each column
// labelled uniformly at random.
inline MeasurementFamily random_pvm(std::size_t d, int n, Rng& rng) {
  const Matrix u = random_unitary(d, rng);
  MeasurementFamily f{std::vector<Matrix>(static_cast<std::size_t>(n), Matrix(d, d)), MeasurementKind::kPvm};
  for (std::size_t c = 0; c < d; ++c) {
    const auto a = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(n)));
    Vector col(d);
    for (std::size_t i = 0; i < d; ++i) col[i] = u(i, c);
    f.outcomes[a] += Matrix::outer(col, col);
  }
  return f;
}

// Random POVM: G_a = S^{-1/2} H_a S^{-1/2} with H_a = M_a M_a*, S = sum H_a.
inline MeasurementFamily random_povm(std::size_t d, int n, Rng& rng) {
  std::vector<Matrix> h;
  Matrix s(d, d);
  for (int a = 0; a < n; ++a) {
    const Matrix m = ginibre(d, d, rng);
    h.push_back(m * m.adjoint());
    s += h.back();
  }
  const auto eig = hermitian_eigen(s);
  Matrix inv_root(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    Vector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = eig.vectors(i, c);
    inv_root += Matrix::outer(v, v) * cplx(1.0 / std::sqrt(eig.values[c]));
  }
  MeasurementFamily f{{}, MeasurementKind::kPovm};
  for (const auto& x : h) f.outcomes.push_back(inv_root * x * inv_root);
  return f;
}

// Trine POVM on C^2: (2/3)|u_i><u_i| with u_i at angles 0, 120, 240 degrees.
inline MeasurementFamily trine_povm() {
  MeasurementFamily f{{}, MeasurementKind::kPovm};
  for (int i = 0; i < 3; ++i) {
    const double t = 2.0 * std::numbers::pi * i / 3.0;
    const Vector u{std::cos(t), std::sin(t)};
    f.outcomes.push_back(Matrix::outer(u, u) * cplx(2.0 / 3.0));
  }
  return f;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs_diff(const Strategy& a, const Strategy& b) { return max_abs_diff(a.p, b.p); }

// Matrix with operator norm <= 1: Ginibre over a Frobenius bound (Frobenius
// dominates the operator norm, so no spectral routine is involved).
inline Matrix frobenius_contraction(std::size_t p, Rng& rng) {
  const Matrix g = ginibre(p, p, rng);
  return g * cplx(rng.uniform(0.2, 1.0) / g.frobenius_norm());
}

}  // namespace nlv::testing

#endif  // NLV_TESTS_TEST_SUPPORT_HPP_
