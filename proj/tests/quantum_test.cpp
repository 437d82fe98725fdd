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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nlv/entangled.hpp"
#include "nlv/protocols.hpp"
#include "nlv/quantum.hpp"
#include "nlv/serialize.hpp"
#include "test_support.hpp"

namespace nlv {
namespace {

using testing::max_abs_diff;
using testing::random_povm;
using testing::random_pvm;

const double kTsirelson = std::pow(std::cos(std::numbers::pi / 8), 2);

QuantumStrategySpec random_tensor_spec(std::size_t da, std::size_t db, int k, int n, Rng& rng) {
  QuantumStrategySpec spec;
  spec.dim_a = da;
  spec.dim_b = db;
  spec.state = StateVector(random_unit_vector(da * db, rng));
  for (int x = 0; x < k; ++x) {
    spec.alice.push_back(random_povm(da, n, rng));
    spec.bob.push_back(random_pvm(db, n, rng));
  }
  return spec;
}

TEST(Quantum, BitFlipOnEpr) {
  const Vector flipped = kron(pauli_x(), Matrix::identity(2)) * epr_state().span();
  const double h = 1.0 / std::numbers::sqrt2;
  const Vector expected{0.0, h, h, 0.0};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(std::abs(flipped[i] - expected[i]), 1e-15);
}

TEST(Quantum, ChshOptimalSpecReachesCosSquared) {
  const auto spec = chsh_optimal_spec();
  for (const auto& f : spec.alice) EXPECT_TRUE(validate_measurement(f).ok());
  for (const auto& f : spec.bob) EXPECT_TRUE(validate_measurement(f).ok());
  for (const auto& f : spec.alice) EXPECT_EQ(f.kind, MeasurementKind::kPvm);
  const double v = game_value(chsh_game(), quantum_correlation(spec));
  EXPECT_NEAR(v, kTsirelson, 1e-9);
  EXPECT_GT(v - 0.75, 0.10);
}

TEST(Quantum, CorrelationsAreValidStrategies) {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto spec = random_tensor_spec(1 + rng.below(3), 1 + rng.below(3), 2, 3, rng);
    EXPECT_TRUE(validate_strategy(quantum_correlation(spec)).ok());
  }
}

TEST(Quantum, TensorMatchesCommutingForm) {
  Rng rng(4);
  for (int t = 0; t < 30; ++t) {
    const auto spec = random_tensor_spec(2, 3, 2, 2, rng);
    const auto comm = to_commuting(spec);
    const auto report = validate_spec(comm);
    EXPECT_TRUE(report.ok());
    EXPECT_LT(report.max_commutator, 1e-12);
    EXPECT_LT(max_abs_diff(quantum_correlation(spec), quantum_correlation(comm)), 1e-12);
  }
}

TEST(Quantum, CommutingFormReportsOffendingPair) {
  auto spec = to_commuting(chsh_optimal_spec());
  spec.bob[0] = MeasurementFamily{{kron(rotated_pvm(0.3)[0], Matrix::identity(2)), kron(rotated_pvm(0.3)[1], Matrix::identity(2))},
                                  MeasurementKind::kPvm};
  const auto r = validate_spec(spec);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.violations.front().find("do not commute"), std::string::npos);
  EXPECT_NE(r.violations.front().find("A(1,1) and B(1,1)"), std::string::npos);
  EXPECT_THROW(quantum_correlation(spec), ValidationError);
}

TEST(Quantum, EmbeddedDeterministicStrategyIsExact) {
  const DeterministicStrategy d{{0, 0}, {0, 0}};
  const auto spec = embed_deterministic(d, 2, 2);
  EXPECT_TRUE(validate_spec(spec).ok());
  const Strategy s = quantum_correlation(spec);
  EXPECT_EQ(s.p, det_to_strategy(d, 2, 2).p);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) EXPECT_EQ(s.at(x, y, 0, 0), 1.0);
}

TEST(Quantum, EmbeddedClassicalOptimumOnRandomGames) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Game g = random_game(3, 2, seed);
    const auto c = classical_value(g);
    EXPECT_NEAR(game_value(g, quantum_correlation(embed_deterministic(c.argmax, 3, 2))), c.value, 1e-12);
  }
}

TEST(Quantum, LocalStrategiesHaveQuantumRealizations) {
  Rng rng(10);
  for (int t = 0; t < 100; ++t) {
    const int terms = 1 + static_cast<int>(rng.below(4));
    std::vector<std::pair<double, DeterministicStrategy>> mix;
    double total = 0.0;
    for (int i = 0; i < terms; ++i) {
      DeterministicStrategy d{{}, {}};
      for (int x = 0; x < 3; ++x) {
        d.alice.push_back(static_cast<int>(rng.below(2)));
        d.bob.push_back(static_cast<int>(rng.below(2)));
      }
      const double w = rng.exponential();
      total += w;
      mix.emplace_back(w, d);
    }
    double acc = 0.0;
    for (int i = 0; i < terms; ++i) {
      mix[i].first = i + 1 < terms ? mix[i].first / total : 1.0 - acc;
      acc += mix[i].first;
    }
    const auto spec = local_to_quantum(mix, 3, 2);
    EXPECT_LT(max_abs_diff(quantum_correlation(spec), sample_local(mix, 3, 2)), 1e-9);
  }
}

TEST(Quantum, SpecJsonRoundTrip) {
  Rng rng(12);
  const auto spec = random_tensor_spec(2, 2, 2, 3, rng);
  const auto back = load_spec(save_spec(spec));
  EXPECT_EQ(back.dim_a, spec.dim_a);
  EXPECT_EQ(back.state.amplitudes(), spec.state.amplitudes());
  EXPECT_EQ(max_abs_diff(quantum_correlation(back), quantum_correlation(spec)), 0.0);
}

TEST(Entangled, ChshAtDimensionTwo) {
  EntangledSearchOptions opt;
  opt.dim = 2;
  opt.restarts = 32;
  opt.seed = 1;
  const auto r = entangled_lower_bound(chsh_game(), opt);
  EXPECT_GE(r.value, 0.8535);
  EXPECT_LE(r.value, kTsirelson + 1e-9);
}

TEST(Entangled, AlwaysWinGameAtDimensionOne) {
  EntangledSearchOptions opt;
  opt.dim = 1;
  opt.restarts = 2;
  EXPECT_NEAR(entangled_lower_bound(trivial_game(2, 2), opt).value, 1.0, 1e-12);
}

TEST(Entangled, DeterministicInSeedAndThreads) {
  const Game g = random_game(2, 2, 9);
  EntangledSearchOptions opt;
  opt.restarts = 4;
  opt.iterations = 30;
  opt.seed = 5;
  const auto a = entangled_lower_bound(g, opt);
  opt.threads = 3;
  const auto b = entangled_lower_bound(g, opt);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.restart, b.restart);
  EXPECT_EQ(a.spec.state.amplitudes(), b.spec.state.amplitudes());
}

TEST(Entangled, SelfCertifiesAndDominatesSeededClassical) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Game g = random_game(2, 2, 40 + seed);
    const auto c = classical_value(g);
    EntangledSearchOptions opt;
    opt.restarts = 2;
    opt.iterations = 20;
    opt.seed = seed;
    opt.warm_starts = {c.argmax};
    const auto r = entangled_lower_bound(g, opt);
    EXPECT_NEAR(game_value(g, quantum_correlation(r.spec)), r.value, 1e-9);
    EXPECT_GE(r.value, c.value - 1e-6);
    EXPECT_LE(r.value, 1.0 + 1e-9);
    EXPECT_GE(r.value, 0.0);
  }
}

TEST(Entangled, RejectsBadParameters) {
  EntangledSearchOptions opt;
  opt.dim = 0;
  EXPECT_THROW(entangled_lower_bound(chsh_game(), opt), ValidationError);
  opt.dim = 2;
  opt.iterations = 0;
  EXPECT_THROW(entangled_lower_bound(chsh_game(), opt), ValidationError);
}

}  // namespace
}  // namespace nlv
