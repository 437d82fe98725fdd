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

#include "nlv/classical.hpp"
#include "nlv/game.hpp"
#include "test_support.hpp"

namespace nlv {
namespace {

using testing::data_path;
using testing::oracle_value;
using testing::slurp;

bool mentions(const ValidationReport& r, const std::string& needle) {
  for (const auto& v : r.violations)
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

// Random valid strategy: each row an independent Dirichlet(1) draw.
Strategy random_strategy(int k, int n, Rng& rng) {
  Strategy s(k, n);
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      double sum = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) sum += s.at(x, y, a, b) = rng.exponential();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s.at(x, y, a, b) /= sum;
    }
  return s;
}

TEST(Game, ChshValidates) { EXPECT_TRUE(validate_game(chsh_game()).ok()); }

TEST(Game, MassViolationIsReported) {
  Game g = chsh_game();
  for (auto& p : g.pi) p = 0.125;
  const auto r = validate_game(g);
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r, "distribution mass 0.5 != 1"));
}

TEST(Game, NonBooleanPredicateIsReported) {
  Game g = chsh_game();
  g.win(0, 0, 0, 0) = 0.7;
  const auto r = validate_game(g);
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r, "non-boolean predicate entry D(1,1,1,1)"));
}

TEST(Game, ChshConstantStrategyWinsThreeQuarters) {
  const Strategy s = det_to_strategy({{0, 0}, {0, 0}}, 2, 2);
  EXPECT_DOUBLE_EQ(game_value(chsh_game(), s), 0.75);
}

TEST(Game, AlwaysWinGameHasValueOne) {
  Rng rng(4);
  for (int t = 0; t < 10; ++t) EXPECT_NEAR(game_value(trivial_game(3, 2), random_strategy(3, 2, rng)), 1.0, 1e-12);
}

TEST(Game, UniformStrategyOnChshIsOneHalf) {
  // Every question pair has two winning answer pairs out of four.
  EXPECT_NEAR(game_value(chsh_game(), uniform_strategy(2, 2)), 0.5, 1e-15);
}

TEST(Game, ValueMatchesOracle) {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const Game g = random_game(3, 3, 100 + t);
    const Strategy s = random_strategy(3, 3, rng);
    EXPECT_NEAR(game_value(g, s), oracle_value(g, s), 1e-12);
  }
}

TEST(Game, DimensionMismatchThrows) {
  EXPECT_THROW(game_value(chsh_game(), uniform_strategy(3, 2)), DimensionError);
}

TEST(Game, ValueIsAffineInStrategy) {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const Game g = random_game(2, 3, 7 + t);
    const Strategy s1 = random_strategy(2, 3, rng), s2 = random_strategy(2, 3, rng);
    const double lambda = rng.uniform();
    Strategy mix(2, 3);
    for (std::size_t i = 0; i < mix.p.size(); ++i) mix.p[i] = lambda * s1.p[i] + (1 - lambda) * s2.p[i];
    EXPECT_NEAR(game_value(g, mix), lambda * game_value(g, s1) + (1 - lambda) * game_value(g, s2), 1e-9);
  }
}

TEST(Game, ValueInUnitIntervalAndMonotoneInPredicate) {
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    Game g = random_game(3, 2, 300 + t);
    const Strategy s = random_strategy(3, 2, rng);
    const double v = game_value(g, s);
    EXPECT_GE(v, -1e-12);
    EXPECT_LE(v, 1.0 + 1e-9);
    for (std::size_t i = 0; i < g.wins.size(); ++i)
      if (g.wins[i] == 0.0) {
        g.wins[i] = 1.0;
        EXPECT_GE(game_value(g, s), v - 1e-15);
        break;
      }
  }
}

TEST(Game, RandomGameIsDeterministicAndValid) {
  EXPECT_EQ(random_game(2, 2, 7), random_game(2, 2, 7));
  EXPECT_FALSE(random_game(2, 2, 7) == random_game(2, 2, 8));
  for (std::uint64_t seed = 0; seed < 50; ++seed) EXPECT_TRUE(validate_game(random_game(3, 2, seed)).ok());
}

TEST(Game, BundledChshLoads) {
  EXPECT_EQ(load_game(slurp(data_path("games/chsh.json"))), chsh_game());
}

TEST(Game, SaveLoadRoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Game g = random_game(3, 2, seed);
    const std::string text = save_game(g);
    EXPECT_EQ(load_game(text), g);
    EXPECT_EQ(save_game(load_game(text)), text);
  }
}

TEST(Game, LoadRejectsBadInput) {
  EXPECT_THROW(load_game(R"({"k": 0, "n": 2, "pi": [], "wins": []})"), Error);
  try {
    load_game(R"({"k": 0, "n": 2, "pi": [], "wins": []})");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("k must be >= 1"), std::string::npos);
  }
  EXPECT_THROW(load_game("{not json"), ParseError);
  EXPECT_THROW(load_game(R"({"k": 1, "n": 1, "pi": [[1.0]], "wins": [[1, 1, 2, 1]]})"), Error);
  EXPECT_THROW(load_game(R"({"k": 1, "n": 1, "pi": [[1.0]], "wins": [[1, 1, 1, 1], [1, 1, 1, 1]]})"), Error);
  EXPECT_THROW(load_game(R"({"k": 1, "n": 1, "pi": [[0.5]], "wins": []})"), ValidationError);
}

TEST(Game, StrategyFileRoundTrip) {
  const Strategy s = load_strategy(slurp(data_path("strategies/uniform.json")));
  EXPECT_EQ(s.p, uniform_strategy(2, 2).p);
  EXPECT_EQ(load_strategy(save_strategy(s)).p, s.p);
}

TEST(Game, StrategyValidation) {
  Strategy s = uniform_strategy(2, 2);
  EXPECT_TRUE(validate_strategy(s).ok());
  s.at(0, 0, 0, 0) = 0.5;
  EXPECT_FALSE(validate_strategy(s).ok());
}

}  // namespace
}  // namespace nlv
