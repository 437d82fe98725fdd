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

#include "nlv/tm.hpp"
#include "test_support.hpp"

namespace nlv::tm {
namespace {

using nlv::testing::data_path;
using nlv::testing::golden_path;
using nlv::testing::slurp;

constexpr std::array<Symbol, 4> kAll{Symbol::kZero, Symbol::kOne, Symbol::kBlank, Symbol::kStart};

TuringMachine bundled(const std::string& name) { return load_machine(slurp(data_path("machines/" + name + ".json"))); }
Ndtm bundled_ndtm(const std::string& name) { return load_ndtm(slurp(data_path("machines/" + name + ".json"))); }

std::string joined(const std::vector<std::string>& lines) {
  std::string s;
  for (const auto& l : lines) s += l + "\n";
  return s;
}

// Every entry: go to `target`, rewrite the scanned work/output symbols, stay.
TransitionTable constant_table(std::size_t states, int target) {
  TransitionTable t(states);
  for (std::size_t q = 0; q < states; ++q)
    for (Symbol a : kAll)
      for (Symbol b : kAll)
        for (Symbol c : kAll) t.at(static_cast<int>(q), a, b, c) = Transition{target, b, c, {Move::kStay, Move::kStay, Move::kStay}};
  return t;
}

TEST(Tm, ImmediateHalt) {
  TuringMachine m{{"start", "halt"}, 0, 1, constant_table(2, 1)};
  const auto r = run(m, "", 10);
  EXPECT_EQ(r.status, RunStatus::kHalted);
  EXPECT_EQ(r.steps, 1u);
  EXPECT_EQ(r.output, "");
}

TEST(Tm, StepClampsAtLeftEdge) {
  TuringMachine m{{"start", "halt"}, 0, 1, constant_table(2, 0)};
  m.delta.at(0, Symbol::kStart, Symbol::kStart, Symbol::kStart) =
      Transition{0, Symbol::kStart, Symbol::kStart, {Move::kLeft, Move::kLeft, Move::kLeft}};
  const Configuration c = step(m, initial_configuration(0, "1"));
  EXPECT_EQ(c.heads, (std::array<std::size_t, 3>{0, 0, 0}));
}

TEST(Tm, SteppingHaltedConfigurationThrows) {
  const auto m = bundled("copier");
  Configuration c = initial_configuration(m.halt, "");
  EXPECT_THROW(step(m, c), ValidationError);
}

TEST(Tm, CopierGoldenTraces) {
  const auto m = bundled("copier");
  for (const auto& [input, file] : std::vector<std::pair<std::string, std::string>>{
           {"", "copier_empty.trace"}, {"1", "copier_1.trace"}, {"101", "copier_101.trace"}, {"1011", "copier_1011.trace"}}) {
    const auto r = run(m, input, 1000, true);
    EXPECT_EQ(r.status, RunStatus::kHalted);
    EXPECT_EQ(r.output, input);
    EXPECT_EQ(r.steps, 3 + 2 * input.size());
    EXPECT_EQ(r.trace.size(), r.steps);
    EXPECT_EQ(joined(r.trace), slurp(golden_path(file))) << input;
  }
}

TEST(Tm, LooperExhaustsBudget) {
  const auto r = run(bundled("looper"), "1", 10000);
  EXPECT_EQ(r.status, RunStatus::kBudgetExceeded);
  EXPECT_EQ(r.steps, 10000u);
}

TEST(Tm, LeftClampMachine) {
  const auto r = run(bundled("left_clamp"), "1", 10, true);
  EXPECT_EQ(r.status, RunStatus::kHalted);
  EXPECT_EQ(r.final_configuration.heads, (std::array<std::size_t, 3>{0, 0, 0}));
  EXPECT_EQ(joined(r.trace), slurp(golden_path("left_clamp_1.trace")));
}

TEST(Tm, InputTapeNeverChangesAndRunsAreDeterministic) {
  const auto m = bundled("copier");
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    std::string input;
    for (std::uint64_t i = 0, len = rng.below(12); i < len; ++i) input += rng.below(2) ? '1' : '0';
    Configuration c = initial_configuration(m.start, input);
    const auto tape = c.tapes[0];
    std::uint64_t steps = 0;
    while (c.state != m.halt) {
      c = step(m, c);
      ++steps;
      ASSERT_EQ(c.tapes[0], tape);
    }
    const auto a = run(m, input, 1000, true), b = run(m, input, 1000, true);
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.steps, steps);
    EXPECT_EQ(a.output, input);
  }
}

TEST(Tm, HaltingIsMonotoneInBudget) {
  const auto m = bundled("copier");
  for (std::uint64_t b1 = 1; b1 < 20; ++b1) {
    const auto r1 = run(m, "110", b1);
    const auto r2 = run(m, "110", b1 + 7);
    if (r1.status == RunStatus::kHalted) {
      EXPECT_EQ(r2.status, RunStatus::kHalted);
      EXPECT_EQ(r1.output, r2.output);
    }
  }
  EXPECT_THROW(run(m, "1", 0), ValidationError);
}

TEST(Tm, OutputStopsAtFirstBlank) {
  // Output tape ends as > 1 _ 0.
  TuringMachine m{{"start", "one", "gap", "zero", "halt"}, 0, 4, constant_table(5, 4)};
  const std::array<Move, 3> right{Move::kStay, Move::kStay, Move::kRight};
  m.delta.at(0, Symbol::kStart, Symbol::kStart, Symbol::kStart) = Transition{1, Symbol::kStart, Symbol::kStart, right};
  m.delta.at(1, Symbol::kStart, Symbol::kStart, Symbol::kBlank) = Transition{2, Symbol::kStart, Symbol::kOne, right};
  m.delta.at(2, Symbol::kStart, Symbol::kStart, Symbol::kBlank) = Transition{3, Symbol::kStart, Symbol::kBlank, right};
  m.delta.at(3, Symbol::kStart, Symbol::kStart, Symbol::kBlank) =
      Transition{4, Symbol::kStart, Symbol::kZero, {Move::kStay, Move::kStay, Move::kStay}};
  const auto r = run(m, "", 10);
  ASSERT_EQ(r.status, RunStatus::kHalted);
  EXPECT_EQ(r.steps, 4u);
  EXPECT_EQ(r.output, "1");
}

TEST(Tm, LoaderRejectsPartialTables) {
  EXPECT_THROW(load_machine(R"({"states": ["s", "h"], "start": "s", "halt": "h", "transitions": []})"), ValidationError);
  EXPECT_THROW(load_machine(R"({"states": ["s"], "start": "s", "halt": "h", "transitions": []})"), ParseError);
  EXPECT_THROW(load_machine(R"({"states": ["s", "s"], "start": "s", "halt": "s", "transitions": []})"), ParseError);
  EXPECT_THROW(load_machine(R"({"states": ["s", "h"], "start": "s", "halt": "h",
                                "transitions": [["s", "2", "_", "_", "h", "_", "_", "S", "S", "S"]]})"),
               ParseError);
  std::string text = slurp(data_path("machines/looper.json"));
  const auto pos = text.find("\"transitions\": [") + 16;
  text.insert(pos, "\n    [\"start\", \"0\", \"0\", \"0\", \"halt\", \"0\", \"0\", \"S\", \"S\", \"S\"],");
  EXPECT_THROW(load_machine(text), ParseError);  // duplicate entry
}

TEST(Tm, InputMustBeBinary) { EXPECT_THROW(run(bundled("copier"), "102", 10), ValidationError); }

TEST(Ndtm, GuessBitAcceptsOnMatch) {
  const auto m = bundled_ndtm("guess_bit");
  EXPECT_EQ(ndtm_accepts(m, "1", 4).outcome, NdtmOutcome::kAccept);
  EXPECT_EQ(ndtm_accepts(m, "0", 4).outcome, NdtmOutcome::kAccept);
  EXPECT_EQ(ndtm_accepts(m, "", 4).outcome, NdtmOutcome::kReject);
  EXPECT_EQ(ndtm_accepts(m, "1", 1).outcome, NdtmOutcome::kBudgetExceeded);
}

TEST(Ndtm, AlwaysRejectAtDepthOne) {
  const auto r = ndtm_accepts(bundled_ndtm("always_reject"), "1", 1);
  EXPECT_EQ(r.outcome, NdtmOutcome::kReject);
  EXPECT_EQ(r.depth, 1u);
}

TEST(Ndtm, DeepAcceptBeyondBudget) {
  // Chain of 10 states on one branch; the other branch stalls in place.
  const int chain = 10;
  Ndtm m;
  for (int i = 0; i < chain; ++i) m.states.push_back("c" + std::to_string(i));
  m.states.push_back("accept");
  m.states.push_back("reject");
  m.start = 0;
  m.accept = chain;
  m.reject = chain + 1;
  m.delta[0] = constant_table(m.states.size(), 0);
  m.delta[1] = constant_table(m.states.size(), 0);
  for (int i = 0; i < chain; ++i)
    for (Symbol a : kAll)
      for (Symbol b : kAll)
        for (Symbol c : kAll) {
          m.delta[0].at(i, a, b, c) = Transition{i + 1, b, c, {Move::kStay, Move::kStay, Move::kStay}};
          m.delta[1].at(i, a, b, c) = Transition{i, b, c, {Move::kStay, Move::kStay, Move::kStay}};
        }
  EXPECT_EQ(ndtm_accepts(m, "", 5).outcome, NdtmOutcome::kBudgetExceeded);
  const auto r = ndtm_accepts(m, "", 12);
  EXPECT_EQ(r.outcome, NdtmOutcome::kAccept);
  EXPECT_EQ(r.depth, 10u);
}

TEST(Ndtm, LoaderRequiresDistinctHaltingStates) {
  std::string text = slurp(data_path("machines/always_reject.json"));
  const auto pos = text.find("\"reject\": \"reject\"");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 18, "\"reject\": \"accept\"");
  EXPECT_THROW(load_ndtm(text), ValidationError);
}

}  // namespace
}  // namespace nlv::tm
