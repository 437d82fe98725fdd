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

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "nlv_cli.hpp"
#include "test_support.hpp"

namespace nlv::cli {
namespace {

using nlv::testing::data_path;
using nlv::testing::slurp;

struct Outcome {
  int code = 0;
  std::string out, err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args) {
  args.push_back("--json");
  const auto r = call(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "nlv_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

const std::string kChsh = data_path("games/chsh.json");

TEST(Cli, DemoChsh) {
  const auto r = call({"demo-chsh"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0.75"), std::string::npos);
  EXPECT_NE(r.out.find("0.853553"), std::string::npos);
  EXPECT_NE(r.out.find("gap"), std::string::npos);
  const auto j = call_json({"demo-chsh"});
  EXPECT_EQ(j["classical_value"].get<double>(), 0.75);
  EXPECT_NEAR(j["quantum_value"].get<double>(), 0.8535533906, 1e-9);
}

TEST(Cli, ValueOfUniformStrategy) {
  const auto j = call_json({"value", "--game", kChsh, "--strategy", data_path("strategies/uniform.json")});
  EXPECT_DOUBLE_EQ(j["value"].get<double>(), 0.5);
}

TEST(Cli, ClassicalJson) {
  const auto j = call_json({"classical", "--game", kChsh});
  EXPECT_EQ(j["value"].get<double>(), 0.75);
  EXPECT_EQ(j["A"], json::array({1, 1}));
  EXPECT_EQ(j["B"], json::array({1, 1}));
}

TEST(Cli, ClassicalCapIsADomainError) {
  const auto r = call({"classical", "--game", kChsh, "--cap", "10"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--sample"), std::string::npos);
  const auto j = call_json({"classical", "--game", kChsh, "--cap", "10", "--sample", "--seed", "4"});
  EXPECT_FALSE(j["exact"].get<bool>());
  EXPECT_LE(j["value"].get<double>(), 0.75);
}

TEST(Cli, LooperBudgetIsNotAnError) {
  const auto r = call({"tm", "run", "--machine", data_path("machines/looper.json"), "--input", "1", "--budget", "100"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("BudgetExceeded"), std::string::npos);
}

TEST(Cli, TmTraceMatchesGolden) {
  const auto r = call({"tm", "run", "--machine", data_path("machines/copier.json"), "--input", "101", "--budget", "50",
                       "--trace"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind(slurp(nlv::testing::golden_path("copier_101.trace")), 0), 0u);
}

TEST(Cli, NdtmOutcome) {
  const auto j = call_json({"tm", "ndtm", "--machine", data_path("machines/guess_bit.json"), "--input", "1", "--depth", "4"});
  EXPECT_EQ(j["outcome"], "Accept");
}

TEST(Cli, UsageErrorsExitTwo) {
  auto r = call({"frobnicate"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unknown subcommand 'frobnicate'"), std::string::npos);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"classical"}).code, 2);
  EXPECT_EQ(call({"quantum-lb", "--game", kChsh, "--dim", "0"}).code, 2);
  EXPECT_EQ(call({"epr", "--axis", "diagonal"}).code, 2);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, DomainErrorsExitOne) {
  EXPECT_EQ(call({"value", "--game", "/nonexistent.json", "--strategy", kChsh}).code, 1);
  const std::string bad = scratch("bad_game.json");
  std::ofstream(bad) << R"({"k": 0, "n": 2, "pi": [], "wins": []})";
  const auto r = call({"classical", "--game", bad});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("k must be >= 1"), std::string::npos);
  EXPECT_EQ(call({"superdense", "--msg", "31"}).code, 1);
}

TEST(Cli, ManifestAccompaniesResults) {
  const auto j = call_json({"epr", "--trials", "100", "--seed", "3", "--threads", "2"});
  const auto& m = j["manifest"];
  EXPECT_EQ(m["subcommand"], "epr");
  EXPECT_EQ(m["params"]["seed"], 3);
  EXPECT_EQ(m["params"]["trials"], 100);
  EXPECT_EQ(m["params"]["threads"], 2);
  EXPECT_EQ(m["version"], kVersion);
  EXPECT_GE(m["runtime_seconds"].get<double>(), 0.0);
  const auto text = call({"epr", "--trials", "100", "--seed", "3"});
  EXPECT_NE(text.out.find("# nlv"), std::string::npos);
}

TEST(Cli, QuantumLbWritesLoadableSpec) {
  const std::string path = scratch("spec.json");
  const auto j = call_json({"quantum-lb", "--game", kChsh, "--dim", "2", "--restarts", "4", "--seed", "1", "--out", path});
  EXPECT_EQ(j["spec_file"], path);
  EXPECT_EQ(j["dim"], 2);
  const auto spec = load_spec(slurp(path));
  EXPECT_NEAR(game_value(chsh_game(), quantum_correlation(spec)), j["value"].get<double>(), 1e-12);
}

TEST(Cli, SyncLbIsLabelled) {
  const auto j = call_json({"sync-lb", "--game", kChsh, "--dim", "1", "--restarts", "2", "--seed", "1"});
  EXPECT_EQ(j["label"], "finite-dimensional lower bound");
  EXPECT_NEAR(j["value"].get<double>(), 0.75, 1e-12);
}

TEST(Cli, MomentsMap) {
  const std::string path = scratch("diag.json");
  std::ofstream(path) << save_matrices({Matrix::diagonal(std::vector<double>{1.0, -1.0})});
  const auto j = call_json({"moments", "map", "--n", "1", "--d", "2", "--matrices", path});
  EXPECT_EQ(j["moments"], json::array({0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0}));
  EXPECT_EQ(j["monomials"][3], "x1x1*");
  EXPECT_EQ(call({"moments", "map", "--n", "2", "--d", "2", "--matrices", path}).code, 1);
}

TEST(Cli, MomentsDensityExportsCsv) {
  const std::string csv = scratch("cloud.csv");
  const auto j = call_json({"moments", "density", "--n", "1", "--d", "1", "--p1", "1", "--p2", "2", "--eps", "0.1",
                            "--seed", "1", "--count1", "50", "--count2", "10", "--cloud", csv});
  EXPECT_GE(j["covered_fraction"].get<double>(), 0.0);
  const std::string rows = slurp(csv);
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 50);
}

json without_runtime(json j) {
  j["manifest"].erase("runtime_seconds");
  return j;
}

TEST(Cli, SeededSubcommandsAreReproducible) {
  const std::vector<std::vector<std::string>> commands{
      {"quantum-lb", "--game", kChsh, "--dim", "2", "--restarts", "3", "--seed", "7", "--iters", "20", "--out",
       scratch("repro.json")},
      {"sync-lb", "--game", kChsh, "--dim", "2", "--restarts", "3", "--seed", "7", "--iters", "20"},
      {"epr", "--trials", "500", "--seed", "7"},
      {"classical", "--game", kChsh, "--sample", "--seed", "7"},
      {"moments", "density", "--n", "1", "--d", "2", "--p1", "1", "--p2", "2", "--eps", "0.2", "--seed", "7",
       "--count1", "100", "--count2", "20"}};
  for (const auto& cmd : commands) {
    const auto a = call_json(cmd), b = call_json(cmd);
    EXPECT_EQ(without_runtime(a).dump(), without_runtime(b).dump()) << cmd.front();
  }
}

TEST(Cli, ThreadsFallBackToEnvironment) {
  ::setenv("NLV_THREADS", "3", 1);
  EXPECT_EQ(resolve_threads(0), 3u);
  EXPECT_EQ(call_json({"demo-chsh"})["manifest"]["params"]["threads"], 3);
  EXPECT_EQ(resolve_threads(5), 5u);
  ::unsetenv("NLV_THREADS");
}

}  // namespace
}  // namespace nlv::cli
