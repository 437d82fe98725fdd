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

// Command-line front end. dispatch() takes the arguments after the program
// name and returns the process exit code: 0 success, 1 domain error, 2 usage
// error.

#ifndef NLV_TOOLS_NLV_CLI_HPP_
#define NLV_TOOLS_NLV_CLI_HPP_

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlv/nlv.hpp"

namespace nlv::cli {

using nlohmann::json;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("failed writing '" + path + "'");
}

inline json one_based(const std::vector<int>& f) {
  auto out = json::array();
  for (int v : f) out.push_back(v + 1);
  return out;
}

inline std::string join_one_based(const std::vector<int>& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? " " : "") + std::to_string(f[i] + 1);
  return s;
}

// Result of one subcommand: JSON fields plus a human-readable rendering.
struct Report {
  json params = json::object();
  json result = json::object();
  std::string text;
};

class Session {
 public:
  Session(std::ostream& out, bool as_json, unsigned threads) : out_(out), json_(as_json), threads_(threads) {}

  unsigned threads() const { return threads_; }

  // Runs `body`, timing it, and prints its report with the manifest.
  void run(const std::string& subcommand, const std::function<Report()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Report r = body();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.params["threads"] = threads_;
    json manifest = {{"subcommand", subcommand}, {"params", r.params}, {"version", kVersion}, {"runtime_seconds", seconds}};
    if (json_) {
      json doc = r.result;
      doc["manifest"] = std::move(manifest);
      out_ << doc.dump(2) << "\n";
    } else {
      out_ << r.text;
      out_ << "# nlv " << kVersion << " " << subcommand << " " << r.params.dump() << " runtime "
           << nlv::detail::fmt_num(seconds) << " s\n";
    }
  }

 private:
  std::ostream& out_;
  bool json_;
  unsigned threads_;
};

inline std::string num(double v) { return nlv::detail::fmt_num(v); }

}  // namespace detail

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"nlv: nonlocal games, quantum strategies, tracial moments and Turing machines"};
  app.name("nlv");
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  unsigned threads_flag = 0;
  app.add_flag("--json", as_json, "Emit JSON with a run manifest");
  app.add_option("--threads", threads_flag, "Worker threads (default: NLV_THREADS, else all cores)")
      ->check(CLI::NonNegativeNumber);

  // value
  auto* value_cmd = app.add_subcommand("value", "val(G, p) for a game and a strategy");
  std::string game_path, strategy_path;
  value_cmd->add_option("--game", game_path, "Game JSON")->required();
  value_cmd->add_option("--strategy", strategy_path, "Strategy JSON")->required();

  // classical
  auto* classical_cmd = app.add_subcommand("classical", "Classical value by exhaustive enumeration");
  std::uint64_t cap = kDefaultEnumerationCap;
  bool sample = false;
  int sample_restarts = 64;
  std::uint64_t seed = 0;
  classical_cmd->add_option("--game", game_path, "Game JSON")->required();
  classical_cmd->add_option("--cap", cap, "Maximum number of deterministic strategies")->capture_default_str()->check(CLI::PositiveNumber);
  classical_cmd->add_flag("--sample", sample, "Random restarts with best responses (lower bound)");
  classical_cmd->add_option("--restarts", sample_restarts, "Restarts in --sample mode")->capture_default_str()->check(CLI::PositiveNumber);
  classical_cmd->add_option("--seed", seed, "Seed for --sample mode")->capture_default_str();

  // quantum-lb
  auto* qlb_cmd = app.add_subcommand("quantum-lb", "Entangled value lower bound by see-saw search");
  std::size_t dim = 2;
  int restarts = 16;
  int iterations = 200;
  bool seed_classical = false;
  std::string out_path;
  qlb_cmd->add_option("--game", game_path, "Game JSON")->required();
  qlb_cmd->add_option("--dim", dim, "Local dimension")->capture_default_str()->check(CLI::Range(1, 16));
  qlb_cmd->add_option("--restarts", restarts, "Random restarts")->capture_default_str()->check(CLI::PositiveNumber);
  qlb_cmd->add_option("--seed", seed, "Seed")->capture_default_str();
  qlb_cmd->add_option("--iters", iterations, "See-saw rounds per restart")->capture_default_str()->check(CLI::PositiveNumber);
  qlb_cmd->add_flag("--seed-classical", seed_classical, "Also start from the embedded classical optimum");
  qlb_cmd->add_option("--out", out_path, "Where to write the strategy spec (default quantum-lb-spec.json)");

  // sync-lb
  auto* slb_cmd = app.add_subcommand("sync-lb", "Synchronous value lower bound over M_d");
  slb_cmd->add_option("--game", game_path, "Game JSON")->required();
  slb_cmd->add_option("--dim", dim, "Matrix size d")->capture_default_str()->check(CLI::Range(1, 16));
  slb_cmd->add_option("--restarts", restarts, "Random restarts")->capture_default_str()->check(CLI::PositiveNumber);
  slb_cmd->add_option("--seed", seed, "Seed")->capture_default_str();
  slb_cmd->add_option("--iters", iterations, "Improvement rounds per restart")->capture_default_str()->check(CLI::PositiveNumber);
  slb_cmd->add_flag("--seed-classical", seed_classical, "Also start from the best scalar family");
  slb_cmd->add_option("--out", out_path, "Write the PVM family as JSON");

  // superdense
  auto* sd_cmd = app.add_subcommand("superdense", "Superdense coding round trip");
  std::string message;
  sd_cmd->add_option("--msg", message, "Two bits: 11, 12, 21 or 22")->required();

  // epr
  auto* epr_cmd = app.add_subcommand("epr", "EPR measurement statistics");
  std::uint64_t trials = 10000;
  std::string axis = "both";
  epr_cmd->add_option("--trials", trials, "Number of trials")->capture_default_str()->check(CLI::PositiveNumber);
  epr_cmd->add_option("--seed", seed, "Seed")->capture_default_str();
  epr_cmd->add_option("--axis", axis, "vertical, horizontal or both")->capture_default_str()
      ->check(CLI::IsMember({"vertical", "horizontal", "both"}));

  // moments
  auto* moments_cmd = app.add_subcommand("moments", "Moment map and density experiments");
  moments_cmd->require_subcommand(1);
  int n_vars = 1, degree = 1;
  auto* map_cmd = moments_cmd->add_subcommand("map", "mu_{n,d} of a matrix tuple");
  std::string matrices_path;
  map_cmd->add_option("--n", n_vars, "Number of matrices")->required()->check(CLI::PositiveNumber);
  map_cmd->add_option("--d", degree, "Maximum degree")->required()->check(CLI::PositiveNumber);
  map_cmd->add_option("--matrices", matrices_path, "Matrix tuple JSON")->required();
  auto* density_cmd = moments_cmd->add_subcommand("density", "How well X(n,d,p1) samples cover X(n,d,p2) samples");
  DensityOptions density;
  std::string cloud_path;
  density_cmd->add_option("--n", density.n, "Number of matrices")->required()->check(CLI::PositiveNumber);
  density_cmd->add_option("--d", density.d, "Maximum degree")->required()->check(CLI::PositiveNumber);
  density_cmd->add_option("--p1", density.p_small, "Matrix size of the covering cloud")->required()->check(CLI::PositiveNumber);
  density_cmd->add_option("--p2", density.p_large, "Matrix size of the target cloud")->required()->check(CLI::PositiveNumber);
  density_cmd->add_option("--eps", density.eps, "Sup-norm radius")->required()->check(CLI::NonNegativeNumber);
  density_cmd->add_option("--seed", density.seed, "Seed")->capture_default_str();
  density_cmd->add_option("--count1", density.count_small, "Points in the covering cloud")->capture_default_str()->check(CLI::PositiveNumber);
  density_cmd->add_option("--count2", density.count_large, "Points in the target cloud")->capture_default_str()->check(CLI::PositiveNumber);
  density_cmd->add_option("--cloud", cloud_path, "Write the covering cloud as CSV");

  // tm
  auto* tm_cmd = app.add_subcommand("tm", "Three-tape Turing machines");
  tm_cmd->require_subcommand(1);
  std::string machine_path, input;
  std::uint64_t budget = 0;
  bool trace = false;
  auto* tm_run_cmd = tm_cmd->add_subcommand("run", "Run a deterministic machine");
  tm_run_cmd->add_option("--machine", machine_path, "Machine JSON")->required();
  tm_run_cmd->add_option("--input", input, "Binary input string")->capture_default_str();
  tm_run_cmd->add_option("--budget", budget, "Maximum number of steps")->required()->check(CLI::PositiveNumber);
  tm_run_cmd->add_flag("--trace", trace, "Print the configuration after every step");
  auto* tm_ndtm_cmd = tm_cmd->add_subcommand("ndtm", "Bounded-depth acceptance for a nondeterministic machine");
  tm_ndtm_cmd->add_option("--machine", machine_path, "Machine JSON")->required();
  tm_ndtm_cmd->add_option("--input", input, "Binary input string")->capture_default_str();
  tm_ndtm_cmd->add_option("--depth", budget, "Depth budget")->required()->check(CLI::PositiveNumber);

  // demo-chsh
  auto* chsh_cmd = app.add_subcommand("demo-chsh", "Classical and quantum CHSH values");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string first;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--threads") {
        ++i;
      } else if (!args[i].empty() && args[i][0] != '-') {
        first = args[i];
        break;
      }
    }
    bool known = false;
    for (const auto* sub : app.get_subcommands({}))
      if (sub->get_name() == first) known = true;
    if (!first.empty() && !known)
      err << "nlv: unknown subcommand '" << first << "'\n\n" << app.help();
    else
      err << "nlv: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  detail::Session session(out, as_json, resolve_threads(threads_flag));
  const unsigned threads = session.threads();
  using detail::num;
  using detail::Report;

  try {
    if (value_cmd->parsed()) {
      session.run("value", [&] {
        const Game g = load_game(detail::read_file(game_path));
        const Strategy s = load_strategy(detail::read_file(strategy_path));
        const auto rep = validate_strategy(s);
        if (!rep.ok()) throw ValidationError("invalid strategy: " + rep.summary());
        const double v = game_value(g, s);
        Report r;
        r.params = {{"game", game_path}, {"strategy", strategy_path}};
        r.result = {{"value", v}};
        r.text = "value: " + num(v) + "\n";
        return r;
      });
    } else if (classical_cmd->parsed()) {
      session.run("classical", [&] {
        const Game g = load_game(detail::read_file(game_path));
        Report r;
        r.params = {{"game", game_path}, {"cap", cap}, {"sample", sample}};
        ClassicalResult c;
        if (sample) {
          r.params["restarts"] = sample_restarts;
          r.params["seed"] = seed;
          c = classical_lower_bound_sampled(g, sample_restarts, seed);
          r.result["exact"] = false;
          r.result["label"] = "lower bound from sampled deterministic strategies";
        } else {
          try {
            c = classical_value(g, cap, threads);
          } catch (const CapExceeded& e) {
            throw CapExceeded(std::string(e.what()) + " (nlv classical --sample --seed S)");
          }
          r.result["exact"] = true;
        }
        r.result["value"] = c.value;
        r.result["A"] = detail::one_based(c.argmax.alice);
        r.result["B"] = detail::one_based(c.argmax.bob);
        r.text = std::string(sample ? "classical value lower bound (sampled): " : "classical value: ") + num(c.value) +
                 "\nA: " + detail::join_one_based(c.argmax.alice) + "\nB: " + detail::join_one_based(c.argmax.bob) +
                 "\n";
        return r;
      });
    } else if (qlb_cmd->parsed()) {
      session.run("quantum-lb", [&] {
        const Game g = load_game(detail::read_file(game_path));
        EntangledSearchOptions opt;
        opt.dim = dim;
        opt.restarts = restarts;
        opt.seed = seed;
        opt.iterations = iterations;
        opt.threads = threads;
        if (seed_classical) opt.warm_starts.push_back(classical_value(g, kDefaultEnumerationCap, threads).argmax);
        const auto res = entangled_lower_bound(g, opt);
        const std::string path = out_path.empty() ? "quantum-lb-spec.json" : out_path;
        detail::write_file(path, save_spec(res.spec) + "\n");
        Report r;
        r.params = {{"game", game_path}, {"dim", dim},         {"restarts", restarts}, {"seed", seed},
                    {"iters", iterations}, {"seed_classical", seed_classical}, {"out", path}};
        r.result = {{"value", res.value},
                    {"dim", dim},
                    {"spec_file", path},
                    {"restart", res.restart},
                    {"label", "lower bound on the entangled value"}};
        r.text = "entangled value lower bound (dim " + std::to_string(dim) + "): " + num(res.value) +
                 "\nstrategy written to " + path + "\n";
        return r;
      });
    } else if (slb_cmd->parsed()) {
      session.run("sync-lb", [&] {
        const Game g = load_game(detail::read_file(game_path));
        SyncSearchOptions opt;
        opt.dim = dim;
        opt.restarts = restarts;
        opt.seed = seed;
        opt.iterations = iterations;
        opt.threads = threads;
        if (seed_classical) opt.warm_starts.push_back(best_scalar_family(g).argmax.alice);
        const auto res = sync_value_lower_bound(g, opt);
        Report r;
        r.params = {{"game", game_path}, {"dim", dim},     {"restarts", restarts},
                    {"seed", seed},      {"iters", iterations}, {"seed_classical", seed_classical}};
        r.result = {{"value", res.value},
                    {"dim", dim},
                    {"restart", res.restart},
                    {"label", "finite-dimensional lower bound"}};
        if (!out_path.empty()) {
          detail::write_file(out_path, tracial_family_to_json(res.family).dump(2) + "\n");
          r.params["out"] = out_path;
          r.result["family_file"] = out_path;
        }
        r.text = "synchronous value, finite-dimensional lower bound (d = " + std::to_string(dim) + "): " +
                 num(res.value) + "\n";
        return r;
      });
    } else if (sd_cmd->parsed()) {
      session.run("superdense", [&] {
        const TwoBitMessage msg = TwoBitMessage::parse(message);
        const DecodeResult dec = superdense_decode(superdense_encode(msg));
        Report r;
        r.params = {{"msg", message}};
        json probs = json::object();
        std::string text = "sent " + msg.to_string() + ", decoded " + dec.message.to_string() + "\n";
        for (int i = 0; i < 4; ++i) {
          const std::string label = TwoBitMessage::from_index(i).to_string();
          probs[label] = dec.probabilities[static_cast<std::size_t>(i)];
          text += "  P(" + label + ") = " + num(dec.probabilities[static_cast<std::size_t>(i)]) + "\n";
        }
        r.result = {{"message", msg.to_string()}, {"decoded", dec.message.to_string()}, {"probabilities", probs}};
        r.text = text;
        return r;
      });
    } else if (epr_cmd->parsed()) {
      session.run("epr", [&] {
        std::vector<SpinAxis> axes;
        if (axis != "horizontal") axes.push_back(SpinAxis::kVertical);
        if (axis != "vertical") axes.push_back(SpinAxis::kHorizontal);
        Report r;
        r.params = {{"trials", trials}, {"seed", seed}, {"axis", axis}};
        auto rows = json::array();
        for (SpinAxis a : axes) {
          const auto st = epr_correlation_demo(trials, seed, a);
          rows.push_back({{"axis", to_string(a)},
                          {"trials", st.trials},
                          {"agreements", st.agreements},
                          {"agreement_frequency", st.agreement_frequency},
                          {"exact_agreement_probability", st.exact_agreement_probability},
                          {"alice_marginal", st.alice_marginal}});
          r.text += std::string(to_string(a)) + ": agreement " + std::to_string(st.agreements) + "/" +
                    std::to_string(st.trials) + " (exact probability " + num(st.exact_agreement_probability) +
                    "), Alice marginal " + num(st.alice_marginal[0]) + " / " + num(st.alice_marginal[1]) + "\n";
        }
        r.result = {{"results", rows}};
        return r;
      });
    } else if (map_cmd->parsed()) {
      session.run("moments map", [&] {
        const auto tuple = load_matrices(detail::read_file(matrices_path));
        if (static_cast<int>(tuple.size()) != n_vars)
          throw DimensionError("--n " + std::to_string(n_vars) + " but the file holds " + std::to_string(tuple.size()) +
                               " matrices");
        const auto words = enumerate_monomials(n_vars, degree);
        const auto mu = moment_map(tuple, degree);
        Report r;
        r.params = {{"n", n_vars}, {"d", degree}, {"matrices", matrices_path}};
        auto names = json::array();
        for (std::size_t i = 0; i < words.size(); ++i) {
          names.push_back(words[i].to_string());
          r.text += words[i].to_string() + "\t" + num(mu[i].real()) + (mu[i].imag() < 0 ? " - " : " + ") +
                    num(std::abs(mu[i].imag())) + "i\n";
        }
        r.result = {{"n", n_vars},
                    {"d", degree},
                    {"p", tuple.front().rows()},
                    {"monomials", names},
                    {"moments", vector_to_json(mu)}};
        return r;
      });
    } else if (density_cmd->parsed()) {
      session.run("moments density", [&] {
        density.threads = threads;
        const auto rep = density_check(density);
        if (!cloud_path.empty()) {
          std::ofstream csv(cloud_path);
          if (!csv) throw Error("cannot write '" + cloud_path + "'");
          write_cloud_csv(csv, sample_moment_cloud(density.n, density.d, density.p_small, density.count_small,
                                                   density.seed, threads));
        }
        Report r;
        r.params = {{"n", density.n},         {"d", density.d},           {"p1", density.p_small},
                    {"p2", density.p_large},  {"eps", density.eps},       {"seed", density.seed},
                    {"count1", density.count_small}, {"count2", density.count_large}};
        if (!cloud_path.empty()) r.params["cloud"] = cloud_path;
        r.result = {{"covered_fraction", rep.cover.covered_fraction},
                    {"max_gap", rep.cover.max_gap},
                    {"eps", density.eps},
                    {"label", "empirical estimate, not a certificate"}};
        r.text = "share of X(n,d," + std::to_string(density.p_large) + ") samples within " + num(density.eps) +
                 " of X(n,d," + std::to_string(density.p_small) + ") samples: " + num(rep.cover.covered_fraction) +
                 "\nlargest gap: " + num(rep.cover.max_gap) + "\n";
        return r;
      });
    } else if (tm_run_cmd->parsed()) {
      session.run("tm run", [&] {
        const auto m = tm::load_machine(detail::read_file(machine_path));
        const auto res = tm::run(m, input, budget, trace);
        const bool halted = res.status == tm::RunStatus::kHalted;
        Report r;
        r.params = {{"machine", machine_path}, {"input", input}, {"budget", budget}, {"trace", trace}};
        r.result = {{"status", halted ? "Halted" : "BudgetExceeded"}, {"steps", res.steps}};
        if (halted) r.result["output"] = res.output;
        if (trace) r.result["trace"] = res.trace;
        for (const auto& line : res.trace) r.text += line + "\n";
        r.text += halted ? "Halted output=\"" + res.output + "\" steps=" + std::to_string(res.steps) + "\n"
                         : "BudgetExceeded after " + std::to_string(res.steps) + " steps\n";
        return r;
      });
    } else if (tm_ndtm_cmd->parsed()) {
      session.run("tm ndtm", [&] {
        const auto m = tm::load_ndtm(detail::read_file(machine_path));
        const auto res = tm::ndtm_accepts(m, input, budget);
        Report r;
        r.params = {{"machine", machine_path}, {"input", input}, {"depth", budget}};
        r.result = {{"outcome", tm::to_string(res.outcome)}, {"depth", res.depth}};
        r.text = std::string(tm::to_string(res.outcome)) + " (depth " + std::to_string(res.depth) + ")\n";
        return r;
      });
    } else if (chsh_cmd->parsed()) {
      session.run("demo-chsh", [&] {
        const Game g = chsh_game();
        const double classical = classical_value(g, kDefaultEnumerationCap, threads).value;
        const double quantum = game_value(g, quantum_correlation(chsh_optimal_spec()));
        const double tsirelson = std::pow(std::cos(std::numbers::pi / 8), 2);
        Report r;
        r.result = {{"classical_value", classical},
                    {"quantum_value", quantum},
                    {"gap", quantum - classical},
                    {"cos2_pi_over_8", tsirelson}};
        r.text = "CHSH classical value: " + num(classical) + "\nCHSH quantum value:   " + num(quantum) +
                 " (cos^2(pi/8) = " + num(tsirelson) + ")\ngap:                  " + num(quantum - classical) + "\n";
        return r;
      });
    }
  } catch (const std::exception& e) {
    err << "nlv: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace nlv::cli

#endif  // NLV_TOOLS_NLV_CLI_HPP_
