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

#ifndef NLV_TM_HPP_
#define NLV_TM_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nlv/error.hpp"

namespace nlv::tm {

// Tape alphabet {0, 1, blank, start}; written '0', '1', '_', '>' in files
// and traces.
enum class Symbol : std::uint8_t { kZero = 0, kOne = 1, kBlank = 2, kStart = 3 };
enum class Move : std::uint8_t { kLeft, kStay, kRight };

inline constexpr int kSymbols = 4;

inline char symbol_char(Symbol s) {
  static constexpr std::array<char, 4> chars{'0', '1', '_', '>'};
  return chars[static_cast<int>(s)];
}

inline std::optional<Symbol> symbol_from_char(char c) {
  switch (c) {
    case '0':
      return Symbol::kZero;
    case '1':
      return Symbol::kOne;
    case '_':
      return Symbol::kBlank;
    case '>':
      return Symbol::kStart;
    default:
      return std::nullopt;
  }
}

struct Transition {
  int next = 0;
  Symbol write_work = Symbol::kBlank;
  Symbol write_output = Symbol::kBlank;
  std::array<Move, 3> moves{Move::kStay, Move::kStay, Move::kStay};
};

// Dense table over (state, s1, s2, s3).
class TransitionTable {
 public:
  TransitionTable() = default;
  explicit TransitionTable(std::size_t states) : entries_(states * 64) {}

  static std::size_t index(int state, Symbol s1, Symbol s2, Symbol s3) {
    return static_cast<std::size_t>(state) * 64 + static_cast<int>(s1) * 16 + static_cast<int>(s2) * 4 +
           static_cast<int>(s3);
  }
  const std::optional<Transition>& at(int state, Symbol s1, Symbol s2, Symbol s3) const {
    return entries_[index(state, s1, s2, s3)];
  }
  std::optional<Transition>& at(int state, Symbol s1, Symbol s2, Symbol s3) {
    return entries_[index(state, s1, s2, s3)];
  }
  bool total() const {
    for (const auto& e : entries_)
      if (!e) return false;
    return true;
  }

 private:
  std::vector<std::optional<Transition>> entries_;
};

/// Deterministic three-tape machine (Q, delta): tape 1 is read-only input,
/// tapes 2 and 3 are work and output. delta is total on Q x Sigma^3.
struct TuringMachine {
  std::vector<std::string> states;
  int start = 0;
  int halt = 1;
  TransitionTable delta;
};

/// Nondeterministic machine: two transition tables and accept/reject states.
struct Ndtm {
  std::vector<std::string> states;
  int start = 0;
  int accept = 1;
  int reject = 2;
  std::array<TransitionTable, 2> delta;
};

/// State, three tapes, three heads. Tapes are finite prefixes of one-way
/// infinite tapes; cells past the end read as blank. Work and output cells
/// are materialized when a head moves onto them.
struct Configuration {
  int state = 0;
  std::array<std::vector<Symbol>, 3> tapes;
  std::array<std::size_t, 3> heads{0, 0, 0};

  Symbol read(int tape) const {
    const auto& t = tapes[tape];
    return heads[tape] < t.size() ? t[heads[tape]] : Symbol::kBlank;
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

inline std::vector<Symbol> parse_bits(std::string_view bits) {
  std::vector<Symbol> out;
  for (char c : bits) {
    if (c == '0')
      out.push_back(Symbol::kZero);
    else if (c == '1')
      out.push_back(Symbol::kOne);
    else
      throw ValidationError(std::string("input must be a binary string, found '") + c + "'");
  }
  return out;
}

// Input tape: start symbol, then z; work and output tapes: start symbol.
inline Configuration initial_configuration(int start_state, std::string_view input) {
  Configuration c;
  c.state = start_state;
  c.tapes[0].push_back(Symbol::kStart);
  for (Symbol s : parse_bits(input)) c.tapes[0].push_back(s);
  c.tapes[1] = {Symbol::kStart};
  c.tapes[2] = {Symbol::kStart};
  return c;
}

namespace detail {
// Writes s2', s3', moves heads (L at cell 0 stays put), enters q'.
inline void apply(const Transition& t, Configuration& c) {
  for (int tape = 1; tape <= 2; ++tape) {
    auto& cells = c.tapes[tape];
    if (c.heads[tape] >= cells.size()) cells.resize(c.heads[tape] + 1, Symbol::kBlank);
    cells[c.heads[tape]] = tape == 1 ? t.write_work : t.write_output;
  }
  for (int tape = 0; tape < 3; ++tape) {
    std::size_t& h = c.heads[tape];
    switch (t.moves[tape]) {
      case Move::kLeft:
        if (h > 0) --h;
        break;
      case Move::kStay:
        break;
      case Move::kRight:
        ++h;
        // The input tape is never written, not even with blanks.
        if (tape > 0 && h >= c.tapes[tape].size()) c.tapes[tape].resize(h + 1, Symbol::kBlank);
        break;
    }
  }
  c.state = t.next;
}

inline const Transition& lookup(const TransitionTable& table, const Configuration& c) {
  const auto& t = table.at(c.state, c.read(0), c.read(1), c.read(2));
  if (!t) throw ValidationError("transition table is not total");
  return *t;
}
}  // namespace detail

/// Applies exactly one transition.
inline Configuration step(const TuringMachine& m, Configuration c) {
  if (c.state == m.halt) throw ValidationError("cannot step a halted configuration");
  detail::apply(detail::lookup(m.delta, c), c);
  return c;
}

/// Longest initial run of bits after the start symbol on the output tape.
/// The run also ends at a start symbol written past cell 0, since outputs
/// are binary strings.
inline std::string extract_output(const Configuration& c) {
  std::string out;
  const auto& t = c.tapes[2];
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] != Symbol::kZero && t[i] != Symbol::kOne) break;
    out.push_back(symbol_char(t[i]));
  }
  return out;
}

/// Tape contents up to the last non-blank cell or the head, whichever is
/// further, with the head cell in brackets.
inline std::string format_tape(const std::vector<Symbol>& tape, std::size_t head) {
  std::size_t last = 0;
  for (std::size_t i = 0; i < tape.size(); ++i)
    if (tape[i] != Symbol::kBlank) last = i;
  last = std::max(last, head);
  std::string s;
  for (std::size_t i = 0; i <= last; ++i) {
    const char ch = i < tape.size() ? symbol_char(tape[i]) : '_';
    if (i == head) {
      s += '[';
      s += ch;
      s += ']';
    } else {
      s += ch;
    }
  }
  return s;
}

inline std::string format_configuration(const std::vector<std::string>& state_names, const Configuration& c) {
  return state_names.at(static_cast<std::size_t>(c.state)) + " in=" + format_tape(c.tapes[0], c.heads[0]) +
         " work=" + format_tape(c.tapes[1], c.heads[1]) + " out=" + format_tape(c.tapes[2], c.heads[2]);
}

enum class RunStatus { kHalted, kBudgetExceeded };

struct RunResult {
  RunStatus status = RunStatus::kBudgetExceeded;
  std::string output;       // when halted
  std::uint64_t steps = 0;  // transitions applied
  // With tracing on: "<step> <configuration>" after each transition, so
  // trace.size() == steps.
  std::vector<std::string> trace;
  Configuration final_configuration;
};

inline RunResult run(const TuringMachine& m, std::string_view input, std::uint64_t budget, bool record_trace = false) {
  if (budget < 1) throw ValidationError("budget must be >= 1");
  RunResult r;
  Configuration c = initial_configuration(m.start, input);
  while (c.state != m.halt && r.steps < budget) {
    detail::apply(detail::lookup(m.delta, c), c);
    ++r.steps;
    if (record_trace) r.trace.push_back(std::to_string(r.steps) + " " + format_configuration(m.states, c));
  }
  if (c.state == m.halt) {
    r.status = RunStatus::kHalted;
    r.output = extract_output(c);
  }
  r.final_configuration = std::move(c);
  return r;
}

enum class NdtmOutcome { kAccept, kReject, kBudgetExceeded };

inline const char* to_string(NdtmOutcome o) {
  switch (o) {
    case NdtmOutcome::kAccept:
      return "Accept";
    case NdtmOutcome::kReject:
      return "Reject";
    default:
      return "BudgetExceeded";
  }
}

struct NdtmResult {
  NdtmOutcome outcome = NdtmOutcome::kBudgetExceeded;
  std::uint64_t depth = 0;  // depth limit at which the answer was settled
};

namespace detail {
struct Exploration {
  bool accepted = false;
  bool all_terminated = true;  // every branch reached q_accept or q_reject
};

inline Exploration explore(const Ndtm& m, const Configuration& c, std::uint64_t remaining) {
  if (c.state == m.accept) return {true, true};
  if (c.state == m.reject) return {false, true};
  if (remaining == 0) return {false, false};
  Exploration out;
  for (const auto& table : m.delta) {
    Configuration child = c;
    apply(lookup(table, child), child);
    const auto sub = explore(m, child, remaining - 1);
    if (sub.accepted) return {true, true};
    out.all_terminated = out.all_terminated && sub.all_terminated;
  }
  return out;
}
}  // namespace detail

/// Accept iff some sequence of choices reaches q_accept within `depth_budget`
/// steps; Reject iff every branch reaches q_reject within it. Searched by
/// iterative deepening, so memory stays linear in the depth.
inline NdtmResult ndtm_accepts(const Ndtm& m, std::string_view input, std::uint64_t depth_budget) {
  if (depth_budget < 1) throw ValidationError("depth budget must be >= 1");
  const Configuration start = initial_configuration(m.start, input);
  for (std::uint64_t limit = 1; limit <= depth_budget; ++limit) {
    const auto e = detail::explore(m, start, limit);
    if (e.accepted) return {NdtmOutcome::kAccept, limit};
    if (e.all_terminated) return {NdtmOutcome::kReject, limit};
  }
  return {NdtmOutcome::kBudgetExceeded, depth_budget};
}

// ---------------------------------------------------------------------------
// JSON. Deterministic machine:
//   {"states": [names], "start": name, "halt": name,
//    "transitions": [[q, s1, s2, s3, q', s2', s3', m1, m2, m3], ...]}
// Symbols are "0", "1", "_" (blank), ">" (start); moves "L", "S", "R".
// Every (q, s1, s2, s3) must appear exactly once. A nondeterministic machine
// has "accept" and "reject" instead of "halt" and two tables,
// "transitions0" and "transitions1".

namespace detail {

inline std::map<std::string, int> state_index(const nlohmann::json& j) {
  if (!j.contains("states") || !j["states"].is_array() || j["states"].empty())
    throw ParseError("field 'states' must be a nonempty array");
  std::map<std::string, int> idx;
  for (const auto& s : j["states"]) {
    if (!s.is_string()) throw ParseError("state names must be strings");
    if (!idx.emplace(s.get<std::string>(), static_cast<int>(idx.size())).second)
      throw ParseError("duplicate state '" + s.get<std::string>() + "'");
  }
  return idx;
}

inline int named_state(const nlohmann::json& j, const char* field, const std::map<std::string, int>& idx) {
  if (!j.contains(field) || !j[field].is_string()) throw ParseError(std::string("field '") + field + "' must be a state name");
  const auto it = idx.find(j[field].get<std::string>());
  if (it == idx.end()) throw ParseError(std::string("field '") + field + "' names an unknown state");
  return it->second;
}

inline Symbol parse_symbol(const nlohmann::json& v, std::size_t row) {
  if (v.is_string() && v.get<std::string>().size() == 1)
    if (auto s = symbol_from_char(v.get<std::string>()[0])) return *s;
  throw ParseError("transition " + std::to_string(row) + ": bad symbol " + v.dump());
}

inline Move parse_move(const nlohmann::json& v, std::size_t row) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "L") return Move::kLeft;
    if (s == "S") return Move::kStay;
    if (s == "R") return Move::kRight;
  }
  throw ParseError("transition " + std::to_string(row) + ": bad move " + v.dump());
}

inline TransitionTable parse_table(const nlohmann::json& j, const char* field, const std::map<std::string, int>& idx) {
  if (!j.contains(field) || !j[field].is_array()) throw ParseError(std::string("field '") + field + "' must be an array");
  TransitionTable table(idx.size());
  std::size_t row = 0;
  auto state_of = [&](const nlohmann::json& v) {
    if (!v.is_string() || !idx.contains(v.get<std::string>()))
      throw ParseError("transition " + std::to_string(row) + ": unknown state " + v.dump());
    return idx.at(v.get<std::string>());
  };
  for (const auto& t : j[field]) {
    ++row;
    if (!t.is_array() || t.size() != 10) throw ParseError("transition " + std::to_string(row) + " must have 10 entries");
    const int q = state_of(t[0]);
    const Symbol s1 = parse_symbol(t[1], row), s2 = parse_symbol(t[2], row), s3 = parse_symbol(t[3], row);
    Transition tr;
    tr.next = state_of(t[4]);
    tr.write_work = parse_symbol(t[5], row);
    tr.write_output = parse_symbol(t[6], row);
    for (int h = 0; h < 3; ++h) tr.moves[h] = parse_move(t[7 + h], row);
    auto& slot = table.at(q, s1, s2, s3);
    if (slot) throw ParseError("transition " + std::to_string(row) + " duplicates an earlier (state, symbols) entry");
    slot = tr;
  }
  if (!table.total())
    throw ValidationError(std::string("'") + field + "' is not total: every (state, s1, s2, s3) needs a transition");
  return table;
}

inline std::vector<std::string> state_names(const std::map<std::string, int>& idx) {
  std::vector<std::string> names(idx.size());
  for (const auto& [name, i] : idx) names[i] = name;
  return names;
}

inline nlohmann::json parse_json_text(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
}

}  // namespace detail

inline TuringMachine load_machine(std::string_view text) {
  const auto j = detail::parse_json_text(text);
  if (!j.is_object()) throw ParseError("machine must be a JSON object");
  const auto idx = detail::state_index(j);
  TuringMachine m;
  m.states = detail::state_names(idx);
  m.start = detail::named_state(j, "start", idx);
  m.halt = detail::named_state(j, "halt", idx);
  m.delta = detail::parse_table(j, "transitions", idx);
  return m;
}

inline Ndtm load_ndtm(std::string_view text) {
  const auto j = detail::parse_json_text(text);
  if (!j.is_object()) throw ParseError("machine must be a JSON object");
  const auto idx = detail::state_index(j);
  Ndtm m;
  m.states = detail::state_names(idx);
  m.start = detail::named_state(j, "start", idx);
  m.accept = detail::named_state(j, "accept", idx);
  m.reject = detail::named_state(j, "reject", idx);
  if (m.accept == m.reject) throw ValidationError("accept and reject states must differ");
  m.delta[0] = detail::parse_table(j, "transitions0", idx);
  m.delta[1] = detail::parse_table(j, "transitions1", idx);
  return m;
}

}  // namespace nlv::tm

#endif  // NLV_TM_HPP_
