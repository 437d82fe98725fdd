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

#ifndef NLV_GAME_HPP_
#define NLV_GAME_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nlv/error.hpp"
#include "nlv/rng.hpp"

namespace nlv {

// Indices are 0-based in memory; files and the CLI use 1-based indices.

/// Nonlocal game with k questions and n answers per player: a question
/// distribution pi on [k]x[k] and a decision predicate D on [k]x[k]x[n]x[n].
/// Constructed freely; validate_game checks the invariants.
struct Game {
  int k = 0;
  int n = 0;
  std::vector<double> pi;    // [x][y], k*k
  std::vector<double> wins;  // D as 0/1 reals, [x][y][a][b], k*k*n*n

  Game() = default;
  Game(int questions, int answers)
      : k(questions),
        n(answers),
        pi(static_cast<std::size_t>(questions) * questions, 0.0),
        wins(static_cast<std::size_t>(questions) * questions * answers * answers, 0.0) {}

  std::size_t pi_index(int x, int y) const { return static_cast<std::size_t>(x) * k + y; }
  std::size_t win_index(int x, int y, int a, int b) const {
    return ((static_cast<std::size_t>(x) * k + y) * n + a) * n + b;
  }
  double& prob(int x, int y) { return pi[pi_index(x, y)]; }
  double prob(int x, int y) const { return pi[pi_index(x, y)]; }
  double& win(int x, int y, int a, int b) { return wins[win_index(x, y, a, b)]; }
  double win(int x, int y, int a, int b) const { return wins[win_index(x, y, a, b)]; }

  friend bool operator==(const Game&, const Game&) = default;
};

/// Conditional probability tensor p(a,b|x,y), stored [x][y][a][b].
struct Strategy {
  int k = 0;
  int n = 0;
  std::vector<double> p;

  Strategy() = default;
  Strategy(int questions, int answers)
      : k(questions), n(answers), p(static_cast<std::size_t>(questions) * questions * answers * answers, 0.0) {}

  std::size_t index(int x, int y, int a, int b) const {
    return ((static_cast<std::size_t>(x) * k + y) * n + a) * n + b;
  }
  double& at(int x, int y, int a, int b) { return p[index(x, y, a, b)]; }
  double at(int x, int y, int a, int b) const { return p[index(x, y, a, b)]; }
};

inline constexpr double kGameTolerance = 1e-12;
inline constexpr double kStrategyTolerance = 1e-9;

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const {
    std::string s;
    for (const auto& v : violations) s += (s.empty() ? "" : "; ") + v;
    return s;
  }
};

namespace detail {
inline std::string tuple1(std::initializer_list<int> idx) {
  std::string s = "(";
  bool first = true;
  for (int i : idx) {
    s += (first ? "" : ",") + std::to_string(i + 1);
    first = false;
  }
  return s + ")";
}
}  // namespace detail

inline ValidationReport validate_game(const Game& g) {
  ValidationReport r;
  if (g.k < 1) r.violations.push_back("k must be >= 1");
  if (g.n < 1) r.violations.push_back("n must be >= 1");
  if (!r.ok()) return r;
  if (g.pi.size() != static_cast<std::size_t>(g.k) * g.k) {
    r.violations.push_back("pi has " + std::to_string(g.pi.size()) + " entries, expected k*k");
    return r;
  }
  if (g.wins.size() != static_cast<std::size_t>(g.k) * g.k * g.n * g.n) {
    r.violations.push_back("predicate has " + std::to_string(g.wins.size()) + " entries, expected k*k*n*n");
    return r;
  }
  double mass = 0.0;
  for (int x = 0; x < g.k; ++x)
    for (int y = 0; y < g.k; ++y) {
      const double v = g.prob(x, y);
      if (!(v >= 0.0) || !std::isfinite(v))
        r.violations.push_back("negative or non-finite probability pi" + detail::tuple1({x, y}) + " = " +
                               detail::fmt_num(v));
      mass += v;
    }
  if (!(std::abs(mass - 1.0) <= kGameTolerance))
    r.violations.push_back("distribution mass " + detail::fmt_num(mass) + " != 1");
  for (int x = 0; x < g.k; ++x)
    for (int y = 0; y < g.k; ++y)
      for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
          const double d = g.win(x, y, a, b);
          if (d != 0.0 && d != 1.0)
            r.violations.push_back("non-boolean predicate entry D" + detail::tuple1({x, y, a, b}) + " = " +
                                   detail::fmt_num(d));
        }
  return r;
}

inline ValidationReport validate_strategy(const Strategy& s, double tol = kStrategyTolerance) {
  ValidationReport r;
  if (s.k < 1 || s.n < 1) {
    r.violations.push_back("k and n must be >= 1");
    return r;
  }
  if (s.p.size() != static_cast<std::size_t>(s.k) * s.k * s.n * s.n) {
    r.violations.push_back("strategy tensor has wrong size");
    return r;
  }
  for (int x = 0; x < s.k; ++x)
    for (int y = 0; y < s.k; ++y) {
      double row = 0.0;
      for (int a = 0; a < s.n; ++a)
        for (int b = 0; b < s.n; ++b) {
          const double v = s.at(x, y, a, b);
          if (!(v >= -tol && v <= 1.0 + tol))
            r.violations.push_back("entry p" + detail::tuple1({a, b}) + "|" + detail::tuple1({x, y}) + " = " +
                                   detail::fmt_num(v) + " outside [0,1]");
          row += v;
        }
      if (!(std::abs(row - 1.0) <= tol))
        r.violations.push_back("row " + detail::tuple1({x, y}) + " sums to " + detail::fmt_num(row));
    }
  return r;
}

/// val(G, p) = sum_{x,y} pi(x,y) sum_{a,b} D(x,y,a,b) p(a,b|x,y).
inline double game_value(const Game& g, const Strategy& s) {
  if (g.k != s.k || g.n != s.n)
    throw DimensionError("game has (k,n)=(" + std::to_string(g.k) + "," + std::to_string(g.n) +
                         ") but strategy has (" + std::to_string(s.k) + "," + std::to_string(s.n) + ")");
  if (s.p.size() != g.wins.size()) throw DimensionError("strategy tensor has wrong size");
  double total = 0.0;
  for (int x = 0; x < g.k; ++x)
    for (int y = 0; y < g.k; ++y) {
      const double w = g.prob(x, y);
      if (w == 0.0) continue;
      double inner_sum = 0.0;
      for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) inner_sum += g.win(x, y, a, b) * s.at(x, y, a, b);
      total += w * inner_sum;
    }
  return total;
}

// ---------------------------------------------------------------------------
// Bundled games and generators.

/// CHSH: uniform questions on [2]x[2]; win iff answers agree unless x=y=2,
/// where they must disagree.
inline Game chsh_game() {
  Game g(2, 2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      g.prob(x, y) = 0.25;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const bool both_second = (x == 1 && y == 1);
          g.win(x, y, a, b) = (both_second ? a != b : a == b) ? 1.0 : 0.0;
        }
    }
  return g;
}

// Predicate identically 1 with uniform questions.
inline Game trivial_game(int k, int n) {
  Game g(k, n);
  for (auto& v : g.pi) v = 1.0 / (static_cast<double>(k) * k);
  for (auto& v : g.wins) v = 1.0;
  return g;
}

/// pi from a symmetric Dirichlet(1) (normalized exponentials), each predicate
/// entry an independent fair coin. Deterministic in seed.
inline Game random_game(int k, int n, std::uint64_t seed) {
  if (k < 1 || n < 1) throw ValidationError("k and n must be >= 1");
  Game g(k, n);
  Rng rng(seed);
  double total = 0.0;
  for (auto& v : g.pi) {
    v = rng.exponential();
    total += v;
  }
  for (auto& v : g.pi) v /= total;
  for (auto& v : g.wins) v = (rng.next_u64() >> 63) ? 1.0 : 0.0;
  return g;
}

inline Strategy uniform_strategy(int k, int n) {
  Strategy s(k, n);
  for (auto& v : s.p) v = 1.0 / (static_cast<double>(n) * n);
  return s;
}

// ---------------------------------------------------------------------------
// JSON. Game schema:
//   {"k": int, "n": int, "pi": [[float; k]; k], "wins": [[x,y,a,b], ...]}
// with 1-based indices; "wins" lists exactly the tuples where D = 1.
// Strategy schema: {"k": int, "n": int, "p": [[[[float; n]; n]; k]; k]}
// indexed p[x][y][a][b].

namespace detail {
inline int require_int(const nlohmann::json& j, const char* field) {
  if (!j.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
  const auto& v = j.at(field);
  if (!v.is_number_integer()) throw ParseError(std::string("field '") + field + "' must be an integer");
  return v.get<int>();
}

inline nlohmann::json parse_text(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
}
}  // namespace detail

inline Game game_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("game must be a JSON object");
  const int k = detail::require_int(j, "k");
  const int n = detail::require_int(j, "n");
  if (k < 1) throw ValidationError("k must be >= 1");
  if (n < 1) throw ValidationError("n must be >= 1");
  Game g(k, n);
  if (!j.contains("pi") || !j["pi"].is_array() || j["pi"].size() != static_cast<std::size_t>(k))
    throw ParseError("field 'pi' must be a k x k array");
  for (int x = 0; x < k; ++x) {
    const auto& row = j["pi"][x];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(k))
      throw ParseError("field 'pi' row " + std::to_string(x + 1) + " must have k entries");
    for (int y = 0; y < k; ++y) {
      if (!row[y].is_number()) throw ParseError("pi[" + std::to_string(x + 1) + "][" + std::to_string(y + 1) + "] is not a number");
      g.prob(x, y) = row[y].get<double>();
    }
  }
  if (!j.contains("wins") || !j["wins"].is_array()) throw ParseError("field 'wins' must be an array");
  std::size_t entry = 0;
  for (const auto& t : j["wins"]) {
    ++entry;
    if (!t.is_array() || t.size() != 4) throw ParseError("wins entry " + std::to_string(entry) + " must be [x,y,a,b]");
    int idx[4];
    for (int c = 0; c < 4; ++c) {
      if (!t[c].is_number_integer()) throw ParseError("wins entry " + std::to_string(entry) + " has a non-integer index");
      idx[c] = t[c].get<int>() - 1;
      const int bound = c < 2 ? k : n;
      if (idx[c] < 0 || idx[c] >= bound)
        throw ParseError("wins entry " + std::to_string(entry) + " index out of range");
    }
    double& d = g.win(idx[0], idx[1], idx[2], idx[3]);
    if (d == 1.0) throw ParseError("wins entry " + std::to_string(entry) + " duplicates an earlier tuple");
    d = 1.0;
  }
  const auto report = validate_game(g);
  if (!report.ok()) throw ValidationError("invalid game: " + report.summary());
  return g;
}

inline nlohmann::json game_to_json(const Game& g) {
  nlohmann::json j;
  j["k"] = g.k;
  j["n"] = g.n;
  auto pi = nlohmann::json::array();
  for (int x = 0; x < g.k; ++x) {
    auto row = nlohmann::json::array();
    for (int y = 0; y < g.k; ++y) row.push_back(g.prob(x, y));
    pi.push_back(row);
  }
  j["pi"] = pi;
  auto wins = nlohmann::json::array();
  for (int x = 0; x < g.k; ++x)
    for (int y = 0; y < g.k; ++y)
      for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b)
          if (g.win(x, y, a, b) == 1.0) wins.push_back({x + 1, y + 1, a + 1, b + 1});
  j["wins"] = wins;
  return j;
}

inline Game load_game(std::string_view text) { return game_from_json(detail::parse_text(text)); }
inline std::string save_game(const Game& g) { return game_to_json(g).dump(2); }

inline Strategy strategy_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("strategy must be a JSON object");
  const int k = detail::require_int(j, "k");
  const int n = detail::require_int(j, "n");
  if (k < 1 || n < 1) throw ValidationError("k and n must be >= 1");
  Strategy s(k, n);
  const auto& p = j.contains("p") ? j["p"] : throw ParseError("missing field 'p'");
  auto shape_error = [] { return ParseError("field 'p' must have shape [k][k][n][n]"); };
  if (!p.is_array() || p.size() != static_cast<std::size_t>(k)) throw shape_error();
  for (int x = 0; x < k; ++x) {
    if (!p[x].is_array() || p[x].size() != static_cast<std::size_t>(k)) throw shape_error();
    for (int y = 0; y < k; ++y) {
      if (!p[x][y].is_array() || p[x][y].size() != static_cast<std::size_t>(n)) throw shape_error();
      for (int a = 0; a < n; ++a) {
        const auto& row = p[x][y][a];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) throw shape_error();
        for (int b = 0; b < n; ++b) {
          if (!row[b].is_number()) throw shape_error();
          s.at(x, y, a, b) = row[b].get<double>();
        }
      }
    }
  }
  const auto report = validate_strategy(s);
  if (!report.ok()) throw ValidationError("invalid strategy: " + report.summary());
  return s;
}

inline nlohmann::json strategy_to_json(const Strategy& s) {
  nlohmann::json p = nlohmann::json::array();
  for (int x = 0; x < s.k; ++x) {
    auto px = nlohmann::json::array();
    for (int y = 0; y < s.k; ++y) {
      auto pxy = nlohmann::json::array();
      for (int a = 0; a < s.n; ++a) {
        auto row = nlohmann::json::array();
        for (int b = 0; b < s.n; ++b) row.push_back(s.at(x, y, a, b));
        pxy.push_back(row);
      }
      px.push_back(pxy);
    }
    p.push_back(px);
  }
  return {{"k", s.k}, {"n", s.n}, {"p", p}};
}

inline Strategy load_strategy(std::string_view text) { return strategy_from_json(detail::parse_text(text)); }
inline std::string save_strategy(const Strategy& s) { return strategy_to_json(s).dump(2); }

}  // namespace nlv

#endif  // NLV_GAME_HPP_
