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

#ifndef NLV_SERIALIZE_HPP_
#define NLV_SERIALIZE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "nlv/error.hpp"
#include "nlv/game.hpp"
#include "nlv/linalg.hpp"
#include "nlv/measurement.hpp"
#include "nlv/quantum.hpp"
#include "nlv/synchronous.hpp"

// Complex data as interleaved arrays [re0, im0, re1, im1, ...]. A matrix is
// {"rows": r, "cols": c, "data": [row, ...]} with each row interleaved.

namespace nlv {

inline nlohmann::json vector_to_json(std::span<const cplx> v) {
  auto out = nlohmann::json::array();
  for (const cplx& z : v) {
    out.push_back(z.real());
    out.push_back(z.imag());
  }
  return out;
}

inline Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() % 2 != 0) throw ParseError("complex vector must be an interleaved array of even length");
  Vector v(j.size() / 2);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!j[2 * i].is_number() || !j[2 * i + 1].is_number()) throw ParseError("complex vector entries must be numbers");
    v[i] = {j[2 * i].get<double>(), j[2 * i + 1].get<double>()};
  }
  return v;
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      row.push_back(m(i, j).real());
      row.push_back(m(i, j).imag());
    }
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("matrix must be a JSON object");
  const int rows = detail::require_int(j, "rows");
  const int cols = detail::require_int(j, "cols");
  if (rows < 0 || cols < 0) throw ParseError("matrix shape must be non-negative");
  if (!j.contains("data") || !j["data"].is_array() || j["data"].size() != static_cast<std::size_t>(rows))
    throw ParseError("matrix 'data' must hold one array per row");
  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (int i = 0; i < rows; ++i) {
    const Vector row = vector_from_json(j["data"][static_cast<std::size_t>(i)]);
    if (row.size() != static_cast<std::size_t>(cols)) throw ParseError("matrix row " + std::to_string(i + 1) + " has the wrong length");
    for (int c = 0; c < cols; ++c) m(static_cast<std::size_t>(i), static_cast<std::size_t>(c)) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

inline nlohmann::json family_to_json(const MeasurementFamily& f) {
  auto outcomes = nlohmann::json::array();
  for (const auto& m : f.outcomes) outcomes.push_back(matrix_to_json(m));
  return {{"kind", to_string(f.kind)}, {"outcomes", std::move(outcomes)}};
}

inline MeasurementFamily family_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("outcomes") || !j["outcomes"].is_array())
    throw ParseError("measurement family needs an 'outcomes' array");
  MeasurementFamily f;
  const std::string kind = j.value("kind", std::string("POVM"));
  if (kind == "PVM")
    f.kind = MeasurementKind::kPvm;
  else if (kind == "POVM")
    f.kind = MeasurementKind::kPovm;
  else
    throw ParseError("measurement kind must be \"PVM\" or \"POVM\"");
  for (const auto& m : j["outcomes"]) f.outcomes.push_back(matrix_from_json(m));
  return f;
}

namespace detail {
inline nlohmann::json families_to_json(const std::vector<MeasurementFamily>& fams) {
  auto out = nlohmann::json::array();
  for (const auto& f : fams) out.push_back(family_to_json(f));
  return out;
}

inline std::vector<MeasurementFamily> families_from_json(const nlohmann::json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array()) throw ParseError(std::string("field '") + field + "' must be an array");
  std::vector<MeasurementFamily> out;
  for (const auto& f : j[field]) out.push_back(family_from_json(f));
  return out;
}
}  // namespace detail

/// {"flavor", "dim_a", "dim_b", "state", "alice": [family per question],
/// "bob": [...]}
inline nlohmann::json spec_to_json(const QuantumStrategySpec& spec) {
  return {{"flavor", to_string(spec.flavor)},
          {"dim_a", spec.dim_a},
          {"dim_b", spec.dim_b},
          {"state", vector_to_json(spec.state.span())},
          {"alice", detail::families_to_json(spec.alice)},
          {"bob", detail::families_to_json(spec.bob)}};
}

inline QuantumStrategySpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("strategy spec must be a JSON object");
  QuantumStrategySpec spec;
  const std::string flavor = j.value("flavor", std::string("tensor"));
  if (flavor == "tensor")
    spec.flavor = StrategyFlavor::kTensor;
  else if (flavor == "commuting")
    spec.flavor = StrategyFlavor::kCommuting;
  else
    throw ParseError("flavor must be \"tensor\" or \"commuting\"");
  const int da = detail::require_int(j, "dim_a");
  const int db = detail::require_int(j, "dim_b");
  if (da < 1 || db < 1) throw ParseError("dimensions must be >= 1");
  spec.dim_a = static_cast<std::size_t>(da);
  spec.dim_b = static_cast<std::size_t>(db);
  if (!j.contains("state")) throw ParseError("missing field 'state'");
  spec.state = StateVector(vector_from_json(j["state"]));
  spec.alice = detail::families_from_json(j, "alice");
  spec.bob = detail::families_from_json(j, "bob");
  return spec;
}

inline std::string save_spec(const QuantumStrategySpec& spec) { return spec_to_json(spec).dump(2); }
inline QuantumStrategySpec load_spec(std::string_view text) { return spec_from_json(detail::parse_text(text)); }

/// {"d", "families": [family per question]}
inline nlohmann::json tracial_family_to_json(const TracialPVMFamily& fam) {
  return {{"d", fam.d}, {"families", detail::families_to_json(fam.families)}};
}

inline TracialPVMFamily tracial_family_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("tracial family must be a JSON object");
  const int d = detail::require_int(j, "d");
  if (d < 1) throw ParseError("d must be >= 1");
  return {static_cast<std::size_t>(d), detail::families_from_json(j, "families")};
}

/// Matrix tuple file: {"matrices": [matrix, ...]}
inline std::vector<Matrix> load_matrices(std::string_view text) {
  const auto j = detail::parse_text(text);
  if (!j.is_object() || !j.contains("matrices") || !j["matrices"].is_array())
    throw ParseError("matrix tuple file needs a 'matrices' array");
  std::vector<Matrix> out;
  for (const auto& m : j["matrices"]) out.push_back(matrix_from_json(m));
  return out;
}

inline std::string save_matrices(const std::vector<Matrix>& tuple) {
  auto arr = nlohmann::json::array();
  for (const auto& m : tuple) arr.push_back(matrix_to_json(m));
  return nlohmann::json{{"matrices", std::move(arr)}}.dump(2);
}

}  // namespace nlv

#endif  // NLV_SERIALIZE_HPP_
