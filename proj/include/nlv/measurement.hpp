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

#ifndef NLV_MEASUREMENT_HPP_
#define NLV_MEASUREMENT_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "nlv/error.hpp"
#include "nlv/linalg.hpp"

namespace nlv {

enum class MeasurementKind { kPovm, kPvm };

inline const char* to_string(MeasurementKind k) { return k == MeasurementKind::kPvm ? "PVM" : "POVM"; }

/// n outcome operators of a common dimension. POVM: positive, summing to
/// the identity. PVM: additionally self-adjoint idempotents.
struct MeasurementFamily {
  std::vector<Matrix> outcomes;
  MeasurementKind kind = MeasurementKind::kPovm;

  std::size_t size() const { return outcomes.size(); }
  std::size_t dim() const { return outcomes.empty() ? 0 : outcomes.front().rows(); }
  const Matrix& operator[](std::size_t i) const { return outcomes[i]; }
};

inline constexpr double kMeasurementTolerance = 1e-9;

struct MeasurementReport {
  std::vector<std::string> violations;
  double completeness_residual = 0.0;  // ||sum P_i - I||_F
  double worst_violation = 0.0;        // largest residual of any failed check
  bool ok() const { return violations.empty(); }
};

inline MeasurementReport validate_measurement(const MeasurementFamily& m, double tol = kMeasurementTolerance) {
  MeasurementReport r;
  auto fail = [&](std::string what, double magnitude) {
    r.violations.push_back(std::move(what));
    r.worst_violation = std::max(r.worst_violation, magnitude);
  };
  if (m.outcomes.empty()) {
    fail("measurement has no outcomes", 1.0);
    return r;
  }
  const std::size_t d = m.dim();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Matrix& p = m.outcomes[i];
    if (p.rows() != d || p.cols() != d) {
      fail("outcome " + std::to_string(i + 1) + " is not " + std::to_string(d) + "x" + std::to_string(d), 1.0);
      return r;
    }
    if (!p.is_finite()) {
      fail("outcome " + std::to_string(i + 1) + " has non-finite entries", 1.0);
      return r;
    }
  }
  Matrix sum(d, d);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Matrix& p = m.outcomes[i];
    sum += p;
    const double herm = frobenius_distance(p, p.adjoint());
    if (herm > tol) fail("outcome " + std::to_string(i + 1) + " not self-adjoint (residual " + detail::fmt_num(herm) + ")", herm);
    const double lo = min_eigenvalue(p);
    if (lo < -tol) fail("outcome " + std::to_string(i + 1) + " not positive (min eigenvalue " + detail::fmt_num(lo) + ")", -lo);
    if (m.kind == MeasurementKind::kPvm) {
      const double idem = frobenius_distance(p * p, p);
      if (idem > tol)
        fail("outcome " + std::to_string(i + 1) + " not idempotent (residual " + detail::fmt_num(idem) + ")", idem);
    }
  }
  r.completeness_residual = frobenius_distance(sum, Matrix::identity(d));
  if (r.completeness_residual > tol)
    fail("completeness residual " + detail::fmt_num(r.completeness_residual), r.completeness_residual);
  return r;
}

inline void require_valid(const MeasurementFamily& m, const std::string& what) {
  const auto r = validate_measurement(m);
  if (!r.ok()) throw ValidationError(what + " is not a valid " + to_string(m.kind) + ": " + r.violations.front());
}

/// Born rule: outcome i has probability <P_i s, s>.
inline std::vector<double> born_probabilities(const MeasurementFamily& m, const StateVector& s) {
  if (m.dim() != s.dim())
    throw DimensionError("measurement dim " + std::to_string(m.dim()) + " != state dim " + std::to_string(s.dim()));
  std::vector<double> probs(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const cplx v = inner(m.outcomes[i] * s.span(), s.span());
    if (std::abs(v.imag()) >= 1e-9) throw ValidationError("Born probability has imaginary part " + detail::fmt_num(v.imag()));
    probs[i] = v.real();
  }
  return probs;
}

/// Post-measurement state P_i s / ||P_i s|| for a PVM outcome.
inline StateVector collapse(const MeasurementFamily& m, const StateVector& s, std::size_t outcome) {
  if (outcome >= m.size()) throw ValidationError("outcome index out of range");
  if (m.dim() != s.dim()) throw DimensionError("measurement and state dimensions differ");
  return StateVector::normalized(m.outcomes[outcome] * s.span());
}

// Projective measurement onto an orthonormal basis given as matrix columns.
inline MeasurementFamily basis_measurement(const Matrix& basis) {
  MeasurementFamily m{{}, MeasurementKind::kPvm};
  for (std::size_t j = 0; j < basis.cols(); ++j) m.outcomes.push_back(Matrix::projector(column(basis, j)));
  return m;
}

inline MeasurementFamily coordinate_pvm(std::size_t dim) { return basis_measurement(Matrix::identity(dim)); }

/// Two-outcome PVM on C^2 onto cos(t) e1 + sin(t) e2 and its orthogonal
/// complement; t = 0 is the coordinate basis, t = pi/4 the horizontal one.
inline MeasurementFamily rotated_pvm(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return basis_measurement(Matrix{{c, -s}, {s, c}});
}

/// Square-root Naimark dilation of a POVM {P_a} on C^d: the isometry
/// V = sum_a sqrt(P_a) (x) e_a maps C^d into C^d (x) C^n, and
/// Q_a = I (x) |e_a><e_a| is a PVM with <Q_a V s, V s> = <P_a s, s>.
struct NaimarkDilation {
  MeasurementFamily pvm;
  Matrix isometry;  // (d*n) x d
};

inline NaimarkDilation naimark_dilate(const MeasurementFamily& povm) {
  const auto report = validate_measurement(povm);
  if (!report.ok()) throw ValidationError("Naimark dilation needs a valid POVM: " + report.violations.front());
  const std::size_t d = povm.dim(), n = povm.size();
  NaimarkDilation out{{{}, MeasurementKind::kPvm}, Matrix(d * n, d)};
  for (std::size_t a = 0; a < n; ++a) {
    const Matrix root = psd_sqrt(povm.outcomes[a]);
    out.isometry += kron(root, Matrix(n, 1, basis_vector(n, a)));
    Matrix ea(n, n);
    ea(a, a) = 1.0;
    out.pvm.outcomes.push_back(kron(Matrix::identity(d), ea));
  }
  return out;
}

}  // namespace nlv

#endif  // NLV_MEASUREMENT_HPP_
