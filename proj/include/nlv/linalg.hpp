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

#ifndef NLV_LINALG_HPP_
#define NLV_LINALG_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nlv/error.hpp"
#include "nlv/rng.hpp"

namespace nlv {

using cplx = std::complex<double>;
using Vector = std::vector<cplx>;

/// Dense complex matrix, row-major. Dimensions stay small (tens), so every
/// operation is a straightforward loop.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DimensionError("matrix data size does not match shape");
  }
  Matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static Matrix diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  // |u><v|
  static Matrix outer(std::span<const cplx> u, std::span<const cplx> v) {
    Matrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
  }
  static Matrix projector(std::span<const cplx> u) { return outer(u, u); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const cplx> data() const { return data_; }

  Matrix adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  bool is_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cplx s) { return a *= s; }
  friend Matrix operator*(cplx s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const cplx ail = a(i, l);
        if (ail == cplx(0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += ail * b(l, j);
      }
    return c;
  }

  friend Vector operator*(const Matrix& a, std::span<const cplx> v) {
    if (a.cols_ != v.size()) throw DimensionError("matrix-vector shape mismatch");
    Vector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      cplx s = 0.0;
      for (std::size_t j = 0; j < a.cols_; ++j) s += a(i, j) * v[j];
      out[i] = s;
    }
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

inline double frobenius_distance(const Matrix& a, const Matrix& b) { return (a - b).frobenius_norm(); }

// Tr(AB) without forming the product.
inline cplx trace_of_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw DimensionError("trace product shape mismatch");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
  return t;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// Kronecker product. Row index of the result is i * b.rows() + k, matching
/// kron on vectors, so (A (x) B)(u (x) v) = Au (x) Bv.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

inline Vector kron(std::span<const cplx> u, std::span<const cplx> v) {
  Vector w(u.size() * v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t k = 0; k < v.size(); ++k) w[i * v.size() + k] = u[i] * v[k];
  return w;
}

// <u, v> = sum conj(v_i) u_i, linear in the first slot as in <P xi, xi>.
inline cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw DimensionError("inner product length mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

inline double norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

inline Vector scaled(std::span<const cplx> v, cplx s) {
  Vector out(v.begin(), v.end());
  for (auto& z : out) z *= s;
  return out;
}

inline Vector basis_vector(std::size_t dim, std::size_t index) {
  Vector e(dim);
  e.at(index) = 1.0;
  return e;
}

/// Unit vector. Construction enforces the norm invariant.
class StateVector {
 public:
  static constexpr double kTolerance = 1e-9;

  explicit StateVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
    const double nrm = nlv::norm(amps_);
    if (!(std::abs(nrm - 1.0) <= kTolerance))
      throw ValidationError("state vector norm " + std::to_string(nrm) + " differs from 1");
  }

  // Rescales a nonzero vector to unit length.
  static StateVector normalized(Vector v) {
    const double nrm = nlv::norm(v);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw ValidationError("cannot normalize a zero or non-finite vector");
    for (auto& z : v) z /= nrm;
    return StateVector(std::move(v));
  }

  std::size_t dim() const { return amps_.size(); }
  const Vector& amplitudes() const { return amps_; }
  std::span<const cplx> span() const { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  friend StateVector kron(const StateVector& u, const StateVector& v) {
    return StateVector(kron(u.span(), v.span()));
  }

 private:
  Vector amps_;
};

// ---------------------------------------------------------------------------
// Hermitian spectral routines.

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j is the eigenvector of values[j]
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Each rotation first
/// removes the phase of the pivot, then applies the real symmetric Jacobi
/// rotation. Only the Hermitian part of the input is used.
inline EigenDecomposition hermitian_eigen(const Matrix& input, int max_sweeps = 100) {
  if (!input.square()) throw DimensionError("eigen decomposition needs a square matrix");
  const std::size_t n = input.rows();
  Matrix a = input;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx h = 0.5 * (input(i, j) + std::conj(input(j, i)));
      a(i, j) = h;
      a(j, i) = std::conj(h);
    }
  }
  Matrix v = Matrix::identity(n);
  const double scale = std::max(a.frobenius_norm(), 1e-300);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= 1e-15 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const cplx phase = apq / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag-phase * real rotation acting on columns p, q.
        const cplx jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
  }
  return out;
}

inline Vector column(const Matrix& m, std::size_t j) {
  Vector c(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m(i, j);
  return c;
}

// V f(diag) V*.
template <typename F>
Matrix spectral_apply(const EigenDecomposition& e, F&& f) {
  const std::size_t n = e.values.size();
  Matrix out(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const double fv = f(e.values[c]);
    if (fv == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vi = e.vectors(i, c) * fv;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(e.vectors(j, c));
    }
  }
  return out;
}

inline double min_eigenvalue(const Matrix& h) {
  if (h.rows() == 0) return 0.0;
  return hermitian_eigen(h).values.front();
}

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// [-tolerance, 0) are treated as zero; anything more negative is an error.
inline Matrix psd_sqrt(const Matrix& p, double tolerance = 1e-9) {
  const auto e = hermitian_eigen(p);
  if (!e.values.empty() && e.values.front() < -tolerance)
    throw ValidationError("square root of an indefinite matrix (eigenvalue " +
                          std::to_string(e.values.front()) + ")");
  return spectral_apply(e, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

// Largest singular value, from the spectrum of A*A.
inline double operator_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const auto e = hermitian_eigen(a.adjoint() * a);
  return std::sqrt(std::max(e.values.back(), 0.0));
}

struct PowerIterationResult {
  Vector vector;
  double eigenvalue = 0.0;
  int iterations = 0;
};

/// Power iteration for the top eigenpair of a positive semidefinite matrix,
/// warm-started from `start`. Stops after `max_iters` or when the relative
/// residual ||Hv - lambda v|| / |lambda| drops below `tolerance`. For PSD
/// input the Rayleigh quotient never decreases along the iteration.
inline PowerIterationResult power_iteration(const Matrix& h, Vector start, int max_iters = 200,
                                            double tolerance = 1e-12) {
  PowerIterationResult r;
  double nrm = nlv::norm(start);
  if (!(nrm > 0.0)) throw ValidationError("power iteration needs a nonzero start vector");
  for (auto& z : start) z /= nrm;
  r.vector = std::move(start);
  Vector hv = h * std::span<const cplx>(r.vector);
  r.eigenvalue = inner(hv, r.vector).real();
  for (int it = 0; it < max_iters; ++it) {
    double resid = 0.0;
    for (std::size_t i = 0; i < hv.size(); ++i) resid += std::norm(hv[i] - r.eigenvalue * r.vector[i]);
    if (std::sqrt(resid) <= tolerance * std::max(std::abs(r.eigenvalue), 1e-300)) break;
    nrm = nlv::norm(hv);
    if (!(nrm > 0.0)) break;
    for (std::size_t i = 0; i < hv.size(); ++i) r.vector[i] = hv[i] / nrm;
    hv = h * std::span<const cplx>(r.vector);
    r.eigenvalue = inner(hv, r.vector).real();
    r.iterations = it + 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Random objects.

inline Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
  return g;
}

inline Vector random_unit_vector(std::size_t dim, Rng& rng) {
  Vector v(dim);
  for (auto& z : v) z = cplx(rng.normal(), rng.normal());
  const double nrm = nlv::norm(v);
  for (auto& z : v) z /= nrm;
  return v;
}

/// Haar-distributed unitary: Gram-Schmidt on the columns of a Ginibre matrix.
inline Matrix random_unitary(std::size_t n, Rng& rng) {
  Matrix g = ginibre(n, n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(g(i, k)) * g(i, j);
      for (std::size_t i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(g(i, j));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) g(i, j) /= nrm;
  }
  return g;
}

}  // namespace nlv

#endif  // NLV_LINALG_HPP_
