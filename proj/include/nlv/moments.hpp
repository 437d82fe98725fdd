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

#ifndef NLV_MOMENTS_HPP_
#define NLV_MOMENTS_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "nlv/error.hpp"
#include "nlv/linalg.hpp"
#include "nlv/parallel.hpp"
#include "nlv/rng.hpp"

namespace nlv {

// Alphabet order: x_1 .. x_n, then x_1* .. x_n*.
struct Letter {
  int variable = 0;  // 0-based
  bool star = false;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A *-monomial: a nonempty word over {x_i, x_i*}.
struct Monomial {
  std::vector<Letter> letters;

  std::size_t degree() const { return letters.size(); }

  // w* reverses the word and stars each letter.
  Monomial adjoint() const {
    Monomial m;
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) m.letters.push_back({it->variable, !it->star});
    return m;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& l : letters) {
      s += "x" + std::to_string(l.variable + 1);
      if (l.star) s += "*";
    }
    return s;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

using MomentVector = std::vector<cplx>;

inline constexpr std::uint64_t kMonomialCap = 1'000'000;

// L(n, d) = sum_{j=1..d} (2n)^j; throws once (2n)^d passes the cap.
inline std::uint64_t monomial_count(int n, int d) {
  if (n < 1 || d < 1) throw ValidationError("n and d must be >= 1");
  const std::uint64_t base = 2 * static_cast<std::uint64_t>(n);
  std::uint64_t power = 1, total = 0;
  for (int j = 1; j <= d; ++j) {
    if (power > kMonomialCap / base) throw CapExceeded("(2n)^d exceeds the monomial cap " + std::to_string(kMonomialCap));
    power *= base;
    total += power;
  }
  return total;
}

/// All words of length 1..d, by length and then lexicographically in the
/// alphabet order above. The empty word is excluded.
inline std::vector<Monomial> enumerate_monomials(int n, int d) {
  const std::uint64_t total = monomial_count(n, d);
  std::vector<Monomial> out;
  out.reserve(total);
  const int alphabet = 2 * n;
  std::vector<Monomial> level{Monomial{}};
  for (int j = 1; j <= d; ++j) {
    std::vector<Monomial> next;
    next.reserve(level.size() * alphabet);
    for (const auto& w : level)
      for (int c = 0; c < alphabet; ++c) {
        Monomial m = w;
        m.letters.push_back({c % n, c >= n});
        next.push_back(std::move(m));
      }
    out.insert(out.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return out;
}

inline constexpr double kContractionTolerance = 1e-9;

/// mu_{n,d}: the normalized traces (1/p) Tr m_i(a) over the enumerated
/// monomials, for a tuple of p x p contractions. Words of length j are built
/// from those of length j - 1, reusing prefix products.
inline MomentVector moment_map(const std::vector<Matrix>& tuple, int d) {
  const int n = static_cast<int>(tuple.size());
  if (n < 1) throw ValidationError("need at least one matrix");
  monomial_count(n, d);
  const std::size_t p = tuple.front().rows();
  for (int i = 0; i < n; ++i) {
    const Matrix& a = tuple[i];
    if (a.rows() != p || a.cols() != p) throw DimensionError("matrices must all be " + std::to_string(p) + "x" + std::to_string(p));
    if (!a.is_finite()) throw ValidationError("matrix " + std::to_string(i + 1) + " has non-finite entries");
    const double nrm = operator_norm(a);
    if (nrm > 1.0 + kContractionTolerance)
      throw ValidationError("matrix " + std::to_string(i + 1) + " has operator norm " + detail::fmt_num(nrm) + " > 1");
  }
  std::vector<Matrix> letters;
  for (int c = 0; c < 2 * n; ++c) letters.push_back(c < n ? tuple[c] : tuple[c - n].adjoint());

  const double inv_p = 1.0 / static_cast<double>(p);
  MomentVector out;
  std::vector<Matrix> level{Matrix::identity(p)};
  for (int j = 1; j <= d; ++j) {
    std::vector<Matrix> next;
    if (j < d) next.reserve(level.size() * letters.size());
    for (const auto& prefix : level)
      for (const auto& l : letters) {
        if (j < d) {
          next.push_back(prefix * l);
          out.push_back(next.back().trace() * inv_p);
        } else {
          out.push_back(trace_of_product(prefix, l) * inv_p);
        }
      }
    level = std::move(next);
  }
  return out;
}

// Coordinate-wise sup of |u_i - v_i|.
inline double moment_distance(const MomentVector& u, const MomentVector& v) {
  if (u.size() != v.size()) throw DimensionError("moment vectors have different lengths");
  double m = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
  return m;
}

/// Random element of the unit ball of M_p: a Ginibre matrix divided by its
/// operator norm, then scaled by r = U^(1/(2p^2)) so the radial part is that
/// of a uniform point in a 2p^2-dimensional ball. For p = 1 this is uniform
/// on the unit disk.
inline Matrix random_contraction(std::size_t p, Rng& rng) {
  Matrix g = ginibre(p, p, rng);
  const double nrm = operator_norm(g);
  const double radius = std::pow(rng.uniform(), 1.0 / (2.0 * static_cast<double>(p * p)));
  return g * cplx(radius / nrm);
}

inline constexpr std::uint64_t kCloudCap = 10'000'000;  // count * L

/// `count` moment vectors of random n-tuples of p x p contractions. Point i
/// uses its own stream derived from (seed, i), so a cloud with a larger count
/// extends a smaller one with the same seed.
inline std::vector<MomentVector> sample_moment_cloud(int n, int d, std::size_t p, std::size_t count, std::uint64_t seed,
                                                     unsigned threads = 1) {
  const std::uint64_t L = monomial_count(n, d);
  if (p < 1) throw ValidationError("p must be >= 1");
  if (p > 64) throw CapExceeded("p must be <= 64");
  if (count > 0 && L > kCloudCap / count) throw CapExceeded("count * L exceeds the cloud cap " + std::to_string(kCloudCap));
  std::vector<MomentVector> cloud(count);
  parallel_for(count, threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    std::vector<Matrix> tuple;
    for (int v = 0; v < n; ++v) tuple.push_back(random_contraction(p, rng));
    cloud[i] = moment_map(tuple, d);
  });
  return cloud;
}

struct CoverReport {
  double eps = 0.0;
  double covered_fraction = 0.0;  // share of target points within eps of the reference cloud
  double max_gap = 0.0;           // largest nearest-neighbour distance
  std::vector<double> nearest;    // per target point
};

/// For each target point, the sup-norm distance to the nearest reference
/// point.
inline CoverReport cover(const std::vector<MomentVector>& reference, const std::vector<MomentVector>& target, double eps,
                         unsigned threads = 1) {
  CoverReport r;
  r.eps = eps;
  r.nearest.assign(target.size(), std::numeric_limits<double>::infinity());
  parallel_for(target.size(), threads, [&](std::size_t t) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& ref : reference) best = std::min(best, moment_distance(ref, target[t]));
    r.nearest[t] = best;
  });
  std::size_t covered = 0;
  for (double v : r.nearest) {
    if (v <= eps) ++covered;
    r.max_gap = std::max(r.max_gap, v);
  }
  r.covered_fraction = target.empty() ? 1.0 : static_cast<double>(covered) / static_cast<double>(target.size());
  return r;
}

struct DensityOptions {
  int n = 1;
  int d = 1;
  std::size_t p_small = 1;
  std::size_t p_large = 2;
  double eps = 0.1;
  std::size_t count_small = 2000;
  std::size_t count_large = 200;
  std::uint64_t seed = 0;
  // Sample both clouds from the same seed stream instead of independent ones.
  bool shared_seed = false;
  unsigned threads = 1;
};

/// Empirical estimate, not a certificate: how well a sample of X(n,d,p_small)
/// covers a sample of X(n,d,p_large).
struct DensityReport {
  DensityOptions options;
  CoverReport cover;
  double runtime_seconds = 0.0;
};

inline DensityReport density_check(const DensityOptions& opt) {
  if (opt.p_small > opt.p_large) throw ValidationError("p_small must be <= p_large");
  if (!(opt.eps >= 0.0)) throw ValidationError("eps must be >= 0");
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t large_seed = opt.shared_seed ? opt.seed : splitmix64(opt.seed ^ 0x6c61726765ULL);
  const auto small = sample_moment_cloud(opt.n, opt.d, opt.p_small, opt.count_small, opt.seed, opt.threads);
  const auto large = sample_moment_cloud(opt.n, opt.d, opt.p_large, opt.count_large, large_seed, opt.threads);
  DensityReport r{opt, cover(small, large, opt.eps, opt.threads), 0.0};
  r.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// One row per vector, interleaved re,im.
inline void write_cloud_csv(std::ostream& os, const std::vector<MomentVector>& cloud) {
  const auto old_precision = os.precision(17);
  for (const auto& v : cloud) {
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].real() << "," << v[i].imag();
    os << "\n";
  }
  os.precision(old_precision);
}

}  // namespace nlv

#endif  // NLV_MOMENTS_HPP_
