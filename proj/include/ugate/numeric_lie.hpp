// Copyright 2026 The ugate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Double-precision group-level machinery on SU(4) / PU(4).
//
// Norms on su(4) are Frobenius norms. The Killing form of su(4) is
// B(X, Y) = 8 tr(XY), so ||X||_K = sqrt(8) ||X||_F; only thresholds and
// ratios are used here, so the factor is never applied.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ugate/errors.hpp"
#include "ugate/exact_algebra.hpp"
#include "ugate/random.hpp"

namespace ugate {

using Complex = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;
using Mat2 = Eigen::Matrix2cd;
using Vec15 = Eigen::Matrix<double, 15, 1>;

inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kAlgebraTolerance = 1e-9;
/// Eigenphases closer than this to +-pi make the principal log ambiguous.
inline constexpr double kBranchGuard = 1e-8;

inline Mat4 swap_gate() {
  Mat4 s = Mat4::Zero();
  s(0, 0) = s(1, 2) = s(2, 1) = s(3, 3) = 1.0;
  return s;
}

inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = a(r / 2, c / 2) * b(r % 2, c % 2);
  return out;
}

// --------------------------------------------------------------------------
// UnitaryMatrix
// --------------------------------------------------------------------------

/// Special-unitary representative of a projective class in PU(4).
class UnitaryMatrix {
 public:
  UnitaryMatrix() : m_(Mat4::Identity()) {}

  /// Checks unitarity (||U^dag U - I||_F <= 1e-10) and rescales by a phase
  /// so that det = 1.
  explicit UnitaryMatrix(const Mat4& m) : m_(m) {
    const double residual = (m_.adjoint() * m_ - Mat4::Identity()).norm();
    if (!(residual <= kUnitaryTolerance))
      throw std::invalid_argument("matrix is not unitary (residual " + std::to_string(residual) + ")");
    normalize_det();
  }

  static UnitaryMatrix identity() { return {}; }

  const Mat4& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }

  UnitaryMatrix adjoint() const { return UnitaryMatrix(Mat4(m_.adjoint()), Trusted{}); }

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    return UnitaryMatrix(Mat4(a.m_ * b.m_), Trusted{});
  }

  /// SWAP * U * SWAP.
  UnitaryMatrix swap_conjugate() const {
    static const Mat4 s = swap_gate();
    return UnitaryMatrix(Mat4(s * m_ * s), Trusted{});
  }

  /// Products of det-1 unitaries need no re-validation.
  static UnitaryMatrix trusted(const Mat4& m) { return UnitaryMatrix(m, Trusted{}); }

 private:
  struct Trusted {};
  UnitaryMatrix(Mat4 m, Trusted) : m_(std::move(m)) {}

  void normalize_det() {
    const Complex det = m_.determinant();
    m_ *= std::polar(1.0, -std::arg(det) / 4.0);
  }

  Mat4 m_;
};

// --------------------------------------------------------------------------
// FloatAlgebraElement
// --------------------------------------------------------------------------

class FloatAlgebraElement {
 public:
  FloatAlgebraElement() : m_(Mat4::Zero()) {}

  /// Checks ||M + M^dag||_F <= 1e-9 and |tr M| <= 1e-9.
  explicit FloatAlgebraElement(const Mat4& m) : m_(m) {
    if (!((m_ + m_.adjoint()).norm() <= kAlgebraTolerance))
      throw std::invalid_argument("matrix is not skew-Hermitian");
    if (!(std::abs(m_.trace()) <= kAlgebraTolerance)) throw std::invalid_argument("matrix is not traceless");
  }

  /// Projects an arbitrary matrix onto su(4): skew-Hermitian, traceless part.
  static FloatAlgebraElement project(const Mat4& m) {
    Mat4 s = 0.5 * (m - m.adjoint());
    s -= (s.trace() / 4.0) * Mat4::Identity();
    return FloatAlgebraElement(s, Trusted{});
  }

  static FloatAlgebraElement from_exact(const AlgebraElement& a) {
    Mat4 m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = Complex(a(r, c).re.get_d(), a(r, c).im.get_d());
    return FloatAlgebraElement(m);
  }

  const Mat4& matrix() const { return m_; }
  double norm() const { return m_.norm(); }

  friend FloatAlgebraElement operator*(double s, const FloatAlgebraElement& a) {
    return FloatAlgebraElement(Mat4(s * a.m_), Trusted{});
  }
  friend FloatAlgebraElement operator+(const FloatAlgebraElement& a, const FloatAlgebraElement& b) {
    return FloatAlgebraElement(Mat4(a.m_ + b.m_), Trusted{});
  }
  friend FloatAlgebraElement operator-(const FloatAlgebraElement& a, const FloatAlgebraElement& b) {
    return FloatAlgebraElement(Mat4(a.m_ - b.m_), Trusted{});
  }

  friend FloatAlgebraElement bracket(const FloatAlgebraElement& a, const FloatAlgebraElement& b) {
    return FloatAlgebraElement(Mat4(a.m_ * b.m_ - b.m_ * a.m_), Trusted{});
  }

  FloatAlgebraElement swap_adjoint() const {
    static const Mat4 s = swap_gate();
    return FloatAlgebraElement(Mat4(s * m_ * s), Trusted{});
  }

  /// Same coordinate ordering as the exact `vectorize`.
  Vec15 coordinates() const {
    Vec15 v;
    for (int i = 0; i < 3; ++i) v(i) = m_(i, i).imag();
    int k = 3;
    for (const auto& [r, c] : detail::kOffDiagonal) {
      v(k++) = m_(r, c).real();
      v(k++) = m_(r, c).imag();
    }
    return v;
  }

 private:
  struct Trusted {};
  FloatAlgebraElement(Mat4 m, Trusted) : m_(std::move(m)) {}

  Mat4 m_;
};

// --------------------------------------------------------------------------
// exp / log
// --------------------------------------------------------------------------

inline UnitaryMatrix su_exp(const FloatAlgebraElement& x) {
  // i X is Hermitian: i X = V diag(l) V^dag, so exp(X) = V diag(e^{-i l}) V^dag.
  const Mat4 h = Complex(0, 1) * x.matrix();
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (h + h.adjoint()));
  Eigen::Vector4cd phases;
  for (int j = 0; j < 4; ++j) phases(j) = std::polar(1.0, -es.eigenvalues()(j));
  const Mat4 u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return UnitaryMatrix(u);
}

/// Eigen-decomposition of a unitary: u = Q diag(e^{i theta}) Q^dag with
/// theta in (-pi, pi].
struct UnitaryEigen {
  Mat4 vectors;
  Eigen::Vector4d phases;
};

inline UnitaryEigen unitary_eigen(const UnitaryMatrix& u) {
  // A unitary is normal, so its complex Schur form is diagonal.
  Eigen::ComplexSchur<Mat4> schur(u.matrix());
  UnitaryEigen out{schur.matrixU(), {}};
  for (int j = 0; j < 4; ++j) out.phases(j) = std::arg(schur.matrixT()(j, j));
  return out;
}

/// Principal logarithm projected onto su(4). exp of the result equals u up to
/// a global phase. Throws BranchAmbiguity when an eigenphase is within 1e-8
/// of pi.
inline FloatAlgebraElement su_log(const UnitaryMatrix& u) {
  const auto eig = unitary_eigen(u);
  for (int j = 0; j < 4; ++j)
    if (std::abs(eig.phases(j)) > std::numbers::pi - kBranchGuard)
      throw BranchAmbiguity("eigenphase " + std::to_string(eig.phases(j)) + " is on the log branch cut");
  Eigen::Vector4cd d;
  for (int j = 0; j < 4; ++j) d(j) = Complex(0, eig.phases(j));
  return FloatAlgebraElement::project(eig.vectors * d.asDiagonal() * eig.vectors.adjoint());
}

// --------------------------------------------------------------------------
// Projective metric
// --------------------------------------------------------------------------

/// min over global phases c of ||u - c v||_F / 2, which equals
/// sqrt(2 - |tr(u^dag v)| / 2). Ranges over [0, sqrt 2]; a metric on PU(4).
inline double projective_distance(const Mat4& u, const Mat4& v) {
  const Complex z = (u.adjoint() * v).trace();
  const double az = std::abs(z);
  const Complex c = az > 0 ? std::conj(z) / az : Complex(1, 0);
  return 0.5 * (u - c * v).norm();
}

inline double projective_distance(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  return projective_distance(u.matrix(), v.matrix());
}

// --------------------------------------------------------------------------
// Haar sampling
// --------------------------------------------------------------------------

/// Haar-random element of SU(4): QR of a complex Ginibre matrix with the
/// phases of R's diagonal absorbed into Q.
inline UnitaryMatrix haar_unitary(Rng& rng) {
  Mat4 z;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      z(r, c) = Complex(re, im) / std::sqrt(2.0);
    }
  Eigen::HouseholderQR<Mat4> qr(z);
  Mat4 q = qr.householderQ();
  const Mat4 rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 4; ++j) {
    const Complex d = rmat(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return UnitaryMatrix(q);
}

inline Mat2 haar_unitary2(Rng& rng) {
  Mat2 z;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      z(r, c) = Complex(re, im);
    }
  Eigen::HouseholderQR<Mat2> qr(z);
  Mat2 q = qr.householderQ();
  const Mat2 rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 2; ++j) q.col(j) *= rmat(j, j) / std::abs(rmat(j, j));
  return q;
}

// --------------------------------------------------------------------------
// Commutator limit
// --------------------------------------------------------------------------

/// || su_log(e^{eps s} e^{eps t} e^{-eps s} e^{-eps t}) / eps^2 - [s, t] ||_F.
/// The group commutator agrees with the bracket to O(eps).
inline double commutator_limit_check(const FloatAlgebraElement& s, const FloatAlgebraElement& t, double eps) {
  if (!(eps > 0.0 && eps <= 0.1)) throw std::invalid_argument("eps must lie in (0, 0.1]");
  const auto es = su_exp(eps * s);
  const auto et = su_exp(eps * t);
  const auto comm = es * et * es.adjoint() * et.adjoint();
  const auto lhs = (1.0 / (eps * eps)) * su_log(comm);
  return (lhs - bracket(s, t)).norm();
}

// --------------------------------------------------------------------------
// Numerical generation test
// --------------------------------------------------------------------------

struct NumericGeneration {
  bool generates = false;
  /// Number of singular values above tol * sigma_max.
  int rank = 0;
  /// sigma_15 / sigma_max of the collected rows (0 if fewer than 15 rows).
  double sigma15_ratio = 0.0;
  /// sigma_15 within a factor 10 of the threshold: the direction is close
  /// to the non-generating variety and the verdict is fragile.
  bool near_variety = false;
  int ops = 0;
};

inline constexpr double kDefaultRankTolerance = 1e-8;

/// Floating-point analogue of the exact closure: breadth-first brackets of
/// unit-normalized elements, an orthogonal residual test to decide which to
/// keep, and a final singular-value rank with relative threshold `tol`.
inline NumericGeneration numeric_generation_test(const FloatAlgebraElement& t,
                                                 double tol = kDefaultRankTolerance,
                                                 int max_ops = 500) {
  NumericGeneration out;
  std::vector<FloatAlgebraElement> pool;
  std::vector<Vec15> basis;  // orthonormal
  std::vector<Vec15> rows;   // unit coordinate rows of kept elements

  auto offer = [&](const FloatAlgebraElement& x, double scale) {
    // Brackets of unit elements that cancel to rounding level are zero.
    const double n = x.norm();
    if (!(n > tol * scale)) return;
    const FloatAlgebraElement unit = (1.0 / n) * x;
    Vec15 v = unit.coordinates();
    v.normalize();
    const Vec15 row = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v -= b.dot(v) * b;
    const double residual = v.norm();
    if (residual <= tol) return;
    basis.push_back(v / residual);
    rows.push_back(row);
    pool.push_back(unit);
  };

  const double tn = t.norm();
  if (!(tn > 0.0)) return out;
  offer(t, tn);
  offer(t.swap_adjoint(), tn);
  std::size_t i = 0, j = 1;
  while (basis.size() < 15 && out.ops < max_ops && j < pool.size()) {
    ++out.ops;
    offer(bracket(pool[i], pool[j]), 1.0);
    if (++i == j) {
      i = 0;
      ++j;
    }
  }

  if (rows.empty()) return out;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), 15);
  for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > tol * smax) ++out.rank;
  if (sv.size() >= 15) {
    out.sigma15_ratio = sv(14) / smax;
    out.near_variety = out.sigma15_ratio > tol / 10.0 && out.sigma15_ratio < 10.0 * tol;
  }
  out.generates = out.rank == 15;
  return out;
}

// --------------------------------------------------------------------------
// Power search
// --------------------------------------------------------------------------

struct PowerSearchResult {
  std::int64_t k = 0;
  /// Frobenius norm of su_log(g^k).
  double log_norm = 0.0;
  bool generation_ok = false;
  std::vector<std::string> warnings;
};

struct PowerSearchNotFound {
  /// Power with the smallest log norm seen, and that norm.
  std::int64_t best_k = 0;
  double best_norm = 0.0;
  /// Powers that met the norm cap but failed the generation test.
  std::int64_t small_but_degenerate = 0;
};

inline constexpr double kDefaultNormCap = 0.5;

/// Smallest k <= k_max with ||su_log(g^k)||_F <= norm_cap whose log passes
/// numeric_generation_test. Powers are taken on the eigenphases, so the
/// scan costs O(1) per k until a candidate needs the generation test.
inline std::variant<PowerSearchResult, PowerSearchNotFound> power_search(
    const UnitaryMatrix& g, std::int64_t k_max, double norm_cap = kDefaultNormCap,
    double tol = kDefaultRankTolerance) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  const auto eig = unitary_eigen(g);
  PowerSearchNotFound nf{0, std::numeric_limits<double>::infinity(), 0};
  for (std::int64_t k = 1; k <= k_max; ++k) {
    Eigen::Vector4d phi;
    bool ambiguous = false;
    for (int j = 0; j < 4; ++j) {
      phi(j) = std::remainder(static_cast<double>(k) * eig.phases(j), 2.0 * std::numbers::pi);
      if (std::abs(phi(j)) > std::numbers::pi - kBranchGuard) ambiguous = true;
    }
    if (ambiguous) continue;
    phi.array() -= phi.mean();
    const double norm = phi.norm();
    if (norm < nf.best_norm) {
      nf.best_norm = norm;
      nf.best_k = k;
    }
    if (norm > norm_cap) continue;
    Eigen::Vector4cd d;
    for (int j = 0; j < 4; ++j) d(j) = Complex(0, phi(j));
    const auto log_gk = FloatAlgebraElement::project(eig.vectors * d.asDiagonal() * eig.vectors.adjoint());
    const auto gen = numeric_generation_test(log_gk, tol);
    if (!gen.generates) {
      ++nf.small_but_degenerate;
      continue;
    }
    PowerSearchResult res{k, norm, true, {}};
    if (gen.near_variety) res.warnings.emplace_back("log(g^k) is close to the non-generating variety");
    return res;
  }
  return nf;
}

// --------------------------------------------------------------------------
// Torus density
// --------------------------------------------------------------------------

struct TorusSearchResult {
  /// First power whose interval image meets the target ball; empty when the
  /// budget ran out.
  std::optional<std::int64_t> k;
  /// Closest approach seen (torus distance).
  double best_distance = std::numeric_limits<double>::infinity();
};

/// Winding line s -> s * slopes (mod 1) on the d-torus. The interval
/// I = [1 - w/2, 1 + w/2] of parameters is raised to powers, I^k = k I, and
/// the first k whose image segment passes within `tol` of `target` is
/// returned.
inline TorusSearchResult torus_density_demo(std::span<const double> slopes, double interval_width,
                                            std::span<const double> target, double tol,
                                            std::int64_t k_budget = 1'000'000) {
  const std::size_t d = slopes.size();
  if (d == 0 || target.size() != d) throw std::invalid_argument("slopes and target must share a nonzero dimension");
  if (!(interval_width > 0.0) || !(tol > 0.0) || tol >= 0.25)
    throw std::invalid_argument("need interval_width > 0 and 0 < tol < 1/4");
  double speed = 0.0;
  for (double s : slopes) speed += s * s;
  speed = std::sqrt(speed);
  if (!(speed > 0.0)) throw std::invalid_argument("slopes must not all vanish");

  auto wrap = [](double x) { return x - std::nearbyint(x); };
  TorusSearchResult out;
  std::vector<double> diff(d);
  const double h = tol / speed;  // parameter step moving the point by tol
  for (std::int64_t k = 1; k <= k_budget; ++k) {
    const double a = static_cast<double>(k) * (1.0 - interval_width / 2.0);
    const double b = static_cast<double>(k) * (1.0 + interval_width / 2.0);
    // One full revolution in every coordinate suffices once the segment is
    // longer than the common period; cap the scan at a million steps.
    const auto steps = static_cast<std::int64_t>(std::min(std::ceil((b - a) / h), 1e6));
    for (std::int64_t n = 0; n < std::max<std::int64_t>(steps, 1); ++n) {
      const double s0 = a + static_cast<double>(n) * h;
      const double len = std::min(h, b - s0);
      // Closest point of the short chord starting at s0 to the target.
      double dot = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        diff[i] = wrap(std::fmod(s0 * slopes[i], 1.0) - target[i]);
        dot += diff[i] * slopes[i];
      }
      const double u = std::clamp(-dot / (speed * speed), 0.0, std::max(len, 0.0));
      double dist2 = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const double e = diff[i] + u * slopes[i];
        dist2 += e * e;
      }
      const double dist = std::sqrt(dist2);
      out.best_distance = std::min(out.best_distance, dist);
      if (dist < tol) {
        out.k = k;
        return out;
      }
    }
  }
  return out;
}

}  // namespace ugate
