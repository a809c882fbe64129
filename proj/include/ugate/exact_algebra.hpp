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

/*
 * Exact arithmetic on su(4).
 *
 * Elements are 4x4 traceless skew-Hermitian matrices whose entries live in
 * F[i] for an exact field F (the rationals by default, Q(sqrt 2) for the
 * Galois-invariance checks). Nothing in this header rounds.
 *
 * Coordinates: su(4) is identified with F^15 by
 *
 *   (Im M11, Im M22, Im M33,
 *    Re M12, Im M12, Re M13, Im M13, Re M14, Im M14,
 *    Re M23, Im M23, Re M24, Im M24, Re M34, Im M34)
 *
 * Im M44 is recovered from the trace and the lower triangle from
 * skew-Hermiticity.
 *
 * Rank and determinant over Q use fraction-free (Bareiss) elimination on
 * integer rows; other fields fall back to Bareiss with exact field division.
 */

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace ugate {

// --------------------------------------------------------------------------
// Rationals
// --------------------------------------------------------------------------

/// Canonical "p/q" form (always with a denominator, lowest terms).
inline std::string to_fraction_string(mpq_class q) {
  q.canonicalize();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p/q" or "p". Throws std::invalid_argument on anything else,
/// including zero denominators and decimal points.
inline mpq_class parse_rational(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

// --------------------------------------------------------------------------
// Gaussian numbers over an exact field
// --------------------------------------------------------------------------

template <class F>
struct Gaussian {
  F re{0};
  F im{0};

  Gaussian() = default;
  Gaussian(F r, F i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  Gaussian conj() const { return {re, F(-im)}; }

  friend Gaussian operator+(const Gaussian& a, const Gaussian& b) {
    return {F(a.re + b.re), F(a.im + b.im)};
  }
  friend Gaussian operator-(const Gaussian& a, const Gaussian& b) {
    return {F(a.re - b.re), F(a.im - b.im)};
  }
  friend Gaussian operator-(const Gaussian& a) { return {F(-a.re), F(-a.im)}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return {F(a.re * b.re - a.im * b.im), F(a.re * b.im + a.im * b.re)};
  }
  friend Gaussian operator*(const F& s, const Gaussian& a) { return {F(s * a.re), F(s * a.im)}; }
  Gaussian& operator+=(const Gaussian& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re == b.re && a.im == b.im;
  }
};

using GaussianRational = Gaussian<mpq_class>;

// --------------------------------------------------------------------------
// 4x4 matrices
// --------------------------------------------------------------------------

template <class F>
class Matrix4 {
 public:
  using Entry = Gaussian<F>;

  Matrix4() = default;

  const Entry& operator()(int r, int c) const { return data_[static_cast<std::size_t>(4 * r + c)]; }
  Entry& operator()(int r, int c) { return data_[static_cast<std::size_t>(4 * r + c)]; }

  friend Matrix4 operator*(const Matrix4& a, const Matrix4& b) {
    Matrix4 out;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        Entry acc;
        for (int k = 0; k < 4; ++k) {
          const Entry& x = a(r, k);
          const Entry& y = b(k, c);
          if (x.is_zero() || y.is_zero()) continue;
          acc += x * y;
        }
        out(r, c) = std::move(acc);
      }
    return out;
  }
  friend Matrix4 operator-(const Matrix4& a, const Matrix4& b) {
    Matrix4 out;
    for (std::size_t i = 0; i < 16; ++i) out.data_[i] = a.data_[i] - b.data_[i];
    return out;
  }
  friend Matrix4 operator+(const Matrix4& a, const Matrix4& b) {
    Matrix4 out;
    for (std::size_t i = 0; i < 16; ++i) out.data_[i] = a.data_[i] + b.data_[i];
    return out;
  }
  friend Matrix4 operator*(const F& s, const Matrix4& a) {
    Matrix4 out;
    for (std::size_t i = 0; i < 16; ++i) out.data_[i] = s * a.data_[i];
    return out;
  }
  friend bool operator==(const Matrix4& a, const Matrix4& b) { return a.data_ == b.data_; }

  Matrix4 adjoint() const {
    Matrix4 out;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) out(r, c) = (*this)(c, r).conj();
    return out;
  }

  Entry trace() const {
    Entry t;
    for (int i = 0; i < 4; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& e : data_)
      if (!e.is_zero()) return false;
    return true;
  }

 private:
  std::array<Entry, 16> data_{};
};

// --------------------------------------------------------------------------
// su(4) elements
// --------------------------------------------------------------------------

/// A traceless skew-Hermitian 4x4 matrix with exact entries. Both
/// invariants are checked on construction.
template <class F>
class AlgebraElementT {
 public:
  using Field = F;

  /// The zero element.
  AlgebraElementT() = default;

  explicit AlgebraElementT(Matrix4<F> m) : m_(std::move(m)) {
    if (!m_.trace().is_zero()) throw std::invalid_argument("su(4) element must be traceless");
    if (!(m_.adjoint() == F(-1) * m_))
      throw std::invalid_argument("su(4) element must be skew-Hermitian");
  }

  const Matrix4<F>& matrix() const { return m_; }
  const Gaussian<F>& operator()(int r, int c) const { return m_(r, c); }
  bool is_zero() const { return m_.is_zero(); }

  friend bool operator==(const AlgebraElementT& a, const AlgebraElementT& b) { return a.m_ == b.m_; }
  friend AlgebraElementT operator+(const AlgebraElementT& a, const AlgebraElementT& b) {
    return AlgebraElementT(a.m_ + b.m_, Trusted{});
  }
  friend AlgebraElementT operator-(const AlgebraElementT& a, const AlgebraElementT& b) {
    return AlgebraElementT(a.m_ - b.m_, Trusted{});
  }
  friend AlgebraElementT operator*(const F& s, const AlgebraElementT& a) {
    return AlgebraElementT(s * a.m_, Trusted{});
  }

  template <class G>
  friend AlgebraElementT<G> bracket(const AlgebraElementT<G>& a, const AlgebraElementT<G>& b);
  template <class G>
  friend AlgebraElementT<G> swap_adjoint(const AlgebraElementT<G>& t);
  template <class G>
  friend AlgebraElementT<G> devectorize(std::span<const G> coords);

 private:
  struct Trusted {};
  AlgebraElementT(Matrix4<F> m, Trusted) : m_(std::move(m)) {}

  Matrix4<F> m_;
};

using AlgebraElement = AlgebraElementT<mpq_class>;

template <class F>
using CoordinateVectorT = std::array<F, 15>;
using CoordinateVector = CoordinateVectorT<mpq_class>;

/// Lie bracket [a, b] = ab - ba. The result is again in su(4).
template <class F>
AlgebraElementT<F> bracket(const AlgebraElementT<F>& a, const AlgebraElementT<F>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return AlgebraElementT<F>(a.m_ * b.m_ - b.m_ * a.m_, typename AlgebraElementT<F>::Trusted{});
}

/// Conjugation by SWAP in the basis |00>,|01>,|10>,|11>: permutes rows and
/// columns 1 and 2 (0-based) simultaneously.
template <class F>
AlgebraElementT<F> swap_adjoint(const AlgebraElementT<F>& t) {
  static constexpr std::array<int, 4> perm{0, 2, 1, 3};
  Matrix4<F> out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(perm[r], perm[c]) = t.m_(r, c);
  return AlgebraElementT<F>(std::move(out), typename AlgebraElementT<F>::Trusted{});
}

namespace detail {
// Upper-triangle positions in coordinate order.
inline constexpr std::array<std::pair<int, int>, 6> kOffDiagonal{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
}  // namespace detail

template <class F>
CoordinateVectorT<F> vectorize(const AlgebraElementT<F>& a) {
  CoordinateVectorT<F> v;
  for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(i)] = a(i, i).im;
  std::size_t k = 3;
  for (const auto& [r, c] : detail::kOffDiagonal) {
    v[k++] = a(r, c).re;
    v[k++] = a(r, c).im;
  }
  return v;
}

template <class F>
AlgebraElementT<F> devectorize(std::span<const F> coords) {
  if (coords.size() != 15) throw std::invalid_argument("su(4) coordinates must have length 15");
  Matrix4<F> m;
  F last = 0;
  for (int i = 0; i < 3; ++i) {
    m(i, i) = {F(0), coords[static_cast<std::size_t>(i)]};
    last -= coords[static_cast<std::size_t>(i)];
  }
  m(3, 3) = {F(0), last};
  std::size_t k = 3;
  for (const auto& [r, c] : detail::kOffDiagonal) {
    Gaussian<F> z{coords[k], coords[k + 1]};
    k += 2;
    m(c, r) = -z.conj();
    m(r, c) = std::move(z);
  }
  return AlgebraElementT<F>(std::move(m), typename AlgebraElementT<F>::Trusted{});
}

template <class F>
AlgebraElementT<F> devectorize(const CoordinateVectorT<F>& coords) {
  return devectorize<F>(std::span<const F>(coords));
}

// --------------------------------------------------------------------------
// Rank and determinant
// --------------------------------------------------------------------------

namespace detail {

// Scales a rational row to a primitive integer row (gcd of entries 1).
inline std::vector<mpz_class> primitive_integer_row(std::span<const mpq_class> row) {
  mpz_class lcm = 1;
  for (const auto& q : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> out(row.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    out[i] = row[i].get_num() * (lcm / row[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

// In-place Bareiss elimination on an integral-domain matrix. Returns the rank;
// for a square full-rank input, the last pivot equals +-det and `sign` tracks
// the row swaps. `exact_div(a, b)` must divide exactly.
template <class T, class Div>
int bareiss(std::vector<std::vector<T>>& m, std::size_t cols, int& sign, Div exact_div) {
  const std::size_t rows = m.size();
  sign = 1;
  T prev = T(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(m[p], m[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        T v = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        m[i][j] = exact_div(v, prev);
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return static_cast<int>(r);
}

}  // namespace detail

/// Rank of a list of coordinate rows over the base field, computed exactly.
template <class F>
int exact_rank(std::span<const CoordinateVectorT<F>> rows) {
  int sign = 1;
  if constexpr (std::is_same_v<F, mpq_class>) {
    std::vector<std::vector<mpz_class>> m;
    m.reserve(rows.size());
    for (const auto& r : rows) m.push_back(detail::primitive_integer_row(r));
    return detail::bareiss(m, 15, sign, [](const mpz_class& a, const mpz_class& b) {
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      return q;
    });
  } else {
    std::vector<std::vector<F>> m;
    for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
    return detail::bareiss(m, 15, sign, [](const F& a, const F& b) { return F(a / b); });
  }
}

template <class F>
int exact_rank(const std::vector<CoordinateVectorT<F>>& rows) {
  return exact_rank<F>(std::span<const CoordinateVectorT<F>>(rows));
}

/// Exact 15x15 determinant. Throws std::invalid_argument unless exactly 15
/// rows are supplied.
template <class F>
F det15(std::span<const CoordinateVectorT<F>> rows) {
  if (rows.size() != 15)
    throw std::invalid_argument("det15 needs exactly 15 rows, got " + std::to_string(rows.size()));
  int sign = 1;
  if constexpr (std::is_same_v<F, mpq_class>) {
    // det(rows) = det(integer rows) / prod(row scale factors).
    std::vector<std::vector<mpz_class>> m;
    mpq_class scale = 1;
    for (const auto& r : rows) {
      auto ints = detail::primitive_integer_row(r);
      // Find the factor s with r = ints / s from any nonzero entry.
      for (std::size_t j = 0; j < 15; ++j)
        if (ints[j] != 0) {
          scale *= mpq_class(r[j] / mpq_class(ints[j]));
          break;
        }
      m.push_back(std::move(ints));
    }
    const int rank = detail::bareiss(m, 15, sign, [](const mpz_class& a, const mpz_class& b) {
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      return q;
    });
    if (rank < 15) return 0;
    mpq_class det(m[14][14]);
    det *= scale;
    if (sign < 0) det = -det;
    det.canonicalize();
    return det;
  } else {
    std::vector<std::vector<F>> m;
    for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
    const int rank = detail::bareiss(m, 15, sign, [](const F& a, const F& b) { return F(a / b); });
    if (rank < 15) return F(0);
    return sign < 0 ? F(-m[14][14]) : m[14][14];
  }
}

template <class F>
F det15(const std::vector<CoordinateVectorT<F>>& rows) {
  return det15<F>(std::span<const CoordinateVectorT<F>>(rows));
}

/// Echelon basis that grows one row at a time. `add` costs O(15 * rank)
/// exact operations, so a closure search can test each candidate without
/// recomputing a determinant.
class IncrementalBasis {
 public:
  int rank() const { return static_cast<int>(rows_.size()); }

  /// Adds the row if it is independent of the current basis; returns whether
  /// the rank grew.
  bool add(const CoordinateVector& row) {
    auto v = detail::primitive_integer_row(row);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const auto p = pivots_[k];
      if (v[p] == 0) continue;
      const mpz_class a = rows_[k][p];
      const mpz_class b = v[p];
      for (std::size_t j = 0; j < 15; ++j) v[j] = a * v[j] - b * rows_[k][j];
      make_primitive(v);
    }
    std::size_t pivot = 15;
    for (std::size_t j = 0; j < 15; ++j)
      if (v[j] != 0) {
        pivot = j;
        break;
      }
    if (pivot == 15) return false;
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }

 private:
  static void make_primitive(std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g > 1)
      for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }

  std::vector<std::vector<mpz_class>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace ugate
