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
 * The quadratic field Q(sqrt 2) = {x + y a : x, y in Q, a^2 = 2}.
 *
 * QSqrt2 is an exact field type and plugs into the templated su(4) code, so
 * brackets and 15x15 determinants can be evaluated over Q(sqrt 2). The two
 * real embeddings j+(a) = +sqrt 2 and j-(a) = -sqrt 2 are evaluated with GMP
 * floats at a configurable number of decimal digits.
 */

#include <gmpxx.h>

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ugate/exact_algebra.hpp"
#include "ugate/su4_generation.hpp"

namespace ugate {

class QSqrt2 {
 public:
  QSqrt2() = default;
  QSqrt2(int v) : x_(v) {}  // NOLINT(google-explicit-constructor): field literals
  QSqrt2(mpq_class x) : x_(std::move(x)) { x_.canonicalize(); }  // NOLINT(google-explicit-constructor)
  QSqrt2(mpq_class x, mpq_class y) : x_(std::move(x)), y_(std::move(y)) {
    x_.canonicalize();
    y_.canonicalize();
  }

  /// The generator a with a^2 = 2.
  static QSqrt2 alpha() { return {0, 1}; }

  const mpq_class& x() const { return x_; }
  const mpq_class& y() const { return y_; }

  /// x^2 - 2 y^2, multiplicative.
  mpq_class norm() const { return x_ * x_ - 2 * y_ * y_; }
  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational() const { return y_ == 0; }

  friend QSqrt2 galois(const QSqrt2& f) { return {f.x_, -f.y_}; }

  friend QSqrt2 operator+(const QSqrt2& a, const QSqrt2& b) { return {a.x_ + b.x_, a.y_ + b.y_}; }
  friend QSqrt2 operator-(const QSqrt2& a, const QSqrt2& b) { return {a.x_ - b.x_, a.y_ - b.y_}; }
  friend QSqrt2 operator-(const QSqrt2& a) { return {-a.x_, -a.y_}; }
  friend QSqrt2 operator*(const QSqrt2& a, const QSqrt2& b) {
    return {a.x_ * b.x_ + 2 * a.y_ * b.y_, a.x_ * b.y_ + a.y_ * b.x_};
  }
  /// f / h = f g(h) / N(h).
  friend QSqrt2 operator/(const QSqrt2& a, const QSqrt2& b) {
    const mpq_class n = b.norm();
    if (n == 0) throw std::domain_error("division by zero in Q(sqrt 2)");
    const QSqrt2 num = a * galois(b);
    return {num.x_ / n, num.y_ / n};
  }
  QSqrt2& operator+=(const QSqrt2& b) { return *this = *this + b; }
  QSqrt2& operator-=(const QSqrt2& b) { return *this = *this - b; }
  QSqrt2& operator*=(const QSqrt2& b) { return *this = *this * b; }

  friend bool operator==(const QSqrt2& a, const QSqrt2& b) { return a.x_ == b.x_ && a.y_ == b.y_; }

  /// "x", "y·√2" or "x + y·√2" with rationals in lowest terms ("3/2").
  std::string to_string() const {
    if (y_ == 0) return x_.get_str();
    std::string ys;
    const mpq_class ay = abs(y_);
    ys = ay == 1 ? "√2" : ay.get_str() + "·√2";
    if (x_ == 0) return (y_ < 0 ? "-" : "") + ys;
    return x_.get_str() + (y_ < 0 ? " - " : " + ") + ys;
  }

 private:
  mpq_class x_{0};
  mpq_class y_{0};
};

/// Coordinate-wise Galois involution.
template <std::size_t N>
std::array<QSqrt2, N> galois(const std::array<QSqrt2, N>& v) {
  std::array<QSqrt2, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = galois(v[i]);
  return out;
}

inline std::vector<QSqrt2> galois(std::span<const QSqrt2> v) {
  std::vector<QSqrt2> out;
  out.reserve(v.size());
  for (const auto& f : v) out.push_back(galois(f));
  return out;
}

// --------------------------------------------------------------------------
// Embeddings
// --------------------------------------------------------------------------

inline constexpr int kDefaultDigits = 64;

inline mp_bitcnt_t digits_to_bits(int digits) {
  return static_cast<mp_bitcnt_t>(std::ceil(digits * 3.3219280948873623)) + 32;
}

inline mpf_class sqrt2(int digits = kDefaultDigits) {
  mpf_class two(2, digits_to_bits(digits));
  return sqrt(two);
}

inline mpf_class to_mpf(const mpq_class& q, int digits = kDefaultDigits) {
  mpf_class out(0, digits_to_bits(digits));
  out = q;
  return out;
}

struct EmbeddingPair {
  mpf_class plus;   // a -> +sqrt 2
  mpf_class minus;  // a -> -sqrt 2
};

inline EmbeddingPair embed(const QSqrt2& f, int digits = kDefaultDigits) {
  const mp_bitcnt_t bits = digits_to_bits(digits);
  const mpf_class r = sqrt2(digits);
  mpf_class x(0, bits), y(0, bits);
  x = f.x();
  y = f.y();
  mpf_class yr(y * r, bits);
  return {mpf_class(x + yr, bits), mpf_class(x - yr, bits)};
}

inline mpf_class j_plus(const QSqrt2& f, int digits = kDefaultDigits) { return embed(f, digits).plus; }
inline mpf_class j_minus(const QSqrt2& f, int digits = kDefaultDigits) { return embed(f, digits).minus; }

// --------------------------------------------------------------------------
// Double density
// --------------------------------------------------------------------------

namespace detail {

// First continued-fraction convergent h/k of v with |v - h/k| < tol.
inline mpq_class convergent_within(const mpf_class& v, const mpf_class& tol) {
  const mp_bitcnt_t bits = v.get_prec();
  mpz_class h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  mpf_class r(v, bits);
  for (int step = 0; step < 10000; ++step) {
    mpf_class fl(floor(r), bits);
    const mpz_class a(fl);
    const mpz_class h = a * h1 + h2;
    const mpz_class k = a * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    mpq_class c(h, k);
    c.canonicalize();
    mpf_class err(0, bits);
    err = c;
    err = abs(v - err);
    if (err < tol) return c;
    mpf_class frac(r - fl, bits);
    if (frac == 0) return c;  // exact, err is rounding noise only
    r = 1 / frac;
  }
  throw std::runtime_error("continued fraction did not reach the tolerance");
}

inline int working_digits(const mpf_class& eps, int digits) {
  long exp10 = 0;
  mpf_get_d_2exp(&exp10, eps.get_mpf_t());
  const int need = static_cast<int>(2.0 * std::abs(static_cast<double>(exp10)) * 0.30103) + 30;
  return std::max(digits, need);
}

}  // namespace detail

/// An element f = x0 + y0 a with |j+(f) - p| < eps and |j-(f) - q| < eps.
/// The exact solution is x = (p + q) / 2, y = (sqrt2 / 4)(p - q); x0 and y0
/// are the first continued-fraction convergents of x and y within eps / 4
/// and eps / (4 sqrt 2), which keeps both residuals below eps / 2.
inline QSqrt2 double_density_approx(const mpf_class& p, const mpf_class& q, const mpf_class& eps,
                                    int digits = kDefaultDigits) {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  const int wd = detail::working_digits(eps, digits);
  const mp_bitcnt_t bits = digits_to_bits(wd);
  const mpf_class r = sqrt2(wd);
  mpf_class pp(p, bits), qq(q, bits), e(eps, bits);
  const mpf_class x((pp + qq) / 2, bits);
  const mpf_class y(r * (pp - qq) / 4, bits);
  const mpf_class tol_x(e / 4, bits);
  const mpf_class tol_y(e / (4 * r), bits);
  return {detail::convergent_within(x, tol_x), detail::convergent_within(y, tol_y)};
}

inline QSqrt2 double_density_approx(double p, double q, double eps, int digits = kDefaultDigits) {
  if (!std::isfinite(p) || !std::isfinite(q)) throw std::invalid_argument("targets must be finite");
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  const mp_bitcnt_t bits = digits_to_bits(digits);
  return double_density_approx(mpf_class(p, bits), mpf_class(q, bits), mpf_class(eps, bits), digits);
}

struct EmbeddingResiduals {
  mpf_class plus;   // |j+(f) - p|
  mpf_class minus;  // |j-(f) - q|
};

inline EmbeddingResiduals embedding_residuals(const QSqrt2& f, const mpf_class& p, const mpf_class& q,
                                              int digits = kDefaultDigits) {
  const auto e = embed(f, digits);
  const mp_bitcnt_t bits = digits_to_bits(digits);
  return {mpf_class(abs(e.plus - p), bits), mpf_class(abs(e.minus - q), bits)};
}

// --------------------------------------------------------------------------
// Polynomials and Galois invariance
// --------------------------------------------------------------------------

/// Sparse multivariate polynomial with rational coefficients.
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;

  explicit Polynomial(std::size_t arity = 0) : arity_(arity) {}

  static Polynomial constant(std::size_t arity, const mpq_class& c) {
    Polynomial p(arity);
    p.add_term(c, Exponents(arity, 0));
    return p;
  }
  static Polynomial variable(std::size_t arity, std::size_t i) {
    if (i >= arity) throw std::invalid_argument("variable index out of range");
    Exponents e(arity, 0);
    e[i] = 1;
    Polynomial p(arity);
    p.add_term(1, std::move(e));
    return p;
  }

  std::size_t arity() const { return arity_; }
  const std::map<Exponents, mpq_class>& terms() const { return terms_; }

  void add_term(const mpq_class& c, Exponents e) {
    if (e.size() != arity_) throw std::invalid_argument("exponent vector has wrong arity");
    auto& slot = terms_[std::move(e)];
    slot += c;
    slot.canonicalize();
    if (slot == 0) prune();
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    check_arity(a, b);
    Polynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(c, e);
    return out;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    check_arity(a, b);
    Polynomial out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(-c, e);
    return out;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_arity(a, b);
    Polynomial out(a.arity_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(a.arity_);
        for (std::size_t i = 0; i < a.arity_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(ca * cb, std::move(e));
      }
    return out;
  }

  /// Evaluation over any ring containing Q (rationals or Q(sqrt 2)).
  template <class F>
  F evaluate(std::span<const F> point) const {
    if (point.size() != arity_) throw std::invalid_argument("point has wrong arity");
    F total(0);
    for (const auto& [e, c] : terms_) {
      F term(c);
      for (std::size_t i = 0; i < arity_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) term = term * point[i];
      total = total + term;
    }
    return total;
  }

 private:
  static void check_arity(const Polynomial& a, const Polynomial& b) {
    if (a.arity_ != b.arity_) throw std::invalid_argument("polynomial arity mismatch");
  }
  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }

  std::size_t arity_;
  std::map<Exponents, mpq_class> terms_;
};

/// The 15-variable polynomial t -> det15(rows of the given bracket words
/// evaluated at (t, SWAP t SWAP)), where t is built from its 15 coordinates.
/// Its coefficients are rational, so it commutes with the Galois action.
class Det15Polynomial {
 public:
  explicit Det15Polynomial(std::vector<BracketWord> words) : words_(std::move(words)) {
    if (words_.size() != 15) throw std::invalid_argument("det15 polynomial needs 15 words");
  }

  std::size_t arity() const { return 15; }
  const std::vector<BracketWord>& words() const { return words_; }

  template <class F>
  F evaluate(std::span<const F> point) const {
    if (point.size() != 15) throw std::invalid_argument("point has wrong arity");
    CoordinateVectorT<F> coords;
    std::copy(point.begin(), point.end(), coords.begin());
    const auto t = devectorize(coords);
    const auto tp = swap_adjoint(t);
    std::vector<CoordinateVectorT<F>> rows;
    rows.reserve(15);
    for (const auto& w : words_) rows.push_back(vectorize(w.evaluate(t, tp)));
    return det15<F>(rows);
  }

 private:
  std::vector<BracketWord> words_;
};

/// (P(s) = 0) <=> (P(g s) = 0), evaluated exactly.
template <class Poly>
bool variety_galois_invariance(const Poly& poly, std::span<const QSqrt2> point) {
  if (point.size() != poly.arity()) throw std::invalid_argument("point has wrong arity");
  const auto conj = galois(point);
  const QSqrt2 before = poly.template evaluate<QSqrt2>(point);
  const QSqrt2 after = poly.template evaluate<QSqrt2>(std::span<const QSqrt2>(conj));
  return before.is_zero() == after.is_zero();
}

/// P(g s) = g(P(s)), the identity behind the invariance.
template <class Poly>
bool galois_equivariant(const Poly& poly, std::span<const QSqrt2> point) {
  const auto conj = galois(point);
  return poly.template evaluate<QSqrt2>(std::span<const QSqrt2>(conj)) ==
         galois(poly.template evaluate<QSqrt2>(point));
}

// --------------------------------------------------------------------------
// Scatter
// --------------------------------------------------------------------------

/// For each coordinate, an element s_k with |j+(s_k) - j+(t0_k)| < eps and
/// |j+(g(s_k)) - t1_k| < eps.
inline std::vector<QSqrt2> scatter_demo(std::span<const QSqrt2> t0, std::span<const double> t1, double eps,
                                        int digits = kDefaultDigits) {
  if (t0.size() != t1.size()) throw std::invalid_argument("t0 and t1 must have the same length");
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  const mp_bitcnt_t bits = digits_to_bits(digits);
  std::vector<QSqrt2> out;
  out.reserve(t0.size());
  for (std::size_t k = 0; k < t0.size(); ++k) {
    if (!std::isfinite(t1[k])) throw std::invalid_argument("t1 must be finite");
    out.push_back(double_density_approx(j_plus(t0[k], digits), mpf_class(t1[k], bits), mpf_class(eps, bits), digits));
  }
  return out;
}

}  // namespace ugate
