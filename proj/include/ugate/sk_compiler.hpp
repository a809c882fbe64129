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
 * Solovay-Kitaev compilation over the two-letter gate set {G, G'} with
 * G' = SWAP G SWAP (plus inverses).
 *
 *   Net              breadth-first enumeration of reduced words up to a
 *                    length, deduplicated in the projective metric, with a
 *                    pivot-table (LAESA) index for exact nearest neighbours.
 *   gc_decompose     balanced group commutator: delta = V W V^-1 W^-1.
 *   solovay_kitaev   the standard recursion; level 0 is the net lookup.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ugate/errors.hpp"
#include "ugate/numeric_lie.hpp"

namespace ugate {

// --------------------------------------------------------------------------
// Letters and sequences
// --------------------------------------------------------------------------

enum class Letter : std::uint8_t { G = 0, GPrime = 1, GInv = 2, GPrimeInv = 3 };

inline constexpr std::array<Letter, 4> kLetters{Letter::G, Letter::GPrime, Letter::GInv, Letter::GPrimeInv};

constexpr Letter inverse(Letter l) { return static_cast<Letter>(static_cast<std::uint8_t>(l) ^ 2U); }
/// G <-> G' (SWAP conjugation of the letter).
constexpr Letter mirror(Letter l) { return static_cast<Letter>(static_cast<std::uint8_t>(l) ^ 1U); }

inline std::string to_string(Letter l) {
  switch (l) {
    case Letter::G:
      return "G";
    case Letter::GPrime:
      return "G'";
    case Letter::GInv:
      return "G⁻¹";
    case Letter::GPrimeInv:
      return "G'⁻¹";
  }
  return "?";
}

inline Letter parse_letter(const std::string& s) {
  for (auto l : kLetters)
    if (to_string(l) == s) return l;
  if (s == "G^-1" || s == "Gi") return Letter::GInv;
  if (s == "G'^-1" || s == "G'i") return Letter::GPrimeInv;
  throw std::invalid_argument("unknown letter '" + s + "'");
}

/// The gate and its SWAP conjugate, with inverses cached.
class GatePair {
 public:
  explicit GatePair(const UnitaryMatrix& g) : g_(g), g_prime_(g.swap_conjugate()) {
    letters_[0] = g_.matrix();
    letters_[1] = g_prime_.matrix();
    letters_[2] = g_.matrix().adjoint();
    letters_[3] = g_prime_.matrix().adjoint();
  }

  const UnitaryMatrix& g() const { return g_; }
  const UnitaryMatrix& g_prime() const { return g_prime_; }
  const Mat4& matrix(Letter l) const { return letters_[static_cast<std::size_t>(l)]; }

 private:
  UnitaryMatrix g_;
  UnitaryMatrix g_prime_;
  std::array<Mat4, 4> letters_;
};

/// A word over {G, G', G^-1, G'^-1} together with its product. The word
/// l1 l2 ... ln evaluates to M(l1) M(l2) ... M(ln). Words are kept freely
/// reduced.
class GateSequence {
 public:
  GateSequence() : unitary_(Mat4::Identity()) {}

  static GateSequence evaluate(const GatePair& pair, std::vector<Letter> letters) {
    GateSequence s;
    s.letters_ = reduce(std::move(letters));
    for (auto l : s.letters_) s.unitary_ = s.unitary_ * pair.matrix(l);
    return s;
  }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  const Mat4& unitary() const { return unitary_; }

  GateSequence inverse() const {
    GateSequence s;
    s.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) s.letters_.push_back(ugate::inverse(*it));
    s.unitary_ = unitary_.adjoint();
    return s;
  }

  /// SWAP-conjugate word: every letter primed or unprimed.
  GateSequence mirrored() const {
    static const Mat4 swap = swap_gate();
    GateSequence s;
    for (auto l : letters_) s.letters_.push_back(mirror(l));
    s.unitary_ = swap * unitary_ * swap;
    return s;
  }

  friend GateSequence operator*(const GateSequence& a, const GateSequence& b) {
    GateSequence s;
    s.letters_ = a.letters_;
    for (auto l : b.letters_) {
      if (!s.letters_.empty() && s.letters_.back() == ugate::inverse(l))
        s.letters_.pop_back();
      else
        s.letters_.push_back(l);
    }
    s.unitary_ = a.unitary_ * b.unitary_;
    return s;
  }

  /// Space-separated letters; the empty word prints as "".
  std::string to_string() const {
    std::string out;
    for (auto l : letters_) {
      if (!out.empty()) out += ' ';
      out += ugate::to_string(l);
    }
    return out;
  }

  static std::vector<Letter> parse(const std::string& text) {
    std::vector<Letter> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto end = text.find(' ', pos);
      const auto tok = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
      if (!tok.empty()) out.push_back(parse_letter(tok));
      if (end == std::string::npos) break;
      pos = end + 1;
    }
    return out;
  }

 private:
  static std::vector<Letter> reduce(std::vector<Letter> in) {
    std::vector<Letter> out;
    out.reserve(in.size());
    for (auto l : in) {
      if (!out.empty() && out.back() == ugate::inverse(l))
        out.pop_back();
      else
        out.push_back(l);
    }
    return out;
  }

  std::vector<Letter> letters_;
  Mat4 unitary_;
};

/// Lexicographic order on letters, used to break exact distance ties.
inline bool letters_less(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// --------------------------------------------------------------------------
// Net
// --------------------------------------------------------------------------

inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{8} << 30;
/// Distances below this are rounding noise; dedup never uses a smaller radius.
inline constexpr double kDedupFloor = 1e-9;

/// Reads UGATE_MEMORY_BUDGET (bytes, optional K/M/G suffix); falls back to
/// 8 GiB.
inline std::size_t memory_budget_from_env() {
  const char* v = std::getenv("UGATE_MEMORY_BUDGET");
  if (v == nullptr || *v == '\0') return kDefaultMemoryBudget;
  char* end = nullptr;
  const double x = std::strtod(v, &end);
  double mult = 1.0;
  if (end != nullptr) {
    switch (*end) {
      case 'k': case 'K': mult = 1024.0; break;
      case 'm': case 'M': mult = 1024.0 * 1024.0; break;
      case 'g': case 'G': mult = 1024.0 * 1024.0 * 1024.0; break;
      default: break;
    }
  }
  if (!(x > 0)) throw std::invalid_argument("UGATE_MEMORY_BUDGET must be positive");
  return static_cast<std::size_t>(x * mult);
}

struct NetOptions {
  int max_len = 10;
  double dedup_radius = 1e-6;
  std::size_t memory_budget = kDefaultMemoryBudget;
  /// Haar probes used to estimate the covering radius.
  int radius_probes = 100;
  std::uint64_t probe_seed = 0x5eed;
};

class Net {
 public:
  static constexpr std::size_t kPivots = 8;
  static constexpr std::size_t kGridPivots = 4;
  static constexpr std::uint32_t kNoParent = std::numeric_limits<std::uint32_t>::max();
  /// Measured peak footprint per entry (matrix, pivot table, word links,
  /// dedup grid, vector growth slack).
  static constexpr std::size_t kBytesPerEntry = 400;

  struct Match {
    std::size_t index = 0;
    double distance = 0.0;
  };

  /// Breadth-first enumeration of reduced words of length <= max_len. A word
  /// is kept only if no kept word lies within the dedup radius; extensions
  /// of dropped words are not explored. Stops early when a level adds
  /// nothing (finite group) or when the memory budget would be exceeded.
  static Net build(const GatePair& pair, const NetOptions& opts) {
    if (opts.max_len < 1) throw std::invalid_argument("max_len must be >= 1");
    if (!(opts.dedup_radius >= 0.0)) throw std::invalid_argument("dedup_radius must be >= 0");
    Net net(pair);
    net.max_len_ = opts.max_len;
    net.dedup_radius_ = opts.dedup_radius;
    const double radius = std::max(opts.dedup_radius, kDedupFloor);
    net.grid_cell_ = std::max(2.0 * radius, 1e-4);

    net.push(Mat4::Identity(), kNoParent, Letter::G, 0);
    std::vector<std::uint32_t> frontier{0};
    for (int len = 1; len <= opts.max_len && !frontier.empty() && !net.budget_exceeded_; ++len) {
      std::vector<std::uint32_t> next;
      for (const auto e : frontier) {
        for (const auto l : kLetters) {
          if (net.length_[e] > 0 && l == inverse(net.last_[e])) continue;
          if ((net.size() + 1) * kBytesPerEntry > opts.memory_budget) {
            net.budget_exceeded_ = true;
            break;
          }
          const Mat4 m = net.unitaries_[e] * pair.matrix(l);
          const auto pd = net.pivot_distances(m);
          if (net.has_neighbour_within(m, pd, radius)) continue;
          next.push_back(static_cast<std::uint32_t>(net.size()));
          net.push(m, e, l, static_cast<std::uint8_t>(len), &pd);
        }
        if (net.budget_exceeded_) break;
      }
      frontier = std::move(next);
    }
    net.grid_.clear();
    net.grid_ = {};
    net.estimate_radius(opts.radius_probes, opts.probe_seed);
    return net;
  }

  std::size_t size() const { return unitaries_.size(); }
  const GatePair& pair() const { return pair_; }
  int max_len() const { return max_len_; }
  double dedup_radius() const { return dedup_radius_; }
  bool budget_exceeded() const { return budget_exceeded_; }
  /// Worst nearest-neighbour distance over the Haar probes.
  double covering_radius() const { return covering_radius_; }
  double mean_probe_distance() const { return mean_probe_distance_; }
  int radius_probes() const { return radius_probes_; }

  const Mat4& unitary(std::size_t i) const { return unitaries_[i]; }
  std::size_t word_length(std::size_t i) const { return length_[i]; }

  std::vector<Letter> letters(std::size_t i) const {
    std::vector<Letter> out(length_[i]);
    for (auto k = static_cast<std::uint32_t>(i); length_[k] > 0; k = parent_[k]) out[length_[k] - 1U] = last_[k];
    return out;
  }

  GateSequence sequence(std::size_t i) const {
    return GateSequence::evaluate(pair_, letters(i));
  }

  /// Exact nearest entry in the projective metric. Ties (within 1e-12) go
  /// to the shorter word, then the lexicographically smaller one.
  Match nearest(const Mat4& target) const {
    const auto pd = pivot_distances(target);
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> close;
    constexpr double kSlack = 1e-6;  // float pivot table and fast-distance rounding
    for (std::size_t i = 0; i < size(); ++i) {
      const float* row = &pivot_table_[i * kPivots];
      bool pruned = false;
      for (std::size_t p = 0; p < kPivots; ++p)
        if (std::abs(pd[p] - static_cast<double>(row[p])) > best + kSlack) {
          pruned = true;
          break;
        }
      if (pruned) continue;
      const double d = fast_distance(unitaries_[i], target);
      if (d <= best + kSlack) {
        if (d < best) best = d;
        close.push_back(i);
      }
    }
    Match m{0, std::numeric_limits<double>::infinity()};
    for (const auto i : close) {
      const double d = projective_distance(unitaries_[i], target);
      if (d < m.distance - 1e-12) {
        m = {i, d};
      } else if (d <= m.distance + 1e-12) {
        if (length_[i] < length_[m.index] ||
            (length_[i] == length_[m.index] && letters_less(letters(i), letters(m.index))))
          m = {i, std::min(d, m.distance)};
      }
    }
    return m;
  }

  /// FNV-1a over the gate, parameters and word table.
  std::uint64_t fingerprint() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](const void* data, std::size_t n) {
      const auto* p = static_cast<const unsigned char*>(data);
      for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
      }
    };
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const double re = pair_.g()(r, c).real();
        const double im = pair_.g()(r, c).imag();
        feed(&re, sizeof re);
        feed(&im, sizeof im);
      }
    feed(&max_len_, sizeof max_len_);
    feed(&dedup_radius_, sizeof dedup_radius_);
    const std::uint64_t n = size();
    feed(&n, sizeof n);
    feed(parent_.data(), parent_.size() * sizeof(std::uint32_t));
    feed(last_.data(), last_.size());
    return h;
  }

  /// Raw word table: parent index (kNoParent for the root) and last letter.
  const std::vector<std::uint32_t>& parents() const { return parent_; }
  const std::vector<Letter>& last_letters() const { return last_; }

  std::uint64_t probe_seed() const { return probe_seed_; }

  struct Stored {
    int max_len = 0;
    double dedup_radius = 0.0;
    bool budget_exceeded = false;
    double covering_radius = 0.0;
    double mean_probe_distance = 0.0;
    int radius_probes = 0;
    std::uint64_t probe_seed = 0;
    std::vector<std::uint32_t> parents;
    std::vector<Letter> letters;
  };

  /// Rebuilds a net from a stored word table. Products are recomputed, so
  /// every entry is again the exact product of its word; the radius
  /// estimate is taken from the record.
  static Net from_table(const GatePair& pair, const Stored& st) {
    if (st.parents.size() != st.letters.size() || st.parents.empty() || st.parents[0] != kNoParent)
      throw std::invalid_argument("net table must start at the identity");
    Net net(pair);
    net.max_len_ = st.max_len;
    net.dedup_radius_ = st.dedup_radius;
    net.budget_exceeded_ = st.budget_exceeded;
    net.covering_radius_ = st.covering_radius;
    net.mean_probe_distance_ = st.mean_probe_distance;
    net.radius_probes_ = st.radius_probes;
    net.probe_seed_ = st.probe_seed;
    net.grid_cell_ = 0.0;
    net.push(Mat4::Identity(), kNoParent, Letter::G, 0);
    for (std::size_t i = 1; i < st.parents.size(); ++i) {
      const auto p = st.parents[i];
      if (p >= i) throw std::invalid_argument("net table parent must precede its child");
      if (static_cast<std::uint8_t>(st.letters[i]) > 3) throw std::invalid_argument("bad letter in net table");
      if (net.length_[p] > 0 && st.letters[i] == inverse(net.last_[p]))
        throw std::invalid_argument("net table word is not reduced");
      const auto len = static_cast<std::size_t>(net.length_[p]) + 1U;
      if (len > 255) throw std::invalid_argument("net word too long");
      net.push(net.unitaries_[p] * pair.matrix(st.letters[i]), p, st.letters[i], static_cast<std::uint8_t>(len));
    }
    return net;
  }

  Stored stored() const {
    return {max_len_, dedup_radius_, budget_exceeded_, covering_radius_, mean_probe_distance_,
            radius_probes_, probe_seed_, parent_, last_};
  }

 private:
  explicit Net(const GatePair& pair) : pair_(pair) {
    Rng rng(0x9e7a11ce);
    for (auto& p : pivots_) p = haar_unitary(rng).matrix();
  }

  static double fast_distance(const Mat4& a, const Mat4& b) {
    const double t = std::abs((a.adjoint() * b).trace());
    return std::sqrt(std::max(0.0, 2.0 - 0.5 * t));
  }

  std::array<double, kPivots> pivot_distances(const Mat4& m) const {
    std::array<double, kPivots> out{};
    for (std::size_t p = 0; p < kPivots; ++p) out[p] = projective_distance(pivots_[p], m);
    return out;
  }

  std::uint64_t grid_key(const std::array<std::int64_t, kGridPivots>& bins) const {
    std::uint64_t h = 0;
    for (auto b : bins) h = mix64(h ^ static_cast<std::uint64_t>(b));
    return h;
  }

  bool has_neighbour_within(const Mat4& m, const std::array<double, kPivots>& pd, double radius) const {
    std::array<std::int64_t, kGridPivots> lo{}, hi{};
    for (std::size_t p = 0; p < kGridPivots; ++p) {
      lo[p] = static_cast<std::int64_t>(std::floor((pd[p] - radius) / grid_cell_));
      hi[p] = static_cast<std::int64_t>(std::floor((pd[p] + radius) / grid_cell_));
    }
    std::array<std::int64_t, kGridPivots> cur = lo;
    while (true) {
      const auto range = grid_.equal_range(grid_key(cur));
      for (auto it = range.first; it != range.second; ++it)
        if (projective_distance(unitaries_[it->second], m) <= radius) return true;
      std::size_t p = 0;
      while (p < kGridPivots && cur[p] == hi[p]) cur[p++] = 0;
      if (p == kGridPivots) return false;
      ++cur[p];
      for (std::size_t q = 0; q < p; ++q) cur[q] = lo[q];
    }
  }

  void push(const Mat4& m, std::uint32_t parent, Letter l, std::uint8_t len,
            const std::array<double, kPivots>* pd_in = nullptr) {
    const auto pd = pd_in != nullptr ? *pd_in : pivot_distances(m);
    const auto idx = static_cast<std::uint32_t>(unitaries_.size());
    unitaries_.push_back(m);
    parent_.push_back(parent);
    last_.push_back(l);
    length_.push_back(len);
    for (auto d : pd) pivot_table_.push_back(static_cast<float>(d));
    if (grid_cell_ > 0) {
      std::array<std::int64_t, kGridPivots> bins{};
      for (std::size_t p = 0; p < kGridPivots; ++p)
        bins[p] = static_cast<std::int64_t>(std::floor(pd[p] / grid_cell_));
      grid_.emplace(grid_key(bins), idx);
    }
  }

  void estimate_radius(int probes, std::uint64_t seed) {
    radius_probes_ = probes;
    probe_seed_ = seed;
    covering_radius_ = 0.0;
    mean_probe_distance_ = 0.0;
    if (probes <= 0) return;
    Rng rng(seed);
    for (int i = 0; i < probes; ++i) {
      const double d = nearest(haar_unitary(rng).matrix()).distance;
      covering_radius_ = std::max(covering_radius_, d);
      mean_probe_distance_ += d / probes;
    }
  }

  GatePair pair_;
  int max_len_ = 0;
  double dedup_radius_ = 0.0;
  bool budget_exceeded_ = false;
  double covering_radius_ = 0.0;
  double mean_probe_distance_ = 0.0;
  int radius_probes_ = 0;
  std::uint64_t probe_seed_ = 0;

  std::vector<Mat4> unitaries_;
  std::vector<std::uint32_t> parent_;
  std::vector<Letter> last_;
  std::vector<std::uint8_t> length_;
  std::vector<float> pivot_table_;  // size() x kPivots
  std::array<Mat4, kPivots> pivots_;

  double grid_cell_ = 1e-4;
  std::unordered_multimap<std::uint64_t, std::uint32_t> grid_;  // build time only
};

/// Nearest net entry as a sequence.
inline GateSequence base_approx(const Mat4& target, const Net& net) {
  if (net.size() == 0) throw std::invalid_argument("net is empty");
  return net.sequence(net.nearest(target).index);
}

inline GateSequence base_approx(const UnitaryMatrix& target, const Net& net) {
  return base_approx(target.matrix(), net);
}

// --------------------------------------------------------------------------
// Balanced group commutator
// --------------------------------------------------------------------------

struct GroupCommutator {
  UnitaryMatrix v;
  UnitaryMatrix w;
  /// max(||log v||, ||log w||) / sqrt(||log delta||), Frobenius norms.
  double c_gc = 0.0;
  /// Frobenius norm of V W V^-1 W^-1 - delta.
  double residual = 0.0;
  int newton_iterations = 0;
};

namespace detail {

// Orthonormal (Frobenius) basis of su(4).
inline const std::array<Mat4, 15>& su4_basis() {
  static const std::array<Mat4, 15> basis = [] {
    std::array<Mat4, 15> b;
    std::size_t k = 0;
    const Complex i(0, 1);
    for (int r = 0; r < 4; ++r)
      for (int c = r + 1; c < 4; ++c) {
        Mat4 x = Mat4::Zero();
        x(r, c) = 1.0 / std::sqrt(2.0);
        x(c, r) = -1.0 / std::sqrt(2.0);
        b[k++] = x;
        Mat4 y = Mat4::Zero();
        y(r, c) = i / std::sqrt(2.0);
        y(c, r) = i / std::sqrt(2.0);
        b[k++] = y;
      }
    for (int d = 1; d < 4; ++d) {
      // i * diag(1, ..., 1, -d, 0, ...) / sqrt(d (d + 1))
      Mat4 z = Mat4::Zero();
      const double s = 1.0 / std::sqrt(static_cast<double>(d * (d + 1)));
      for (int j = 0; j < d; ++j) z(j, j) = i * s;
      z(d, d) = -i * s * static_cast<double>(d);
      b[k++] = z;
    }
    return b;
  }();
  return basis;
}

inline Vec15 su4_coords(const Mat4& x) {
  Vec15 v;
  const auto& b = su4_basis();
  for (std::size_t k = 0; k < 15; ++k) v(static_cast<Eigen::Index>(k)) = (b[k].adjoint() * x).trace().real();
  return v;
}

inline Mat4 su4_from_coords(const Eigen::Ref<const Eigen::VectorXd>& v) {
  Mat4 x = Mat4::Zero();
  const auto& b = su4_basis();
  for (std::size_t k = 0; k < 15; ++k) x += v(static_cast<Eigen::Index>(k)) * b[k];
  return x;
}

// Exponential of a skew-Hermitian matrix (no unitarity re-check).
inline Mat4 expm_skew(const Mat4& x) {
  const Mat4 h = Complex(0, 1) * x;
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (h + h.adjoint()));
  Eigen::Vector4cd ph;
  for (int j = 0; j < 4; ++j) ph(j) = std::polar(1.0, -es.eigenvalues()(j));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

// First-order balanced solution of [A, B] = D. In the eigenbasis of D, the
// DFT maps the diagonal to a zero-diagonal matrix C; with B = i diag(mu),
// A_jk = C_jk / (i (mu_k - mu_j)) solves [A, B] = C exactly.
inline std::pair<Mat4, Mat4> balanced_commutator_guess(const Mat4& d) {
  const Mat4 h = Complex(0, 1) * d;
  Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (h + h.adjoint()));
  Mat4 fourier;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) fourier(j, k) = std::polar(0.5, std::numbers::pi / 2.0 * j * k);
  Mat4 diag = Mat4::Zero();
  for (int j = 0; j < 4; ++j) diag(j, j) = Complex(0, -es.eigenvalues()(j));
  const Mat4 c = fourier * diag * fourier.adjoint();
  const std::array<double, 4> mu{-1.5, -0.5, 0.5, 1.5};
  Mat4 a = Mat4::Zero();
  Mat4 b = Mat4::Zero();
  for (int j = 0; j < 4; ++j) {
    b(j, j) = Complex(0, mu[static_cast<std::size_t>(j)]);
    for (int k = 0; k < 4; ++k)
      if (j != k)
        a(j, k) = c(j, k) / Complex(0, mu[static_cast<std::size_t>(k)] - mu[static_cast<std::size_t>(j)]);
  }
  const double scale = std::sqrt(a.norm() / b.norm());
  a /= scale;
  b *= scale;
  const Mat4 rot = es.eigenvectors() * fourier.adjoint();
  return {rot * a * rot.adjoint(), rot * b * rot.adjoint()};
}

}  // namespace detail

/// Writes a near-identity delta as V W V^-1 W^-1 with ||log V|| = ||log W||
/// of order sqrt(||log delta||). A first-order balanced solution is refined
/// by minimum-norm Newton steps until the product matches delta to 1e-13.
/// Throws ConvergenceFailure when the refinement stalls.
inline GroupCommutator gc_decompose(const UnitaryMatrix& delta_in) {
  // Within SU(4) the class of delta has four representatives c * delta with
  // c^4 = 1; take the one closest to the identity.
  Complex best_phase(1, 0);
  {
    const Complex tr = delta_in.matrix().trace();
    for (const Complex c : {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)})
      if ((std::conj(c) * tr).real() > (std::conj(best_phase) * tr).real()) best_phase = c;
  }
  const UnitaryMatrix delta = UnitaryMatrix::trusted(std::conj(best_phase) * delta_in.matrix());
  FloatAlgebraElement log_delta;
  try {
    log_delta = su_log(delta);
  } catch (const BranchAmbiguity& e) {
    throw ConvergenceFailure(std::string("group commutator: ") + e.what());
  }
  const double dnorm = log_delta.norm();
  if (dnorm < 1e-15) return {UnitaryMatrix::identity(), UnitaryMatrix::identity(), 0.0, 0.0, 0};

  const Mat4 target = delta.matrix();
  auto [a0, b0] = detail::balanced_commutator_guess(log_delta.matrix());
  Eigen::VectorXd x(30);
  x.head<15>() = detail::su4_coords(a0);
  x.tail<15>() = detail::su4_coords(b0);

  auto commutator = [](const Eigen::VectorXd& p) {
    const Mat4 v = detail::expm_skew(detail::su4_from_coords(p.head<15>()));
    const Mat4 w = detail::expm_skew(detail::su4_from_coords(p.tail<15>()));
    return Mat4(v * w * v.adjoint() * w.adjoint());
  };
  // Residual in su(4): log(delta^-1 * VWV^-1W^-1), via the first-order
  // skew part, which is exact enough near the solution and never branches.
  auto residual = [&](const Eigen::VectorXd& p) {
    const Mat4 r = target.adjoint() * commutator(p);
    Mat4 s = 0.5 * (r - r.adjoint());
    s -= (s.trace() / 4.0) * Mat4::Identity();
    return Vec15(detail::su4_coords(s));
  };

  Vec15 f = residual(x);
  int it = 0;
  constexpr int kMaxIterations = 40;
  while (f.norm() > 1e-14 && it < kMaxIterations) {
    ++it;
    Eigen::Matrix<double, 15, 30> jac;
    const double h = 1e-7;
    for (int k = 0; k < 30; ++k) {
      Eigen::VectorXd xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      jac.col(k) = (residual(xp) - residual(xm)) / (2.0 * h);
    }
    const Eigen::Matrix<double, 15, 15> jjt = jac * jac.transpose();
    const Vec15 y = jjt.ldlt().solve(f);
    const Eigen::VectorXd step = jac.transpose() * y;
    double lambda = 1.0;
    bool improved = false;
    for (int halvings = 0; halvings < 12; ++halvings, lambda /= 2.0) {
      const Eigen::VectorXd cand = x - lambda * step;
      const Vec15 fc = residual(cand);
      if (fc.norm() < f.norm()) {
        x = cand;
        f = fc;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }

  const Mat4 v = detail::expm_skew(detail::su4_from_coords(x.head<15>()));
  const Mat4 w = detail::expm_skew(detail::su4_from_coords(x.tail<15>()));
  const double res = (v * w * v.adjoint() * w.adjoint() - target).norm();
  if (!(res <= 1e-10))
    throw ConvergenceFailure("group commutator refinement stalled at residual " + std::to_string(res) +
                             " for ||log delta|| = " + std::to_string(dnorm));
  const double na = x.head<15>().norm();
  const double nb = x.tail<15>().norm();
  return {UnitaryMatrix(v), UnitaryMatrix(w), std::max(na, nb) / std::sqrt(dnorm), res, it};
}

// --------------------------------------------------------------------------
// Solovay-Kitaev
// --------------------------------------------------------------------------

struct CompilationReport {
  UnitaryMatrix target;
  GateSequence sequence;
  double distance = 0.0;
  /// Distance of the level-k approximation, k = 0..depth.
  std::vector<double> per_level_errors;
  std::uint64_t net_fingerprint = 0;
};

namespace detail {

inline GateSequence sk_level(const Mat4& target, const Net& net, int level,
                             std::vector<double>* chain_errors) {
  GateSequence approx = base_approx(target, net);
  if (chain_errors != nullptr) chain_errors->push_back(projective_distance(target, approx.unitary()));
  for (int k = 1; k <= level; ++k) {
    const UnitaryMatrix delta = UnitaryMatrix::trusted(target * approx.unitary().adjoint());
    GroupCommutator gc;
    try {
      gc = gc_decompose(delta);
    } catch (const ConvergenceFailure& e) {
      throw ConvergenceFailure(e.what(), k);
    }
    const GateSequence v = sk_level(gc.v.matrix(), net, k - 1, nullptr);
    const GateSequence w = sk_level(gc.w.matrix(), net, k - 1, nullptr);
    approx = v * w * v.inverse() * w.inverse() * approx;
    if (chain_errors != nullptr) chain_errors->push_back(projective_distance(target, approx.unitary()));
  }
  return approx;
}

// Sign of |U01|^2 - |U02|^2 (then of later entry pairs), which flips under
// SWAP conjugation.
inline int mirror_orientation(const Mat4& u) {
  constexpr std::array<std::array<int, 4>, 4> pairs{{{0, 1, 0, 2}, {1, 0, 2, 0}, {1, 3, 2, 3}, {3, 1, 3, 2}}};
  for (const auto& p : pairs) {
    const double diff = std::norm(u(p[0], p[1])) - std::norm(u(p[2], p[3]));
    if (std::abs(diff) > 1e-12) return diff > 0 ? 1 : -1;
  }
  return 1;
}

}  // namespace detail

/// Standard Solovay-Kitaev recursion of the given depth. Targets are
/// compiled in a mirror-canonical orientation so that SWAP-conjugate
/// targets receive mirrored words. Throws ConvergenceFailure (with the
/// level) if a group-commutator step fails.
inline CompilationReport solovay_kitaev(const UnitaryMatrix& target, const Net& net, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  CompilationReport rep;
  rep.target = target;
  rep.net_fingerprint = net.fingerprint();
  static const Mat4 swap = swap_gate();
  const bool flip = detail::mirror_orientation(target.matrix()) < 0;
  const Mat4 canonical = flip ? Mat4(swap * target.matrix() * swap) : target.matrix();
  GateSequence seq = detail::sk_level(canonical, net, depth, &rep.per_level_errors);
  rep.sequence = flip ? seq.mirrored() : seq;
  rep.distance = projective_distance(target.matrix(), rep.sequence.unitary());
  return rep;
}

enum class Qubit : std::uint8_t { First, Second };

/// Compiles A (x) I (first) or I (x) A (second).
inline CompilationReport compile_local_gate(const Mat2& a, Qubit which, const Net& net, int depth) {
  if (!((a.adjoint() * a - Mat2::Identity()).norm() <= kUnitaryTolerance))
    throw std::invalid_argument("single-qubit gate is not unitary");
  const Mat4 full = which == Qubit::First ? kron(a, Mat2::Identity()) : kron(Mat2::Identity(), a);
  return solovay_kitaev(UnitaryMatrix(full), net, depth);
}

}  // namespace ugate
