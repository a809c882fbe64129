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

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ugate/exact_algebra.hpp"
#include "ugate/random.hpp"

namespace ugate {

// --------------------------------------------------------------------------
// Bracket words
// --------------------------------------------------------------------------

/// Expression tree over the two generators T and T' = Ad_SWAP(T), closed
/// under bracketing. Immutable; subtrees are shared.
class BracketWord {
 public:
  enum class Kind : std::uint8_t { T, TPrime, Bracket };

  static BracketWord t() { return BracketWord(std::make_shared<Node>(Node{Kind::T, {}, {}, 0})); }
  static BracketWord t_prime() {
    return BracketWord(std::make_shared<Node>(Node{Kind::TPrime, {}, {}, 0}));
  }
  static BracketWord bracket(const BracketWord& l, const BracketWord& r) {
    return BracketWord(std::make_shared<Node>(
        Node{Kind::Bracket, l.node_, r.node_, 1 + std::max(l.depth(), r.depth())}));
  }

  Kind kind() const { return node_->kind; }
  int depth() const { return node_->depth; }
  BracketWord left() const { return BracketWord(node_->left); }
  BracketWord right() const { return BracketWord(node_->right); }

  /// Evaluates the word against a concrete generator pair.
  template <class F>
  AlgebraElementT<F> evaluate(const AlgebraElementT<F>& t, const AlgebraElementT<F>& t_prime) const {
    switch (kind()) {
      case Kind::T:
        return t;
      case Kind::TPrime:
        return t_prime;
      case Kind::Bracket:
        break;
    }
    return ugate::bracket(left().evaluate(t, t_prime), right().evaluate(t, t_prime));
  }

  /// "T", "T'", or "[a,b]".
  std::string to_string() const {
    switch (kind()) {
      case Kind::T:
        return "T";
      case Kind::TPrime:
        return "T'";
      case Kind::Bracket:
        break;
    }
    return "[" + left().to_string() + "," + right().to_string() + "]";
  }

  friend bool operator==(const BracketWord& a, const BracketWord& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    if (a.kind() != Kind::Bracket) return true;
    return a.left() == b.left() && a.right() == b.right();
  }

 private:
  struct Node {
    Kind kind;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    int depth;
  };
  explicit BracketWord(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

// --------------------------------------------------------------------------
// Sampling
// --------------------------------------------------------------------------

struct SamplingBounds {
  /// Bound on |a| and |b| for entries a + ib.
  int max_abs = 3;
};

/// Samples a traceless skew-Hermitian matrix with small Gaussian-integer
/// entries, deterministically in `seed`.
///
/// Recipe (mirrored by the test oracle):
///   1. draw b0, b1, b2 uniformly in [-m, m]; set b3 = -(b0 + b1 + b2);
///      redraw all three while |b3| > m. Diagonal entries are i*b.
///   2. for (r, c) in row-major upper-triangle order draw a then b in
///      [-m, m]; M[r][c] = a + ib and M[c][r] = -a + ib.
/// A bound of 0 yields the zero matrix; negative bounds are rejected.
inline AlgebraElement sample_generator(std::uint64_t seed, SamplingBounds bounds) {
  if (bounds.max_abs < 0) throw std::invalid_argument("max_abs must be non-negative");
  const std::int64_t m = bounds.max_abs;
  Rng rng(seed);
  std::array<std::int64_t, 4> diag{};
  do {
    for (int i = 0; i < 3; ++i) diag[static_cast<std::size_t>(i)] = uniform_int(rng, -m, m);
    diag[3] = -(diag[0] + diag[1] + diag[2]);
  } while (diag[3] < -m || diag[3] > m);

  Matrix4<mpq_class> mat;
  for (int i = 0; i < 4; ++i) mat(i, i) = {0, mpq_class(diag[static_cast<std::size_t>(i)])};
  for (int r = 0; r < 4; ++r)
    for (int c = r + 1; c < 4; ++c) {
      const auto a = uniform_int(rng, -m, m);
      const auto b = uniform_int(rng, -m, m);
      mat(r, c) = {mpq_class(a), mpq_class(b)};
      mat(c, r) = {mpq_class(-a), mpq_class(b)};
    }
  return AlgebraElement(std::move(mat));
}

// --------------------------------------------------------------------------
// Bracket closure
// --------------------------------------------------------------------------

enum class Strategy : std::uint8_t {
  /// Bracket random ordered pairs from the pool (the paper-style search).
  Random,
  /// For j = 1, 2, ... bracket pool[i] with pool[j] for every i < j.
  Bfs,
};

inline std::string to_string(Strategy s) { return s == Strategy::Random ? "random" : "bfs"; }

inline Strategy parse_strategy(const std::string& s) {
  if (s == "random") return Strategy::Random;
  if (s == "bfs") return Strategy::Bfs;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

inline constexpr int kDefaultMaxOps = 500;

struct ClosureOptions {
  Strategy strategy = Strategy::Random;
  std::uint64_t rng_seed = 0;
  int max_ops = kDefaultMaxOps;
};

/// Replayable witness that {T, Ad_SWAP(T)} Lie-generates su(4).
struct GenerationCertificate {
  AlgebraElement seed_t;
  std::vector<BracketWord> words;
  std::vector<CoordinateVector> rows;
  mpq_class det;
  std::uint64_t rng_seed = 0;
  Strategy strategy = Strategy::Random;
  int max_ops = kDefaultMaxOps;
};

struct ClosureResult {
  std::optional<GenerationCertificate> certificate;
  /// Dimension of the span reached (15 on success).
  int rank_reached = 0;
  /// Bracket evaluations spent.
  int ops_used = 0;
  /// True when the span of the pool was shown to be closed under brackets,
  /// i.e. the failure is not a budget artefact.
  bool closed = false;

  bool ok() const { return certificate.has_value(); }
};

/// Grows a pool from {T, T'} by bracketing, keeping only results that raise
/// the exact rank, until the rank reaches 15 or `max_ops` brackets have been
/// evaluated.
inline ClosureResult bracket_closure(const AlgebraElement& t, const ClosureOptions& opts) {
  if (opts.max_ops < 1) throw std::invalid_argument("max_ops must be >= 1");
  struct PoolEntry {
    BracketWord word;
    AlgebraElement value;
    CoordinateVector row;
  };
  std::vector<PoolEntry> pool;
  IncrementalBasis basis;
  auto offer = [&](BracketWord w, AlgebraElement v) {
    if (v.is_zero()) return;
    auto row = vectorize(v);
    if (basis.add(row)) pool.push_back({std::move(w), std::move(v), std::move(row)});
  };
  offer(BracketWord::t(), t);
  offer(BracketWord::t_prime(), swap_adjoint(t));

  ClosureResult result;
  const std::uint64_t rng_seed = opts.strategy == Strategy::Bfs ? 0 : opts.rng_seed;
  Rng rng(rng_seed);
  int ops = 0;
  std::size_t bfs_i = 0, bfs_j = 1;
  while (basis.rank() < 15 && ops < opts.max_ops) {
    std::size_t i = 0, j = 0;
    if (opts.strategy == Strategy::Random) {
      // Brackets of a single element with itself vanish.
      if (pool.size() < 2) {
        result.closed = true;
        break;
      }
      const auto n = static_cast<std::int64_t>(pool.size());
      i = static_cast<std::size_t>(uniform_int(rng, 0, n - 1));
      j = static_cast<std::size_t>(uniform_int(rng, 0, n - 2));
      if (j >= i) ++j;
    } else {
      if (bfs_j >= pool.size()) {
        result.closed = true;
        break;
      }
      i = bfs_i;
      j = bfs_j;
      if (++bfs_i == bfs_j) {
        bfs_i = 0;
        ++bfs_j;
      }
    }
    ++ops;
    offer(BracketWord::bracket(pool[i].word, pool[j].word), bracket(pool[i].value, pool[j].value));
  }
  if (opts.strategy == Strategy::Bfs && basis.rank() < 15 && bfs_j >= pool.size()) result.closed = true;

  result.rank_reached = basis.rank();
  result.ops_used = ops;
  if (basis.rank() == 15) {
    GenerationCertificate cert;
    cert.seed_t = t;
    for (auto& e : pool) {
      cert.words.push_back(e.word);
      cert.rows.push_back(e.row);
    }
    cert.det = det15(cert.rows);
    cert.rng_seed = rng_seed;
    cert.strategy = opts.strategy;
    cert.max_ops = opts.max_ops;
    result.certificate = std::move(cert);
  }
  return result;
}

// --------------------------------------------------------------------------
// Verification
// --------------------------------------------------------------------------

struct VerificationReport {
  bool ok = false;
  /// Index of the first word whose replayed row disagrees, if any.
  std::optional<int> failing_word;
  std::string reason;
};

/// Replays a certificate from its seed alone: every word is re-evaluated
/// against (seed, Ad_SWAP(seed)), re-vectorized and compared with the stored
/// row; the determinant is recomputed; the closure search is re-run with the
/// recorded strategy, seed and budget and must yield the same words.
inline VerificationReport verify_certificate(const GenerationCertificate& cert) {
  VerificationReport rep;
  if (cert.words.size() != 15 || cert.rows.size() != 15) {
    rep.reason = "certificate must hold 15 words and 15 rows";
    return rep;
  }
  const AlgebraElement tp = swap_adjoint(cert.seed_t);
  for (std::size_t i = 0; i < 15; ++i) {
    if (vectorize(cert.words[i].evaluate(cert.seed_t, tp)) != cert.rows[i]) {
      rep.failing_word = static_cast<int>(i);
      rep.reason = "row " + std::to_string(i) + " does not match its word " + cert.words[i].to_string();
      return rep;
    }
  }
  const mpq_class det = det15(cert.rows);
  if (det == 0) {
    rep.reason = "determinant vanishes";
    return rep;
  }
  if (det != cert.det) {
    rep.reason = "stored determinant " + to_fraction_string(cert.det) + " differs from recomputed " +
                 to_fraction_string(det);
    return rep;
  }
  if (cert.max_ops < 1) {
    rep.reason = "max_ops must be >= 1";
    return rep;
  }
  const auto replay = bracket_closure(cert.seed_t, {cert.strategy, cert.rng_seed, cert.max_ops});
  if (!replay.ok() || replay.certificate->words != cert.words ||
      replay.certificate->rng_seed != cert.rng_seed) {
    rep.reason = "search replay with the recorded strategy and seed does not reproduce the words";
    return rep;
  }
  rep.ok = true;
  return rep;
}

// --------------------------------------------------------------------------
// Density estimate
// --------------------------------------------------------------------------

struct DensityOptions {
  std::int64_t n_samples = 100;
  SamplingBounds bounds{};
  int max_ops = kDefaultMaxOps;
  /// Sample i uses generator seed first_seed + i.
  std::uint64_t first_seed = 0;
  Strategy strategy = Strategy::Random;
  unsigned threads = 1;
};

struct DensityReport {
  std::int64_t successes = 0;
  std::int64_t failures = 0;
  std::vector<std::uint64_t> failure_seeds;
  std::vector<int> failure_ranks;

  double success_fraction() const {
    const auto n = successes + failures;
    return n == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(n);
  }
};

/// Runs bracket_closure on independent samples. Each sample is deterministic
/// in its seed; the closure search for sample seed s uses rng seed s.
inline DensityReport density_estimate(const DensityOptions& opts) {
  if (opts.n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
  const auto n = static_cast<std::size_t>(opts.n_samples);
  std::vector<int> ranks(n, 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const std::uint64_t seed = opts.first_seed + i;
      const auto t = sample_generator(seed, opts.bounds);
      ranks[i] = bracket_closure(t, {opts.strategy, seed, opts.max_ops}).rank_reached;
    }
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(opts.threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  DensityReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    if (ranks[i] == 15) {
      ++rep.successes;
    } else {
      ++rep.failures;
      rep.failure_seeds.push_back(opts.first_seed + i);
      rep.failure_ranks.push_back(ranks[i]);
    }
  }
  return rep;
}

}  // namespace ugate
