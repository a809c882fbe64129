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

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>

#include "test_support.hpp"
#include "ugate/numeric_json.hpp"
#include "ugate/sk_compiler.hpp"

using Catch::Matchers::WithinAbs;

namespace ugate::test {

namespace {

GatePair generic_pair() {
  Rng rng(7);
  return GatePair(haar_unitary(rng));
}

const Net& small_net() {
  static const Net net = [] {
    NetOptions o;
    o.max_len = 6;
    o.radius_probes = 10;
    return Net::build(generic_pair(), o);
  }();
  return net;
}

const Net& medium_net() {
  static const Net net = [] {
    NetOptions o;
    o.max_len = 10;
    return Net::build(generic_pair(), o);
  }();
  return net;
}

Mat4 cnot() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

void check_sequence_consistent(const GateSequence& s, const GatePair& pair) {
  const auto fresh = GateSequence::evaluate(pair, s.letters());
  CHECK(fresh.length() == s.length());
  CHECK((fresh.unitary() - s.unitary()).norm() <= 1e-9);
}

}  // namespace

TEST_CASE("letters", "[sk]") {
  for (auto l : kLetters) {
    CHECK(inverse(inverse(l)) == l);
    CHECK(mirror(mirror(l)) == l);
    CHECK(inverse(l) != l);
    CHECK(parse_letter(to_string(l)) == l);
  }
  CHECK(to_string(Letter::GPrimeInv) == "G'⁻¹");
  CHECK(mirror(Letter::GInv) == Letter::GPrimeInv);
  CHECK_THROWS_AS(parse_letter("H"), std::invalid_argument);
  const auto word = GateSequence::parse("G G'⁻¹  G⁻¹ G'");
  CHECK(word == std::vector<Letter>{Letter::G, Letter::GPrimeInv, Letter::GInv, Letter::GPrime});
}

TEST_CASE("GatePair and GateSequence", "[sk]") {
  const auto pair = generic_pair();
  const Mat4 s = swap_gate();
  CHECK((pair.g_prime().matrix() - s * pair.g().matrix() * s).norm() <= 1e-12);
  CHECK(std::abs(pair.g_prime().matrix().determinant() - Complex(1, 0)) <= 1e-12);
  CHECK((pair.matrix(Letter::GInv) * pair.g().matrix() - Mat4::Identity()).norm() <= 1e-12);

  SECTION("free reduction") {
    const auto w = GateSequence::evaluate(pair, {Letter::G, Letter::GPrime, Letter::GPrimeInv, Letter::GInv});
    CHECK(w.length() == 0);
    CHECK((w.unitary() - Mat4::Identity()).norm() <= 1e-12);
  }
  SECTION("products, inverses and mirrors") {
    const auto a = GateSequence::evaluate(pair, {Letter::G, Letter::GPrime, Letter::G});
    const auto b = GateSequence::evaluate(pair, {Letter::GInv, Letter::GPrimeInv});
    const auto ab = a * b;
    CHECK(ab.letters() == std::vector<Letter>{Letter::G});
    check_sequence_consistent(ab, pair);
    const auto id = a * a.inverse();
    CHECK(id.length() == 0);
    CHECK((id.unitary() - Mat4::Identity()).norm() <= 1e-12);
    const auto m = a.mirrored();
    CHECK(m.letters() == std::vector<Letter>{Letter::GPrime, Letter::G, Letter::GPrime});
    check_sequence_consistent(m, pair);
    CHECK(a.to_string() == "G G' G");
    CHECK(GateSequence().to_string().empty());
  }
}

TEST_CASE("net construction", "[sk][net]") {
  const auto pair = generic_pair();

  SECTION("max_len 1 gives the alphabet plus identity") {
    NetOptions o;
    o.max_len = 1;
    o.radius_probes = 0;
    const auto net = Net::build(pair, o);
    REQUIRE(net.size() == 5);
    CHECK(net.letters(0).empty());
    for (std::size_t i = 1; i < 5; ++i) CHECK(net.letters(i) == std::vector<Letter>{kLetters[i - 1]});
  }

  SECTION("generic gate: every reduced word is distinct") {
    const auto& net = small_net();
    CHECK(net.size() == 2 * 729 - 1);  // 1 + 4 (3^6 - 1) / 2
    CHECK_FALSE(net.budget_exceeded());
  }

  SECTION("entries are exact products of their words") {
    const auto& net = small_net();
    for (std::size_t i = 0; i < net.size(); i += 7) {
      const auto s = GateSequence::evaluate(pair, net.letters(i));
      CHECK(s.length() == net.word_length(i));
      CHECK((s.unitary() - net.unitary(i)).norm() <= 1e-10);
    }
  }

  SECTION("dedup: no two entries within the radius (exhaustive)") {
    NetOptions o;
    o.max_len = 5;
    o.dedup_radius = 0.35;
    o.radius_probes = 0;
    const auto net = Net::build(pair, o);
    CHECK(net.size() < 2 * 243 - 1);
    double closest = 10;
    for (std::size_t i = 0; i < net.size(); ++i)
      for (std::size_t j = i + 1; j < net.size(); ++j)
        closest = std::min(closest, projective_distance(net.unitary(i), net.unitary(j)));
    CHECK(closest > 0.35);
  }

  SECTION("finite group saturates") {
    // CNOT and its SWAP conjugate generate the permutations of the three
    // nonzero basis states: six projective elements.
    NetOptions o;
    o.max_len = 12;
    o.dedup_radius = 0;
    o.radius_probes = 5;
    const auto net = Net::build(GatePair(UnitaryMatrix(cnot())), o);
    CHECK(net.size() == 6);
    CHECK_FALSE(net.budget_exceeded());
  }

  SECTION("memory budget gives a flagged partial net") {
    NetOptions o;
    o.max_len = 8;
    o.memory_budget = 100 * Net::kBytesPerEntry;
    o.radius_probes = 5;
    const auto net = Net::build(pair, o);
    CHECK(net.budget_exceeded());
    CHECK(net.size() <= 100);
    CHECK(net.size() >= 90);
    CHECK(net.covering_radius() > 0);
  }

  SECTION("invalid options") {
    NetOptions o;
    o.max_len = 0;
    CHECK_THROWS_AS(Net::build(pair, o), std::invalid_argument);
  }
}

TEST_CASE("memory budget from the environment", "[sk][net]") {
  ::setenv("UGATE_MEMORY_BUDGET", "3M", 1);
  CHECK(memory_budget_from_env() == 3u * 1024u * 1024u);
  ::setenv("UGATE_MEMORY_BUDGET", "12345", 1);
  CHECK(memory_budget_from_env() == 12345u);
  ::setenv("UGATE_MEMORY_BUDGET", "-1", 1);
  CHECK_THROWS_AS(memory_budget_from_env(), std::invalid_argument);
  ::unsetenv("UGATE_MEMORY_BUDGET");
  CHECK(memory_budget_from_env() == kDefaultMemoryBudget);
}

TEST_CASE("generic net regression values", "[sk][net][regression]") {
  const auto& net = medium_net();
  CHECK(net.size() == 118097);  // 2 * 3^10 - 1
  CHECK_THAT(net.covering_radius(), WithinAbs(0.94426791010154731, 1e-9));
  CHECK_THAT(net.mean_probe_distance(), WithinAbs(0.72003797116868995, 1e-9));
  CHECK(net.fingerprint() == medium_net().fingerprint());
}

TEST_CASE("nearest neighbour is exact", "[sk][net]") {
  const auto& net = small_net();
  Rng rng(21);
  for (int k = 0; k < 40; ++k) {
    const auto target = haar_unitary(rng).matrix();
    double brute = 10;
    for (std::size_t i = 0; i < net.size(); ++i) brute = std::min(brute, projective_distance(net.unitary(i), target));
    const auto m = net.nearest(target);
    CHECK_THAT(m.distance, WithinAbs(brute, 1e-12));
    CHECK_THAT(projective_distance(net.unitary(m.index), target), WithinAbs(m.distance, 1e-15));
  }
}

TEST_CASE("base_approx", "[sk]") {
  const auto& net = small_net();
  const auto pair = net.pair();

  CHECK(base_approx(UnitaryMatrix::identity(), net).length() == 0);
  const auto g = base_approx(pair.g(), net);
  CHECK(g.letters() == std::vector<Letter>{Letter::G});
  CHECK_THAT(projective_distance(g.unitary(), pair.g().matrix()), WithinAbs(0, 1e-12));

  SECTION("projectively equal targets") {
    const Mat4 phased = Complex(0, 1) * pair.g_prime().matrix();
    CHECK(base_approx(phased, net).letters() == std::vector<Letter>{Letter::GPrime});
  }

  SECTION("mirror symmetry of the net") {
    const Mat4 s = swap_gate();
    for (std::size_t i = 0; i < net.size(); i += 37) {
      const auto seq = base_approx(Mat4(s * net.unitary(i) * s), net);
      CHECK(seq.letters() == net.sequence(i).mirrored().letters());
    }
    Rng rng(8);
    for (int k = 0; k < 10; ++k) {
      const auto u = haar_unitary(rng);
      const auto a = base_approx(u, net);
      const auto b = base_approx(u.swap_conjugate(), net);
      CHECK(b.letters() == a.mirrored().letters());
      CHECK_THAT(projective_distance(b.unitary(), u.swap_conjugate().matrix()),
                 WithinAbs(projective_distance(a.unitary(), u.matrix()), 1e-12));
    }
  }
}

TEST_CASE("gc_decompose", "[sk][gc]") {
  SECTION("identity") {
    const auto gc = gc_decompose(UnitaryMatrix::identity());
    CHECK(gc.v.matrix() == Mat4::Identity());
    CHECK(gc.w.matrix() == Mat4::Identity());
  }

  SECTION("postcondition on random near-identity inputs") {
    Rng rng(30);
    double worst_c = 0;
    for (int k = 0; k < 100; ++k) {
      Mat4 x = Mat4::Zero();
      for (const auto& b : detail::su4_basis()) x += standard_normal(rng) * b;
      x *= (0.01 + 0.6 * uniform01(rng)) / x.norm();
      const auto delta = su_exp(FloatAlgebraElement(x));
      const auto gc = gc_decompose(delta);
      const Mat4 c = gc.v.matrix() * gc.w.matrix() * gc.v.matrix().adjoint() * gc.w.matrix().adjoint();
      CHECK((c - delta.matrix()).norm() <= 1e-10);
      const double bound = std::sqrt(su_log(delta).norm());
      CHECK(su_log(gc.v).norm() <= gc.c_gc * bound * (1 + 1e-9));
      CHECK(su_log(gc.w).norm() <= gc.c_gc * bound * (1 + 1e-9));
      worst_c = std::max(worst_c, gc.c_gc);
    }
    CHECK(worst_c < 2.0);
  }

  SECTION("square-root scaling on a small bracket") {
    const auto a = 0.03 * FloatAlgebraElement::from_exact(pauli_product('X', 'I'));
    const auto b = 0.03 * FloatAlgebraElement::from_exact(pauli_product('Y', 'Z'));
    for (double s : {1.0, 0.25, 0.0625}) {
      const auto delta = su_exp(s * bracket(a, b));
      const auto gc = gc_decompose(delta);
      const double ratio = su_log(gc.v).norm() / std::sqrt(su_log(delta).norm());
      CHECK(ratio > 0.5);
      CHECK(ratio < 2.0);
    }
  }

  SECTION("failure onset") {
    // Frozen calibration: succeeds at projective distance 0.4 and 0.9,
    // fails for the maximally distant diag(-1, -1, 1, 1).
    Rng rng(31);
    for (double target : {0.4, 0.9}) {
      Mat4 x = Mat4::Zero();
      for (const auto& b : detail::su4_basis()) x += standard_normal(rng) * b;
      x /= x.norm();
      double lo = 0, hi = 4;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (projective_distance(Mat4::Identity(), su_exp(FloatAlgebraElement(mid * x)).matrix()) < target ? lo : hi) = mid;
      }
      const auto delta = su_exp(FloatAlgebraElement(lo * x));
      REQUIRE_THAT(projective_distance(Mat4::Identity(), delta.matrix()), WithinAbs(target, 1e-9));
      CHECK_NOTHROW(gc_decompose(delta));
    }
    Mat4 far = Mat4::Identity();
    far(0, 0) = far(1, 1) = -1;
    CHECK_THROWS_AS(gc_decompose(UnitaryMatrix(far)), ConvergenceFailure);
  }
}

TEST_CASE("solovay_kitaev", "[sk]") {
  const auto& net = medium_net();
  const auto& pair = net.pair();

  SECTION("depth 0 is the base approximation") {
    Rng rng(40);
    const auto u = haar_unitary(rng);
    const auto rep = solovay_kitaev(u, net, 0);
    CHECK(rep.sequence.letters() == base_approx(u, net).letters());
    REQUIRE(rep.per_level_errors.size() == 1);
    CHECK_THAT(rep.per_level_errors[0], WithinAbs(rep.distance, 1e-12));
    CHECK(rep.net_fingerprint == net.fingerprint());
  }

  SECTION("net entries compile exactly at any depth") {
    for (std::size_t i : {std::size_t{0}, std::size_t{1}, std::size_t{4242}}) {
      const auto rep = solovay_kitaev(UnitaryMatrix::trusted(net.unitary(i)), net, 2);
      CHECK(rep.distance <= 1e-12);
      CHECK(rep.sequence.letters() == net.letters(i));
    }
  }

  SECTION("reports are self-consistent and mirror-symmetric") {
    Rng rng(41);
    for (int k = 0; k < 3; ++k) {
      const auto u = haar_unitary(rng);
      const auto rep = solovay_kitaev(u, net, 2);
      check_sequence_consistent(rep.sequence, pair);
      CHECK_THAT(rep.distance, WithinAbs(projective_distance(u.matrix(), rep.sequence.unitary()), 1e-9));
      REQUIRE(rep.per_level_errors.size() == 3);
      CHECK_THAT(rep.per_level_errors.back(), WithinAbs(rep.distance, 1e-9));
      CHECK(rep.sequence.length() <= 25 * static_cast<std::size_t>(net.max_len()));

      const auto mirrored = solovay_kitaev(u.swap_conjugate(), net, 2);
      CHECK_THAT(mirrored.distance, WithinAbs(rep.distance, 1e-9));
      CHECK(mirrored.sequence.letters() == rep.sequence.mirrored().letters());
    }
  }

  SECTION("failures carry the recursion level") {
    // With a 5-entry net the residuals are far from the identity. Frozen:
    // 5 of these 20 targets fail, all at level 1.
    NetOptions o;
    o.max_len = 1;
    o.radius_probes = 0;
    const auto tiny = Net::build(pair, o);
    Rng rng(5);
    int failures = 0;
    for (int k = 0; k < 20; ++k) {
      try {
        solovay_kitaev(haar_unitary(rng), tiny, 2);
      } catch (const ConvergenceFailure& e) {
        ++failures;
        CHECK(e.level() == 1);
      }
    }
    CHECK(failures == 5);
  }

  CHECK_THROWS_AS(solovay_kitaev(UnitaryMatrix::identity(), net, -1), std::invalid_argument);
}

TEST_CASE("compile_local_gate", "[sk]") {
  const auto& net = small_net();
  CHECK(compile_local_gate(Mat2::Identity(), Qubit::First, net, 1).distance <= 1e-12);
  const Mat2 phase = std::polar(1.0, 0.7) * Mat2::Identity();
  CHECK(compile_local_gate(phase, Qubit::Second, net, 1).distance <= 1e-12);

  Mat2 h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const auto first = compile_local_gate(h, Qubit::First, net, 1);
  CHECK_THAT(first.distance, WithinAbs(projective_distance(kron(h, Mat2::Identity()), first.sequence.unitary()), 1e-9));
  // The two placements are SWAP conjugates of each other.
  const auto second = compile_local_gate(h, Qubit::Second, net, 1);
  CHECK_THAT(second.distance, WithinAbs(first.distance, 1e-9));

  Mat2 bad = Mat2::Identity();
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(compile_local_gate(bad, Qubit::First, net, 1), std::invalid_argument);
}

TEST_CASE("net files", "[sk][io]") {
  const auto& net = small_net();
  const auto dir = std::filesystem::temp_directory_path();

  SECTION("json round trip") {
    const auto j = net_to_json(net);
    const auto back = net_from_json(Json::parse(j.dump()));
    CHECK(back.size() == net.size());
    CHECK(back.fingerprint() == net.fingerprint());
    CHECK(back.covering_radius() == net.covering_radius());
    for (std::size_t i = 0; i < net.size(); i += 11) CHECK((back.unitary(i) - net.unitary(i)).norm() == 0.0);
  }

  SECTION("binary round trip through a file") {
    const auto path = (dir / "ugate_test_net.bin").string();
    write_file(path, net_to_binary(net));
    const auto back = load_net(path);
    CHECK(back.fingerprint() == net.fingerprint());
    Rng rng(50);
    const auto u = haar_unitary(rng).matrix();
    CHECK(back.nearest(u).index == net.nearest(u).index);
    std::filesystem::remove(path);
  }

  SECTION("corruption is detected") {
    auto bin = net_to_binary(net);
    auto bad_magic = bin;
    bad_magic[0] = 'X';
    CHECK_THROWS_AS(net_from_binary(bad_magic), std::invalid_argument);
    auto bad_letter = bin;
    bad_letter[bin.size() - 9] = static_cast<char>(bin[bin.size() - 9] ^ 1);
    CHECK_THROWS(net_from_binary(bad_letter));
    CHECK_THROWS_AS(net_from_binary(bin.substr(0, bin.size() / 2)), std::invalid_argument);
    auto j = net_to_json(net);
    j["dedup_radius"] = 0.5;
    CHECK_THROWS_AS(net_from_json(j), std::invalid_argument);
  }

  SECTION("compilation report json") {
    Rng rng(51);
    const auto rep = solovay_kitaev(haar_unitary(rng), net, 1);
    const auto j = to_json(rep);
    CHECK(j.at("sequence") == rep.sequence.to_string());
    CHECK(j.at("per_level_errors").size() == 2);
    CHECK(j.at("net_fingerprint") == hex64(net.fingerprint()));
    CHECK(GateSequence::evaluate(net.pair(), GateSequence::parse(j.at("sequence").get<std::string>())).letters() == rep.sequence.letters());
  }
}

}  // namespace ugate::test
