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

#include <numbers>

#include "test_support.hpp"
#include "ugate/numeric_lie.hpp"

using Catch::Matchers::WithinAbs;

namespace ugate::test {

namespace {

Mat4 matrix_from_pairs(const Json& j) {
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = Complex(j[r][c][0].get<double>(), j[r][c][1].get<double>());
  return m;
}

FloatAlgebraElement unit_generator(std::uint64_t seed) {
  const auto t = FloatAlgebraElement::from_exact(sample_generator(seed, {3}));
  return (1.0 / t.norm()) * t;
}

FloatAlgebraElement float_pauli(char a, char b) { return FloatAlgebraElement::from_exact(pauli_product(a, b)); }

}  // namespace

TEST_CASE("UnitaryMatrix validates and fixes the determinant", "[numeric]") {
  Mat4 bad = Mat4::Identity();
  bad(0, 0) = 1.001;
  CHECK_THROWS_AS(UnitaryMatrix(bad), std::invalid_argument);

  const UnitaryMatrix s(swap_gate());  // det -1
  CHECK_THAT(std::abs(s.matrix().determinant() - Complex(1, 0)), WithinAbs(0, 1e-14));
  CHECK_THAT(projective_distance(s.matrix(), swap_gate()), WithinAbs(0, 1e-15));

  Rng rng(3);
  const auto u = haar_unitary(rng);
  CHECK_THAT(std::abs(u.matrix().determinant() - Complex(1, 0)), WithinAbs(0, 1e-12));
  CHECK(u.swap_conjugate().swap_conjugate().matrix().isApprox(u.matrix(), 1e-14));
}

TEST_CASE("su_log", "[numeric][log]") {
  SECTION("identity") { CHECK(su_log(UnitaryMatrix::identity()).norm() == 0.0); }

  SECTION("round trip inside the injectivity radius") {
    const auto x = 0.1 * FloatAlgebraElement::from_exact(sample_generator(42, {3}));
    CHECK_THAT((su_log(su_exp(x)) - x).norm(), WithinAbs(0, 1e-9));
  }

  SECTION("50-digit oracle") {
    const auto fx = load_fixture("log_oracle.json");
    for (const auto& c : fx["cases"]) {
      const UnitaryMatrix u(matrix_from_pairs(c["u"]));
      const Mat4 expected = matrix_from_pairs(c["log"]);
      CHECK_THAT((su_log(u).matrix() - expected).norm(), WithinAbs(0, 1e-12));
    }
  }

  SECTION("exp inverts log projectively on Haar samples") {
    Rng rng(17);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const auto u = haar_unitary(rng);
      try {
        CHECK_THAT(projective_distance(su_exp(su_log(u)), u), WithinAbs(0, 1e-8));
        ++checked;
      } catch (const BranchAmbiguity&) {
      }
    }
    CHECK(checked > 150);
  }

  SECTION("branch cut is refused") {
    Mat4 d = Mat4::Zero();
    d(0, 0) = d(1, 1) = -1.0;
    d(2, 2) = d(3, 3) = 1.0;
    CHECK_THROWS_AS(su_log(UnitaryMatrix(d)), BranchAmbiguity);
  }
}

TEST_CASE("projective_distance", "[numeric][metric]") {
  Rng rng(8);
  const auto u = haar_unitary(rng);
  CHECK_THAT(projective_distance(u, u), WithinAbs(0, 1e-15));
  const UnitaryMatrix iu(Mat4(Complex(0, 1) * u.matrix()));
  CHECK_THAT(projective_distance(u, iu), WithinAbs(0, 1e-15));
  CHECK_THAT(projective_distance(u.matrix(), std::polar(1.0, 0.7) * u.matrix()), WithinAbs(0, 1e-15));

  SECTION("identity to SWAP against a phase-grid oracle") {
    const Mat4 id = Mat4::Identity();
    const Mat4 s = swap_gate();
    double best = 1e9;
    const int n = 200000;
    for (int k = 0; k < n; ++k) {
      const Complex ph = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
      best = std::min(best, 0.5 * (id - ph * s).norm());
    }
    // The grid minimum is within (2 pi / n)^2 of the true minimum.
    CHECK_THAT(projective_distance(id, s), WithinAbs(best, 1e-8));
    CHECK_THAT(projective_distance(id, s), WithinAbs(1.0, 1e-15));
  }

  SECTION("pseudometric axioms") {
    for (int trial = 0; trial < 300; ++trial) {
      const auto a = haar_unitary(rng);
      const auto b = haar_unitary(rng);
      const auto c = haar_unitary(rng);
      const double ab = projective_distance(a, b);
      CHECK_THAT(ab, WithinAbs(projective_distance(b, a), 1e-14));
      CHECK(ab <= std::sqrt(2.0) + 1e-12);
      CHECK(projective_distance(a, c) <= ab + projective_distance(b, c) + 1e-10);
    }
  }
}

TEST_CASE("commutator_limit_check", "[numeric][commutator]") {
  const auto s = float_pauli('Z', 'I');
  const auto t = float_pauli('X', 'I');
  CHECK_THAT(commutator_limit_check(s, s, 1e-3), WithinAbs(0, 1e-9));

  const double e2 = commutator_limit_check(s, t, 1e-2);
  const double e3 = commutator_limit_check(s, t, 1e-3);
  const double e4 = commutator_limit_check(s, t, 1e-4);
  // Linear in eps: the constant measured at 1e-2 bounds the smaller eps.
  const double c = e2 / 1e-2;
  CHECK(e3 <= 1.1 * c * 1e-3);
  CHECK(e4 <= 1.1 * c * 1e-4);
  const double slope = (std::log(e2) - std::log(e4)) / (std::log(1e-2) - std::log(1e-4));
  CHECK(slope > 0.8);
  CHECK(slope < 1.2);

  const double ratio = commutator_limit_check(s, t, 0.5e-3) / e3;
  CHECK(ratio >= 0.3);
  CHECK(ratio <= 0.7);

  CHECK_THROWS_AS(commutator_limit_check(s, t, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(commutator_limit_check(s, t, 0.2), std::invalid_argument);
}

TEST_CASE("numeric_generation_test", "[numeric][generation]") {
  CHECK(numeric_generation_test(FloatAlgebraElement::from_exact(sample_generator(42, {3}))).generates);
  const auto sym = numeric_generation_test(float_pauli('Z', 'Z'));
  CHECK_FALSE(sym.generates);
  CHECK(sym.rank == 1);
  CHECK_FALSE(numeric_generation_test(FloatAlgebraElement{}).generates);

  SECTION("agrees with the exact verdict") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto t = sample_generator(seed, {1});
      const auto exact = bracket_closure(t, {Strategy::Bfs, 0, 2000});
      const auto num = numeric_generation_test(FloatAlgebraElement::from_exact(t), 1e-8, 2000);
      CHECK(exact.ok() == num.generates);
      if (!exact.ok() && exact.closed) CHECK(num.rank == exact.rank_reached);
    }
  }
}

TEST_CASE("power_search", "[numeric][power]") {
  SECTION("small generic gate qualifies at once") {
    const auto g = su_exp(0.01 * unit_generator(42));
    const auto res = power_search(g, 10);
    REQUIRE(std::holds_alternative<PowerSearchResult>(res));
    CHECK(std::get<PowerSearchResult>(res).k == 1);
  }

  SECTION("large generic gate needs a power, and the result replays") {
    const auto g = su_exp(2.0 * unit_generator(42));
    const auto res = power_search(g, 100000);
    REQUIRE(std::holds_alternative<PowerSearchResult>(res));
    const auto& r = std::get<PowerSearchResult>(res);
    CHECK(r.k > 1);
    CHECK(r.log_norm <= kDefaultNormCap);

    // Replay by explicit multiplication.
    UnitaryMatrix gk = UnitaryMatrix::identity();
    for (std::int64_t k = 0; k < r.k; ++k) gk = gk * g;
    const auto log_gk = su_log(gk);
    CHECK_THAT(log_gk.norm(), WithinAbs(r.log_norm, 1e-8 * static_cast<double>(r.k) + 1e-9));
    CHECK(numeric_generation_test(log_gk).generates);
  }

  SECTION("SWAP-symmetric gates never qualify") {
    const auto g = su_exp(2.0 * float_pauli('Z', 'Z'));
    const auto res = power_search(g, 20000);
    REQUIRE(std::holds_alternative<PowerSearchNotFound>(res));
    CHECK(std::get<PowerSearchNotFound>(res).small_but_degenerate > 0);
  }

  CHECK_THROWS_AS(power_search(UnitaryMatrix::identity(), 0), std::invalid_argument);
}

TEST_CASE("torus_density_demo", "[numeric][torus]") {
  SECTION("target in the initial interval") {
    const std::vector<double> slope{0.3};
    const std::vector<double> target{0.3};
    CHECK(torus_density_demo(slope, 0.01, target, 1e-3).k == 1);
  }
  SECTION("irrational slope on the circle reaches any target") {
    const std::vector<double> slope{1.0 / (2.0 * std::numbers::pi)};
    for (double x : {0.0, 0.123, 0.5, 0.77, 0.999}) {
      const std::vector<double> target{x};
      const auto res = torus_density_demo(slope, 1e-3, target, 0.01);
      REQUIRE(res.k.has_value());
      CHECK(res.best_distance < 0.01);
    }
  }
  SECTION("irrational slopes on the 2-torus") {
    const std::vector<double> slopes{1.0 / (2.0 * std::numbers::pi), std::sqrt(2.0) / 7.0};
    const std::vector<double> target{0.61, 0.17};
    CHECK(torus_density_demo(slopes, 1e-3, target, 0.01).k.has_value());
  }
  SECTION("rational slopes miss targets off the closed orbit") {
    const std::vector<double> slopes{0.5, 0.25};
    const std::vector<double> target{0.5, 0.0};
    const auto res = torus_density_demo(slopes, 1e-3, target, 0.01, 3000);
    CHECK_FALSE(res.k.has_value());
    CHECK(res.best_distance > 0.1);
  }
  CHECK_THROWS_AS(torus_density_demo(std::vector<double>{0.1}, 0.0, std::vector<double>{0.0}, 0.01),
                  std::invalid_argument);
}

}  // namespace ugate::test
