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

#include "test_support.hpp"

namespace ugate::test {

namespace {

CoordinateVector unit_row(std::size_t k) {
  CoordinateVector v;
  for (auto& x : v) x = 0;
  v[k] = 1;
  return v;
}

std::vector<CoordinateVector> identity_rows() {
  std::vector<CoordinateVector> rows;
  for (std::size_t k = 0; k < 15; ++k) rows.push_back(unit_row(k));
  return rows;
}

std::vector<CoordinateVector> random_rows(Rng& rng, std::size_t n) {
  std::vector<CoordinateVector> rows(n);
  for (auto& r : rows)
    for (auto& x : r) x = random_rational(rng);
  return rows;
}

}  // namespace

TEST_CASE("rationals serialize canonically", "[exact]") {
  CHECK(to_fraction_string(mpq_class(6, 4)) == "3/2");
  CHECK(to_fraction_string(mpq_class(-3)) == "-3/1");
  CHECK(parse_rational("-6/4") == mpq_class(-3, 2));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);

  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    mpq_class q(static_cast<long>(uniform_int(rng, -1000000, 1000000)),
                static_cast<unsigned long>(uniform_int(rng, 1, 1000000)));
    q.canonicalize();
    const auto s = to_fraction_string(q);
    CHECK(to_fraction_string(parse_rational(s)) == s);
  }
}

TEST_CASE("algebra elements validate on construction", "[exact]") {
  Matrix4<mpq_class> m;
  m(0, 0) = {0, 1};
  CHECK_THROWS_AS(AlgebraElement(m), std::invalid_argument);  // trace i
  m(1, 1) = {0, -1};
  CHECK_NOTHROW(AlgebraElement(m));
  m(0, 1) = {1, 0};
  CHECK_THROWS_AS(AlgebraElement(m), std::invalid_argument);  // not skew
  m(1, 0) = {-1, 0};
  CHECK_NOTHROW(AlgebraElement(m));
  m(2, 2) = {1, 0};
  m(3, 3) = {-1, 0};
  CHECK_THROWS_AS(AlgebraElement(m), std::invalid_argument);  // real diagonal
}

TEST_CASE("bracket examples", "[exact][bracket]") {
  const auto fx = load_fixture("regression_seed42.json");
  const auto t0 = algebra_element_from_json(fx["t0"]);

  SECTION("self bracket vanishes") { CHECK(bracket(t0, t0).is_zero()); }

  SECTION("Pauli commutation") {
    // [i Z(x)I, i X(x)I] = -[Z, X](x)I = -2i Y(x)I
    CHECK(bracket(pauli_product('Z', 'I'), pauli_product('X', 'I')) == pauli_product('Y', 'I', -2));
  }

  SECTION("regression seed against oracle") {
    const auto tp = swap_adjoint(t0);
    CHECK(tp == algebra_element_from_json(fx["t0_prime"]));
    CHECK(bracket(t0, tp) == algebra_element_from_json(fx["bracket_t0_t0_prime"]));
  }
}

TEST_CASE("bracket is a Lie bracket", "[exact][bracket][property]") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_element(rng);
    const auto b = random_element(rng);
    const auto c = random_element(rng);
    // Closure is enforced by the checked constructor.
    const AlgebraElement ab(bracket(a, b).matrix());
    CHECK(ab == mpq_class(-1) * bracket(b, a));
    const auto jacobi = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
    CHECK(jacobi.is_zero());
  }
}

TEST_CASE("vectorize", "[exact][coords]") {
  SECTION("diag(i, -i, 0, 0)") {
    Matrix4<mpq_class> m;
    m(0, 0) = {0, 1};
    m(1, 1) = {0, -1};
    const auto v = vectorize(AlgebraElement(m));
    CHECK(v[0] == 1);
    CHECK(v[1] == -1);
    for (std::size_t k = 2; k < 15; ++k) CHECK(v[k] == 0);
  }
  SECTION("zero") {
    for (const auto& x : vectorize(AlgebraElement{})) CHECK(x == 0);
  }
  SECTION("regression seed against oracle") {
    const auto fx = load_fixture("regression_seed42.json");
    CHECK(to_json(vectorize(algebra_element_from_json(fx["t0"]))) == fx["vectorize_t0"]);
  }
  SECTION("round trips both ways") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
      const auto a = random_element(rng);
      CHECK(devectorize(vectorize(a)) == a);
      CoordinateVector v;
      for (auto& x : v) x = random_rational(rng);
      CHECK(vectorize(devectorize(v)) == v);
    }
  }
  SECTION("wrong length is rejected") {
    std::vector<mpq_class> v(14);
    CHECK_THROWS_AS(devectorize<mpq_class>(std::span<const mpq_class>(v)), std::invalid_argument);
  }
}

TEST_CASE("exact_rank", "[exact][rank]") {
  CHECK(exact_rank(identity_rows()) == 15);

  std::vector<CoordinateVector> repeated(15, unit_row(3));
  repeated[0][7] = mpq_class(5, 3);
  for (auto& r : repeated) r = repeated[0];
  CHECK(exact_rank(repeated) == 1);

  CHECK(exact_rank(std::vector<CoordinateVector>{}) == 0);

  SECTION("rank of random combinations of r independent rows is r") {
    Rng rng(11);
    for (std::size_t r = 0; r <= 15; ++r) {
      const auto basis = random_rows(rng, r);
      std::vector<CoordinateVector> rows;
      for (int k = 0; k < 17; ++k) {
        CoordinateVector v;
        for (auto& x : v) x = 0;
        for (const auto& b : basis) {
          const mpq_class c = random_rational(rng, 4, 3);
          for (std::size_t j = 0; j < 15; ++j) v[j] += c * b[j];
        }
        rows.push_back(v);
      }
      CHECK(exact_rank(rows) == std::min<int>(static_cast<int>(r), exact_rank(basis)));

      IncrementalBasis inc;
      for (const auto& row : rows) inc.add(row);
      CHECK(inc.rank() == exact_rank(rows));
    }
  }
}

TEST_CASE("det15", "[exact][det]") {
  CHECK(det15(identity_rows()) == 1);

  auto rows = identity_rows();
  rows[9] = rows[4];
  CHECK(det15(rows) == 0);

  CHECK_THROWS_AS(det15(std::vector<CoordinateVector>(14)), std::invalid_argument);
  CHECK_THROWS_AS(det15(std::vector<CoordinateVector>(16)), std::invalid_argument);

  SECTION("alternating and multilinear") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      auto m = random_rows(rng, 15);
      const mpq_class d = det15(m);
      auto swapped = m;
      std::swap(swapped[2], swapped[11]);
      CHECK(det15(swapped) == -d);
      auto scaled = m;
      const mpq_class s(-7, 3);
      for (auto& x : scaled[6]) x *= s;
      CHECK(det15(scaled) == s * d);
      // Full rank <=> nonzero determinant.
      CHECK((exact_rank(m) == 15) == (d != 0));
    }
  }

  SECTION("regression certificate rows against oracle") {
    const auto fx = load_fixture("regression_seed42.json");
    for (const char* key : {"bfs", "random"}) {
      std::vector<CoordinateVector> cert_rows;
      for (const auto& r : fx[key]["rows"]) cert_rows.push_back(coordinates_from_json(r));
      CHECK(exact_rank(cert_rows) == 15);
      CHECK(to_fraction_string(det15(cert_rows)) == fx[key]["det"].get<std::string>());
    }
  }
}

TEST_CASE("matrix JSON is bit exact", "[exact][json]") {
  const auto fx = load_fixture("regression_seed42.json");
  const auto t0 = algebra_element_from_json(fx["t0"]);
  CHECK(to_json(t0) == fx["t0"]);
  CHECK(to_json(t0).dump() == fx["t0"].dump());

  Json bad = fx["t0"];
  bad[0][1]["re"] = "1/2";
  CHECK_THROWS_AS(algebra_element_from_json(bad), std::invalid_argument);
}

}  // namespace ugate::test
