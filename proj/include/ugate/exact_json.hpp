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

// Canonical JSON for the exact types. Rationals are "p/q" strings, matrices
// row-major 4x4 arrays of {"re", "im"} objects, bracket words nested arrays
// ["B", left, right] with leaves "T" and "T'".
//
// Every parser throws std::invalid_argument (or nlohmann's type errors) on
// malformed input.

#include <json.hpp>

#include <string>

#include "ugate/su4_generation.hpp"

namespace ugate {

using Json = nlohmann::json;

inline constexpr const char* kCertificateFormat = "ugate-certificate/1";

inline Json to_json(const GaussianRational& z) {
  return Json{{"re", to_fraction_string(z.re)}, {"im", to_fraction_string(z.im)}};
}

inline GaussianRational gaussian_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 2)
    throw std::invalid_argument("Gaussian rational must be {\"re\", \"im\"}");
  return {parse_rational(j.at("re").get<std::string>()), parse_rational(j.at("im").get<std::string>())};
}

inline Json to_json(const AlgebraElement& a) {
  Json rows = Json::array();
  for (int r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) row.push_back(to_json(a(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix4<mpq_class> matrix_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("matrix must have 4 rows");
  Matrix4<mpq_class> m;
  for (int r = 0; r < 4; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != 4) throw std::invalid_argument("matrix rows must have 4 entries");
    for (int c = 0; c < 4; ++c) m(r, c) = gaussian_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

/// Parses and validates (traceless, skew-Hermitian).
inline AlgebraElement algebra_element_from_json(const Json& j) { return AlgebraElement(matrix_from_json(j)); }

inline Json to_json(const CoordinateVector& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_fraction_string(q));
  return out;
}

inline CoordinateVector coordinates_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 15) throw std::invalid_argument("coordinate row must have 15 entries");
  CoordinateVector v;
  for (std::size_t i = 0; i < 15; ++i) v[i] = parse_rational(j[i].get<std::string>());
  return v;
}

inline Json to_json(const BracketWord& w) {
  switch (w.kind()) {
    case BracketWord::Kind::T:
      return "T";
    case BracketWord::Kind::TPrime:
      return "T'";
    case BracketWord::Kind::Bracket:
      break;
  }
  return Json::array({"B", to_json(w.left()), to_json(w.right())});
}

inline BracketWord word_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "T") return BracketWord::t();
    if (s == "T'") return BracketWord::t_prime();
    throw std::invalid_argument("unknown bracket word leaf '" + s + "'");
  }
  if (!j.is_array() || j.size() != 3 || j[0] != "B")
    throw std::invalid_argument("bracket word node must be [\"B\", left, right]");
  return BracketWord::bracket(word_from_json(j[1]), word_from_json(j[2]));
}

inline Json to_json(const GenerationCertificate& c) {
  Json words = Json::array();
  for (const auto& w : c.words) words.push_back(to_json(w));
  Json rows = Json::array();
  for (const auto& r : c.rows) rows.push_back(to_json(r));
  return Json{{"format", kCertificateFormat},
              {"seed_t", to_json(c.seed_t)},
              {"words", std::move(words)},
              {"rows", std::move(rows)},
              {"det", to_fraction_string(c.det)},
              {"rng_seed", c.rng_seed},
              {"strategy", to_string(c.strategy)},
              {"max_ops", c.max_ops}};
}

inline GenerationCertificate certificate_from_json(const Json& j) {
  if (!j.is_object() || j.value("format", "") != kCertificateFormat)
    throw std::invalid_argument(std::string("certificate must declare format ") + kCertificateFormat);
  GenerationCertificate c;
  c.seed_t = algebra_element_from_json(j.at("seed_t"));
  for (const auto& w : j.at("words")) c.words.push_back(word_from_json(w));
  for (const auto& r : j.at("rows")) c.rows.push_back(coordinates_from_json(r));
  c.det = parse_rational(j.at("det").get<std::string>());
  c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  c.strategy = parse_strategy(j.at("strategy").get<std::string>());
  c.max_ops = j.at("max_ops").get<int>();
  return c;
}

/// Verifies a certificate document; malformed documents are rejected rather
/// than thrown.
inline VerificationReport verify_certificate_json(const Json& j) {
  try {
    return verify_certificate(certificate_from_json(j));
  } catch (const std::exception& e) {
    return {false, std::nullopt, std::string("malformed certificate: ") + e.what()};
  }
}

}  // namespace ugate
