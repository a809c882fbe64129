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

// JSON for floating-point objects (complex matrices as nested [re, im]
// pairs), compilation and power-search reports, and net files. Nets are
// stored either as JSON or in a compact little-endian binary layout that
// starts with the magic bytes "UGNET1".

#include <json.hpp>

#include <bit>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <variant>

#include "ugate/sk_compiler.hpp"

namespace ugate {

using Json = nlohmann::json;

inline constexpr const char* kNetFormat = "ugate-net/1";
inline constexpr char kNetMagic[8] = {'U', 'G', 'N', 'E', 'T', '1', '\n', '\0'};

template <class Derived>
Json complex_matrix_to_json(const Eigen::MatrixBase<Derived>& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class M>
M complex_matrix_from_json(const Json& j) {
  const auto n = static_cast<std::size_t>(M::RowsAtCompileTime);
  if (!j.is_array() || j.size() != n) throw std::invalid_argument("matrix must have " + std::to_string(n) + " rows");
  M m;
  for (std::size_t r = 0; r < n; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != n) throw std::invalid_argument("matrix row has wrong length");
    for (std::size_t c = 0; c < n; ++c) {
      const Json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw std::invalid_argument("matrix entry must be [re, im]");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

inline UnitaryMatrix unitary_from_json(const Json& j) { return UnitaryMatrix(complex_matrix_from_json<Mat4>(j)); }

/// A stored gate is already special unitary; keep its bits as written so
/// fingerprints survive a round trip.
inline UnitaryMatrix stored_gate(const Mat4& g) {
  if (!((g.adjoint() * g - Mat4::Identity()).norm() <= kUnitaryTolerance) ||
      !(std::abs(g.determinant() - Complex(1, 0)) <= kUnitaryTolerance))
    throw std::invalid_argument("stored gate is not special unitary");
  return UnitaryMatrix::trusted(g);
}

inline std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline Json to_json(const PowerSearchResult& r) {
  return Json{{"found", true}, {"k", r.k}, {"log_norm", r.log_norm}, {"generation_ok", r.generation_ok},
              {"warnings", r.warnings}};
}

inline Json to_json(const PowerSearchNotFound& r) {
  return Json{{"found", false},
              {"best_k", r.best_k},
              {"best_norm", r.best_norm},
              {"small_but_degenerate", r.small_but_degenerate}};
}

inline Json to_json(const CompilationReport& r) {
  return Json{{"target", complex_matrix_to_json(r.target.matrix())},
              {"sequence", r.sequence.to_string()},
              {"length", r.sequence.length()},
              {"distance", r.distance},
              {"per_level_errors", r.per_level_errors},
              {"net_fingerprint", hex64(r.net_fingerprint)}};
}

// --------------------------------------------------------------------------
// Net files
// --------------------------------------------------------------------------

inline Json net_to_json(const Net& net) {
  const auto st = net.stored();
  Json letters = Json::array();
  for (auto l : st.letters) letters.push_back(static_cast<int>(l));
  return Json{{"format", kNetFormat},
              {"gate", complex_matrix_to_json(net.pair().g().matrix())},
              {"max_len", st.max_len},
              {"dedup_radius", st.dedup_radius},
              {"budget_exceeded", st.budget_exceeded},
              {"covering_radius", st.covering_radius},
              {"mean_probe_distance", st.mean_probe_distance},
              {"radius_probes", st.radius_probes},
              {"probe_seed", st.probe_seed},
              {"size", net.size()},
              {"parents", st.parents},
              {"letters", std::move(letters)},
              {"fingerprint", hex64(net.fingerprint())}};
}

inline Net net_from_json(const Json& j) {
  if (!j.is_object() || j.value("format", "") != std::string(kNetFormat))
    throw std::invalid_argument("not a ugate net file");
  Net::Stored st;
  st.max_len = j.at("max_len").get<int>();
  st.dedup_radius = j.at("dedup_radius").get<double>();
  st.budget_exceeded = j.at("budget_exceeded").get<bool>();
  st.covering_radius = j.at("covering_radius").get<double>();
  st.mean_probe_distance = j.at("mean_probe_distance").get<double>();
  st.radius_probes = j.at("radius_probes").get<int>();
  st.probe_seed = j.at("probe_seed").get<std::uint64_t>();
  st.parents = j.at("parents").get<std::vector<std::uint32_t>>();
  for (int l : j.at("letters").get<std::vector<int>>()) {
    if (l < 0 || l > 3) throw std::invalid_argument("bad letter code in net file");
    st.letters.push_back(static_cast<Letter>(l));
  }
  Net net = Net::from_table(GatePair(stored_gate(complex_matrix_from_json<Mat4>(j.at("gate")))), st);
  if (j.contains("fingerprint") && j.at("fingerprint").get<std::string>() != hex64(net.fingerprint()))
    throw std::invalid_argument("net fingerprint mismatch");
  return net;
}

namespace detail {

static_assert(std::endian::native == std::endian::little, "binary net files assume a little-endian host");

template <class T>
void put(std::string& out, const T& v) {
  const auto* p = reinterpret_cast<const char*>(&v);
  out.append(p, sizeof(T));
}

template <class T>
T take(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw std::invalid_argument("truncated net file");
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

}  // namespace detail

/// Layout: magic[8], u32 version, gate as 32 f64 (row-major re, im), i32
/// max_len, f64 dedup_radius, u8 budget_exceeded, f64 covering_radius, f64
/// mean_probe_distance, i32 radius_probes, u64 probe_seed, u64 count, count
/// u32 parents, count u8 letters, u64 fingerprint.
inline std::string net_to_binary(const Net& net) {
  const auto st = net.stored();
  std::string out(kNetMagic, sizeof kNetMagic);
  detail::put(out, std::uint32_t{1});
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      detail::put(out, net.pair().g()(r, c).real());
      detail::put(out, net.pair().g()(r, c).imag());
    }
  detail::put(out, std::int32_t{st.max_len});
  detail::put(out, st.dedup_radius);
  detail::put(out, static_cast<std::uint8_t>(st.budget_exceeded));
  detail::put(out, st.covering_radius);
  detail::put(out, st.mean_probe_distance);
  detail::put(out, std::int32_t{st.radius_probes});
  detail::put(out, st.probe_seed);
  detail::put(out, static_cast<std::uint64_t>(st.parents.size()));
  out.append(reinterpret_cast<const char*>(st.parents.data()), st.parents.size() * sizeof(std::uint32_t));
  out.append(reinterpret_cast<const char*>(st.letters.data()), st.letters.size());
  detail::put(out, net.fingerprint());
  return out;
}

inline Net net_from_binary(const std::string& in) {
  if (in.size() < sizeof kNetMagic || in.compare(0, sizeof kNetMagic, kNetMagic, sizeof kNetMagic) != 0)
    throw std::invalid_argument("missing UGNET1 magic");
  std::size_t pos = sizeof kNetMagic;
  if (detail::take<std::uint32_t>(in, pos) != 1) throw std::invalid_argument("unsupported net file version");
  Mat4 g;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const double re = detail::take<double>(in, pos);
      const double im = detail::take<double>(in, pos);
      g(r, c) = Complex(re, im);
    }
  Net::Stored st;
  st.max_len = detail::take<std::int32_t>(in, pos);
  st.dedup_radius = detail::take<double>(in, pos);
  st.budget_exceeded = detail::take<std::uint8_t>(in, pos) != 0;
  st.covering_radius = detail::take<double>(in, pos);
  st.mean_probe_distance = detail::take<double>(in, pos);
  st.radius_probes = detail::take<std::int32_t>(in, pos);
  st.probe_seed = detail::take<std::uint64_t>(in, pos);
  const auto n = detail::take<std::uint64_t>(in, pos);
  if (n > (in.size() - pos) / 5) throw std::invalid_argument("truncated net file");
  st.parents.resize(n);
  std::memcpy(st.parents.data(), in.data() + pos, n * sizeof(std::uint32_t));
  pos += n * sizeof(std::uint32_t);
  st.letters.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto code = static_cast<std::uint8_t>(in[pos + i]);
    if (code > 3) throw std::invalid_argument("bad letter code in net file");
    st.letters[i] = static_cast<Letter>(code);
  }
  pos += n;
  const auto fp = detail::take<std::uint64_t>(in, pos);
  Net net = Net::from_table(GatePair(stored_gate(g)), st);
  if (net.fingerprint() != fp) throw std::invalid_argument("net fingerprint mismatch");
  return net;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::invalid_argument("cannot write " + path);
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw std::invalid_argument("failed writing " + path);
}

/// Loads a net file in either format (binary recognised by its magic).
inline Net load_net(const std::string& path) {
  const std::string data = read_file(path);
  if (data.compare(0, 6, "UGNET1") == 0) return net_from_binary(data);
  return net_from_json(Json::parse(data));
}

}  // namespace ugate
