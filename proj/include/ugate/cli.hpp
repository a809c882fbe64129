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
 * The `ugate` command line. Every subcommand writes one JSON report
 *
 *   {"format", "tool_version", "subcommand", "config", "result", "exit_code"}
 *
 * with sorted keys, to --out (or stdout). Wall-clock timings are added only
 * with --timings, so that identical configurations give identical bytes.
 *
 * Exit codes: 0 ok; 1 bad input; 2 negative verdict (non-generation,
 * rejected certificate, compile goal missed); 3 ConvergenceFailure; 4 memory
 * budget exceeded (partial net, report still written).
 *
 * Random streams: a seed s used for a Haar gate, a Haar target, net radius
 * probes or a scatter fixture is split as substream_seed(s, k) with k = 1, 2,
 * 3, 4 respectively. Lattice generators use sample_generator(s) directly.
 */

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ugate/exact_json.hpp"
#include "ugate/number_field.hpp"
#include "ugate/number_field_json.hpp"
#include "ugate/numeric_json.hpp"
#include "ugate/sk_compiler.hpp"
#include "ugate/su4_generation.hpp"

namespace ugate::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportFormat = "ugate-report/1";

enum ExitCode : int { kOk = 0, kBadInput = 1, kNegative = 2, kConvergence = 3, kBudget = 4 };

enum Stream : std::uint64_t { kGateStream = 1, kTargetStream = 2, kProbeStream = 3, kScatterStream = 4 };

/// Haar gate or target derived from a user seed.
inline UnitaryMatrix haar_from_seed(std::uint64_t seed, Stream stream) {
  Rng rng(substream_seed(seed, stream));
  return haar_unitary(rng);
}

namespace detail {

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Clock {
 public:
  Clock() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline Json read_json_file(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    throw BadInput(e.what());
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw BadInput(path + ": " + e.what());
  }
}

// Accepts a bare matrix or an object with the matrix under `key`.
inline const Json& unwrap(const Json& j, const char* key) {
  if (j.is_object() && j.contains(key)) return j.at(key);
  return j;
}

struct Common {
  std::string out;
  bool timings = false;
};

inline void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Report path (default: stdout)");
  sub->add_flag("--timings", c.timings, "Include wall-clock timings (breaks byte-identical reports)");
}

inline void emit(const Common& c, const std::string& name, Json config, Json result, int code, const Clock& clock,
                 std::ostream& out) {
  Json report{{"format", kReportFormat},
              {"tool_version", kToolVersion},
              {"subcommand", name},
              {"config", std::move(config)},
              {"result", std::move(result)},
              {"exit_code", code}};
  if (c.timings) report["timings"] = Json{{"total_seconds", clock.seconds()}};
  const std::string text = report.dump(2) + "\n";
  if (c.out.empty())
    out << text;
  else
    write_file(c.out, text);
}

inline void require_positive(double v, const char* name) {
  if (!(v > 0)) throw BadInput(std::string(name) + " must be positive");
}

}  // namespace detail

// --------------------------------------------------------------------------
// certify / verify
// --------------------------------------------------------------------------

struct CertifyConfig {
  detail::Common common;
  std::optional<std::uint64_t> seed;
  std::string matrix;
  int max_abs = 3;
  std::string strategy = "random";
  std::optional<std::uint64_t> rng_seed;
  int max_ops = kDefaultMaxOps;
  std::string cert = "ugate.cert.json";
};

inline int cmd_certify(const CertifyConfig& c, std::ostream& out) {
  const detail::Clock clock;
  if (c.seed.has_value() == !c.matrix.empty()) throw detail::BadInput("give exactly one of --seed and --matrix");
  if (c.max_ops < 1) throw detail::BadInput("--max-ops must be >= 1");
  if (c.max_abs < 0) throw detail::BadInput("--max-abs must be >= 0");
  Strategy strategy{};
  try {
    strategy = parse_strategy(c.strategy);
  } catch (const std::exception& e) {
    throw detail::BadInput(e.what());
  }
  AlgebraElement t;
  Json config{{"strategy", c.strategy}, {"max_ops", c.max_ops}, {"cert", c.cert}};
  if (c.seed) {
    t = sample_generator(*c.seed, {c.max_abs});
    config["seed"] = *c.seed;
    config["max_abs"] = c.max_abs;
  } else {
    try {
      t = algebra_element_from_json(detail::unwrap(detail::read_json_file(c.matrix), "t"));
    } catch (const detail::BadInput&) {
      throw;
    } catch (const std::exception& e) {
      throw detail::BadInput(c.matrix + ": " + e.what());
    }
    config["matrix"] = c.matrix;
  }
  const std::uint64_t rng_seed = c.rng_seed.value_or(c.seed.value_or(0));
  config["rng_seed"] = rng_seed;

  const auto res = bracket_closure(t, {strategy, rng_seed, c.max_ops});
  Json result{{"rank", res.rank_reached}, {"ops", res.ops_used}, {"closed", res.closed}, {"generated", res.ok()}};
  int code = kNegative;
  if (res.ok()) {
    const auto v = verify_certificate(*res.certificate);
    if (!v.ok) throw std::logic_error("fresh certificate failed verification: " + v.reason);
    write_file(c.cert, to_json(*res.certificate).dump(2) + "\n");
    result["det"] = to_fraction_string(res.certificate->det);
    result["words"] = res.certificate->words.size();
    result["certificate"] = c.cert;
    code = kOk;
  }
  detail::emit(c.common, "certify", std::move(config), std::move(result), code, clock, out);
  return code;
}

struct VerifyConfig {
  detail::Common common;
  std::string cert;
};

inline int cmd_verify(const VerifyConfig& c, std::ostream& out) {
  const detail::Clock clock;
  const Json j = detail::read_json_file(c.cert);
  Json result;
  int code = kNegative;
  try {
    const auto rep = verify_certificate(certificate_from_json(j));
    result = Json{{"valid", rep.ok}, {"reason", rep.reason}};
    if (rep.failing_word) result["failing_word"] = *rep.failing_word;
    code = rep.ok ? kOk : kNegative;
  } catch (const std::exception& e) {
    result = Json{{"valid", false}, {"reason", std::string("malformed certificate: ") + e.what()}};
  }
  detail::emit(c.common, "verify", Json{{"cert", c.cert}}, std::move(result), code, clock, out);
  return code;
}

// --------------------------------------------------------------------------
// sample / density
// --------------------------------------------------------------------------

struct SampleConfig {
  detail::Common common;
  std::int64_t n = 1;
  std::uint64_t first_seed = 0;
  int max_abs = 3;
  int max_ops = kDefaultMaxOps;
  std::string strategy = "random";
  unsigned threads = 1;
};

inline Strategy checked_sampling(const SampleConfig& c) {
  if (c.n < 1) throw detail::BadInput("--n must be >= 1");
  if (c.max_ops < 1) throw detail::BadInput("--max-ops must be >= 1");
  if (c.max_abs < 0) throw detail::BadInput("--max-abs must be >= 0");
  try {
    return parse_strategy(c.strategy);
  } catch (const std::exception& e) {
    throw detail::BadInput(e.what());
  }
}

inline Json sampling_config(const SampleConfig& c) {
  return Json{{"n", c.n}, {"first_seed", c.first_seed}, {"max_abs", c.max_abs}, {"max_ops", c.max_ops},
              {"strategy", c.strategy}};
}

// An invalid sample count still produces a (empty) report.
inline bool empty_sampling_report(const SampleConfig& c, const char* name, const detail::Clock& clock,
                                  std::ostream& out, std::ostream& err) {
  if (c.n >= 1) return false;
  err << "error: --n must be >= 1\n";
  detail::emit(c.common, name, sampling_config(c), Json::object(), kBadInput, clock, out);
  return true;
}

inline int cmd_sample(const SampleConfig& c, std::ostream& out, std::ostream& err = std::cerr) {
  const detail::Clock clock;
  if (empty_sampling_report(c, "sample", clock, out, err)) return kBadInput;
  const Strategy strategy = checked_sampling(c);
  Json samples = Json::array();
  std::int64_t successes = 0;
  for (std::int64_t i = 0; i < c.n; ++i) {
    const std::uint64_t seed = c.first_seed + static_cast<std::uint64_t>(i);
    const auto t = sample_generator(seed, {c.max_abs});
    const auto res = bracket_closure(t, {strategy, seed, c.max_ops});
    successes += res.ok() ? 1 : 0;
    samples.push_back(Json{{"seed", seed},
                           {"coordinates", to_json(vectorize(t))},
                           {"generated", res.ok()},
                           {"rank", res.rank_reached},
                           {"ops", res.ops_used}});
  }
  Json result{{"samples", std::move(samples)}, {"successes", successes}, {"failures", c.n - successes}};
  detail::emit(c.common, "sample", sampling_config(c), std::move(result), kOk, clock, out);
  return kOk;
}

inline int cmd_density(const SampleConfig& c, std::ostream& out, std::ostream& err = std::cerr) {
  const detail::Clock clock;
  if (empty_sampling_report(c, "density", clock, out, err)) return kBadInput;
  const Strategy strategy = checked_sampling(c);
  DensityOptions opts;
  opts.n_samples = c.n;
  opts.first_seed = c.first_seed;
  opts.bounds = {c.max_abs};
  opts.max_ops = c.max_ops;
  opts.strategy = strategy;
  opts.threads = std::max(1U, c.threads);
  const auto rep = density_estimate(opts);
  Json result{{"successes", rep.successes},
              {"failures", rep.failures},
              {"success_fraction", rep.success_fraction()},
              {"failure_seeds", rep.failure_seeds},
              {"failure_ranks", rep.failure_ranks}};
  // Thread count does not change the result, so it stays out of the echo.
  detail::emit(c.common, "density", sampling_config(c), std::move(result), kOk, clock, out);
  return kOk;
}

// --------------------------------------------------------------------------
// net-build / compile
// --------------------------------------------------------------------------

struct NetConfig {
  std::string gate;
  std::optional<std::uint64_t> gate_seed;
  int max_len = 8;
  double dedup_radius = 1e-6;
  int probes = 100;
  std::uint64_t probe_seed = 0;
};

inline Json net_config_json(const NetConfig& n) {
  Json j{{"max_len", n.max_len}, {"dedup_radius", n.dedup_radius}, {"probes", n.probes},
         {"probe_seed", n.probe_seed}};
  if (n.gate_seed) j["gate_seed"] = *n.gate_seed;
  if (!n.gate.empty()) j["gate"] = n.gate;
  return j;
}

inline UnitaryMatrix load_unitary(const std::string& path, const char* key) {
  const Json j = detail::read_json_file(path);
  try {
    return unitary_from_json(detail::unwrap(j, key));
  } catch (const std::exception& e) {
    throw detail::BadInput(path + ": " + e.what());
  }
}

inline Net build_net_from_config(const NetConfig& n) {
  if (n.gate_seed.has_value() == !n.gate.empty()) throw detail::BadInput("give exactly one of --gate and --gate-seed");
  if (n.max_len < 1 || n.max_len > 64) throw detail::BadInput("--max-len must be in [1, 64]");
  if (!(n.dedup_radius >= 0)) throw detail::BadInput("--dedup-radius must be >= 0");
  if (n.probes < 0) throw detail::BadInput("--probes must be >= 0");
  const UnitaryMatrix g = n.gate_seed ? haar_from_seed(*n.gate_seed, kGateStream) : load_unitary(n.gate, "gate");
  NetOptions o;
  o.max_len = n.max_len;
  o.dedup_radius = n.dedup_radius;
  o.radius_probes = n.probes;
  o.probe_seed = substream_seed(n.probe_seed, kProbeStream);
  try {
    o.memory_budget = memory_budget_from_env();
  } catch (const std::exception& e) {
    throw detail::BadInput(e.what());
  }
  return Net::build(GatePair(g), o);
}

inline Json net_summary(const Net& net) {
  return Json{{"size", net.size()},
              {"covering_radius", net.covering_radius()},
              {"mean_probe_distance", net.mean_probe_distance()},
              {"budget_exceeded", net.budget_exceeded()},
              {"fingerprint", hex64(net.fingerprint())}};
}

struct NetBuildConfig {
  detail::Common common;
  NetConfig net;
  std::string net_out;
};

inline int cmd_net_build(const NetBuildConfig& c, std::ostream& out) {
  const detail::Clock clock;
  if (c.net_out.empty()) throw detail::BadInput("--net is required");
  const Net net = build_net_from_config(c.net);
  const bool json = std::filesystem::path(c.net_out).extension() == ".json";
  write_file(c.net_out, json ? net_to_json(net).dump() + "\n" : net_to_binary(net));
  Json config = net_config_json(c.net);
  config["net"] = c.net_out;
  const int code = net.budget_exceeded() ? kBudget : kOk;
  detail::emit(c.common, "net-build", std::move(config), net_summary(net), code, clock, out);
  return code;
}

struct CompileConfig {
  detail::Common common;
  NetConfig net;
  std::string net_in;
  std::string target;
  std::optional<std::uint64_t> target_seed;
  bool target_identity = false;
  bool target_gate = false;
  std::string local;
  std::string qubit = "first";
  int depth = 2;
  double goal = 0.1;
};

inline int cmd_compile(const CompileConfig& c, std::ostream& out) {
  const detail::Clock clock;
  const int chosen = static_cast<int>(!c.target.empty()) + static_cast<int>(c.target_seed.has_value()) +
                     static_cast<int>(c.target_identity) + static_cast<int>(c.target_gate) +
                     static_cast<int>(!c.local.empty());
  if (chosen != 1)
    throw detail::BadInput("give exactly one of --target, --target-seed, --target-identity, --target-gate, --local");
  if (c.depth < 0 || c.depth > 8) throw detail::BadInput("--depth must be in [0, 8]");
  if (!(c.goal >= 0)) throw detail::BadInput("--goal must be >= 0");
  if (c.qubit != "first" && c.qubit != "second") throw detail::BadInput("--qubit must be first or second");

  std::optional<Net> net;
  Json config{{"depth", c.depth}, {"goal", c.goal}};
  if (!c.net_in.empty()) {
    try {
      net.emplace(load_net(c.net_in));
    } catch (const std::exception& e) {
      throw detail::BadInput(c.net_in + ": " + e.what());
    }
    config["net"] = c.net_in;
  } else {
    net.emplace(build_net_from_config(c.net));
    config["net_build"] = net_config_json(c.net);
  }

  UnitaryMatrix target;
  std::optional<Mat2> local;
  if (!c.target.empty()) {
    target = load_unitary(c.target, "target");
    config["target"] = c.target;
  } else if (c.target_seed) {
    target = haar_from_seed(*c.target_seed, kTargetStream);
    config["target_seed"] = *c.target_seed;
  } else if (c.target_gate) {
    target = net->pair().g();
    config["target_gate"] = true;
  } else if (!c.local.empty()) {
    const Json j = detail::read_json_file(c.local);
    try {
      local = complex_matrix_from_json<Mat2>(detail::unwrap(j, "gate"));
    } catch (const std::exception& e) {
      throw detail::BadInput(c.local + ": " + e.what());
    }
    config["local"] = c.local;
    config["qubit"] = c.qubit;
  } else {
    config["target_identity"] = true;
  }

  Json result{{"net", net_summary(*net)}};
  int code = kOk;
  try {
    CompilationReport rep;
    if (local) {
      try {
        rep = compile_local_gate(*local, c.qubit == "first" ? Qubit::First : Qubit::Second, *net, c.depth);
      } catch (const std::invalid_argument& e) {
        throw detail::BadInput(e.what());
      }
    } else {
      rep = solovay_kitaev(target, *net, c.depth);
    }
    result["report"] = to_json(rep);
    result["goal_met"] = rep.distance <= c.goal;
    code = rep.distance <= c.goal ? kOk : kNegative;
  } catch (const ConvergenceFailure& e) {
    result["error"] = Json{{"kind", "ConvergenceFailure"}, {"level", e.level()}, {"message", e.what()}};
    code = kConvergence;
  }
  if (code != kConvergence && net->budget_exceeded()) code = kBudget;
  detail::emit(c.common, "compile", std::move(config), std::move(result), code, clock, out);
  return code;
}

// --------------------------------------------------------------------------
// appendix
// --------------------------------------------------------------------------

struct AppendixConfig {
  detail::Common common;
  std::optional<double> p;
  std::optional<double> q;
  double eps = 1e-6;
  int digits = kDefaultDigits;
  std::optional<std::uint64_t> scatter_seed;
};

/// Words of the breadth-first certificate for lattice seed 42, whose
/// determinant is the 15-variable polynomial used by the scatter demo.
inline Det15Polynomial reference_det15() {
  const auto res = bracket_closure(sample_generator(42, {3}), {Strategy::Bfs, 0, kDefaultMaxOps});
  return Det15Polynomial(res.certificate.value().words);
}

inline int cmd_appendix(const AppendixConfig& c, std::ostream& out) {
  const detail::Clock clock;
  detail::require_positive(c.eps, "--eps");
  if (c.digits < 20 || c.digits > 2000) throw detail::BadInput("--digits must be in [20, 2000]");
  Json config{{"eps", c.eps}, {"digits", c.digits}};
  Json result;
  const mp_bitcnt_t bits = digits_to_bits(c.digits);
  const mpf_class eps(c.eps, bits);
  if (c.scatter_seed) {
    if (c.p || c.q) throw detail::BadInput("--scatter-seed excludes --p/--q");
    config["scatter_seed"] = *c.scatter_seed;
    Rng rng(substream_seed(*c.scatter_seed, kScatterStream));
    std::vector<QSqrt2> t0;
    std::vector<double> t1;
    for (int k = 0; k < 15; ++k) {
      auto small = [&rng] {
        mpq_class v(static_cast<long>(uniform_int(rng, -9, 9)), static_cast<unsigned long>(uniform_int(rng, 1, 5)));
        v.canonicalize();
        return v;
      };
      const mpq_class x = small();
      t0.emplace_back(x, small());
      t1.push_back(-3.0 + 6.0 * uniform01(rng));
    }
    const auto s = scatter_demo(t0, t1, c.eps, c.digits);
    const auto det = reference_det15();
    const auto gs = galois(std::span<const QSqrt2>(s));
    mpf_class worst_plus(0, bits), worst_minus(0, bits);
    Json elements = Json::array();
    for (std::size_t k = 0; k < s.size(); ++k) {
      const mpf_class rp(abs(j_plus(s[k], c.digits) - j_plus(t0[k], c.digits)), bits);
      const mpf_class rm(abs(j_plus(gs[k], c.digits) - mpf_class(t1[k], bits)), bits);
      if (rp > worst_plus) worst_plus = rp;
      if (rm > worst_minus) worst_minus = rm;
      elements.push_back(to_json(s[k]));
    }
    const bool t0_off = !det.evaluate<QSqrt2>(std::span<const QSqrt2>(t0)).is_zero();
    const bool s_off = !det.evaluate<QSqrt2>(std::span<const QSqrt2>(s)).is_zero();
    const bool gs_off = !det.evaluate<QSqrt2>(std::span<const QSqrt2>(gs)).is_zero();
    result = Json{{"dimension", 15},
                  {"elements", std::move(elements)},
                  {"max_residual_plus", mpf_to_string(worst_plus)},
                  {"max_residual_galois", mpf_to_string(worst_minus)},
                  {"within_eps", worst_plus < eps && worst_minus < eps},
                  {"t0_off_variety", t0_off},
                  {"s_off_variety", s_off},
                  {"galois_s_off_variety", gs_off},
                  {"verdicts_agree", s_off == gs_off}};
  } else {
    if (!c.p || !c.q) throw detail::BadInput("give --p and --q, or --scatter-seed");
    if (!std::isfinite(*c.p) || !std::isfinite(*c.q)) throw detail::BadInput("--p and --q must be finite");
    config["p"] = *c.p;
    config["q"] = *c.q;
    const auto f = double_density_approx(*c.p, *c.q, c.eps, c.digits);
    const mpf_class p(*c.p, bits), q(*c.q, bits);
    const auto e = embed(f, c.digits);
    const auto r = embedding_residuals(f, p, q, c.digits);
    result = Json{{"element", to_json(f)},
                  {"element_text", f.to_string()},
                  {"j_plus", mpf_to_string(e.plus, 30)},
                  {"j_minus", mpf_to_string(e.minus, 30)},
                  {"residual_plus", mpf_to_string(r.plus)},
                  {"residual_minus", mpf_to_string(r.minus)},
                  {"within_eps", r.plus < eps && r.minus < eps}};
  }
  detail::emit(c.common, "appendix", std::move(config), std::move(result), kOk, clock, out);
  return kOk;
}

// --------------------------------------------------------------------------
// Entry point
// --------------------------------------------------------------------------

/// Parses `args` (without the program name) and runs the chosen subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ugate: single two-qubit gate universality toolkit", "ugate"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  CertifyConfig certify;
  auto* s_cert = app.add_subcommand("certify", "Search brackets for an exact generation certificate");
  detail::add_common(s_cert, certify.common);
  s_cert->add_option("--seed", certify.seed, "Lattice sample seed");
  s_cert->add_option("--matrix", certify.matrix, "su(4) element JSON (4x4 of {re, im} rational strings)");
  s_cert->add_option("--max-abs", certify.max_abs, "Entry bound for --seed sampling")->capture_default_str();
  s_cert->add_option("--strategy", certify.strategy, "random or bfs")->capture_default_str();
  s_cert->add_option("--rng-seed", certify.rng_seed, "Search seed (default: --seed, else 0)");
  s_cert->add_option("--max-ops", certify.max_ops, "Bracket evaluation budget")->capture_default_str();
  s_cert->add_option("--cert", certify.cert, "Certificate output path")->capture_default_str();

  VerifyConfig verify;
  auto* s_ver = app.add_subcommand("verify", "Re-check a certificate exactly");
  detail::add_common(s_ver, verify.common);
  s_ver->add_option("--cert", verify.cert, "Certificate path")->required();

  SampleConfig sample, density;
  auto add_sampling = [](CLI::App* s, SampleConfig& c) {
    detail::add_common(s, c.common);
    s->add_option("--n", c.n, "Number of samples")->capture_default_str();
    s->add_option("--first-seed", c.first_seed, "Seed of the first sample")->capture_default_str();
    s->add_option("--max-abs", c.max_abs, "Entry bound")->capture_default_str();
    s->add_option("--max-ops", c.max_ops, "Bracket budget per sample")->capture_default_str();
    s->add_option("--strategy", c.strategy, "random or bfs")->capture_default_str();
  };
  auto* s_sample = app.add_subcommand("sample", "Sample lattice generators and report each verdict");
  add_sampling(s_sample, sample);
  auto* s_density = app.add_subcommand("density", "Fraction of lattice samples that generate su(4)");
  add_sampling(s_density, density);
  s_density->add_option("--threads", density.threads, "Worker threads")->capture_default_str();

  auto add_net = [](CLI::App* s, NetConfig& n) {
    s->add_option("--gate", n.gate, "Gate JSON (4x4 of [re, im])");
    s->add_option("--gate-seed", n.gate_seed, "Haar-random gate from this seed");
    s->add_option("--max-len", n.max_len, "Longest word in the net")->capture_default_str();
    s->add_option("--dedup-radius", n.dedup_radius, "Projective dedup radius")->capture_default_str();
    s->add_option("--probes", n.probes, "Haar probes for the radius estimate")->capture_default_str();
    s->add_option("--probe-seed", n.probe_seed, "Seed for the probes")->capture_default_str();
  };
  NetBuildConfig net_build;
  auto* s_net = app.add_subcommand("net-build", "Enumerate and store a base net (env UGATE_MEMORY_BUDGET)");
  detail::add_common(s_net, net_build.common);
  add_net(s_net, net_build.net);
  s_net->add_option("--net", net_build.net_out, "Output path (.json for JSON, otherwise binary UGNET1)")->required();

  CompileConfig compile;
  auto* s_comp = app.add_subcommand("compile", "Solovay-Kitaev compilation into words over {G, G'}");
  detail::add_common(s_comp, compile.common);
  add_net(s_comp, compile.net);
  s_comp->add_option("--net", compile.net_in, "Load a stored net instead of building one");
  s_comp->add_option("--target", compile.target, "Target unitary JSON");
  s_comp->add_option("--target-seed", compile.target_seed, "Haar-random target from this seed");
  s_comp->add_flag("--target-identity", compile.target_identity, "Compile the identity");
  s_comp->add_flag("--target-gate", compile.target_gate, "Compile G itself");
  s_comp->add_option("--local", compile.local, "Single-qubit gate JSON (2x2 of [re, im])");
  s_comp->add_option("--qubit", compile.qubit, "first or second (with --local)")->capture_default_str();
  s_comp->add_option("--depth", compile.depth, "Recursion depth")->capture_default_str();
  s_comp->add_option("--goal", compile.goal, "Exit 0 iff the final distance is at most this")->capture_default_str();

  AppendixConfig appendix;
  auto* s_app = app.add_subcommand("appendix", "Double density in Q(sqrt 2) and the scatter demo");
  detail::add_common(s_app, appendix.common);
  s_app->add_option("--p", appendix.p, "Target for the +sqrt2 embedding");
  s_app->add_option("--q", appendix.q, "Target for the -sqrt2 embedding");
  s_app->add_option("--eps", appendix.eps, "Tolerance")->capture_default_str();
  s_app->add_option("--digits", appendix.digits, "Decimal digits of the real embeddings")->capture_default_str();
  s_app->add_option("--scatter-seed", appendix.scatter_seed, "Run the 15-dimensional scatter fixture");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }

  try {
    if (s_cert->parsed()) return cmd_certify(certify, out);
    if (s_ver->parsed()) return cmd_verify(verify, out);
    if (s_sample->parsed()) return cmd_sample(sample, out, err);
    if (s_density->parsed()) return cmd_density(density, out, err);
    if (s_net->parsed()) return cmd_net_build(net_build, out);
    if (s_comp->parsed()) return cmd_compile(compile, out);
    if (s_app->parsed()) return cmd_appendix(appendix, out);
  } catch (const detail::BadInput& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}

}  // namespace ugate::cli
