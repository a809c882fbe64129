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

#include <json.hpp>

#include <string>

#include "ugate/exact_json.hpp"
#include "ugate/number_field.hpp"

namespace ugate {

inline Json to_json(const QSqrt2& f) {
  return Json{{"x", to_fraction_string(f.x())}, {"y", to_fraction_string(f.y())}};
}

inline QSqrt2 qsqrt2_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 2) throw std::invalid_argument("Q(sqrt 2) element must be {\"x\", \"y\"}");
  return {parse_rational(j.at("x").get<std::string>()), parse_rational(j.at("y").get<std::string>())};
}

/// Scientific notation with `digits` significant digits, e.g. "1.25e-9".
/// Deterministic for a given value and precision.
inline std::string mpf_to_string(const mpf_class& v, int digits = 20) {
  if (v == 0) return "0";
  mp_exp_t exp = 0;
  std::string mant = v.get_str(exp, 10, static_cast<std::size_t>(digits));
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  return out + "e" + std::to_string(static_cast<long>(exp) - 1);
}

}  // namespace ugate
