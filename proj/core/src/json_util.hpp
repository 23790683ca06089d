// Copyright 2026 The flexsusp Authors
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

#include <string>
#include <string_view>

#include "flexsusp/curve/cubic.hpp"
#include "flexsusp/errors.hpp"
#include "flexsusp/numeric/quad_ext.hpp"
#include "flexsusp/numeric/rational.hpp"
#include "json.hpp"

namespace flexsusp::detail {

using nlohmann::json;

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

inline Rational rational_from(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError("expected a rational string, got " + j.dump());
}

inline json rational_json(const Rational& q) { return q.to_string(); }

inline json quad_json(const QuadExt& q) {
  return {{"a", q.a().to_string()}, {"b", q.b().to_string()}, {"delta", q.delta()}};
}

inline json point_json(const CurvePoint& p) {
  if (p.is_infinity()) return "infinity";
  return {{"x", p.x().to_string()}, {"y", p.y().to_string()}};
}

inline CurvePoint point_from(const json& j) {
  if (j.is_string() && j.get<std::string>() == "infinity") return CurvePoint::infinity();
  if (!j.is_object() || !j.contains("x") || !j.contains("y")) {
    throw ParseError("expected a curve point, got " + j.dump());
  }
  return {rational_from(j.at("x")), rational_from(j.at("y"))};
}

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace flexsusp::detail
