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

#include "flexsusp/check.hpp"

#include "json_util.hpp"

namespace flexsusp {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "unknown";
}

std::string to_json(const CheckResult& r) {
  detail::json j;
  j["name"] = r.name;
  j["status"] = to_string(r.status);
  detail::json res = detail::json::object();
  for (const auto& [k, v] : r.residuals) res[k] = v;
  j["residuals"] = res;
  j["details"] = r.details;
  return j.dump();
}

}  // namespace flexsusp
