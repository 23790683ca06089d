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
#include <utility>
#include <vector>

namespace flexsusp {

enum class Status { Pass, Fail, Skipped };

const char* to_string(Status s);

/// Outcome of one named check. Residuals are kept as decimal strings so
/// exact values survive serialization.
struct CheckResult {
  CheckResult() = default;
  explicit CheckResult(std::string check_name) : name(std::move(check_name)) {}

  std::string name;
  Status status = Status::Pass;
  std::vector<std::pair<std::string, std::string>> residuals;
  std::vector<std::string> details;

  bool passed() const { return status == Status::Pass; }
  bool failed() const { return status == Status::Fail; }

  /// Records a violation and marks the check failed.
  void fail(std::string why) {
    status = Status::Fail;
    details.push_back(std::move(why));
  }
  void note(std::string what) { details.push_back(std::move(what)); }
  void residual(std::string key, std::string value) {
    residuals.emplace_back(std::move(key), std::move(value));
  }
};

std::string to_json(const CheckResult& r);

}  // namespace flexsusp
