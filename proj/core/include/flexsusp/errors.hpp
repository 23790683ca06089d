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

#include <stdexcept>
#include <string>

namespace flexsusp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on a mathematical input was violated (off-curve point,
/// x outside the flex interval, negative radicand, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public DomainError {
 public:
  DivisionByZero() : DomainError("division by zero") {}
};

/// Mixing two quadratic fields with different radicands.
class FieldMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Input data are internally inconsistent (synthesis could not find a
/// realization, a table violates its own structure, ...).
class InconsistentData : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed textual input (JSON, rational literals, CLI values).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace flexsusp
