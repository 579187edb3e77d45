// Copyright 2026 The nosignal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nosignal {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes disagree, or a dimension exceeds the desk-scale cap.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value violates a domain invariant (non-Hermitian, not PSD, bad trace...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Conditioning on a measurement outcome whose probability is numerically zero.
class UnreachableOutcome : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario, matrix, or channel file. `field()` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error("config field '" + field + "': " + message), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace nosignal
