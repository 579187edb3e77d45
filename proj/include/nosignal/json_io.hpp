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

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nosignal/channels.hpp"
#include "nosignal/cloning.hpp"
#include "nosignal/matrix.hpp"

namespace nosignal {

// File formats:
//   matrix      {"rows": n, "cols": m, "entries": [[re, im], ...]}   row-major
//   channel     {"dim_in": n, "dim_out": m, "kraus": [matrix, ...]}
//   pure state  {"amplitudes": [[re, im], ...]}
// Parse failures raise ConfigError naming the field, prefixed with `where`.

ComplexMatrix matrix_from_json(const nlohmann::json& j, std::string_view where = "matrix");
nlohmann::json matrix_to_json(const ComplexMatrix& m);

KrausChannel channel_from_json(const nlohmann::json& j, std::string_view where = "channel");
nlohmann::json channel_to_json(const KrausChannel& channel);

PureState pure_state_from_json(const nlohmann::json& j, std::string_view where = "state");
nlohmann::json pure_state_to_json(const PureState& psi);

/// Non-negative integer, whether the JSON value carries it signed or unsigned.
inline bool is_count(const nlohmann::json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

/// 12 significant digits. Magnitudes in [1e-3, 1e15) print in plain decimal,
/// everything else nonzero in exponent form; trailing zeros are dropped.
std::string format_number(double x);

/// Deterministic serialization: keys sorted, numbers through format_number,
/// two-space indentation, trailing newline.
std::string canonical_dump(const nlohmann::json& j);

}  // namespace nosignal
