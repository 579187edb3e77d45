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

#include "nosignal/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "nosignal/errors.hpp"

namespace nosignal {

namespace {

using nlohmann::json;

std::string join(std::string_view where, std::string_view field) {
  return std::string(where) + "." + std::string(field);
}

const json& member(const json& j, std::string_view where, const char* key) {
  if (!j.is_object()) throw ConfigError(std::string(where), "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(join(where, key), "missing");
  return *it;
}

std::size_t count_member(const json& j, std::string_view where, const char* key) {
  const json& v = member(j, where, key);
  if (!is_count(v)) throw ConfigError(join(where, key), "expected a non-negative integer");
  return v.get<std::size_t>();
}

Complex complex_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(where, "expected [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::vector<Complex> complex_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where, "expected an array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(complex_from_json(j[k], where + "[" + std::to_string(k) + "]"));
  }
  return out;
}

std::string strip_zeros(std::string s) {
  const auto exp_pos = s.find('e');
  std::string mantissa = exp_pos == std::string::npos ? s : s.substr(0, exp_pos);
  const std::string exponent = exp_pos == std::string::npos ? "" : s.substr(exp_pos);
  if (mantissa.find('.') != std::string::npos) {
    while (mantissa.back() == '0') mantissa.pop_back();
    if (mantissa.back() == '.') mantissa.pop_back();
  }
  return mantissa + exponent;
}

void dump(const json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map storage: sorted
        if (!first) out += ",\n";
        first = false;
        out += inner + json(key).dump() + ": ";
        dump(value, indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars = true;
      for (const json& v : j) scalars = scalars && !v.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k > 0) out += ", ";
          dump(j[k], indent + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k > 0) out += ",\n";
        out += inner;
        dump(j[k], indent + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j, std::string_view where) {
  const std::size_t rows = count_member(j, where, "rows");
  const std::size_t cols = count_member(j, where, "cols");
  if (rows == 0 || cols == 0 || rows > kMaxDim * kMaxDim || cols > kMaxDim) {
    throw ConfigError(join(where, "rows"), "matrix shape out of range");
  }
  std::vector<Complex> entries = complex_list(member(j, where, "entries"), join(where, "entries"));
  if (entries.size() != rows * cols) {
    throw ConfigError(join(where, "entries"), "expected " + std::to_string(rows * cols) +
                                                  " entries, got " + std::to_string(entries.size()));
  }
  try {
    return ComplexMatrix(rows, cols, std::move(entries));
  } catch (const Error& e) {
    throw ConfigError(join(where, "entries"), e.what());
  }
}

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (const Complex& z : m.entries()) entries.push_back(complex_to_json(z));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

KrausChannel channel_from_json(const json& j, std::string_view where) {
  const std::size_t dim_in = count_member(j, where, "dim_in");
  const std::size_t dim_out = count_member(j, where, "dim_out");
  const json& kraus = member(j, where, "kraus");
  if (!kraus.is_array() || kraus.empty()) throw ConfigError(join(where, "kraus"), "expected a non-empty array");
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    const std::string field = join(where, "kraus") + "[" + std::to_string(k) + "]";
    ComplexMatrix op = matrix_from_json(kraus[k], field);
    if (op.rows() != dim_out || op.cols() != dim_in) {
      throw ConfigError(field, "operator shape disagrees with dim_out x dim_in");
    }
    ops.push_back(std::move(op));
  }
  try {
    return KrausChannel(std::move(ops));
  } catch (const Error& e) {
    throw ConfigError(join(where, "kraus"), e.what());
  }
}

json channel_to_json(const KrausChannel& channel) {
  json kraus = json::array();
  for (const ComplexMatrix& k : channel.kraus_ops()) kraus.push_back(matrix_to_json(k));
  return {{"dim_in", channel.dim_in()}, {"dim_out", channel.dim_out()}, {"kraus", std::move(kraus)}};
}

PureState pure_state_from_json(const json& j, std::string_view where) {
  std::vector<Complex> amps = complex_list(member(j, where, "amplitudes"), join(where, "amplitudes"));
  try {
    return PureState(std::move(amps));
  } catch (const Error& e) {
    throw ConfigError(join(where, "amplitudes"), e.what());
  }
}

json pure_state_to_json(const PureState& psi) {
  json amps = json::array();
  for (const Complex& z : psi.amplitudes()) amps.push_back(complex_to_json(z));
  return {{"amplitudes", std::move(amps)}};
}

std::string format_number(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return "0";
  const double mag = std::abs(x);
  char buf[64];
  if (mag >= 1e-3 && mag < 1e15) {
    const int exponent = static_cast<int>(std::floor(std::log10(mag)));
    const int decimals = std::max(0, 11 - exponent);
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  } else {
    std::snprintf(buf, sizeof buf, "%.11e", x);
  }
  return strip_zeros(buf);
}

std::string canonical_dump(const json& j) {
  std::string out;
  dump(j, 0, out);
  out += "\n";
  return out;
}

}  // namespace nosignal
