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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace nosignal {

// Campaign configuration, execution, and reporting for the `nosignal` CLI.
//
// A config file looks like
//
//   {
//     "name": "flash",
//     "kind": "signaling",
//     "seed": 7,
//     "parameters": { "map": "ideal_cloner", "copies": 20, ... }
//   }
//
// Every parameter is optional and defaults to the value in the structs below.
// Unknown kinds, unknown parameter keys and a missing seed are parse errors.

enum class ScenarioKind { signaling, no_signaling_cert, cloning, contraction, linear_consistency };

std::string_view to_string(ScenarioKind kind);

/// Which map Bob applies. `name` is a nonlinear kind ("ideal_cloner",
/// "collapse_to_basis0", "purify_dominant"), a stock channel ("identity",
/// "depolarizing", "reset_to_zero", "random_channel"), or "literal" when the
/// config gave a channel object.
struct MapSpec {
  std::string name = "ideal_cloner";
  std::size_t kraus_rank = 2;  // random_channel only
  std::optional<nlohmann::json> literal;
};

struct SignalingParams {
  std::string state = "phi_plus";  // phi_plus | product | ginibre
  std::size_t dim_a = 2;
  std::size_t dim_b = 2;
  std::string povm_1 = "z_basis";  // z_basis | x_basis | random
  std::string povm_2 = "x_basis";
  std::size_t povm_outcomes = 2;  // for "random"
  MapSpec map;
  std::size_t copies = 20;
  std::size_t trials = 1000;
  std::optional<double> expected_trace_distance;
  double tolerance = 1e-9;
  std::optional<double> min_success_rate;
  std::optional<double> expected_success_rate;
  double success_tolerance = 0.02;
};

struct NoSignalingParams {
  std::string state = "ginibre";
  std::size_t dim_a = 2;
  std::size_t dim_b = 2;
  std::size_t pairs = 1000;
  MapSpec map{"random_channel", 2, std::nullopt};
  double tolerance = 1e-9;
};

struct CloningParams {
  std::size_t dim = 2;
  std::size_t pairs = 1000;
  double overlap_min = 0.1;
  double overlap_max = 0.9;
  std::size_t channels = 100;
  std::size_t kraus_rank = 2;
  double min_residual = 0.05;
  double tolerance = 1e-9;
};

struct ContractionParams {
  std::size_t trials = 500;
  std::size_t dim_min = 2;
  std::size_t dim_max = 4;
  std::size_t rank_min = 1;
  std::size_t rank_max = 4;
  double tolerance = 1e-9;
};

struct LinearityParams {
  MapSpec map;
  std::size_t dim = 2;
  std::size_t trials = 10;
  std::string expect = "signaling";  // linear | signaling
  double tolerance = 1e-9;
  double min_gap = 0.1;
  /// When set, the map must also agree entrywise with this channel on
  /// `trials` random states.
  std::optional<MapSpec> reference_channel;
};

using ScenarioParams =
    std::variant<SignalingParams, NoSignalingParams, CloningParams, ContractionParams, LinearityParams>;

struct ScenarioConfig {
  std::string name;
  std::uint64_t seed = 0;
  ScenarioParams params;

  ScenarioKind kind() const { return static_cast<ScenarioKind>(params.index()); }
};

/// Throws ConfigError naming the offending field.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::filesystem::path& path);

struct BuiltinScenario {
  std::string_view name;
  std::string_view description;
};

/// Alphabetical.
const std::vector<BuiltinScenario>& builtin_scenarios();
std::string list_scenarios();
/// Throws ConfigError for an unknown name.
ScenarioConfig builtin_config(std::string_view name, std::uint64_t seed);

struct TrialRow {
  std::size_t trial;
  std::string metric;
  double value;
};

struct CampaignResult {
  nlohmann::json report;
  std::vector<TrialRow> rows;
  bool passed = false;
};

CampaignResult run_campaign(const ScenarioConfig& config);

/// Canonical JSON text of the report.
std::string report_json(const CampaignResult& result);
/// Header plus one row per trial: scenario_name,trial,metric,value
std::string report_csv(const CampaignResult& result);

}  // namespace nosignal
