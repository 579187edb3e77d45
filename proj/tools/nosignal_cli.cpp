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

// Batch front end: runs built-in or file-configured campaigns and writes
// canonical JSON or per-trial CSV reports.
//
//   nosignal list
//   nosignal run --scenario flash --seed 7 [--format json|csv] [--out report.json]
//   nosignal run --config scenario.json [--format json|csv] [--out report.json]
//
// Exit status: 0 all checks passed, 1 a check failed (or the run itself
// failed), 2 the command line or config could not be parsed.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "nosignal/errors.hpp"
#include "nosignal/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitParseError = 2;

void configure_logging() {
  auto logger = spdlog::stderr_logger_st("nosignal");
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::err);
  if (const char* env = std::getenv("NOSIGNAL_LOG")) {
    const std::string level = env;
    if (level == "debug") logger->set_level(spdlog::level::debug);
    else if (level == "info") logger->set_level(spdlog::level::info);
    else if (level != "error") logger->warn("ignoring NOSIGNAL_LOG={}; expected error, info or debug", level);
  }
  spdlog::set_default_logger(logger);
}

bool write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Density-matrix no-signaling and no-cloning campaigns"};
  app.require_subcommand(1);

  app.add_subcommand("list", "List built-in scenarios");

  auto* run = app.add_subcommand("run", "Run a campaign and write its report");
  std::string config_path;
  std::string scenario_name;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string out_path;
  auto* config_opt = run->add_option("--config", config_path, "Scenario config file (JSON)");
  auto* scenario_opt = run->add_option("--scenario", scenario_name, "Built-in scenario name");
  auto* seed_opt = run->add_option("--seed", seed, "RNG seed for a built-in scenario");
  config_opt->excludes(scenario_opt);
  seed_opt->needs(scenario_opt);
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--out", out_path, "Output path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParseError;
  }

  if (app.got_subcommand("list")) {
    std::cout << nosignal::list_scenarios();
    return kExitPass;
  }

  nosignal::ScenarioConfig config;
  try {
    if (!config_path.empty()) {
      spdlog::info("loading config {}", config_path);
      config = nosignal::load_config(config_path);
    } else if (!scenario_name.empty()) {
      if (!seed) throw nosignal::ConfigError("seed", "--seed is required for built-in scenarios");
      config = nosignal::builtin_config(scenario_name, *seed);
    } else {
      throw nosignal::ConfigError("run", "one of --config or --scenario is required");
    }
  } catch (const nosignal::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParseError;
  }

  nosignal::CampaignResult result;
  try {
    spdlog::info("running '{}' ({}) with seed {}", config.name, nosignal::to_string(config.kind()), config.seed);
    result = nosignal::run_campaign(config);
  } catch (const nosignal::Error& e) {
    std::cerr << "error: campaign failed: " << e.what() << '\n';
    return kExitCheckFailed;
  }

  for (const auto& check : result.report.at("checks")) {
    spdlog::debug("check {}: {} (value {}, {} {})", check.at("name").get<std::string>(),
                  check.at("status").get<std::string>(), check.at("value").get<double>(),
                  check.at("relation").get<std::string>(), check.at("threshold").get<double>());
  }

  const std::string text = format == "csv" ? nosignal::report_csv(result) : nosignal::report_json(result);
  if (!write_output(text, out_path)) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return kExitCheckFailed;
  }
  if (!result.passed) {
    spdlog::error("scenario '{}' failed at least one check", config.name);
    return kExitCheckFailed;
  }
  spdlog::info("scenario '{}' passed", config.name);
  return kExitPass;
}
