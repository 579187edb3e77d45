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

#include "nosignal/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

#include "nosignal/channels.hpp"
#include "nosignal/cloning.hpp"
#include "nosignal/errors.hpp"
#include "nosignal/json_io.hpp"
#include "nosignal/signaling.hpp"
#include "nosignal/states.hpp"

namespace nosignal {

namespace {

using nlohmann::json;

constexpr std::string_view kNonlinearNames[] = {"collapse_to_basis0", "ideal_cloner", "purify_dominant"};
constexpr std::string_view kChannelNames[] = {"depolarizing", "identity", "random_channel", "reset_to_zero"};

bool is_nonlinear_name(std::string_view name) {
  return std::find(std::begin(kNonlinearNames), std::end(kNonlinearNames), name) != std::end(kNonlinearNames);
}

bool is_channel_name(std::string_view name) {
  return std::find(std::begin(kChannelNames), std::end(kChannelNames), name) != std::end(kChannelNames);
}

// Reads the "parameters" object, remembering which keys were consumed so that
// leftovers can be reported as unknown.
class ParamReader {
 public:
  explicit ParamReader(const json& params) : params_(params) {
    if (!params_.is_object()) throw ConfigError("parameters", "expected an object");
  }

  std::size_t count(const char* key, std::size_t fallback, std::size_t min = 0,
                    std::size_t max = std::numeric_limits<std::size_t>::max()) {
    const json* v = take(key);
    if (v == nullptr) return fallback;
    if (!is_count(*v)) throw ConfigError(field(key), "expected a non-negative integer");
    const auto n = v->get<std::size_t>();
    if (n < min || n > max) {
      throw ConfigError(field(key), "must be in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
    }
    return n;
  }

  double real(const char* key, double fallback) { return optional_real(key).value_or(fallback); }

  std::optional<double> optional_real(const char* key) {
    const json* v = take(key);
    if (v == nullptr) return std::nullopt;
    if (!v->is_number()) throw ConfigError(field(key), "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) throw ConfigError(field(key), "must be finite");
    return x;
  }

  std::string choice(const char* key, std::string fallback, std::initializer_list<std::string_view> allowed) {
    const json* v = take(key);
    if (v == nullptr) return fallback;
    if (!v->is_string()) throw ConfigError(field(key), "expected a string");
    const auto s = v->get<std::string>();
    if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
      std::string options;
      for (std::string_view a : allowed) options += (options.empty() ? "" : ", ") + std::string(a);
      throw ConfigError(field(key), "unknown value '" + s + "' (expected one of: " + options + ")");
    }
    return s;
  }

  std::optional<MapSpec> map(const char* key, std::size_t kraus_rank) {
    const json* v = take(key);
    if (v == nullptr) return std::nullopt;
    MapSpec spec;
    spec.kraus_rank = kraus_rank;
    if (v->is_object()) {
      spec.name = "literal";
      spec.literal = *v;
      return spec;
    }
    if (!v->is_string()) throw ConfigError(field(key), "expected a map name or a channel object");
    spec.name = v->get<std::string>();
    if (!is_nonlinear_name(spec.name) && !is_channel_name(spec.name)) {
      throw ConfigError(field(key), "unknown map '" + spec.name + "'");
    }
    return spec;
  }

  void finish() const {
    for (const auto& [key, value] : params_.items()) {
      if (used_.count(key) == 0) throw ConfigError(field(key.c_str()), "unknown parameter");
    }
  }

  static std::string field(const char* key) { return std::string("parameters.") + key; }

 private:
  const json* take(const char* key) {
    used_.insert(key);
    const auto it = params_.find(key);
    return it == params_.end() ? nullptr : &*it;
  }

  const json& params_;
  std::set<std::string> used_;
};

// Checks that `spec` can act on dimension `dim`; returns its output dimension.
std::size_t check_map(const MapSpec& spec, std::size_t dim, const std::string& field) {
  if (spec.name == "literal") {
    const KrausChannel ch = channel_from_json(*spec.literal, field);
    if (ch.dim_in() != dim) {
      throw ConfigError(field, "channel dim_in " + std::to_string(ch.dim_in()) + " does not match " +
                                   std::to_string(dim));
    }
    return ch.dim_out();
  }
  if ((spec.name == "depolarizing" || spec.name == "reset_to_zero") && dim != 2) {
    throw ConfigError(field, "'" + spec.name + "' is a qubit channel but the dimension is " + std::to_string(dim));
  }
  if (spec.name == "random_channel" && spec.kraus_rank < 1) {
    throw ConfigError("parameters.kraus_rank", "must be at least 1");
  }
  return spec.name == "ideal_cloner" ? dim * dim : dim;
}

LocalMap resolve_map(const MapSpec& spec, std::size_t dim, Rng& rng) {
  if (spec.name == "literal") return channel_from_json(*spec.literal);
  if (spec.name == "identity") return KrausChannel::identity(dim);
  if (spec.name == "depolarizing") return depolarizing_channel();
  if (spec.name == "reset_to_zero") return reset_to_zero_channel();
  if (spec.name == "random_channel") return random_channel(dim, spec.kraus_rank, rng);
  return NonlinearMap(nonlinear_kind_from_string(spec.name), dim);
}

json map_to_json(const MapSpec& spec) {
  if (spec.literal) return *spec.literal;
  if (spec.name == "random_channel") return {{"name", spec.name}, {"kraus_rank", spec.kraus_rank}};
  return spec.name;
}

DensityMatrix make_state(const std::string& name, const BipartiteDims& dims, Rng& rng) {
  if (name == "phi_plus") return maximally_entangled(dims.dim_a());
  if (name == "product") {
    const DensityMatrix a = random_density(dims.dim_a(), rng);
    const DensityMatrix b = random_density(dims.dim_b(), rng);
    return DensityMatrix(tensor(a.op(), b.op()));
  }
  return random_density(dims.total(), rng);
}

Povm make_povm(const std::string& name, std::size_t dim, std::size_t outcomes, Rng& rng) {
  if (name == "z_basis") return z_basis_povm(dim);
  if (name == "x_basis") return x_basis_povm(dim);
  return random_povm(dim, outcomes, rng);
}

void check_dims(std::size_t dim_a, std::size_t dim_b, const std::string& state) {
  try {
    BipartiteDims{dim_a, dim_b};
  } catch (const DimensionError& e) {
    throw ConfigError("parameters.dim_a", e.what());
  }
  if (state == "phi_plus" && dim_a != dim_b) {
    throw ConfigError("parameters.state", "phi_plus needs dim_a == dim_b");
  }
}

SignalingParams parse_signaling(ParamReader& r) {
  SignalingParams p;
  p.state = r.choice("state", p.state, {"phi_plus", "product", "ginibre"});
  p.dim_a = r.count("dim_a", p.dim_a, 2, kMaxDim);
  p.dim_b = r.count("dim_b", p.dim_b, 2, kMaxDim);
  p.povm_1 = r.choice("povm_1", p.povm_1, {"z_basis", "x_basis", "random"});
  p.povm_2 = r.choice("povm_2", p.povm_2, {"z_basis", "x_basis", "random"});
  p.povm_outcomes = r.count("povm_outcomes", p.dim_a, 2, 16);
  const std::size_t rank = r.count("kraus_rank", p.map.kraus_rank, 1, 16);
  p.map = r.map("map", rank).value_or(MapSpec{p.map.name, rank, std::nullopt});
  p.copies = r.count("copies", p.copies, 1, 100000);
  p.trials = r.count("trials", p.trials, 1, 10000000);
  p.expected_trace_distance = r.optional_real("expected_trace_distance");
  p.tolerance = r.real("tolerance", p.tolerance);
  p.min_success_rate = r.optional_real("min_success_rate");
  p.expected_success_rate = r.optional_real("expected_success_rate");
  p.success_tolerance = r.real("success_tolerance", p.success_tolerance);
  check_dims(p.dim_a, p.dim_b, p.state);
  const std::size_t out = check_map(p.map, p.dim_b, ParamReader::field("map"));
  if (out > kMaxDim) throw ConfigError(ParamReader::field("map"), "output dimension exceeds the cap");
  return p;
}

NoSignalingParams parse_no_signaling(ParamReader& r) {
  NoSignalingParams p;
  p.state = r.choice("state", p.state, {"phi_plus", "product", "ginibre"});
  p.dim_a = r.count("dim_a", p.dim_a, 2, kMaxDim);
  p.dim_b = r.count("dim_b", p.dim_b, 2, kMaxDim);
  p.pairs = r.count("pairs", p.pairs, 1, 10000000);
  const std::size_t rank = r.count("kraus_rank", p.map.kraus_rank, 1, 16);
  p.map = r.map("map", rank).value_or(MapSpec{p.map.name, rank, std::nullopt});
  p.tolerance = r.real("tolerance", p.tolerance);
  check_dims(p.dim_a, p.dim_b, p.state);
  check_map(p.map, p.dim_b, ParamReader::field("map"));
  return p;
}

CloningParams parse_cloning(ParamReader& r) {
  CloningParams p;
  p.dim = r.count("dim", p.dim, 2, 8);
  p.pairs = r.count("pairs", p.pairs, 1, 10000000);
  p.overlap_min = r.real("overlap_min", p.overlap_min);
  p.overlap_max = r.real("overlap_max", p.overlap_max);
  p.channels = r.count("channels", p.channels, 0, 1000000);
  p.kraus_rank = r.count("kraus_rank", p.kraus_rank, 1, 16);
  p.min_residual = r.real("min_residual", p.min_residual);
  p.tolerance = r.real("tolerance", p.tolerance);
  if (!(0.0 <= p.overlap_min && p.overlap_min <= p.overlap_max && p.overlap_max <= 1.0)) {
    throw ConfigError("parameters.overlap_min", "need 0 <= overlap_min <= overlap_max <= 1");
  }
  return p;
}

ContractionParams parse_contraction(ParamReader& r) {
  ContractionParams p;
  p.trials = r.count("trials", p.trials, 1, 10000000);
  p.dim_min = r.count("dim_min", p.dim_min, 2, 8);
  p.dim_max = r.count("dim_max", p.dim_max, p.dim_min, 8);
  p.rank_min = r.count("rank_min", p.rank_min, 1, 16);
  p.rank_max = r.count("rank_max", p.rank_max, p.rank_min, 16);
  p.tolerance = r.real("tolerance", p.tolerance);
  return p;
}

LinearityParams parse_linearity(ParamReader& r) {
  LinearityParams p;
  const std::size_t rank = r.count("kraus_rank", p.map.kraus_rank, 1, 16);
  p.map = r.map("map", rank).value_or(MapSpec{p.map.name, rank, std::nullopt});
  p.dim = r.count("dim", p.dim, 2, 8);
  p.trials = r.count("trials", p.trials, 1, 10000000);
  p.expect = r.choice("expect", p.expect, {"linear", "signaling"});
  p.tolerance = r.real("tolerance", p.tolerance);
  p.min_gap = r.real("min_gap", p.min_gap);
  p.reference_channel = r.map("reference_channel", rank);
  const std::size_t out = check_map(p.map, p.dim, ParamReader::field("map"));
  if (p.reference_channel) {
    const std::string field = ParamReader::field("reference_channel");
    if (is_nonlinear_name(p.reference_channel->name)) throw ConfigError(field, "must be a linear channel");
    if (check_map(*p.reference_channel, p.dim, field) != out) {
      throw ConfigError(field, "output dimension differs from the map's");
    }
  }
  return p;
}

json params_to_json(const ScenarioParams& params) {
  struct Visitor {
    json operator()(const SignalingParams& p) const {
      json j = {{"state", p.state},   {"dim_a", p.dim_a},   {"dim_b", p.dim_b},
                {"povm_1", p.povm_1}, {"povm_2", p.povm_2}, {"povm_outcomes", p.povm_outcomes},
                {"map", map_to_json(p.map)}, {"copies", p.copies}, {"trials", p.trials},
                {"tolerance", p.tolerance}, {"success_tolerance", p.success_tolerance}};
      if (p.expected_trace_distance) j["expected_trace_distance"] = *p.expected_trace_distance;
      if (p.min_success_rate) j["min_success_rate"] = *p.min_success_rate;
      if (p.expected_success_rate) j["expected_success_rate"] = *p.expected_success_rate;
      return j;
    }
    json operator()(const NoSignalingParams& p) const {
      return {{"state", p.state}, {"dim_a", p.dim_a}, {"dim_b", p.dim_b}, {"pairs", p.pairs},
              {"map", map_to_json(p.map)}, {"tolerance", p.tolerance}};
    }
    json operator()(const CloningParams& p) const {
      return {{"dim", p.dim}, {"pairs", p.pairs}, {"overlap_min", p.overlap_min},
              {"overlap_max", p.overlap_max}, {"channels", p.channels}, {"kraus_rank", p.kraus_rank},
              {"min_residual", p.min_residual}, {"tolerance", p.tolerance}};
    }
    json operator()(const ContractionParams& p) const {
      return {{"trials", p.trials}, {"dim_min", p.dim_min}, {"dim_max", p.dim_max},
              {"rank_min", p.rank_min}, {"rank_max", p.rank_max}, {"tolerance", p.tolerance}};
    }
    json operator()(const LinearityParams& p) const {
      json j = {{"map", map_to_json(p.map)}, {"dim", p.dim}, {"trials", p.trials}, {"expect", p.expect},
                {"tolerance", p.tolerance}, {"min_gap", p.min_gap}};
      if (p.reference_channel) j["reference_channel"] = map_to_json(*p.reference_channel);
      return j;
    }
  };
  return std::visit(Visitor{}, params);
}

// Report assembly.

class ReportBuilder {
 public:
  explicit ReportBuilder(const ScenarioConfig& config) {
    report_ = {{"scenario_name", config.name},
               {"kind", to_string(config.kind())},
               {"seed", config.seed},
               {"parameters", params_to_json(config.params)},
               {"trace_distance", nullptr},
               {"copies", nullptr},
               {"trials", nullptr},
               {"success_rate", nullptr},
               {"max_gap", nullptr},
               {"checks", json::array()}};
  }

  json& operator[](const char* key) { return report_[key]; }

  // Records a check and returns whether it passed.
  bool check(const std::string& name, double value, std::string_view relation, double threshold) {
    bool ok = false;
    if (relation == "<=") ok = value <= threshold;
    else if (relation == ">=") ok = value >= threshold;
    else if (relation == ">") ok = value > threshold;
    else if (relation == "==") ok = value == threshold;
    report_["checks"].push_back({{"name", name},
                                 {"status", ok ? "pass" : "fail"},
                                 {"value", value},
                                 {"relation", relation},
                                 {"threshold", threshold}});
    passed_ = passed_ && ok;
    return ok;
  }

  bool passed() const { return passed_; }

  void witness(json w) {
    if (!report_.contains("witness")) report_["witness"] = std::move(w);
  }

  void row(std::size_t trial, std::string metric, double value) {
    rows_.push_back({trial, std::move(metric), value});
  }

  CampaignResult finish() && {
    report_["status"] = passed_ ? "pass" : "fail";
    return {std::move(report_), std::move(rows_), passed_};
  }

 private:
  json report_;
  std::vector<TrialRow> rows_;
  bool passed_ = true;
};

json decomposition_to_json(const Decomposition& d) {
  json components = json::array();
  for (const DensityMatrix& c : d.components()) components.push_back(matrix_to_json(c.op()));
  return {{"weights", d.weights()}, {"components", std::move(components)}};
}

json povm_to_json(const Povm& povm) {
  json elements = json::array();
  for (const ComplexMatrix& e : povm.elements()) elements.push_back(matrix_to_json(e));
  return {{"labels", povm.labels()}, {"elements", std::move(elements)}};
}

CampaignResult run_signaling(const ScenarioConfig& config, const SignalingParams& p) {
  ReportBuilder rb(config);
  Rng rng = Rng::stream(config.seed, 0);
  const BipartiteDims dims(p.dim_a, p.dim_b);
  const SignalingScenario scenario{make_state(p.state, dims, rng),
                                   dims,
                                   make_povm(p.povm_1, p.dim_a, p.povm_outcomes, rng),
                                   make_povm(p.povm_2, p.dim_a, p.povm_outcomes, rng),
                                   resolve_map(p.map, p.dim_b, rng),
                                   p.copies,
                                   p.trials,
                                   config.seed};
  const SignalingReport r = run_scenario(scenario);
  rb["trace_distance"] = r.trace_distance;
  rb["success_rate"] = r.sampling_success_rate;
  rb["copies"] = r.copies_used;
  rb["trials"] = r.trials;

  const std::vector<bool> outcomes =
      discrimination_outcomes(r.rho_prime, r.rho_dblprime, p.copies, p.trials, config.seed);
  for (std::size_t t = 0; t < outcomes.size(); ++t) rb.row(t, "correct", outcomes[t] ? 1.0 : 0.0);

  bool ok = true;
  if (p.expected_trace_distance) {
    ok &= rb.check("trace_distance_matches", std::abs(r.trace_distance - *p.expected_trace_distance), "<=",
                   p.tolerance);
  }
  if (p.min_success_rate) {
    ok &= rb.check("success_rate_floor", r.sampling_success_rate, ">=", *p.min_success_rate);
  }
  if (p.expected_success_rate) {
    ok &= rb.check("success_rate_matches", std::abs(r.sampling_success_rate - *p.expected_success_rate), "<=",
                   p.success_tolerance);
  }
  if (p.copies == 1) {
    const double h = 0.5 * (1.0 + r.trace_distance);
    const double sigma = std::sqrt(h * (1.0 - h) / static_cast<double>(p.trials));
    ok &= rb.check("helstrom_ceiling", r.sampling_success_rate, "<=", h + 3.0 * sigma);
  }
  if (!ok) {
    rb.witness({{"rho_prime", matrix_to_json(r.rho_prime.op())},
                {"rho_dblprime", matrix_to_json(r.rho_dblprime.op())}});
  }
  return std::move(rb).finish();
}

CampaignResult run_no_signaling(const ScenarioConfig& config, const NoSignalingParams& p) {
  ReportBuilder rb(config);
  Rng rng = Rng::stream(config.seed, 0);
  const BipartiteDims dims(p.dim_a, p.dim_b);
  const DensityMatrix state = make_state(p.state, dims, rng);
  const LocalMap map = resolve_map(p.map, p.dim_b, rng);
  const NoSignalingCertificate cert = no_signaling_certificate(state, dims, p.pairs, map, rng);
  rb["max_gap"] = cert.max_gap;
  rb["trials"] = p.pairs;
  for (std::size_t t = 0; t < cert.gaps.size(); ++t) rb.row(t, "gap", cert.gaps[t]);
  if (!rb.check("max_gap_within_tolerance", cert.max_gap, "<=", p.tolerance) && cert.witness) {
    rb.witness({{"state", matrix_to_json(state.op())},
                {"povm_1", povm_to_json(cert.witness->first)},
                {"povm_2", povm_to_json(cert.witness->second)}});
  }
  return std::move(rb).finish();
}

PureState equal_superposition_01(std::size_t dim) {
  std::vector<Complex> v(dim);
  v[0] = M_SQRT1_2;
  v[1] = M_SQRT1_2;
  return PureState(std::move(v));
}

CampaignResult run_cloning(const ScenarioConfig& config, const CloningParams& p) {
  ReportBuilder rb(config);
  rb["trials"] = p.pairs;

  std::size_t rejected = 0;
  for (std::size_t t = 0; t < p.pairs; ++t) {
    Rng rng = Rng::stream(config.seed, t);
    const PureState psi = random_pure_state(p.dim, rng);
    const double target = p.overlap_min + (p.overlap_max - p.overlap_min) * rng.uniform();
    const PureState phi = pure_state_at_overlap(psi, target, rng);
    const CloningVerdict v = cloning_consistency_witness(psi, phi);
    rb.row(t, "overlap", v.overlap);
    if (!v.clonable) {
      ++rejected;
    } else {
      rb.witness({{"psi", pure_state_to_json(psi)}, {"phi", pure_state_to_json(phi)}, {"trial", t}});
    }
  }
  rb.check("nonorthogonal_pairs_rejected", static_cast<double>(rejected) / static_cast<double>(p.pairs), ">=",
           1.0);

  const PureState zero = PureState::basis(p.dim, 0);
  const PureState one = PureState::basis(p.dim, 1);
  rb.check("orthogonal_pair_clonable", cloning_consistency_witness(zero, one).clonable ? 1.0 : 0.0, "==", 1.0);
  rb.check("identical_pair_clonable", cloning_consistency_witness(zero, zero).clonable ? 1.0 : 0.0, "==", 1.0);

  const std::vector<PureState> basis_pair{zero, one};
  rb.check("basis_copier_residual", channel_cloning_residual(basis_copier_channel(p.dim), basis_pair), "<=",
           p.tolerance);
  const std::vector<PureState> single{zero};
  rb.check("single_state_residual", channel_cloning_residual(append_blank_channel(p.dim), single), "<=",
           p.tolerance);

  if (p.channels > 0) {
    const std::vector<PureState> test_set{zero, one, equal_superposition_01(p.dim)};
    Rng rng = Rng::stream(config.seed, p.pairs);
    double least = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < p.channels; ++c) {
      const KrausChannel ch = random_channel(p.dim, p.dim * p.dim, p.kraus_rank, rng);
      const double residual = channel_cloning_residual(ch, test_set);
      if (residual <= p.min_residual) rb.witness({{"channel", channel_to_json(ch)}, {"residual", residual}});
      least = std::min(least, residual);
    }
    rb.check("random_channel_residual", least, ">", p.min_residual);
  }
  return std::move(rb).finish();
}

CampaignResult run_contraction(const ScenarioConfig& config, const ContractionParams& p) {
  ReportBuilder rb(config);
  rb["trials"] = p.trials;
  double worst = -std::numeric_limits<double>::infinity();
  json worst_witness;
  for (std::size_t t = 0; t < p.trials; ++t) {
    Rng rng = Rng::stream(config.seed, t);
    const std::size_t dim = rng.uniform_int(p.dim_min, p.dim_max);
    const std::size_t rank = rng.uniform_int(p.rank_min, p.rank_max);
    const DensityMatrix rho = random_density(dim, rng);
    const DensityMatrix sigma = random_density(dim, rng);
    const KrausChannel ch = random_channel(dim, rank, rng);
    const double excess =
        trace_distance(apply_channel(ch, rho), apply_channel(ch, sigma)) - trace_distance(rho, sigma);
    rb.row(t, "excess", excess);
    if (excess > worst) {
      worst = excess;
      worst_witness = {{"trial", t},
                       {"rho", matrix_to_json(rho.op())},
                       {"sigma", matrix_to_json(sigma.op())},
                       {"channel", channel_to_json(ch)}};
    }
  }
  rb["max_gap"] = worst;
  if (!rb.check("max_excess_within_tolerance", worst, "<=", p.tolerance)) rb.witness(worst_witness);
  return std::move(rb).finish();
}

CampaignResult run_linearity(const ScenarioConfig& config, const LinearityParams& p) {
  ReportBuilder rb(config);
  rb["trials"] = p.trials;
  Rng rng = Rng::stream(config.seed, 0);
  const LocalMap map = resolve_map(p.map, p.dim, rng);
  const LinearityReport lr = is_linear_consistent(map, p.trials, p.dim, rng);
  rb["max_gap"] = lr.max_gap;
  for (std::size_t t = 0; t < lr.gaps.size(); ++t) rb.row(t, "gap", lr.gaps[t]);
  const bool ok = p.expect == "linear" ? rb.check("max_gap_within_tolerance", lr.max_gap, "<=", p.tolerance)
                                       : rb.check("max_gap_exceeds", lr.max_gap, ">", p.min_gap);
  if (!ok && lr.witness) {
    rb.witness({{"first", decomposition_to_json(lr.witness->first)},
                {"second", decomposition_to_json(lr.witness->second)}});
  }

  if (p.reference_channel) {
    Rng ref_rng = Rng::stream(config.seed, 1);
    const LocalMap reference = resolve_map(*p.reference_channel, p.dim, ref_rng);
    double worst = 0.0;
    for (std::size_t t = 0; t < p.trials; ++t) {
      const DensityMatrix rho = random_density(p.dim, ref_rng);
      const double diff = max_abs_diff(apply(map, rho).op(), apply(reference, rho).op());
      rb.row(t, "reference_diff", diff);
      if (diff > worst) worst = diff;
      if (diff > p.tolerance) rb.witness({{"state", matrix_to_json(rho.op())}, {"difference", diff}});
    }
    rb.check("reference_channel_agreement", worst, "<=", p.tolerance);
  }
  return std::move(rb).finish();
}

const std::vector<std::pair<BuiltinScenario, json>>& builtin_table() {
  static const std::vector<std::pair<BuiltinScenario, json>> table = [] {
    std::vector<std::pair<BuiltinScenario, json>> t;
    t.push_back({{"cloner-signals", "ideal cloner applied per steered component separates two decompositions of one state"},
                 {{"kind", "linear_consistency"},
                  {"parameters", {{"map", "ideal_cloner"}, {"dim", 2}, {"trials", 10}, {"expect", "signaling"},
                                  {"min_gap", 0.1}}}}});
    t.push_back({{"contraction", "random channels never increase trace distance (500 triples, dims 2-4, rank 1-4)"},
                 {{"kind", "contraction"}, {"parameters", json::object()}}});
    t.push_back({{"eq9-kraus", "collapse-to-|0> as a density-matrix map equals the two-operator Kraus reset"},
                 {{"kind", "linear_consistency"},
                  {"parameters", {{"map", "collapse_to_basis0"}, {"dim", 2}, {"trials", 1000}, {"expect", "linear"},
                                  {"reference_channel", "reset_to_zero"}}}}});
    t.push_back({{"flash", "Bell pair, Z vs X on Alice, ideal cloner on Bob: D = 1/2, 20-copy discrimination"},
                 {{"kind", "signaling"},
                  {"parameters", {{"state", "phi_plus"}, {"povm_1", "z_basis"}, {"povm_2", "x_basis"},
                                  {"map", "ideal_cloner"}, {"copies", 20}, {"trials", 1000},
                                  {"expected_trace_distance", 0.5}, {"min_success_rate", 0.99}}}}});
    t.push_back({{"flash-single-copy", "FLASH pair with one copy per trial: success at the Helstrom value 3/4"},
                 {{"kind", "signaling"},
                  {"parameters", {{"state", "phi_plus"}, {"povm_1", "z_basis"}, {"povm_2", "x_basis"},
                                  {"map", "ideal_cloner"}, {"copies", 1}, {"trials", 10000},
                                  {"expected_trace_distance", 0.5}, {"expected_success_rate", 0.75},
                                  {"success_tolerance", 0.02}}}}});
    t.push_back({{"no-cloning", "inner-product witness on random pairs and cloning residuals of Kraus channels"},
                 {{"kind", "cloning"}, {"parameters", json::object()}}});
    t.push_back({{"no-signaling", "random state and channel: 1000 random Alice POVM pairs leave Bob unchanged"},
                 {{"kind", "no_signaling_cert"},
                  {"parameters", {{"state", "ginibre"}, {"pairs", 1000}, {"map", "random_channel"}}}}});
    return t;
  }();
  return table;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::signaling: return "signaling";
    case ScenarioKind::no_signaling_cert: return "no_signaling_cert";
    case ScenarioKind::cloning: return "cloning";
    case ScenarioKind::contraction: return "contraction";
    case ScenarioKind::linear_consistency: return "linear_consistency";
  }
  return "unknown";
}

ScenarioConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "name" && key != "kind" && key != "seed" && key != "parameters") {
      throw ConfigError(key, "unknown field");
    }
  }
  ScenarioConfig config;
  const auto name = j.find("name");
  if (name == j.end() || !name->is_string() || name->get<std::string>().empty()) {
    throw ConfigError("name", "required non-empty string");
  }
  config.name = name->get<std::string>();

  const auto seed = j.find("seed");
  if (seed == j.end()) throw ConfigError("seed", "required");
  if (!is_count(*seed)) throw ConfigError("seed", "expected an unsigned 64-bit integer");
  config.seed = seed->get<std::uint64_t>();

  const auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) throw ConfigError("kind", "required string");
  const auto kind_name = kind->get<std::string>();

  const auto params_it = j.find("parameters");
  const json params = params_it == j.end() ? json::object() : *params_it;
  ParamReader reader(params);
  if (kind_name == "signaling") {
    config.params = parse_signaling(reader);
  } else if (kind_name == "no_signaling_cert") {
    config.params = parse_no_signaling(reader);
  } else if (kind_name == "cloning") {
    config.params = parse_cloning(reader);
  } else if (kind_name == "contraction") {
    config.params = parse_contraction(reader);
  } else if (kind_name == "linear_consistency") {
    config.params = parse_linearity(reader);
  } else {
    throw ConfigError("kind", "unknown kind '" + kind_name + "'");
  }
  reader.finish();
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

const std::vector<BuiltinScenario>& builtin_scenarios() {
  static const std::vector<BuiltinScenario> list = [] {
    std::vector<BuiltinScenario> out;
    for (const auto& [info, body] : builtin_table()) out.push_back(info);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
  }();
  return list;
}

std::string list_scenarios() {
  std::size_t width = 0;
  for (const BuiltinScenario& s : builtin_scenarios()) width = std::max(width, s.name.size());
  std::ostringstream out;
  for (const BuiltinScenario& s : builtin_scenarios()) {
    out << s.name << std::string(width + 2 - s.name.size(), ' ') << s.description << '\n';
  }
  return out.str();
}

ScenarioConfig builtin_config(std::string_view name, std::uint64_t seed) {
  for (const auto& [info, body] : builtin_table()) {
    if (info.name != name) continue;
    json j = body;
    j["name"] = std::string(name);
    j["seed"] = seed;
    return parse_config(j);
  }
  throw ConfigError("scenario", "unknown built-in scenario '" + std::string(name) + "'");
}

CampaignResult run_campaign(const ScenarioConfig& config) {
  return std::visit(
      [&config](const auto& p) -> CampaignResult {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SignalingParams>) return run_signaling(config, p);
        else if constexpr (std::is_same_v<P, NoSignalingParams>) return run_no_signaling(config, p);
        else if constexpr (std::is_same_v<P, CloningParams>) return run_cloning(config, p);
        else if constexpr (std::is_same_v<P, ContractionParams>) return run_contraction(config, p);
        else return run_linearity(config, p);
      },
      config.params);
}

std::string report_json(const CampaignResult& result) { return canonical_dump(result.report); }

std::string report_csv(const CampaignResult& result) {
  std::string name = result.report.at("scenario_name").get<std::string>();
  if (name.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : name) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
    name = quoted + "\"";
  }
  std::string out = "scenario_name,trial,metric,value\n";
  for (const TrialRow& row : result.rows) {
    out += name + "," + std::to_string(row.trial) + "," + row.metric + "," + format_number(row.value) + "\n";
  }
  return out;
}

}  // namespace nosignal
