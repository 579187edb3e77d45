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

#include "nosignal/signaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nosignal/errors.hpp"

namespace nosignal {

namespace {

// log-likelihood of k successes in n Bernoulli(q) draws, up to the binomial
// coefficient shared by both hypotheses.
double log_likelihood(std::size_t k, std::size_t n, double q) {
  const auto term = [](std::size_t count, double prob) {
    if (count == 0) return 0.0;
    if (prob <= 0.0) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(count) * std::log(prob);
  };
  return term(k, q) + term(n - k, 1.0 - q);
}

}  // namespace

void SignalingScenario::validate() const {
  if (shared_state.dim() != dims.total()) {
    throw DimensionError("scenario: shared state dimension " + std::to_string(shared_state.dim()) +
                         " does not match dims " + std::to_string(dims.total()));
  }
  if (povm_1.dim() != dims.dim_a() || povm_2.dim() != dims.dim_a()) {
    throw DimensionError("scenario: povms must act on Alice's dimension " + std::to_string(dims.dim_a()));
  }
  if (dim_in(map) != dims.dim_b()) {
    throw DimensionError("scenario: map acts on dimension " + std::to_string(dim_in(map)) +
                         ", Bob has " + std::to_string(dims.dim_b()));
  }
  if (copies < 1 || trials < 1) throw ValidationError("scenario: copies and trials must be positive");
}

SignalingReport run_scenario(const SignalingScenario& scenario) {
  scenario.validate();
  DensityMatrix rho_prime = evolve_decomposition(scenario.map, steer(scenario.shared_state, scenario.povm_1, scenario.dims));
  DensityMatrix rho_dblprime = evolve_decomposition(scenario.map, steer(scenario.shared_state, scenario.povm_2, scenario.dims));
  const double distance = std::clamp(trace_distance(rho_prime, rho_dblprime), 0.0, 1.0);
  const double success =
      distinguish_by_sampling(rho_prime, rho_dblprime, scenario.copies, scenario.trials, scenario.seed);
  return {std::move(rho_prime), std::move(rho_dblprime), distance, success, scenario.copies, scenario.trials};
}

double helstrom_success(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  return 0.5 * (1.0 + trace_distance(rho1, rho2));
}

double distinguish_by_sampling(const DensityMatrix& rho1, const DensityMatrix& rho2,
                               std::size_t copies, std::size_t trials, std::uint64_t seed) {
  const std::vector<bool> outcomes = discrimination_outcomes(rho1, rho2, copies, trials, seed);
  const auto correct = std::count(outcomes.begin(), outcomes.end(), true);
  return static_cast<double>(correct) / static_cast<double>(trials);
}

std::vector<bool> discrimination_outcomes(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                          std::size_t copies, std::size_t trials, std::uint64_t seed) {
  if (rho1.dim() != rho2.dim()) throw DimensionError("distinguish_by_sampling: dimensions differ");
  if (copies < 1 || trials < 1) {
    throw ValidationError("distinguish_by_sampling: copies and trials must be positive");
  }
  const std::size_t n = rho1.dim();
  const HermitianEigen eig = eig_hermitian(rho1.op() - rho2.op());
  // Zero eigenvalues are float noise away from either sign; count them as 0.
  constexpr double kZeroEigenvalue = 1e-12;
  ComplexMatrix positive(n, n);
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] < -kZeroEigenvalue) continue;
    for (std::size_t i = 0; i < n; ++i) v[i] = eig.vectors(i, k);
    positive += ComplexMatrix::outer(v);
  }
  const auto plus_probability = [&](const DensityMatrix& rho) {
    return std::clamp((rho.op() * positive).trace().real(), 0.0, 1.0);
  };
  const double q1 = plus_probability(rho1);
  const double q2 = plus_probability(rho2);

  std::vector<bool> outcomes(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = Rng::stream(seed, t);
    const bool truth_is_first = rng.bernoulli(0.5);
    const double q = truth_is_first ? q1 : q2;
    std::size_t plus = 0;
    for (std::size_t c = 0; c < copies; ++c) plus += rng.bernoulli(q) ? 1 : 0;
    const bool guess_first = log_likelihood(plus, copies, q1) >= log_likelihood(plus, copies, q2);
    outcomes[t] = guess_first == truth_is_first;
  }
  return outcomes;
}

NoSignalingCertificate no_signaling_certificate(const DensityMatrix& state, const BipartiteDims& dims,
                                                std::size_t n_povm_pairs, const LocalMap& map,
                                                Rng& rng) {
  if (state.dim() != dims.total()) throw DimensionError("no_signaling_certificate: state/dims mismatch");
  if (dim_in(map) != dims.dim_b()) throw DimensionError("no_signaling_certificate: map/dims mismatch");
  NoSignalingCertificate cert;
  for (std::size_t pair = 0; pair < n_povm_pairs; ++pair) {
    Povm first = random_povm(dims.dim_a(), rng.uniform_int(2, 4), rng);
    Povm second = random_povm(dims.dim_a(), rng.uniform_int(2, 4), rng);
    const double gap = trace_distance(evolve_decomposition(map, steer(state, first, dims)),
                                      evolve_decomposition(map, steer(state, second, dims)));
    cert.gaps.push_back(gap);
    if (!cert.witness || gap > cert.max_gap) {
      cert.max_gap = gap;
      cert.witness.emplace(std::move(first), std::move(second));
    }
  }
  return cert;
}

}  // namespace nosignal
