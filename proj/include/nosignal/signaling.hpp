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
#include <optional>
#include <utility>
#include <vector>

#include "nosignal/channels.hpp"
#include "nosignal/matrix.hpp"
#include "nosignal/states.hpp"

namespace nosignal {

/// Alice measures one of two POVMs on her half of a shared state; Bob applies
/// `map` to each component of the ensemble he is left with.
struct SignalingScenario {
  DensityMatrix shared_state;
  BipartiteDims dims;
  Povm povm_1;
  Povm povm_2;
  LocalMap map;
  std::size_t copies = 1;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;

  /// Throws DimensionError when the pieces do not fit together.
  void validate() const;
};

struct SignalingReport {
  DensityMatrix rho_prime;     // Bob's state after the map when Alice used povm_1
  DensityMatrix rho_dblprime;  // same, povm_2
  double trace_distance;
  double sampling_success_rate;
  std::size_t copies_used;
  std::size_t trials;
};

SignalingReport run_scenario(const SignalingScenario& scenario);

/// Single-copy optimum ½(1 + D) for telling rho1 from rho2 with equal priors.
double helstrom_success(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Monte Carlo discrimination of two known states.
///
/// Each trial picks the true hypothesis uniformly, measures `copies`
/// independent copies with the Helstrom projectors of rho1 − rho2 (the
/// non-negative eigenspace counts for hypothesis 1), and picks the hypothesis
/// with the larger likelihood of the observed count, ties going to
/// hypothesis 1. Trial t draws from Rng::stream(seed, t).
double distinguish_by_sampling(const DensityMatrix& rho1, const DensityMatrix& rho2,
                               std::size_t copies, std::size_t trials, std::uint64_t seed);

/// Per-trial verdicts (true = correct guess) behind distinguish_by_sampling.
std::vector<bool> discrimination_outcomes(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                          std::size_t copies, std::size_t trials, std::uint64_t seed);

struct NoSignalingCertificate {
  double max_gap = 0.0;
  std::vector<double> gaps;  // one per pair
  /// POVM pair that produced max_gap.
  std::optional<std::pair<Povm, Povm>> witness;
};

/// Largest trace distance between Bob's evolved ensembles over
/// `n_povm_pairs` random pairs of Alice POVMs (2 to 4 outcomes each).
NoSignalingCertificate no_signaling_certificate(const DensityMatrix& state, const BipartiteDims& dims,
                                                std::size_t n_povm_pairs, const LocalMap& map,
                                                Rng& rng);

}  // namespace nosignal
