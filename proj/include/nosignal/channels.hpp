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
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nosignal/matrix.hpp"
#include "nosignal/random.hpp"
#include "nosignal/states.hpp"

namespace nosignal {

/// Completely positive trace-preserving map ρ ↦ Σ K ρ K†.
class KrausChannel {
 public:
  /// Every operator must be dim_out x dim_in and Σ K†K = I to within 1e-9.
  explicit KrausChannel(std::vector<ComplexMatrix> kraus_ops);

  std::size_t dim_in() const { return ops_.front().cols(); }
  std::size_t dim_out() const { return ops_.front().rows(); }
  const std::vector<ComplexMatrix>& kraus_ops() const { return ops_; }

  static KrausChannel identity(std::size_t dim);

 private:
  std::vector<ComplexMatrix> ops_;
};

enum class NonlinearKind {
  /// ρ ↦ |0⟩⟨0| for every input.
  collapse_to_basis0,
  /// ρ ↦ ρ ⊗ ρ, exact duplication.
  ideal_cloner,
  /// ρ ↦ |v⟩⟨v| for the dominant eigenvector v of ρ.
  purify_dominant,
};

std::string_view to_string(NonlinearKind kind);
/// Throws ValidationError on an unknown name.
NonlinearKind nonlinear_kind_from_string(std::string_view name);

/// Trace-preserving state map from a closed set of kinds. Only collapse_to_basis0
/// is affine on density matrices; the others are genuinely nonlinear.
class NonlinearMap {
 public:
  NonlinearMap(NonlinearKind kind, std::size_t dim_in);

  NonlinearKind kind() const { return kind_; }
  std::size_t dim_in() const { return dim_in_; }
  /// dim_in², for ideal_cloner; dim_in otherwise.
  std::size_t dim_out() const;

 private:
  NonlinearKind kind_;
  std::size_t dim_in_;
};

/// Anything Bob can apply to the components of his ensemble.
using LocalMap = std::variant<KrausChannel, NonlinearMap>;

std::size_t dim_in(const LocalMap& map);
std::size_t dim_out(const LocalMap& map);
std::string describe(const LocalMap& map);

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho);
DensityMatrix apply_nonlinear(const NonlinearMap& map, const DensityMatrix& rho);
DensityMatrix apply(const LocalMap& map, const DensityMatrix& rho);

/// Σ_j p_j M(ρ_j): the map acts on each component as if it were the true state.
DensityMatrix evolve_decomposition(const LocalMap& map, const Decomposition& decomposition);

struct LinearityReport {
  double max_gap = 0.0;
  std::vector<double> gaps;  // one per trial
  /// The two decompositions of the same state that realized max_gap.
  std::optional<std::pair<Decomposition, Decomposition>> witness;
};

/// Samples `trials` random states of dimension `dim`, steers each into two
/// decompositions through a purification measured with two independent
/// random POVMs, evolves both, and reports the largest trace distance.
/// A map that is linear on density matrices yields max_gap at rounding level.
LinearityReport is_linear_consistent(const LocalMap& map, std::size_t trials, std::size_t dim, Rng& rng);

/// Random channel from a Haar-like isometry dim_in → dim_out·kraus_rank; the
/// Kraus operators are its consecutive dim_out-row blocks.
KrausChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t kraus_rank, Rng& rng);
inline KrausChannel random_channel(std::size_t dim, std::size_t kraus_rank, Rng& rng) {
  return random_channel(dim, dim, kraus_rank, rng);
}

/// The qubit pair {|0⟩⟨0|, |0⟩⟨1|} that resets every state to |0⟩⟨0|.
KrausChannel reset_to_zero_channel();

/// Qubit channel with Kraus set {I/2, X/2, Y/2, Z/2}; sends everything to I/2.
KrausChannel depolarizing_channel();

/// Compact dump of a channel for error messages.
std::string to_string(const KrausChannel& channel);

}  // namespace nosignal
