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
#include <span>
#include <string>
#include <vector>

#include "nosignal/matrix.hpp"
#include "nosignal/random.hpp"

namespace nosignal {

/// Tolerance shared by the trace, positivity and completeness checks.
inline constexpr double kStateTol = 1e-9;

/// Outcomes with probability below this are treated as impossible.
inline constexpr double kUnreachableProbability = 1e-12;

/// Hermitian, positive semidefinite, unit-trace operator.
///
/// Construction validates all three properties to within kStateTol and
/// stores the symmetrized operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& op);

  /// |ψ⟩⟨ψ| for a normalized amplitude vector.
  static DensityMatrix pure(std::span<const Complex> amplitudes);
  /// I/d
  static DensityMatrix maximally_mixed(std::size_t dim);

  const ComplexMatrix& op() const { return op_; }
  std::size_t dim() const { return op_.rows(); }

 private:
  ComplexMatrix op_;
};

/// Trace distance ½‖ρ − σ‖₁.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Finite set of PSD effects summing to the identity.
class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> elements, std::vector<std::string> labels = {});

  std::size_t dim() const { return elements_.front().rows(); }
  std::size_t size() const { return elements_.size(); }
  const ComplexMatrix& element(std::size_t j) const { return elements_[j]; }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<ComplexMatrix> elements_;
  std::vector<std::string> labels_;
};

/// A mixture Σ p_j ρ_j kept together with the specific components.
class Decomposition {
 public:
  Decomposition(std::vector<double> weights, std::vector<DensityMatrix> components);

  std::size_t size() const { return weights_.size(); }
  std::size_t dim() const { return components_.front().dim(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<DensityMatrix>& components() const { return components_; }

  /// Σ p_j ρ_j
  DensityMatrix mixture() const;

 private:
  std::vector<double> weights_;
  std::vector<DensityMatrix> components_;
};

/// Tr(ρ (A_j ⊗ B_μ)), clamped to [0, 1].
double joint_probability(const DensityMatrix& rho, const ComplexMatrix& alice_effect,
                         const ComplexMatrix& bob_effect, const BipartiteDims& dims);

/// Σ_j Tr(ρ (A_j ⊗ B_μ)): Bob's outcome probability when Alice's result is unknown.
double bob_marginal(const DensityMatrix& rho, const Povm& alice_povm,
                    const ComplexMatrix& bob_effect, const BipartiteDims& dims);

struct ConditionalState {
  double probability;
  DensityMatrix state;
};

/// Alice's outcome probability and Bob's state conditioned on it.
/// Throws UnreachableOutcome if the probability is below kUnreachableProbability.
ConditionalState conditional_state(const DensityMatrix& rho, const ComplexMatrix& alice_effect,
                                   const BipartiteDims& dims);

/// The decomposition of Bob's reduced state induced by Alice's measurement.
/// Impossible outcomes are dropped.
Decomposition steer(const DensityMatrix& rho, const Povm& alice_povm, const BipartiteDims& dims);

/// Bob's reduced state Tr_A ρ.
DensityMatrix reduced_state(const DensityMatrix& rho, const BipartiteDims& dims, Subsystem traced);

/// Ginibre-ensemble state G G† / Tr(G G†).
DensityMatrix random_density(std::size_t dim, Rng& rng);

/// Random POVM S^{-1/2} Q_k S^{-1/2} with Q_k = G_k G_k† and S = Σ Q_k.
/// A draw whose S is numerically singular is redrawn up to five times.
Povm random_povm(std::size_t dim, std::size_t n_outcomes, Rng& rng);

/// Rank-one projective measurement onto the columns of a Haar unitary.
Povm random_projective_povm(std::size_t dim, Rng& rng);

/// Computational basis measurement.
Povm z_basis_povm(std::size_t dim);
/// Fourier basis measurement; the |±⟩ basis for qubits.
Povm x_basis_povm(std::size_t dim);

/// Σ_i |ii⟩ / √d
DensityMatrix maximally_entangled(std::size_t dim);

}  // namespace nosignal
