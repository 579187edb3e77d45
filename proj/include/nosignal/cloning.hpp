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
#include <vector>

#include "nosignal/channels.hpp"
#include "nosignal/matrix.hpp"
#include "nosignal/random.hpp"
#include "nosignal/states.hpp"

namespace nosignal {

/// Normalized state vector.
class PureState {
 public:
  /// Throws ValidationError if the norm differs from 1 by more than 1e-9.
  explicit PureState(std::vector<Complex> amplitudes);

  /// |k⟩ in dimension dim.
  static PureState basis(std::size_t dim, std::size_t k);
  /// (|0⟩ + |1⟩)/√2 and (|0⟩ − |1⟩)/√2.
  static PureState plus();
  static PureState minus();

  std::size_t dim() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  DensityMatrix density() const { return DensityMatrix::pure(amplitudes_); }

  /// ⟨this|other⟩
  Complex inner(const PureState& other) const;
  PureState with_global_phase(double angle) const;

 private:
  std::vector<Complex> amplitudes_;
};

struct CloningVerdict {
  bool clonable;
  double overlap;  // |⟨ψ|φ⟩|
};

/// A unitary copier U|s⟩|0⟩ = |s⟩|s⟩ preserves inner products, which forces
/// ⟨ψ|φ⟩ = ⟨ψ|φ⟩². So a pair can share a cloner only if the overlap is 0 or 1
/// (within 1e-9 of either end).
CloningVerdict cloning_consistency_witness(const PureState& psi, const PureState& phi);

/// max over test states of D(Λ(|ψ⟩⟨ψ|), |ψ⟩⟨ψ| ⊗ |ψ⟩⟨ψ|) for a channel d → d².
double channel_cloning_residual(const KrausChannel& channel, std::span<const PureState> test_states);

/// Kraus set {|kk⟩⟨k|}: copies computational basis states exactly.
KrausChannel basis_copier_channel(std::size_t dim);

/// ρ ↦ ρ ⊗ |0⟩⟨0|.
KrausChannel append_blank_channel(std::size_t dim);

/// Haar-random pure state.
PureState random_pure_state(std::size_t dim, Rng& rng);

/// Random pure state at exactly the given overlap |⟨psi|φ⟩| from psi, with a
/// random relative phase and a random orthogonal direction.
PureState pure_state_at_overlap(const PureState& psi, double overlap, Rng& rng);

}  // namespace nosignal
