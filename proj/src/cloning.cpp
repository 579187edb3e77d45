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

#include "nosignal/cloning.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nosignal/errors.hpp"

namespace nosignal {

namespace {

constexpr double kOverlapTol = 1e-9;

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw DimensionError("pure state: no amplitudes");
  double norm2 = 0.0;
  for (const Complex& z : amplitudes_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ValidationError("pure state: non-finite amplitude");
    }
    norm2 += std::norm(z);
  }
  if (std::abs(std::sqrt(norm2) - 1.0) > kStateTol) {
    throw ValidationError("pure state: norm " + std::to_string(std::sqrt(norm2)) + " is not 1");
  }
}

PureState PureState::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw DimensionError("pure state: basis index out of range");
  std::vector<Complex> v(dim);
  v[k] = 1.0;
  return PureState(std::move(v));
}

PureState PureState::plus() { return PureState({M_SQRT1_2, M_SQRT1_2}); }
PureState PureState::minus() { return PureState({M_SQRT1_2, -M_SQRT1_2}); }

Complex PureState::inner(const PureState& other) const {
  if (dim() != other.dim()) {
    throw DimensionError("inner product: dimensions " + std::to_string(dim()) + " and " +
                         std::to_string(other.dim()) + " differ");
  }
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < dim(); ++i) sum += std::conj(amplitudes_[i]) * other.amplitudes_[i];
  return sum;
}

PureState PureState::with_global_phase(double angle) const {
  std::vector<Complex> v(amplitudes_);
  const Complex phase = std::polar(1.0, angle);
  for (Complex& z : v) z *= phase;
  return PureState(std::move(v));
}

CloningVerdict cloning_consistency_witness(const PureState& psi, const PureState& phi) {
  const double overlap = std::min(1.0, std::abs(psi.inner(phi)));
  const bool clonable = overlap <= kOverlapTol || overlap >= 1.0 - kOverlapTol;
  return {clonable, overlap};
}

double channel_cloning_residual(const KrausChannel& channel, std::span<const PureState> test_states) {
  double worst = 0.0;
  for (const PureState& psi : test_states) {
    const std::size_t d = psi.dim();
    if (channel.dim_in() != d || channel.dim_out() != d * d) {
      throw DimensionError("channel_cloning_residual: channel must map dimension " + std::to_string(d) +
                           " to " + std::to_string(d * d));
    }
    const DensityMatrix rho = psi.density();
    const DensityMatrix target(tensor(rho.op(), rho.op()));
    worst = std::max(worst, trace_distance(apply_channel(channel, rho), target));
  }
  return worst;
}

KrausChannel basis_copier_channel(std::size_t dim) {
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < dim; ++k) {
    ComplexMatrix op(dim * dim, dim);
    op(k * dim + k, k) = 1.0;
    ops.push_back(std::move(op));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel append_blank_channel(std::size_t dim) {
  ComplexMatrix op(dim * dim, dim);
  for (std::size_t k = 0; k < dim; ++k) op(k * dim, k) = 1.0;
  return KrausChannel({op});
}

PureState random_pure_state(std::size_t dim, Rng& rng) {
  std::vector<Complex> v(dim);
  double norm2 = 0.0;
  for (Complex& z : v) {
    z = rng.complex_normal();
    norm2 += std::norm(z);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& z : v) z *= scale;
  return PureState(std::move(v));
}

PureState pure_state_at_overlap(const PureState& psi, double overlap, Rng& rng) {
  if (overlap < 0.0 || overlap > 1.0) throw ValidationError("pure_state_at_overlap: overlap outside [0, 1]");
  if (psi.dim() < 2) throw DimensionError("pure_state_at_overlap: need dimension >= 2");
  // Gram-Schmidt a random direction against psi.
  std::vector<Complex> perp;
  double perp_norm = 0.0;
  while (perp_norm < 1e-6) {
    const PureState r = random_pure_state(psi.dim(), rng);
    const Complex c = psi.inner(r);
    perp.assign(r.amplitudes().begin(), r.amplitudes().end());
    perp_norm = 0.0;
    for (std::size_t i = 0; i < perp.size(); ++i) {
      perp[i] -= c * psi.amplitudes()[i];
      perp_norm += std::norm(perp[i]);
    }
    perp_norm = std::sqrt(perp_norm);
  }
  const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
  const double ortho = std::sqrt(1.0 - overlap * overlap);
  std::vector<Complex> v(psi.dim());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = phase * overlap * psi.amplitudes()[i] + ortho * perp[i] / perp_norm;
  }
  return PureState(std::move(v));
}

}  // namespace nosignal
