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

#include "nosignal/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nosignal/errors.hpp"

namespace nosignal {

namespace {

// Conditional states from outcomes rarer than this may carry amplified
// rounding error and are projected back onto the state space.
constexpr double kRepairBelowProbability = 1e-6;

ComplexMatrix symmetrized(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

double clamp_probability(double p, const char* what) {
  if (p < -kStateTol || p > 1.0 + kStateTol) {
    throw ValidationError(std::string(what) + ": probability " + std::to_string(p) +
                          " is outside [0, 1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

DensityMatrix projected_onto_states(const ComplexMatrix& m) {
  ComplexMatrix clipped = hermitian_function(symmetrized(m), [](double v) { return std::max(v, 0.0); });
  const double tr = clipped.trace().real();
  if (tr <= 0.0) throw ValidationError("conditional state: operator has no positive part");
  clipped *= 1.0 / tr;
  return DensityMatrix(clipped);
}

void require_bipartite(const DensityMatrix& rho, const BipartiteDims& dims, const char* what) {
  if (rho.dim() != dims.total()) {
    throw DimensionError(std::string(what) + ": state has dimension " + std::to_string(rho.dim()) +
                         ", dims multiply to " + std::to_string(dims.total()));
  }
}

void require_square_of(const ComplexMatrix& m, std::size_t n, const char* what) {
  if (!m.is_square() || m.rows() != n) {
    throw DimensionError(std::string(what) + ": operator is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
}

// Tr(ρ (A ⊗ I)) and ρ (A ⊗ I), the quantities every Alice-side routine needs.
ComplexMatrix weighted_by_alice(const DensityMatrix& rho, const ComplexMatrix& alice_effect,
                                const BipartiteDims& dims) {
  require_bipartite(rho, dims, "alice effect");
  require_square_of(alice_effect, dims.dim_a(), "alice effect");
  return rho.op() * tensor(alice_effect, ComplexMatrix::identity(dims.dim_b()));
}

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& op) {
  if (!op.is_square() || op.rows() == 0) {
    throw DimensionError("density matrix: operator must be square and non-empty");
  }
  const double asym = hermitian_asymmetry(op);
  if (asym > kStateTol) {
    throw ValidationError("density matrix: not Hermitian (asymmetry " + std::to_string(asym) + ")");
  }
  op_ = symmetrized(op);
  const double tr = op_.trace().real();
  if (std::abs(tr - 1.0) > kStateTol) {
    throw ValidationError("density matrix: trace " + std::to_string(tr) + " is not 1");
  }
  const double min_eig = eig_hermitian(op_).values.back();
  if (min_eig < -kStateTol) {
    throw ValidationError("density matrix: not positive semidefinite (min eigenvalue " +
                          std::to_string(min_eig) + ")");
  }
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> amplitudes) {
  double norm2 = 0.0;
  for (const Complex& z : amplitudes) norm2 += std::norm(z);
  if (std::abs(norm2 - 1.0) > kStateTol) {
    throw ValidationError("pure state: amplitudes are not normalized");
  }
  return DensityMatrix(ComplexMatrix::outer(amplitudes));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(ComplexMatrix::identity(dim) * (1.0 / static_cast<double>(dim)));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionError("trace_distance: dimensions " + std::to_string(rho.dim()) + " and " +
                         std::to_string(sigma.dim()) + " differ");
  }
  return 0.5 * trace_norm(rho.op() - sigma.op());
}

Povm::Povm(std::vector<ComplexMatrix> elements, std::vector<std::string> labels)
    : elements_(std::move(elements)), labels_(std::move(labels)) {
  if (elements_.empty()) throw ValidationError("povm: no elements");
  const std::size_t n = elements_.front().rows();
  ComplexMatrix total(n, n);
  for (ComplexMatrix& e : elements_) {
    require_square_of(e, n, "povm element");
    const double asym = hermitian_asymmetry(e);
    if (asym > kStateTol) {
      throw ValidationError("povm: element is not Hermitian (asymmetry " + std::to_string(asym) + ")");
    }
    e = symmetrized(e);
    const double min_eig = eig_hermitian(e).values.back();
    if (min_eig < -kStateTol) {
      throw ValidationError("povm: element is not positive semidefinite (min eigenvalue " +
                            std::to_string(min_eig) + ")");
    }
    total += e;
  }
  const double residual = max_abs_diff(total, ComplexMatrix::identity(n));
  if (residual > kStateTol) {
    throw ValidationError("povm: elements do not sum to identity (residual " +
                          std::to_string(residual) + ")");
  }
  if (labels_.empty()) {
    for (std::size_t j = 0; j < elements_.size(); ++j) labels_.push_back(std::to_string(j));
  } else if (labels_.size() != elements_.size()) {
    throw ValidationError("povm: label count does not match element count");
  }
}

Decomposition::Decomposition(std::vector<double> weights, std::vector<DensityMatrix> components)
    : weights_(std::move(weights)), components_(std::move(components)) {
  if (weights_.empty() || weights_.size() != components_.size()) {
    throw ValidationError("decomposition: need one weight per component and at least one component");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0 && w <= 1.0)) throw ValidationError("decomposition: weight outside [0, 1]");
    total += w;
  }
  if (std::abs(total - 1.0) > kStateTol) {
    throw ValidationError("decomposition: weights sum to " + std::to_string(total));
  }
  for (const DensityMatrix& c : components_) {
    if (c.dim() != components_.front().dim()) {
      throw DimensionError("decomposition: components have different dimensions");
    }
  }
}

DensityMatrix Decomposition::mixture() const {
  ComplexMatrix sum(dim(), dim());
  for (std::size_t j = 0; j < size(); ++j) sum += components_[j].op() * weights_[j];
  return DensityMatrix(sum);
}

double joint_probability(const DensityMatrix& rho, const ComplexMatrix& alice_effect,
                         const ComplexMatrix& bob_effect, const BipartiteDims& dims) {
  require_bipartite(rho, dims, "joint_probability");
  require_square_of(alice_effect, dims.dim_a(), "joint_probability alice effect");
  require_square_of(bob_effect, dims.dim_b(), "joint_probability bob effect");
  const ComplexMatrix weighted = rho.op() * tensor(alice_effect, bob_effect);
  return clamp_probability(weighted.trace().real(), "joint_probability");
}

double bob_marginal(const DensityMatrix& rho, const Povm& alice_povm,
                    const ComplexMatrix& bob_effect, const BipartiteDims& dims) {
  if (alice_povm.dim() != dims.dim_a()) {
    throw DimensionError("bob_marginal: povm acts on dimension " + std::to_string(alice_povm.dim()) +
                         ", Alice has " + std::to_string(dims.dim_a()));
  }
  double total = 0.0;
  for (const ComplexMatrix& a : alice_povm.elements()) {
    total += joint_probability(rho, a, bob_effect, dims);
  }
  return clamp_probability(total, "bob_marginal");
}

ConditionalState conditional_state(const DensityMatrix& rho, const ComplexMatrix& alice_effect,
                                   const BipartiteDims& dims) {
  const ComplexMatrix weighted = weighted_by_alice(rho, alice_effect, dims);
  const double p = clamp_probability(weighted.trace().real(), "conditional_state");
  if (p < kUnreachableProbability) {
    throw UnreachableOutcome("conditional_state: outcome has probability " + std::to_string(p));
  }
  const ComplexMatrix unnormalized = partial_trace(weighted, dims, Subsystem::A) * (1.0 / p);
  if (p < kRepairBelowProbability) {
    return {p, projected_onto_states(unnormalized)};
  }
  return {p, DensityMatrix(unnormalized)};
}

Decomposition steer(const DensityMatrix& rho, const Povm& alice_povm, const BipartiteDims& dims) {
  if (alice_povm.dim() != dims.dim_a()) {
    throw DimensionError("steer: povm acts on dimension " + std::to_string(alice_povm.dim()) +
                         ", Alice has " + std::to_string(dims.dim_a()));
  }
  std::vector<double> weights;
  std::vector<DensityMatrix> components;
  for (const ComplexMatrix& a : alice_povm.elements()) {
    const ComplexMatrix weighted = weighted_by_alice(rho, a, dims);
    if (clamp_probability(weighted.trace().real(), "steer") < kUnreachableProbability) continue;
    ConditionalState cs = conditional_state(rho, a, dims);
    weights.push_back(cs.probability);
    components.push_back(std::move(cs.state));
  }
  return Decomposition(std::move(weights), std::move(components));
}

DensityMatrix reduced_state(const DensityMatrix& rho, const BipartiteDims& dims, Subsystem traced) {
  require_bipartite(rho, dims, "reduced_state");
  return DensityMatrix(partial_trace(rho.op(), dims, traced));
}

DensityMatrix random_density(std::size_t dim, Rng& rng) {
  if (dim < 2 || dim > kMaxDim) {
    throw DimensionError("random_density: dimension must be in [2, " + std::to_string(kMaxDim) + "]");
  }
  const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
  ComplexMatrix m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  return DensityMatrix(m);
}

Povm random_povm(std::size_t dim, std::size_t n_outcomes, Rng& rng) {
  if (n_outcomes < 2) throw ValidationError("random_povm: need at least two outcomes");
  if (dim < 1 || dim > kMaxDim) throw DimensionError("random_povm: dimension out of range");
  constexpr int kMaxRetries = 5;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    std::vector<ComplexMatrix> q;
    ComplexMatrix s(dim, dim);
    for (std::size_t k = 0; k < n_outcomes; ++k) {
      const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
      q.push_back(symmetrized(g * g.adjoint()));
      s += q.back();
    }
    const HermitianEigen eig = eig_hermitian(s);
    if (eig.values.back() <= 1e-12 * eig.values.front()) continue;
    const ComplexMatrix inv_sqrt = hermitian_function(s, [](double v) { return 1.0 / std::sqrt(v); });
    std::vector<ComplexMatrix> elements;
    for (const ComplexMatrix& qk : q) elements.push_back(symmetrized(inv_sqrt * qk * inv_sqrt));
    return Povm(std::move(elements));
  }
  throw ValidationError("random_povm: frame operator stayed singular after retries");
}

Povm random_projective_povm(std::size_t dim, Rng& rng) {
  const ComplexMatrix u = random_unitary(dim, rng);
  std::vector<ComplexMatrix> elements;
  std::vector<Complex> column(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t i = 0; i < dim; ++i) column[i] = u(i, k);
    elements.push_back(ComplexMatrix::outer(column));
  }
  return Povm(std::move(elements));
}

Povm z_basis_povm(std::size_t dim) {
  std::vector<ComplexMatrix> elements;
  for (std::size_t k = 0; k < dim; ++k) {
    ComplexMatrix e(dim, dim);
    e(k, k) = 1.0;
    elements.push_back(std::move(e));
  }
  return Povm(std::move(elements));
}

Povm x_basis_povm(std::size_t dim) {
  std::vector<ComplexMatrix> elements;
  std::vector<std::string> labels;
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<Complex> v(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(dim);
      v[j] = std::polar(norm, angle);
    }
    elements.push_back(ComplexMatrix::outer(v));
    labels.push_back(dim == 2 ? (k == 0 ? "+" : "-") : "f" + std::to_string(k));
  }
  return Povm(std::move(elements), std::move(labels));
}

DensityMatrix maximally_entangled(std::size_t dim) {
  std::vector<Complex> psi(dim * dim);
  const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t i = 0; i < dim; ++i) psi[i * dim + i] = amp;
  return DensityMatrix::pure(psi);
}

}  // namespace nosignal
