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

#include "nosignal/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nosignal/errors.hpp"

namespace nosignal {

namespace {

void require_input_dim(std::size_t expected, const DensityMatrix& rho, const char* what) {
  if (rho.dim() != expected) {
    throw DimensionError(std::string(what) + ": expects dimension " + std::to_string(expected) +
                         ", got " + std::to_string(rho.dim()));
  }
}

// |ψ⟩ = Σ_a |a⟩ ⊗ √ρ|a⟩, so that Tr_A |ψ⟩⟨ψ| = ρ.
DensityMatrix canonical_purification(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  const ComplexMatrix root = hermitian_function(rho.op(), [](double v) { return std::sqrt(std::max(v, 0.0)); });
  std::vector<Complex> psi(d * d);
  double norm2 = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      psi[a * d + b] = root(b, a);
      norm2 += std::norm(root(b, a));
    }
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& z : psi) z *= scale;
  return DensityMatrix::pure(psi);
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus_ops) : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw ValidationError("kraus channel: no operators");
  const std::size_t rows = ops_.front().rows();
  const std::size_t cols = ops_.front().cols();
  if (rows == 0 || cols == 0) throw DimensionError("kraus channel: empty operator");
  ComplexMatrix completeness(cols, cols);
  for (const ComplexMatrix& k : ops_) {
    if (k.rows() != rows || k.cols() != cols) {
      throw DimensionError("kraus channel: operators have different shapes");
    }
    completeness += k.adjoint() * k;
  }
  const double residual = max_abs_diff(completeness, ComplexMatrix::identity(cols));
  if (residual > kStateTol) {
    throw ValidationError("kraus channel: sum of K^dagger K differs from identity by " +
                          std::to_string(residual));
  }
}

KrausChannel KrausChannel::identity(std::size_t dim) {
  return KrausChannel({ComplexMatrix::identity(dim)});
}

std::string_view to_string(NonlinearKind kind) {
  switch (kind) {
    case NonlinearKind::collapse_to_basis0: return "collapse_to_basis0";
    case NonlinearKind::ideal_cloner: return "ideal_cloner";
    case NonlinearKind::purify_dominant: return "purify_dominant";
  }
  return "unknown";
}

NonlinearKind nonlinear_kind_from_string(std::string_view name) {
  for (NonlinearKind k : {NonlinearKind::collapse_to_basis0, NonlinearKind::ideal_cloner,
                          NonlinearKind::purify_dominant}) {
    if (to_string(k) == name) return k;
  }
  throw ValidationError("unknown nonlinear map kind '" + std::string(name) + "'");
}

NonlinearMap::NonlinearMap(NonlinearKind kind, std::size_t dim_in) : kind_(kind), dim_in_(dim_in) {
  if (dim_in < 2 || dim_out() > kMaxDim) {
    throw DimensionError("nonlinear map: input dimension " + std::to_string(dim_in) + " out of range");
  }
}

std::size_t NonlinearMap::dim_out() const {
  return kind_ == NonlinearKind::ideal_cloner ? dim_in_ * dim_in_ : dim_in_;
}

std::size_t dim_in(const LocalMap& map) {
  return std::visit([](const auto& m) { return m.dim_in(); }, map);
}

std::size_t dim_out(const LocalMap& map) {
  return std::visit([](const auto& m) { return m.dim_out(); }, map);
}

std::string to_string(const KrausChannel& channel) {
  return "kraus(dim_in=" + std::to_string(channel.dim_in()) + ", dim_out=" +
         std::to_string(channel.dim_out()) + ", rank=" + std::to_string(channel.kraus_ops().size()) + ")";
}

std::string describe(const LocalMap& map) {
  if (const auto* ch = std::get_if<KrausChannel>(&map)) return to_string(*ch);
  const auto& nm = std::get<NonlinearMap>(map);
  return std::string(to_string(nm.kind())) + "(dim_in=" + std::to_string(nm.dim_in()) + ")";
}

DensityMatrix apply_channel(const KrausChannel& channel, const DensityMatrix& rho) {
  require_input_dim(channel.dim_in(), rho, "apply_channel");
  ComplexMatrix out(channel.dim_out(), channel.dim_out());
  for (const ComplexMatrix& k : channel.kraus_ops()) out += k * rho.op() * k.adjoint();
  return DensityMatrix(out);
}

DensityMatrix apply_nonlinear(const NonlinearMap& map, const DensityMatrix& rho) {
  require_input_dim(map.dim_in(), rho, "apply_nonlinear");
  switch (map.kind()) {
    case NonlinearKind::collapse_to_basis0: {
      ComplexMatrix out(rho.dim(), rho.dim());
      out(0, 0) = 1.0;
      return DensityMatrix(out);
    }
    case NonlinearKind::ideal_cloner:
      return DensityMatrix(tensor(rho.op(), rho.op()));
    case NonlinearKind::purify_dominant: {
      const HermitianEigen eig = eig_hermitian(rho.op());
      std::vector<Complex> v(rho.dim());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = eig.vectors(i, 0);
      return DensityMatrix(ComplexMatrix::outer(v));
    }
  }
  throw ValidationError("apply_nonlinear: unknown kind");
}

DensityMatrix apply(const LocalMap& map, const DensityMatrix& rho) {
  if (const auto* ch = std::get_if<KrausChannel>(&map)) return apply_channel(*ch, rho);
  return apply_nonlinear(std::get<NonlinearMap>(map), rho);
}

DensityMatrix evolve_decomposition(const LocalMap& map, const Decomposition& decomposition) {
  const std::size_t out_dim = dim_out(map);
  ComplexMatrix sum(out_dim, out_dim);
  for (std::size_t j = 0; j < decomposition.size(); ++j) {
    sum += apply(map, decomposition.components()[j]).op() * decomposition.weights()[j];
  }
  return DensityMatrix(sum);
}

LinearityReport is_linear_consistent(const LocalMap& map, std::size_t trials, std::size_t dim, Rng& rng) {
  if (trials < 1) throw ValidationError("is_linear_consistent: need at least one trial");
  if (dim_in(map) != dim) {
    throw DimensionError("is_linear_consistent: map acts on dimension " + std::to_string(dim_in(map)) +
                         ", trials use " + std::to_string(dim));
  }
  const BipartiteDims dims(dim, dim);
  LinearityReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    const DensityMatrix rho_b = random_density(dim, rng);
    const DensityMatrix shared = canonical_purification(rho_b);
    const Povm first = random_povm(dim, rng.uniform_int(2, 4), rng);
    const Povm second = random_povm(dim, rng.uniform_int(2, 4), rng);
    Decomposition d1 = steer(shared, first, dims);
    Decomposition d2 = steer(shared, second, dims);
    const double gap = trace_distance(evolve_decomposition(map, d1), evolve_decomposition(map, d2));
    report.gaps.push_back(gap);
    if (!report.witness || gap > report.max_gap) {
      report.max_gap = gap;
      report.witness.emplace(std::move(d1), std::move(d2));
    }
  }
  return report;
}

KrausChannel random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t kraus_rank, Rng& rng) {
  if (kraus_rank < 1) throw ValidationError("random_channel: kraus rank must be at least 1");
  if (dim_in < 1 || dim_out < 1 || dim_in > kMaxDim || dim_out > kMaxDim) {
    throw DimensionError("random_channel: dimension out of range");
  }
  const ComplexMatrix v = random_isometry(dim_out * kraus_rank, dim_in, rng);
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < kraus_rank; ++k) {
    ComplexMatrix block(dim_out, dim_in);
    for (std::size_t i = 0; i < dim_out; ++i) {
      for (std::size_t j = 0; j < dim_in; ++j) block(i, j) = v(k * dim_out + i, j);
    }
    ops.push_back(std::move(block));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel reset_to_zero_channel() {
  return KrausChannel({ComplexMatrix{{1, 0}, {0, 0}}, ComplexMatrix{{0, 1}, {0, 0}}});
}

KrausChannel depolarizing_channel() {
  const Complex i{0.0, 1.0};
  return KrausChannel({ComplexMatrix{{0.5, 0}, {0, 0.5}}, ComplexMatrix{{0, 0.5}, {0.5, 0}},
                       ComplexMatrix{{0, -0.5 * i}, {0.5 * i, 0}}, ComplexMatrix{{0.5, 0}, {0, -0.5}}});
}

}  // namespace nosignal
