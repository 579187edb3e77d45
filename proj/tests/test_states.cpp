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

#include <gtest/gtest.h>

#include <cmath>

#include "nosignal/errors.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace nosignal {
namespace {

using testing::ket_bra;

constexpr double kTol = 1e-9;

DensityMatrix basis_state(std::size_t dim, std::size_t k) { return DensityMatrix(ket_bra(dim, k, k)); }

DensityMatrix plus_state() { return DensityMatrix(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}); }
DensityMatrix minus_state() { return DensityMatrix(ComplexMatrix{{0.5, -0.5}, {-0.5, 0.5}}); }

double min_eigenvalue(const ComplexMatrix& m) { return oracle::hermitian_eigenvalues(m).back(); }

TEST(DensityMatrixTest, RejectsInvalidOperators) {
  EXPECT_THROW(DensityMatrix(ComplexMatrix{{0.5, 0.1}, {0.2, 0.5}}), ValidationError);
  EXPECT_THROW(DensityMatrix(ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}}), ValidationError);
  EXPECT_THROW(DensityMatrix(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}), ValidationError);
  EXPECT_THROW(DensityMatrix(ComplexMatrix(2, 3)), DimensionError);
}

TEST(DensityMatrixTest, SymmetrizesSmallDrift) {
  ComplexMatrix m{{0.5, 0.2}, {0.2, 0.5}};
  m(0, 1) += 1e-11;
  const DensityMatrix rho(m);
  EXPECT_EQ(hermitian_asymmetry(rho.op()), 0.0);
}

TEST(JointProbabilityTest, DefiniteOutcome) {
  const DensityMatrix rho = basis_state(4, 0);  // |00⟩
  EXPECT_NEAR(joint_probability(rho, ket_bra(2, 0, 0), ket_bra(2, 0, 0), BipartiteDims(2, 2)), 1.0, kTol);
}

TEST(JointProbabilityTest, BellStateHasNoMismatchedOutcomes) {
  EXPECT_NEAR(joint_probability(maximally_entangled(2), ket_bra(2, 0, 0), ket_bra(2, 1, 1), BipartiteDims(2, 2)),
              0.0, kTol);
}

TEST(JointProbabilityTest, SumsToOneOverCompletePovms) {
  Rng rng(21);
  const BipartiteDims dims(2, 3);
  const DensityMatrix rho = random_density(6, rng);
  const Povm alice = random_povm(2, 3, rng);
  const Povm bob = random_povm(3, 4, rng);
  double total = 0.0;
  for (const auto& a : alice.elements()) {
    for (const auto& b : bob.elements()) total += joint_probability(rho, a, b, dims);
  }
  EXPECT_NEAR(total, 1.0, kTol);
}

TEST(JointProbabilityTest, OutOfRangeValuesAreErrors) {
  const DensityMatrix rho = basis_state(4, 0);
  const ComplexMatrix doubled = ComplexMatrix::identity(2) * 2.0;
  EXPECT_THROW(joint_probability(rho, doubled, ComplexMatrix::identity(2), BipartiteDims(2, 2)), ValidationError);
  EXPECT_THROW(joint_probability(rho, ComplexMatrix::identity(3), ComplexMatrix::identity(2), BipartiteDims(2, 2)),
               DimensionError);
  EXPECT_THROW(joint_probability(rho, ComplexMatrix::identity(2), ComplexMatrix::identity(2), BipartiteDims(2, 3)),
               DimensionError);
}

TEST(BobMarginalTest, IdentityEffectIsCertain) {
  Rng rng(22);
  const DensityMatrix rho = random_density(4, rng);
  EXPECT_NEAR(bob_marginal(rho, random_povm(2, 3, rng), ComplexMatrix::identity(2), BipartiteDims(2, 2)), 1.0, kTol);
}

TEST(BobMarginalTest, BellStateIsUnbiasedForEveryAlicePovm) {
  Rng rng(23);
  const BipartiteDims dims(2, 2);
  const DensityMatrix phi = maximally_entangled(2);
  for (const Povm& p : {z_basis_povm(2), x_basis_povm(2), random_povm(2, 4, rng)}) {
    EXPECT_NEAR(bob_marginal(phi, p, ket_bra(2, 0, 0), dims), 0.5, kTol);
  }
}

TEST(BobMarginalTest, IndependentOfAliceChoiceAndEqualToReducedState) {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const BipartiteDims dims(rng.uniform_int(2, 4), rng.uniform_int(2, 4));
    const DensityMatrix rho = random_density(dims.total(), rng);
    const Povm first = random_povm(dims.dim_a(), rng.uniform_int(2, 4), rng);
    const Povm second = random_povm(dims.dim_a(), rng.uniform_int(2, 4), rng);
    const Povm bob = random_povm(dims.dim_b(), 3, rng);
    const DensityMatrix rho_b = reduced_state(rho, dims, Subsystem::A);
    for (const auto& b : bob.elements()) {
      const double m1 = bob_marginal(rho, first, b, dims);
      const double m2 = bob_marginal(rho, second, b, dims);
      EXPECT_NEAR(m1, m2, kTol);
      EXPECT_NEAR(m1, (rho_b.op() * b).trace().real(), kTol);
    }
  }
}

TEST(ConditionalStateTest, ProductStateIsUnsteerable) {
  Rng rng(25);
  const DensityMatrix a = random_density(2, rng);
  const DensityMatrix b = random_density(3, rng);
  const DensityMatrix rho(tensor(a.op(), b.op()));
  const Povm p = random_povm(2, 3, rng);
  for (const auto& e : p.elements()) {
    const ConditionalState cs = conditional_state(rho, e, BipartiteDims(2, 3));
    EXPECT_LE(max_abs_diff(cs.state.op(), b.op()), kTol);
  }
}

TEST(ConditionalStateTest, BellStateSteeredInZBasis) {
  const ConditionalState cs = conditional_state(maximally_entangled(2), ket_bra(2, 0, 0), BipartiteDims(2, 2));
  EXPECT_NEAR(cs.probability, 0.5, kTol);
  EXPECT_LE(max_abs_diff(cs.state.op(), ket_bra(2, 0, 0)), kTol);
}

TEST(ConditionalStateTest, BellStateSteeredInXBasis) {
  const ConditionalState cs = conditional_state(maximally_entangled(2), plus_state().op(), BipartiteDims(2, 2));
  EXPECT_NEAR(cs.probability, 0.5, kTol);
  EXPECT_LE(max_abs_diff(cs.state.op(), plus_state().op()), kTol);
}

TEST(ConditionalStateTest, UnreachableOutcomeIsAnError) {
  EXPECT_THROW(conditional_state(basis_state(4, 0), ket_bra(2, 1, 1), BipartiteDims(2, 2)), UnreachableOutcome);
}

TEST(ConditionalStateTest, RareOutcomeStillYieldsValidState) {
  const double s = 1e-4;  // outcome probability s² = 1e-8
  const Complex psi[] = {std::sqrt(1 - s * s), 0, 0, s};
  const ConditionalState cs = conditional_state(DensityMatrix::pure(psi), ket_bra(2, 1, 1), BipartiteDims(2, 2));
  EXPECT_NEAR(cs.probability, s * s, 1e-15);
  EXPECT_LE(max_abs_diff(cs.state.op(), ket_bra(2, 1, 1)), 1e-6);
}

TEST(ConditionalStateTest, OutputsAreValidStatesOnRandomInputs) {
  Rng rng(26);
  for (int trial = 0; trial < 100; ++trial) {
    const BipartiteDims dims(rng.uniform_int(2, 4), rng.uniform_int(2, 4));
    const DensityMatrix rho = random_density(dims.total(), rng);
    const Povm p = random_povm(dims.dim_a(), 3, rng);
    for (const auto& e : p.elements()) {
      const ConditionalState cs = conditional_state(rho, e, dims);
      ASSERT_GE(cs.probability, 1e-6);
      EXPECT_NEAR(cs.state.op().trace().real(), 1.0, kTol);
      EXPECT_GE(min_eigenvalue(cs.state.op()), -kTol);
    }
  }
}

TEST(SteerTest, ProductStateComponentsAllEqualReducedState) {
  Rng rng(27);
  const DensityMatrix b = random_density(2, rng);
  const DensityMatrix rho(tensor(random_density(3, rng).op(), b.op()));
  const Decomposition d = steer(rho, random_povm(3, 4, rng), BipartiteDims(3, 2));
  ASSERT_EQ(d.size(), 4u);
  for (const auto& c : d.components()) EXPECT_LE(max_abs_diff(c.op(), b.op()), kTol);
}

TEST(SteerTest, BellStateZBasis) {
  const Decomposition d = steer(maximally_entangled(2), z_basis_povm(2), BipartiteDims(2, 2));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.weights()[0], 0.5, kTol);
  EXPECT_NEAR(d.weights()[1], 0.5, kTol);
  EXPECT_LE(max_abs_diff(d.components()[0].op(), ket_bra(2, 0, 0)), kTol);
  EXPECT_LE(max_abs_diff(d.components()[1].op(), ket_bra(2, 1, 1)), kTol);
}

TEST(SteerTest, BellStateXBasis) {
  const Decomposition d = steer(maximally_entangled(2), x_basis_povm(2), BipartiteDims(2, 2));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_NEAR(d.weights()[0], 0.5, kTol);
  EXPECT_NEAR(d.weights()[1], 0.5, kTol);
  EXPECT_LE(max_abs_diff(d.components()[0].op(), plus_state().op()), kTol);
  EXPECT_LE(max_abs_diff(d.components()[1].op(), minus_state().op()), kTol);
}

TEST(SteerTest, DropsImpossibleOutcomes) {
  const Decomposition d = steer(basis_state(4, 0), z_basis_povm(2), BipartiteDims(2, 2));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NEAR(d.weights()[0], 1.0, kTol);
}

TEST(SteerTest, MixtureReconstructsReducedState) {
  Rng rng(28);
  for (int trial = 0; trial < 100; ++trial) {
    const BipartiteDims dims(rng.uniform_int(2, 4), rng.uniform_int(2, 4));
    const DensityMatrix rho = random_density(dims.total(), rng);
    const Decomposition d = steer(rho, random_povm(dims.dim_a(), rng.uniform_int(2, 4), rng), dims);
    double total = 0.0;
    for (double w : d.weights()) total += w;
    EXPECT_NEAR(total, 1.0, kTol);
    EXPECT_LE(max_abs_diff(d.mixture().op(), partial_trace(rho.op(), dims, Subsystem::A)), kTol);
  }
}

TEST(DecompositionTest, RejectsBadWeights) {
  const DensityMatrix a = basis_state(2, 0);
  EXPECT_THROW(Decomposition({0.5, 0.4}, {a, a}), ValidationError);
  EXPECT_THROW(Decomposition({1.5, -0.5}, {a, a}), ValidationError);
  EXPECT_THROW(Decomposition({1.0}, {a, a}), ValidationError);
  EXPECT_THROW(Decomposition({0.5, 0.5}, {a, basis_state(3, 0)}), DimensionError);
}

TEST(RandomDensityTest, ReproducibleForFixedSeed) {
  Rng r1(99);
  Rng r2(99);
  EXPECT_EQ(random_density(2, r1).op(), random_density(2, r2).op());
}

TEST(RandomDensityTest, SatisfiesInvariantsAndIsFullRank) {
  Rng rng(29);
  for (std::size_t dim = 2; dim <= 8; ++dim) {
    const DensityMatrix rho = random_density(dim, rng);
    EXPECT_NEAR(rho.op().trace().real(), 1.0, kTol);
    EXPECT_GT(min_eigenvalue(rho.op()), 0.0);
  }
  EXPECT_THROW(random_density(1, rng), DimensionError);
  EXPECT_THROW(random_density(65, rng), DimensionError);
}

TEST(RandomDensityTest, EnsembleMeanIsMaximallyMixed) {
  Rng rng(30);
  ComplexMatrix sum(2, 2);
  constexpr int kSamples = 10000;
  for (int i = 0; i < kSamples; ++i) sum += random_density(2, rng).op();
  sum *= 1.0 / kSamples;
  EXPECT_LE(max_abs_diff(sum, ComplexMatrix::identity(2) * 0.5), 0.05);
}

TEST(RandomPovmTest, CompleteAndPositive) {
  Rng rng(31);
  for (std::size_t dim = 2; dim <= 5; ++dim) {
    for (std::size_t n = 2; n <= 5; ++n) {
      const Povm p = random_povm(dim, n, rng);
      ASSERT_EQ(p.size(), n);
      ComplexMatrix total(dim, dim);
      for (const auto& e : p.elements()) {
        EXPECT_GE(min_eigenvalue(e), -kTol);
        total += e;
      }
      EXPECT_LE(max_abs_diff(total, ComplexMatrix::identity(dim)), kTol);
    }
  }
  EXPECT_THROW(random_povm(2, 1, rng), ValidationError);
}

TEST(RandomPovmTest, ProjectiveDrawIsProjective) {
  Rng rng(32);
  const Povm p = random_projective_povm(3, rng);
  ASSERT_EQ(p.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      const ComplexMatrix product = p.element(i) * p.element(j);
      EXPECT_LE(max_abs_diff(product, i == j ? p.element(i) : ComplexMatrix(3, 3)), kTol);
    }
  }
}

TEST(PovmTest, RejectsIncompleteOrNonPositiveSets) {
  EXPECT_THROW(Povm({ket_bra(2, 0, 0)}), ValidationError);
  EXPECT_THROW(Povm({ComplexMatrix{{1.5, 0}, {0, 0}}, ComplexMatrix{{-0.5, 0}, {0, 1}}}), ValidationError);
  EXPECT_THROW(Povm({ket_bra(2, 0, 0), ket_bra(3, 1, 1)}), DimensionError);
}

TEST(PovmTest, FourierBasisIsComplete) {
  const Povm p = x_basis_povm(3);
  ComplexMatrix total(3, 3);
  for (const auto& e : p.elements()) total += e;
  EXPECT_LE(max_abs_diff(total, ComplexMatrix::identity(3)), kTol);
  EXPECT_EQ(x_basis_povm(2).labels(), (std::vector<std::string>{"+", "-"}));
}

}  // namespace
}  // namespace nosignal
