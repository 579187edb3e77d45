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

#include <gtest/gtest.h>

#include <cmath>

#include "nosignal/errors.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace nosignal {
namespace {

using testing::ket_bra;

constexpr double kTol = 1e-9;

DensityMatrix plus_state() { return DensityMatrix(ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}); }
DensityMatrix minus_state() { return DensityMatrix(ComplexMatrix{{0.5, -0.5}, {-0.5, 0.5}}); }

TEST(ApplyChannelTest, KrausPairResetsGeneralQubitState) {
  // [[a, b], [b*, 1 − a]] with |b|² ≤ a(1 − a).
  const double a = 0.3;
  const Complex b{0.2, 0.1};
  const DensityMatrix rho(ComplexMatrix{{a, b}, {std::conj(b), 1 - a}});
  const KrausChannel reset({ComplexMatrix{{1, 0}, {0, 0}}, ComplexMatrix{{0, 1}, {0, 0}}});
  EXPECT_LE(max_abs_diff(apply_channel(reset, rho).op(), ket_bra(2, 0, 0)), kTol);
  EXPECT_LE(max_abs_diff(apply_channel(reset_to_zero_channel(), rho).op(), ket_bra(2, 0, 0)), kTol);
}

TEST(ApplyChannelTest, IdentityChannelIsNoOp) {
  Rng rng(41);
  const DensityMatrix rho = random_density(3, rng);
  EXPECT_LE(max_abs_diff(apply_channel(KrausChannel::identity(3), rho).op(), rho.op()), kTol);
}

TEST(ApplyChannelTest, DepolarizingSendsEverythingToMaximallyMixed) {
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    EXPECT_LE(max_abs_diff(apply_channel(depolarizing_channel(), rho).op(), ComplexMatrix::identity(2) * 0.5), kTol);
  }
}

TEST(ApplyChannelTest, RejectsDimensionMismatch) {
  EXPECT_THROW(apply_channel(KrausChannel::identity(2), DensityMatrix::maximally_mixed(3)), DimensionError);
}

TEST(KrausChannelTest, RejectsIncompleteOrRaggedSets) {
  EXPECT_THROW(KrausChannel({ComplexMatrix{{1, 0}, {0, 0}}}), ValidationError);
  EXPECT_THROW(KrausChannel({ComplexMatrix::identity(2), ComplexMatrix::identity(3)}), DimensionError);
  EXPECT_THROW(KrausChannel(std::vector<ComplexMatrix>{}), ValidationError);
}

TEST(ApplyNonlinearTest, CollapseSendsPureStateToBasisZero) {
  const Complex alpha{0.6, 0.0};
  const Complex beta{0.0, 0.8};
  const Complex amps[] = {alpha, beta};
  const NonlinearMap collapse(NonlinearKind::collapse_to_basis0, 2);
  EXPECT_LE(max_abs_diff(apply_nonlinear(collapse, DensityMatrix::pure(amps)).op(), ket_bra(2, 0, 0)), kTol);
}

TEST(ApplyNonlinearTest, IdealClonerDuplicates) {
  const NonlinearMap cloner(NonlinearKind::ideal_cloner, 2);
  EXPECT_EQ(cloner.dim_out(), 4u);
  const DensityMatrix out = apply_nonlinear(cloner, plus_state());
  const Complex pp[] = {0.5, 0.5, 0.5, 0.5};
  EXPECT_LE(max_abs_diff(out.op(), ComplexMatrix::outer(pp)), kTol);
}

TEST(ApplyNonlinearTest, PurifyDominantKeepsTopEigenvector) {
  const NonlinearMap purify(NonlinearKind::purify_dominant, 2);
  const double d[] = {0.9, 0.1};
  const double expected[] = {1.0, 0.0};
  EXPECT_LE(max_abs_diff(apply_nonlinear(purify, DensityMatrix(ComplexMatrix::diagonal(d))).op(),
                         ComplexMatrix::diagonal(expected)),
            kTol);
}

TEST(ApplyNonlinearTest, PurifyDominantIsDeterministicAtDegeneracy) {
  const NonlinearMap purify(NonlinearKind::purify_dominant, 3);
  const DensityMatrix a = apply_nonlinear(purify, DensityMatrix::maximally_mixed(3));
  const DensityMatrix b = apply_nonlinear(purify, DensityMatrix::maximally_mixed(3));
  EXPECT_EQ(a.op(), b.op());
  EXPECT_NEAR((a.op() * a.op()).trace().real(), 1.0, kTol);
}

TEST(ApplyNonlinearTest, RejectsDimensionMismatch) {
  EXPECT_THROW(apply_nonlinear(NonlinearMap(NonlinearKind::ideal_cloner, 3), plus_state()), DimensionError);
  EXPECT_THROW(NonlinearMap(NonlinearKind::ideal_cloner, 9), DimensionError);
}

TEST(NonlinearKindTest, NamesRoundTrip) {
  for (NonlinearKind k : {NonlinearKind::collapse_to_basis0, NonlinearKind::ideal_cloner,
                          NonlinearKind::purify_dominant}) {
    EXPECT_EQ(nonlinear_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(nonlinear_kind_from_string("amplify"), ValidationError);
}

TEST(EvolveDecompositionTest, LinearMapReturnsReducedState) {
  Rng rng(43);
  const DensityMatrix rho = random_density(4, rng);
  const BipartiteDims dims(2, 2);
  const Decomposition d = steer(rho, random_povm(2, 3, rng), dims);
  EXPECT_LE(max_abs_diff(evolve_decomposition(KrausChannel::identity(2), d).op(),
                         partial_trace(rho.op(), dims, Subsystem::A)),
            kTol);
}

TEST(EvolveDecompositionTest, ClonerOnZEnsemble) {
  const Decomposition d({0.5, 0.5}, {DensityMatrix(ket_bra(2, 0, 0)), DensityMatrix(ket_bra(2, 1, 1))});
  const DensityMatrix out = evolve_decomposition(NonlinearMap(NonlinearKind::ideal_cloner, 2), d);
  const double expected[] = {0.5, 0, 0, 0.5};
  EXPECT_LE(max_abs_diff(out.op(), ComplexMatrix::diagonal(expected)), kTol);
}

TEST(EvolveDecompositionTest, ClonerOnXEnsemble) {
  const Decomposition d({0.5, 0.5}, {plus_state(), minus_state()});
  const DensityMatrix out = evolve_decomposition(NonlinearMap(NonlinearKind::ideal_cloner, 2), d);
  const Complex pp[] = {0.5, 0.5, 0.5, 0.5};
  const Complex mm[] = {0.5, -0.5, -0.5, 0.5};
  const ComplexMatrix expected = 0.5 * (ComplexMatrix::outer(pp) + ComplexMatrix::outer(mm));
  EXPECT_LE(max_abs_diff(out.op(), expected), kTol);
}

TEST(EvolveDecompositionTest, OutputIsValidForEveryKind) {
  Rng rng(44);
  const BipartiteDims dims(3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix rho = random_density(9, rng);
    const Decomposition d = steer(rho, random_povm(3, 4, rng), dims);
    for (NonlinearKind k : {NonlinearKind::collapse_to_basis0, NonlinearKind::ideal_cloner,
                            NonlinearKind::purify_dominant}) {
      const DensityMatrix out = evolve_decomposition(NonlinearMap(k, 3), d);
      EXPECT_NEAR(out.op().trace().real(), 1.0, kTol);
      EXPECT_GE(oracle::hermitian_eigenvalues(out.op()).back(), -kTol);
    }
  }
}

TEST(LinearConsistencyTest, WrappedChannelsShowNoGap) {
  Rng rng(45);
  const LinearityReport report = is_linear_consistent(random_channel(3, 2, rng), 20, 3, rng);
  EXPECT_LE(report.max_gap, kTol);
  EXPECT_EQ(report.gaps.size(), 20u);
}

TEST(LinearConsistencyTest, IdealClonerSignals) {
  Rng rng(46);
  const LinearityReport report = is_linear_consistent(NonlinearMap(NonlinearKind::ideal_cloner, 2), 10, 2, rng);
  EXPECT_GT(report.max_gap, 0.1);
  ASSERT_TRUE(report.witness.has_value());
  // The witnesses decompose one and the same state.
  EXPECT_LE(max_abs_diff(report.witness->first.mixture().op(), report.witness->second.mixture().op()), kTol);
}

TEST(LinearConsistencyTest, CollapseIsLinearOnDensityMatrices) {
  Rng rng(47);
  EXPECT_LE(is_linear_consistent(NonlinearMap(NonlinearKind::collapse_to_basis0, 2), 50, 2, rng).max_gap, kTol);
}

TEST(LinearConsistencyTest, RejectsBadArguments) {
  Rng rng(48);
  EXPECT_THROW(is_linear_consistent(KrausChannel::identity(2), 0, 2, rng), ValidationError);
  EXPECT_THROW(is_linear_consistent(KrausChannel::identity(2), 5, 3, rng), DimensionError);
}

TEST(RandomChannelTest, RankOneIsUnitary) {
  Rng rng(49);
  const KrausChannel ch = random_channel(4, 1, rng);
  ASSERT_EQ(ch.kraus_ops().size(), 1u);
  const ComplexMatrix& u = ch.kraus_ops().front();
  EXPECT_LE(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(4)), kTol);
}

TEST(RandomChannelTest, CompleteForManySeeds) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    const std::size_t dim = rng.uniform_int(2, 5);
    const KrausChannel ch = random_channel(dim, rng.uniform_int(1, 4), rng);
    ComplexMatrix total(dim, dim);
    for (const auto& k : ch.kraus_ops()) total += k.adjoint() * k;
    EXPECT_LE(max_abs_diff(total, ComplexMatrix::identity(dim)), kTol);
  }
}

TEST(RandomChannelTest, FixedSeedIsByteIdentical) {
  Rng r1(50);
  Rng r2(50);
  EXPECT_EQ(random_channel(3, 3, r1).kraus_ops(), random_channel(3, 3, r2).kraus_ops());
}

TEST(RandomChannelTest, DimensionChangingVariant) {
  Rng rng(51);
  const KrausChannel ch = random_channel(2, 4, 3, rng);
  EXPECT_EQ(ch.dim_in(), 2u);
  EXPECT_EQ(ch.dim_out(), 4u);
  EXPECT_THROW(random_channel(2, 0, rng), ValidationError);
}

// Properties over random inputs.

TEST(ChannelPropertyTest, TracePreservedAndLinearOnMixtures) {
  Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = rng.uniform_int(2, 4);
    const KrausChannel ch = random_channel(dim, rng.uniform_int(1, 4), rng);
    const DensityMatrix rho = random_density(dim, rng);
    EXPECT_NEAR(apply_channel(ch, rho).op().trace().real(), 1.0, kTol);

    const DensityMatrix r1 = random_density(dim, rng);
    const DensityMatrix r2 = random_density(dim, rng);
    const double p = rng.uniform();
    const DensityMatrix mixed(p * r1.op() + (1 - p) * r2.op());
    const ComplexMatrix separately = p * apply_channel(ch, r1).op() + (1 - p) * apply_channel(ch, r2).op();
    EXPECT_LE(max_abs_diff(apply_channel(ch, mixed).op(), separately), kTol);
  }
}

TEST(ChannelPropertyTest, CollapseEqualsKrausResetOnQubits) {
  Rng rng(53);
  const NonlinearMap collapse(NonlinearKind::collapse_to_basis0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    EXPECT_LE(max_abs_diff(apply_nonlinear(collapse, rho).op(), apply_channel(reset_to_zero_channel(), rho).op()),
              kTol);
  }
}

TEST(ChannelPropertyTest, ChannelsContractTraceDistance) {
  Rng rng(54);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = rng.uniform_int(2, 4);
    const KrausChannel ch = random_channel(dim, rng.uniform_int(1, 4), rng);
    const DensityMatrix rho = random_density(dim, rng);
    const DensityMatrix sigma = random_density(dim, rng);
    EXPECT_LE(trace_distance(apply_channel(ch, rho), apply_channel(ch, sigma)), trace_distance(rho, sigma) + kTol);
  }
}

}  // namespace
}  // namespace nosignal
