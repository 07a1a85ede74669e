// Copyright 2026 The eoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cmath>

#include <gtest/gtest.h>

#include "eoa/error.hpp"
#include "eoa/measure.hpp"
#include "eoa/rates.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace eoa {
namespace {

const Labels kA = {"A"};
const Labels kB = {"B"};
const Labels kC = {"C"};

ExampleState cqBellProduct() {
  const std::vector<double> p = {0.5, 0.5};
  const std::vector<std::vector<Complex>> states = {namedTwoQubitState("bell"), namedTwoQubitState("product")};
  return cqExample(p, states);
}

TEST(POVM, Validation) {
  POVM ok{kC, {CMatrix::diagonal({1.0, 0.0}), CMatrix::diagonal({0.0, 1.0})}};
  EXPECT_NO_THROW(ok.validate());
  POVM incomplete{kC, {CMatrix::diagonal({1.0, 0.0})}};
  EXPECT_THROW(incomplete.validate(), Error);
  POVM negative{kC, {CMatrix::diagonal({1.5, 0.5}), CMatrix::diagonal({-0.5, 0.5})}};
  EXPECT_THROW(negative.validate(), Error);
}

TEST(RankOneRefine, IdentitySplitsIntoBasis) {
  const RefinedPOVM r = rankOneRefine(POVM{kC, {CMatrix::identity(2)}});
  ASSERT_EQ(r.povm.elements.size(), 2u);
  EXPECT_TRUE(r.povm.isRankOne());
  EXPECT_EQ(r.parent, (std::vector<std::size_t>{0, 0}));
  EXPECT_LT(maxAbsDiff(r.povm.elements[0] + r.povm.elements[1], CMatrix::identity(2)), 1e-12);
}

TEST(RankOneRefine, RankOneUnchanged) {
  const POVM basis = basisPOVM(kC, 2);
  const RefinedPOVM r = rankOneRefine(basis);
  ASSERT_EQ(r.povm.elements.size(), 2u);
  for (std::size_t x = 0; x < 2; ++x) EXPECT_LT(maxAbsDiff(r.povm.elements[x], basis.elements[x]), 1e-12);
}

TEST(RankOneRefine, HalfIdentityPair) {
  const CMatrix half = 0.5 * CMatrix::identity(2);
  const RefinedPOVM r = rankOneRefine(POVM{kC, {half, half}});
  ASSERT_EQ(r.povm.elements.size(), 4u);
  EXPECT_EQ(r.parent, (std::vector<std::size_t>{0, 0, 1, 1}));
  for (const auto& e : r.povm.elements) EXPECT_NEAR(e.trace().real(), 0.5, 1e-12);
}

TEST(MeasureHelper, CqBasisMeasurementRecoversBlocks) {
  const ExampleState ex = cqBellProduct();
  const MeasurementEnsemble ens = measureHelper(ex.state, kC, basisPOVM(kC, 2));
  ASSERT_EQ(ens.outcomes.size(), 2u);
  EXPECT_NEAR(ens.outcomes[0].prob, 0.5, 1e-12);
  const MultiState bell = MultiState::fromAmplitudes(Register({{"A", 2}, {"B", 2}}), namedTwoQubitState("bell"));
  EXPECT_LT(maxAbsDiff(ens.outcomes[0].state.rho(), bell.rho()), 1e-12);
  EXPECT_LT(maxAbsDiff(ens.outcomes[1].state.rho(), CMatrix::diagonal({1.0, 0.0, 0.0, 0.0})), 1e-12);
}

TEST(MeasureHelper, ProductHelperLeavesRestAlone) {
  testing::Gen g(41);
  const MultiState ab = testing::mixedState(Register({{"A", 2}, {"B", 2}}), g);
  const MultiState s = tensorProduct(ab, testing::mixedState(Register({{"C", 3}}), g));
  const MeasurementEnsemble ens = measureHelper(s, kC, testing::randomPOVM(kC, 3, 3, 1, g));
  for (const auto& o : ens.outcomes) EXPECT_LT(maxAbsDiff(o.state.rho(), ab.rho()), 1e-10);
}

TEST(MeasureHelper, MixtureIsMarginal) {
  testing::Gen g(42);
  const Register reg({{"A", 2}, {"C", 3}, {"B", 2}});
  for (int k = 0; k < 10; ++k) {
    const MultiState s = testing::mixedState(reg, g);
    const MeasurementEnsemble ens = measureHelper(s, kC, testing::randomPOVM(kC, 3, 4, 2, g));
    EXPECT_NEAR(ens.totalProbability(), 1.0, 1e-8);
    EXPECT_LT(maxAbsDiff(ens.mixture(), partialTrace(s, {"A", "B"}).rho()), 1e-8);
  }
}

TEST(MeasureHelper, DimensionMismatch) {
  const ExampleState ex = cqBellProduct();
  try {
    measureHelper(ex.state, kC, basisPOVM(kC, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(AvgHashingRate, Examples) {
  const ExampleState ex = cqBellProduct();
  const MeasurementEnsemble ens = measureHelper(ex.state, kC, basisPOVM(kC, 2));
  EXPECT_NEAR(avgHashingRate(ens, kA, kB), 0.5, 1e-10);

  testing::Gen g(43);
  const MultiState prod = tensorProduct(tensorProduct(testing::mixedState(Register({{"A", 2}}), g),
                                                      testing::mixedState(Register({{"B", 2}}), g)),
                                        testing::mixedState(Register({{"C", 2}}), g));
  EXPECT_EQ(avgHashingRate(measureHelper(prod, kC, testing::randomPOVM(kC, 2, 2, 1, g)), kA, kB), 0.0);
}

TEST(AvgHashingRate, GhzXBasisGivesOneEbit) {
  const double h = std::sqrt(0.5);
  std::vector<Complex> v(8, 0.0);
  v[0] = h;
  v[7] = h;
  const MultiState ghz = MultiState::fromAmplitudes(Register({{"A", 2}, {"B", 2}, {"C", 2}}), v);
  const POVM x{kC, {CMatrix{{0.5, 0.5}, {0.5, 0.5}}, CMatrix{{0.5, -0.5}, {-0.5, 0.5}}}};
  const MeasurementEnsemble ens = measureHelper(ghz, kC, x);
  ASSERT_EQ(ens.outcomes.size(), 2u);
  for (const auto& o : ens.outcomes) EXPECT_NEAR(coherentInfo(o.state, kA, kB), 1.0, 1e-10);
  EXPECT_NEAR(avgHashingRate(ens, kA, kB), 1.0, 1e-10);
}

TEST(CqAssistance, Examples) {
  const std::vector<std::vector<Complex>> states = {namedTwoQubitState("bell"), namedTwoQubitState("product")};
  const std::vector<double> certain = {1.0, 0.0};
  const ExampleState a = cqExample(certain, states);
  EXPECT_NEAR(cqAssistance(a.state, a.roles), 1.0, 1e-10);
  const ExampleState b = cqBellProduct();
  EXPECT_NEAR(cqAssistance(b.state, b.roles), 0.5, 1e-10);
}

TEST(CqAssistance, MatchesClosedFormAndBasisMeasurement) {
  testing::Gen g(44);
  for (int k = 0; k < 20; ++k) {
    const std::size_t m = testing::uniformIndex(g, 2, 4);
    std::vector<double> p(m);
    std::vector<std::vector<Complex>> states;
    double total = 0.0, want = 0.0;
    for (auto& x : p) total += (x = testing::uniformReal(g, 0.05, 1.0));
    for (std::size_t i = 0; i < m; ++i) {
      p[i] /= total;
      states.push_back(testing::unitVector(4, g));
      want += p[i] * oracle::twoQubitEntropy(states.back());
    }
    const ExampleState ex = cqExample(p, states);
    EXPECT_NEAR(cqAssistance(ex.state, ex.roles), want, 1e-9);
    const MeasurementEnsemble ens = measureHelper(ex.state, kC, basisPOVM(kC, m));
    EXPECT_NEAR(avgHashingRate(ens, kA, kB), want, 1e-9);
  }
}

TEST(CqAssistance, RejectsCoherentHelper) {
  const double h = std::sqrt(0.5);
  std::vector<Complex> v(8, 0.0);
  v[0] = h;
  v[7] = h;
  const MultiState ghz = MultiState::fromAmplitudes(Register({{"A", 2}, {"B", 2}, {"C", 2}}), v);
  const MultiState plus = applyLocalUnitary(ghz, {"C"}, CMatrix{{h, h}, {h, -h}});
  try {
    cqAssistance(plus, RoleMap{"A", "B", {"C"}, {}, std::nullopt});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotClassicalQuantum);
  }
}

TEST(ConvexityWitness, SingleElementIsTight) {
  testing::Gen g(45);
  const Register reg({{"A", 2}, {"B", 2}, {"C", 2}});
  const MultiState psi = testing::pureState(reg, g);
  const std::vector<std::pair<double, MultiState>> dec = {{1.0, psi}};
  const ConvexityWitness w = convexityWitness(psi, dec, testing::randomPOVM(kC, 2, 2, 1, g),
                                              RoleMap{"A", "B", {"C"}, {}, std::nullopt});
  // Pure outcomes: hashing equals entanglement entropy.
  EXPECT_NEAR(w.lhs, w.rhs, 1e-9);
}

TEST(ConvexityWitness, CqBasisBothSidesEqualAverageEntropy) {
  const ExampleState ex = cqBellProduct();
  const MultiState bell_c0 = tensorProduct(
      MultiState::fromAmplitudes(Register({{"A", 2}, {"B", 2}}), namedTwoQubitState("bell")),
      MultiState(Register({{"C", 2}}), CMatrix::diagonal({1.0, 0.0})));
  const MultiState prod_c1 = tensorProduct(
      MultiState::fromAmplitudes(Register({{"A", 2}, {"B", 2}}), namedTwoQubitState("product")),
      MultiState(Register({{"C", 2}}), CMatrix::diagonal({0.0, 1.0})));
  const std::vector<std::pair<double, MultiState>> dec = {{0.5, bell_c0}, {0.5, prod_c1}};
  const ConvexityWitness w = convexityWitness(ex.state, dec, basisPOVM(kC, 2), ex.roles);
  EXPECT_NEAR(w.lhs, 0.5, 1e-9);
  EXPECT_NEAR(w.rhs, 0.5, 1e-9);
}

TEST(ConvexityWitness, MismatchedDecomposition) {
  const ExampleState ex = cqBellProduct();
  testing::Gen g(46);
  const std::vector<std::pair<double, MultiState>> dec = {
      {1.0, testing::pureState(Register({{"A", 2}, {"B", 2}, {"C", 2}}), g)}};
  try {
    convexityWitness(ex.state, dec, basisPOVM(kC, 2), ex.roles);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDecompositionMismatch);
  }
}

TEST(CoarseGrain, RefinedHalfIdentityMatchesDirect) {
  testing::Gen g(47);
  const MultiState s = testing::mixedState(Register({{"A", 2}, {"B", 2}, {"C", 2}}), g);
  const CMatrix half = 0.5 * CMatrix::identity(2);
  const POVM f{kC, {half, half}};
  const RefinedPOVM r = rankOneRefine(f);
  const MeasurementEnsemble coarse = coarseGrain(measureHelper(s, kC, r.povm), r.parent);
  const MeasurementEnsemble direct = measureHelper(s, kC, f);
  ASSERT_EQ(coarse.outcomes.size(), direct.outcomes.size());
  for (std::size_t x = 0; x < direct.outcomes.size(); ++x) {
    EXPECT_NEAR(coarse.outcomes[x].prob, direct.outcomes[x].prob, 1e-12);
    EXPECT_LT(maxAbsDiff(coarse.outcomes[x].state.rho(), direct.outcomes[x].state.rho()), 1e-12);
  }
}

}  // namespace
}  // namespace eoa
