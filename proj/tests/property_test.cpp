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
#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "eoa/measure.hpp"
#include "eoa/rates.hpp"
#include "eoa/typicality.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace eoa {
namespace {

const Register kThreeQubits({{"A", 2}, {"B", 2}, {"C", 2}});
const RoleMap kAbc{"A", "B", {"C"}, {}, std::nullopt};

TEST(Properties, HermEigReconstruction) {
  testing::Gen g(101);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t d = testing::uniformIndex(g, 1, 16);
    const CMatrix h = testing::hermitian(d, g);
    const EigResult r = hermEig(h);
    CMatrix rebuilt(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) rebuilt(a, b) += r.values[j] * r.vectors(a, j) * std::conj(r.vectors(b, j));
      }
    }
    ASSERT_LT(maxAbsDiff(rebuilt, h), 1e-9) << "draw " << k;
    ASSERT_TRUE(isUnitary(r.vectors, 1e-9)) << "draw " << k;
    ASSERT_TRUE(std::is_sorted(r.values.rbegin(), r.values.rend()));
  }
}

TEST(Properties, DistanceSandwiches) {
  testing::Gen g(102);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t d = testing::uniformIndex(g, 2, 4);
    const CMatrix rho = testing::density(d, g, testing::uniformIndex(g, 1, d));
    const CMatrix sigma = testing::density(d, g, testing::uniformIndex(g, 1, d));
    const double f = fidelity(rho, sigma);
    const double t = traceDistance(rho, sigma);
    const double p = purifiedDistance(rho, sigma);
    ASSERT_LE(1.0 - f, t + 1e-8) << "draw " << k;
    ASSERT_LE(t, std::sqrt(1.0 - f * f) + 1e-8) << "draw " << k;
    ASSERT_LE(t, p + 1e-8) << "draw " << k;
    ASSERT_LE(p, 2.0 * std::sqrt(t) + 1e-8) << "draw " << k;
  }
}

TEST(Properties, StrongSubadditivity) {
  testing::Gen g(103);
  for (int k = 0; k < 1000; ++k) {
    const MultiState s = testing::mixedState(kThreeQubits, g, testing::uniformIndex(g, 1, 8));
    ASSERT_GE(coherentInfo(s, {"A"}, {"B", "C"}), coherentInfo(s, {"A"}, {"B"}) - 1e-9) << "draw " << k;
  }
}

TEST(Properties, CoherentInfoIsEntropyDifference) {
  testing::Gen g(104);
  for (int k = 0; k < 100; ++k) {
    const MultiState s = testing::mixedState(kThreeQubits, g);
    const RateReport r = assistedLowerBoundL(s, kAbc);
    const CMatrix rho = s.rho();
    auto entropy = [&](std::vector<bool> keep) {
      return oracle::shannon(clampSpectrum(hermEigenvalues(oracle::partialTrace(rho, {2, 2, 2}, keep))));
    };
    const double s_b = entropy({false, true, false});
    const double s_ab = entropy({true, true, false});
    const double s_bc = entropy({false, true, true});
    const double s_abc = entropy({true, true, true});
    EXPECT_NEAR(r.at(kKeyHashing), s_b - s_ab, 1e-9);
    EXPECT_NEAR(r.at(kKeyAcToB), s_b - s_abc, 1e-9);
    EXPECT_NEAR(r.at(kKeyAToBc), s_bc - s_abc, 1e-9);
    EXPECT_LE(r.at(kKeyL), r.at(kKeyAToBc) + 1e-9);
  }
}

TEST(Properties, PartialTraceComposition) {
  testing::Gen g(105);
  const Register reg({{"X", 2}, {"Y", 3}, {"Z", 2}});
  for (int k = 0; k < 50; ++k) {
    const MultiState s = testing::mixedState(reg, g);
    const MultiState step = partialTrace(partialTrace(s, {"Y", "Z"}), {"Z"});
    EXPECT_LT(maxAbsDiff(step.rho(), partialTrace(s, {"Z"}).rho()), 1e-10);
  }
}

TEST(Properties, PurifyRoundTrip) {
  testing::Gen g(106);
  const Register reg({{"X", 2}, {"Y", 2}});
  for (int k = 0; k < 50; ++k) {
    const MultiState s = testing::mixedState(reg, g, testing::uniformIndex(g, 1, 4));
    const MultiState p = purify(s, "R");
    EXPECT_TRUE(p.isPure());
    EXPECT_LT(maxAbsDiff(partialTrace(p, {"X", "Y"}).rho(), s.rho()), 1e-9);
  }
}

TEST(Properties, PureStateEntropyDuality) {
  testing::Gen g(107);
  const Register reg({{"P", 2}, {"Q", 3}, {"S", 2}});
  for (int k = 0; k < 50; ++k) {
    const MultiState s = testing::pureState(reg, g);
    EXPECT_NEAR(vonNeumann(s, {"P"}), vonNeumann(s, {"Q", "S"}), 1e-9);
    EXPECT_NEAR(vonNeumann(s, {"P", "S"}), vonNeumann(s, {"Q"}), 1e-9);
  }
}

TEST(Properties, PureStateBoundsAgree) {
  testing::Gen g(108);
  const Register reg({{"A", 2}, {"B", 2}, {"C1", 2}, {"C2", 2}});
  const RoleMap roles{"A", "B", {"C1", "C2"}, {}, std::nullopt};
  for (int k = 0; k < 30; ++k) {
    const MultiState s = testing::pureState(reg, g);
    const RateReport cut = minCutCoherentInfo(s, roles);
    const double pure_formula = std::min({vonNeumann(s, {"A"}), vonNeumann(s, {"A", "C1"}),
                                          vonNeumann(s, {"A", "C2"}), vonNeumann(s, {"A", "C1", "C2"})});
    EXPECT_LE(cut.at(kKeyBound), pure_formula + 1e-9);
    EXPECT_NEAR(cut.at(kKeyIcmin), pure_formula, 1e-9);
    EXPECT_NEAR(cutUpperBoundReport(s, roles).at(kKeyCutUpper), pure_formula, 1e-9);
  }
}

TEST(Properties, MeasurementConservesProbabilityAndStaysBelowUpperBound) {
  testing::Gen g(109);
  const Labels c = {"C"}, a = {"A"}, b = {"B"};
  for (int k = 0; k < 50; ++k) {
    const MultiState s = testing::pureState(kThreeQubits, g);
    const POVM e = testing::randomPOVM(c, 2, testing::uniformIndex(g, 2, 4), 1, g);
    const MeasurementEnsemble ens = measureHelper(s, c, e);
    EXPECT_NEAR(ens.totalProbability(), 1.0, 1e-8);
    EXPECT_LE(avgHashingRate(ens, a, b), cutUpperBoundReport(s, kAbc).at(kKeyCutUpper) + 1e-9);
  }
}

TEST(Properties, RefinementConsistency) {
  testing::Gen g(110);
  const Labels c = {"C"};
  const Register reg({{"A", 2}, {"B", 2}, {"C", 3}});
  for (int k = 0; k < 30; ++k) {
    const MultiState s = testing::mixedState(reg, g);
    const POVM f = testing::randomPOVM(c, 3, testing::uniformIndex(g, 2, 3), 2, g);
    const RefinedPOVM r = rankOneRefine(f);
    const MeasurementEnsemble coarse = coarseGrain(measureHelper(s, c, r.povm), r.parent);
    const MeasurementEnsemble direct = measureHelper(s, c, f);
    ASSERT_EQ(coarse.outcomes.size(), direct.outcomes.size());
    for (std::size_t x = 0; x < direct.outcomes.size(); ++x) {
      EXPECT_EQ(coarse.outcomes[x].index, direct.outcomes[x].index);
      EXPECT_NEAR(coarse.outcomes[x].prob, direct.outcomes[x].prob, 1e-9);
      EXPECT_LT(maxAbsDiff(coarse.outcomes[x].state.rho(), direct.outcomes[x].state.rho()), 1e-9);
    }
  }
}

TEST(Properties, BeatingHashingImpliesGain) {
  testing::Gen g(111);
  int beats = 0;
  for (int k = 0; k < 200; ++k) {
    const MultiState s = testing::mixedState(kThreeQubits, g, testing::uniformIndex(g, 1, 3));
    const HashingVerdict v = beatsHashing(s, kAbc);
    if (!v.beats) continue;
    ++beats;
    const RateReport r = assistedLowerBoundL(s, kAbc);
    EXPECT_GT(r.at(kKeyL), r.at(kKeyHashing));
  }
  EXPECT_GT(beats, 0);
}

TEST(Properties, MarkovUnionBound) {
  const ExampleState ex = decouplingExample();
  DecouplingOptions opts;
  opts.nList = {2, 3, 4};
  opts.trials = 5;
  const auto stats = decouplingExperiment(ex.state, {{"C2"}, {"B"}, {"R"}}, opts);
  for (const auto& st : stats) {
    for (const auto& t : st.perTrial) {
      for (double xi1 : {0.25, 0.5, 1.0, 2.0}) {
        for (double xi2 : {0.25, 0.5, 1.0, 2.0}) {
          const double rhs = 1.0 - t.avgTraceDistR / xi1 - t.avgTraceDistB / xi2;
          if (rhs > 0.0) EXPECT_GE(t.jointSuccessAt(xi1, xi2), rhs - 1e-9);
        }
      }
    }
  }
}

TEST(Properties, HaarOutcomeIndexIsUniform) {
  testing::Gen g(112);
  const MultiState s = testing::pureState(Register({{"C", 4}, {"B", 2}, {"R", 2}}), g);
  const Labels helper = {"C"};
  const int trials = 2000;
  std::vector<int> counts(4, 0);
  Rng rng(113);
  for (int k = 0; k < trials; ++k) {
    const MeasurementEnsemble ens = randomTypicalMeasurement(s, helper, 1, 1.0, rng);
    const auto best = std::max_element(ens.outcomes.begin(), ens.outcomes.end(),
                                       [](const Outcome& x, const Outcome& y) { return x.prob < y.prob; });
    ++counts[best->index];
  }
  double chi2 = 0.0;
  const double expected = trials / 4.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 99th percentile of chi-square with 3 degrees of freedom.
  EXPECT_LT(chi2, 11.345);
}

}  // namespace
}  // namespace eoa
