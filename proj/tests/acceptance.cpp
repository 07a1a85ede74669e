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
// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "eoa/measure.hpp"
#include "eoa/rates.hpp"
#include "eoa/typicality.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace eoa {
namespace {

struct Verdict {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "failed: " << what << "; ";
    ok = ok && cond;
  }
};

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol; }
bool roundsTo(double x, double hundredths) { return std::round(x * 100.0) == hundredths; }

const double kH14 = oracle::binaryEntropy(0.25);
const double kChainL = 1.0 - oracle::binaryEntropy((1.0 - std::sqrt(0.5)) / 2.0);

void chainExactness(Verdict& v) {
  const ExampleState ex = factorizedChainExample();
  const RateReport r = assistedLowerBoundL(ex.state, ex.roles);
  const double ac_b = r.at(kKeyAcToB), a_bc = r.at(kKeyAToBc), a_b = r.at(kKeyHashing);
  v.require(near(kChainL, 0.399124, 5e-7) && near(kH14, 0.811278, 5e-7), "closed forms");
  v.require(near(ac_b, 0.399124, 5e-6) && roundsTo(ac_b, 40), "I(AC>B)");
  v.require(near(a_bc, 0.811278, 5e-6) && roundsTo(a_bc, 81), "I(A>BC)");
  v.require(near(a_b, -0.811278, 5e-6) && a_b < 0.0, "I(A>B)");
  v.detail << "I(AC>B)=" << ac_b << " I(A>BC)=" << a_bc << " I(A>B)=" << a_b;
}

void cnotFailureMode(Verdict& v) {
  const ExampleState plain = factorizedChainExample();
  const ExampleState bent = cnotCorruptedExample();
  const double i_ac1 = coherentInfo(bent.state, {"A"}, {"C1"});
  const std::vector<double> spec = hermEigenvalues(partialTrace(bent.state, {"C1"}).rho());
  const double l_psi = assistedLowerBoundL(plain.state, plain.roles).at(kKeyL);
  const double l_phi = assistedLowerBoundL(bent.state, bent.roles).at(kKeyL);
  const double before = chainHierarchicalRate(chainLinksFrom(plain.state, plain.links)).rate;
  const double after = chainHierarchicalRate(chainLinksFrom(bent.state, bent.links)).rate;
  v.require(near(i_ac1, 0.0, 1e-9), "I(A>C1)=0");
  v.require(near(spec[0], 0.75, 1e-9) && near(spec[1], 0.25, 1e-9), "C1 spectrum");
  v.require(near(l_psi, l_phi, 1e-9), "L unchanged");
  v.require(near(before, 0.399124, 5e-6) && after == 0.0, "chain rate drop");
  v.detail << "I(A>C1)=" << i_ac1 << " L(psi)-L(phi)=" << l_psi - l_phi << " R_hier " << before << " -> " << after;
}

void hierarchicalEquality(Verdict& v) {
  const ExampleState ex = factorizedChainExample();
  double worst = std::abs(chainHierarchicalRate(chainLinksFrom(ex.state, ex.links)).raw -
                          assistedLowerBoundL(ex.state, ex.roles).at(kKeyL));
  testing::Gen g(301);
  const RoleMap roles{"A", "B", {"C1", "C2"}, {{"C1", "C2"}}, "R"};
  const std::vector<std::pair<Labels, Labels>> links = {{{"A"}, {"C1"}}, {{"C2"}, {"B"}}};
  for (int k = 0; k < 100; ++k) {
    const MultiState ac1 = testing::pureState(Register({{"A", 2}, {"C1", 2}}), g);
    const MultiState bc2r = testing::pureState(Register({{"B", 2}, {"C2", 2}, {"R", 2}}), g);
    const MultiState s = tensorProduct(ac1, bc2r);
    const ChainRate chain = chainHierarchicalRate(chainLinksFrom(s, links));
    const double l = assistedLowerBoundL(s, roles).at(kKeyL);
    worst = std::max({worst, std::abs(chain.raw - l), std::abs(chain.rate - std::max(0.0, l))});
  }
  v.require(worst <= 1e-9, "chain rate = L");
  v.detail << "max |R_hier - L| over 101 states = " << worst;
}

void pureCollapse(Verdict& v) {
  testing::Gen g(401);
  const RoleMap abc{"A", "B", {"C"}, {}, std::nullopt};
  double worst3 = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Register reg({{"A", testing::uniformIndex(g, 2, 3)}, {"B", testing::uniformIndex(g, 2, 3)}, {"C", 2}});
    const MultiState s = testing::pureState(reg, g);
    const double want = std::min(vonNeumann(s, {"A"}), vonNeumann(s, {"B"}));
    worst3 = std::max(worst3, std::abs(assistedLowerBoundL(s, abc).at(kKeyBound) - want));
  }
  const Register reg4({{"A", 2}, {"B", 2}, {"C1", 2}, {"C2", 2}});
  const RoleMap two{"A", "B", {"C1", "C2"}, {}, std::nullopt};
  const std::vector<bool> base = {true, false, false, false};
  double worst4 = 0.0;
  for (int k = 0; k < 100; ++k) {
    const MultiState s = testing::pureState(reg4, g);
    double want = 1e9;
    for (int t = 0; t < 4; ++t) {
      std::vector<bool> keep = base;
      keep[2] = (t & 1) != 0;
      keep[3] = (t & 2) != 0;
      const CMatrix rho = oracle::partialTrace(s.rho(), {2, 2, 2, 2}, keep);
      want = std::min(want, oracle::shannon(clampSpectrum(hermEigenvalues(rho))));
    }
    worst4 = std::max(worst4, std::abs(minCutCoherentInfo(s, two).at(kKeyIcmin) - want));
  }
  v.require(worst3 <= 1e-8, "tripartite bound = min{S(A),S(B)}");
  v.require(worst4 <= 1e-8, "two-helper min cut = min_T S(AT)");
  v.detail << "max dev tripartite " << worst3 << ", two-helper " << worst4;
}

void cqExactness(Verdict& v) {
  testing::Gen g(501);
  const Labels a = {"A"}, b = {"B"}, c = {"C"};
  double worst_formula = 0.0, worst_hashing = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t m = testing::uniformIndex(g, 2, 4);
    std::vector<double> p(m);
    double total = 0.0, want = 0.0;
    for (auto& x : p) total += (x = testing::uniformReal(g, 0.05, 1.0));
    std::vector<std::vector<Complex>> states;
    for (std::size_t i = 0; i < m; ++i) {
      p[i] /= total;
      states.push_back(testing::unitVector(4, g));
      want += p[i] * oracle::twoQubitEntropy(states.back());
    }
    const ExampleState ex = cqExample(p, states);
    const double rate = cqAssistance(ex.state, ex.roles);
    const double hashing = avgHashingRate(measureHelper(ex.state, c, basisPOVM(c, m)), a, b);
    worst_formula = std::max(worst_formula, std::abs(rate - want));
    worst_hashing = std::max(worst_hashing, std::abs(rate - hashing));
  }
  v.require(worst_formula <= 1e-9, "cqAssistance = sum p_i S(A)");
  v.require(worst_hashing <= 1e-9, "cqAssistance = avgHashingRate(basis)");
  v.detail << "max dev formula " << worst_formula << ", basis hashing " << worst_hashing;
}

void propertySuites(Verdict& v) {
  testing::Gen g(601);
  const Register three({{"A", 2}, {"B", 2}, {"C", 2}});
  const RoleMap abc{"A", "B", {"C"}, {}, std::nullopt};
  int ssa_bad = 0, sandwich_bad = 0, implication_bad = 0, convexity_bad = 0, corpus = 0;
  for (int k = 0; k < 1000; ++k) {
    const MultiState s = testing::mixedState(three, g, testing::uniformIndex(g, 1, 8));
    if (coherentInfo(s, {"A"}, {"B", "C"}) < coherentInfo(s, {"A"}, {"B"}) - 1e-9) ++ssa_bad;
  }
  for (int k = 0; k < 1000; ++k) {
    const std::size_t d = testing::uniformIndex(g, 2, 4);
    const CMatrix rho = testing::density(d, g, testing::uniformIndex(g, 1, d));
    const CMatrix sigma = testing::density(d, g, testing::uniformIndex(g, 1, d));
    const double f = fidelity(rho, sigma), t = traceDistance(rho, sigma), p = purifiedDistance(rho, sigma);
    const bool ok = 1.0 - f <= t + 1e-8 && t <= std::sqrt(1.0 - f * f) + 1e-8 && t <= p + 1e-8 &&
                    p <= 2.0 * std::sqrt(t) + 1e-8;
    if (!ok) ++sandwich_bad;
  }
  // Corpus: the built-in examples plus seeded random three-party states.
  std::vector<ExampleState> states;
  for (const char* name : {"factorized-chain", "cnot-corrupted", "maximally-entangled", "chain-2-repeaters", "cq"}) {
    states.push_back(namedExample(name));
  }
  for (int k = 0; k < 300; ++k) {
    const bool pure = k % 3 == 0;
    states.push_back({pure ? testing::pureState(three, g) : testing::mixedState(three, g, testing::uniformIndex(g, 1, 4)),
                      abc, {}});
  }
  for (const auto& ex : states) {
    ++corpus;
    const HashingVerdict hv = beatsHashing(ex.state, ex.roles);
    const RateReport r = assistedLowerBoundL(ex.state, ex.roles);
    if (hv.beats && !(r.at(kKeyL) > r.at(kKeyHashing))) ++implication_bad;
  }
  const Labels c = {"C"};
  for (int k = 0; k < 200; ++k) {
    const std::size_t parts = testing::uniformIndex(g, 1, 3);
    std::vector<std::pair<double, MultiState>> dec;
    std::vector<double> w(parts);
    double total = 0.0;
    for (auto& x : w) total += (x = testing::uniformReal(g, 0.1, 1.0));
    CMatrix rho(8, 8);
    for (std::size_t i = 0; i < parts; ++i) {
      dec.emplace_back(w[i] / total, testing::pureState(three, g));
      rho += (w[i] / total) * dec.back().second.rho();
    }
    const MultiState s(three, 0.5 * (rho + rho.adjoint()));
    const POVM f = testing::randomPOVM(c, 2, testing::uniformIndex(g, 2, 3), 1, g);
    const ConvexityWitness cw = convexityWitness(s, dec, f, abc);
    if (cw.lhs > cw.rhs + 1e-9) ++convexity_bad;
  }
  v.require(ssa_bad == 0, "strong subadditivity");
  v.require(sandwich_bad == 0, "distance sandwiches");
  v.require(implication_bad == 0, "beats hashing implies L > I(A>B)");
  v.require(convexity_bad == 0, "convexity witness");
  v.detail << "violations: ssa " << ssa_bad << "/1000, sandwich " << sandwich_bad << "/1000, implication "
           << implication_bad << "/" << corpus << ", convexity " << convexity_bad << "/200";
}

void decouplingTrend(Verdict& v) {
  const ExampleState ex = decouplingExample();
  DecouplingOptions opts;
  opts.nList = {2, 4, 6};
  opts.trials = 20;
  opts.delta = 0.2;
  opts.seed = 42;
  const auto stats = decouplingExperiment(ex.state, {{"C2"}, {"B"}, {"R"}}, opts);
  bool monotone = true;
  for (std::size_t i = 1; i < stats.size(); ++i) monotone = monotone && stats[i].meanR < stats[i - 1].meanR;
  int markov_bad = 0, checks = 0;
  for (const auto& st : stats) {
    for (const auto& t : st.perTrial) {
      for (double xi1 : {0.25, 0.5, 1.0, 1.5, 2.0}) {
        for (double xi2 : {0.25, 0.5, 1.0, 1.5, 2.0}) {
          const double rhs = 1.0 - t.avgTraceDistR / xi1 - t.avgTraceDistB / xi2;
          const double joint = t.jointSuccessAt(xi1, xi2);
          ++checks;
          if (rhs > 0.0 && joint < rhs - 1e-9) ++markov_bad;
        }
      }
      const double rhs = 1.0 - t.avgTraceDistR / opts.xi1 - t.avgTraceDistB / opts.xi2;
      if (rhs > 0.0 && t.jointSuccessFraction < rhs - 1e-9) ++markov_bad;
    }
  }
  v.require(monotone, "mean reference distance decreasing over n=2,4,6");
  v.require(markov_bad == 0, "Markov/union bound");
  v.detail << "mean R distance";
  for (const auto& st : stats) v.detail << " n=" << st.n << ":" << st.meanR;
  v.detail << ", Markov violations " << markov_bad << "/" << checks;
}

void refinementConsistency(Verdict& v) {
  testing::Gen g(801);
  const Labels c = {"C"};
  const Register reg({{"A", 2}, {"B", 2}, {"C", 4}});
  double worst = 0.0;
  int shape_bad = 0;
  for (int k = 0; k < 50; ++k) {
    const MultiState s = testing::mixedState(reg, g);
    const POVM f = testing::randomPOVM(c, 4, 2, 2, g);
    const RefinedPOVM r = rankOneRefine(f);
    const MeasurementEnsemble coarse = coarseGrain(measureHelper(s, c, r.povm), r.parent);
    const MeasurementEnsemble direct = measureHelper(s, c, f);
    if (coarse.outcomes.size() != direct.outcomes.size() || r.povm.elements.size() != 4) {
      ++shape_bad;
      continue;
    }
    for (std::size_t x = 0; x < direct.outcomes.size(); ++x) {
      if (coarse.outcomes[x].index != direct.outcomes[x].index) ++shape_bad;
      worst = std::max({worst, std::abs(coarse.outcomes[x].prob - direct.outcomes[x].prob),
                        maxAbsDiff(coarse.outcomes[x].state.rho(), direct.outcomes[x].state.rho())});
    }
  }
  v.require(shape_bad == 0, "outcome structure");
  v.require(worst <= 1e-9, "outcome-by-outcome agreement");
  v.detail << "max deviation " << worst << " over 50 POVMs";
}

struct Criterion {
  int id;
  const char* name;
  double limitSeconds;  ///< 0 = no runtime requirement
  std::function<void(Verdict&)> body;
};

}  // namespace
}  // namespace eoa

int main() {
  using namespace eoa;
  const Criterion criteria[] = {
      {1, "factorized-chain coherent informations", 1.0, chainExactness},
      {2, "CNOT failure mode", 0.0, cnotFailureMode},
      {3, "hierarchical rate equals L on factorized states", 0.0, hierarchicalEquality},
      {4, "pure-state collapse of the bounds", 0.0, pureCollapse},
      {5, "classical-quantum exactness", 0.0, cqExactness},
      {6, "property suites", 30.0, propertySuites},
      {7, "decoupling trend and Markov/union bound", 300.0, decouplingTrend},
      {8, "refinement consistency", 0.0, refinementConsistency},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    v.detail.precision(9);
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limitSeconds > 0.0 && secs >= c.limitSeconds) {
      v.ok = false;
      v.detail << "; runtime limit " << c.limitSeconds << " s exceeded";
    }
    std::printf("%s criterion %d: %s (%.2f s) %s\n", v.ok ? "PASS" : "FAIL", c.id, c.name, secs, v.detail.str().c_str());
    std::fflush(stdout);
    if (!v.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
