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
#include <functional>
#include <ostream>
#include <string>

#include "eoa/cli.hpp"
#include "eoa/densemat.hpp"
#include "eoa/measure.hpp"
#include "eoa/qstate.hpp"
#include "eoa/rates.hpp"
#include "eoa/sampling.hpp"
#include "eoa/typicality.hpp"

namespace eoa {
namespace {

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol; }

bool chainNumbers() {
  const ExampleState ex = factorizedChainExample();
  const RateReport r = assistedLowerBoundL(ex.state, ex.roles);
  return near(r.at(kKeyAcToB), 0.399124, 5e-6) && near(r.at(kKeyAToBc), 0.811278, 5e-6) &&
         near(r.at(kKeyHashing), -0.811278, 5e-6);
}

bool cnotNumbers() {
  const ExampleState plain = factorizedChainExample();
  const ExampleState bent = cnotCorruptedExample();
  const std::vector<double> spec = hermEigenvalues(partialTrace(bent.state, {"C1"}).rho());
  const double l0 = assistedLowerBoundL(plain.state, plain.roles).at(kKeyL);
  const double l1 = assistedLowerBoundL(bent.state, bent.roles).at(kKeyL);
  const ChainRate before = chainHierarchicalRate(chainLinksFrom(plain.state, plain.links));
  const ChainRate after = chainHierarchicalRate(chainLinksFrom(bent.state, bent.links));
  return near(coherentInfo(bent.state, {"A"}, {"C1"}), 0.0, 1e-9) && near(spec[0], 0.75, 1e-9) &&
         near(spec[1], 0.25, 1e-9) && near(l0, l1, 1e-9) && near(before.rate, 0.399124, 5e-6) && after.rate == 0.0;
}

bool cqNumbers() {
  const ExampleState ex = namedExample("cq");
  return near(cqAssistance(ex.state, ex.roles), 0.5, 1e-9);
}

bool pureCollapse() {
  Rng rng(7);
  const Register reg({{"A", 2}, {"B", 2}, {"C", 2}});
  const RoleMap roles{"A", "B", {"C"}, {}, std::nullopt};
  for (int k = 0; k < 20; ++k) {
    const MultiState s = randomPureState(reg, rng);
    const double want = std::min(vonNeumann(s, {"A"}), vonNeumann(s, {"B"}));
    if (!near(assistedLowerBoundL(s, roles).at(kKeyBound), want, 1e-8)) return false;
  }
  return true;
}

bool strongSubadditivity() {
  Rng rng(11);
  const Register reg({{"A", 2}, {"B", 2}, {"C", 2}});
  for (int k = 0; k < 100; ++k) {
    const MultiState s = randomDensity(reg, rng);
    if (coherentInfo(s, {"A"}, {"B", "C"}) < coherentInfo(s, {"A"}, {"B"}) - 1e-9) return false;
  }
  return true;
}

bool fuchsVanDeGraaf() {
  Rng rng(13);
  const Register reg({{"X", 2}, {"Y", 2}});
  for (int k = 0; k < 100; ++k) {
    const CMatrix rho = randomDensity(reg, rng).rho();
    const CMatrix sigma = randomDensity(reg, rng).rho();
    const double f = fidelity(rho, sigma);
    const double t = traceDistance(rho, sigma);
    if (1.0 - f > t + 1e-8 || t > std::sqrt(1.0 - f * f) + 1e-8) return false;
  }
  return true;
}

bool typicalMassGrowth() {
  const std::vector<double> p = {0.25, 0.75};
  double last = -1.0;
  for (std::size_t n : {2, 4, 6, 8}) {
    const double m = typicalProjector(p, CMatrix::identity(2), n, 0.2).mass();
    if (m < last - 0.02) return false;
    last = m;
  }
  return true;
}

bool haarUnitarity() {
  Rng rng(17);
  for (std::size_t d : {2, 8, 16}) {
    for (int k = 0; k < 20; ++k) {
      if (!isUnitary(haarUnitary(d, rng), 1e-9)) return false;
    }
  }
  return true;
}

}  // namespace

int runSelftest(std::ostream& out) {
  const std::pair<const char*, std::function<bool()>> checks[] = {
      {"factorized chain coherent informations", chainNumbers},
      {"cnot corruption", cnotNumbers},
      {"cq assistance", cqNumbers},
      {"pure tripartite collapse", pureCollapse},
      {"strong subadditivity", strongSubadditivity},
      {"fuchs-van de graaf", fuchsVanDeGraaf},
      {"typical mass growth", typicalMassGrowth},
      {"haar unitarity", haarUnitarity},
  };
  int failed = 0;
  for (const auto& [name, check] : checks) {
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception& e) {
      out << "error in " << name << ": " << e.what() << '\n';
    }
    out << (ok ? "PASS " : "FAIL ") << name << '\n';
    if (!ok) ++failed;
  }
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace eoa
