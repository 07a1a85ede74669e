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
#include "eoa/rates.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "eoa/error.hpp"

namespace eoa {
namespace {

std::atomic<EntropyUnit> g_unit{EntropyUnit::kBits};

constexpr double kVerdictTol = 1e-9;
constexpr double kTieTol = 1e-9;
constexpr double kDegeneracyTol = 1e-6;

double unitLog(double x) {
  return entropyUnit() == EntropyUnit::kBits ? std::log2(x) : std::log(x);
}

Labels join(std::initializer_list<std::span<const std::string>> parts) {
  Labels out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::string braced(std::span<const std::string> labels) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
  os << '}';
  return os.str();
}

struct Parties {
  Labels a;
  Labels b;
  std::vector<Labels> groups;
  Labels helpers;
};

Parties partiesOf(const MultiState& s, const RoleMap& roles) {
  roles.validate(s.reg());
  return {{roles.a}, {roles.b}, roles.helperGroups(), roles.helpers};
}

Labels groupsUnion(const std::vector<Labels>& groups, std::span<const std::size_t> which) {
  Labels out;
  for (std::size_t g : which) out.insert(out.end(), groups[g].begin(), groups[g].end());
  return out;
}

std::vector<std::size_t> complementIndices(std::size_t m, std::span<const std::size_t> in) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < m; ++g) {
    if (std::find(in.begin(), in.end(), g) == in.end()) out.push_back(g);
  }
  return out;
}

void requireFewHelpers(std::size_t m) {
  if (m > kMaxHelperGroups) {
    throw Error(ErrorCode::kTooManyHelpers, std::to_string(m) + " helper parties exceed the limit of " +
                                                std::to_string(kMaxHelperGroups));
  }
}

}  // namespace

EntropyUnit entropyUnit() { return g_unit.load(std::memory_order_relaxed); }
void setEntropyUnit(EntropyUnit unit) { g_unit.store(unit, std::memory_order_relaxed); }

void RateReport::set(const std::string& name, double value) {
  for (auto& [k, v] : quantities) {
    if (k == name) {
      v = value;
      return;
    }
  }
  quantities.emplace_back(name, value);
}

bool RateReport::has(const std::string& name) const {
  return std::any_of(quantities.begin(), quantities.end(), [&](const auto& kv) { return kv.first == name; });
}

double RateReport::at(const std::string& name) const {
  for (const auto& [k, v] : quantities) {
    if (k == name) return v;
  }
  throw Error(ErrorCode::kInvalidArgument, "report has no quantity '" + name + "'");
}

double spectrumEntropy(std::span<const double> values) {
  const std::vector<double> clamped = clampSpectrum(std::vector<double>(values.begin(), values.end()));
  double h = 0.0;
  for (double p : clamped) {
    if (p > 0.0) h -= p * unitLog(p);
  }
  return std::max(0.0, h);
}

double binaryEntropy(double p) {
  const double q[] = {p, 1.0 - p};
  return spectrumEntropy(q);
}

double vonNeumann(const MultiState& s, std::span<const std::string> subsystems) {
  if (subsystems.empty()) throw Error(ErrorCode::kInvalidArgument, "vonNeumann: no subsystems given");
  const MultiState reduced = partialTrace(s, subsystems);
  return spectrumEntropy(hermEigenvalues(reduced.rho()));
}

double vonNeumann(const MultiState& s, std::initializer_list<std::string> subsystems) {
  return vonNeumann(s, std::span<const std::string>(subsystems.begin(), subsystems.size()));
}

double coherentInfo(const MultiState& s, std::span<const std::string> x, std::span<const std::string> y) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::kInvalidArgument, "coherentInfo: empty system list");
  for (const auto& l : x) {
    if (std::find(y.begin(), y.end(), l) != y.end()) {
      throw Error(ErrorCode::kOverlappingSystems, "coherentInfo: '" + l + "' on both sides");
    }
  }
  const Labels xy = join({x, y});
  return vonNeumann(s, y) - vonNeumann(s, xy);
}

double coherentInfo(const MultiState& s, std::initializer_list<std::string> x, std::initializer_list<std::string> y) {
  return coherentInfo(s, std::span<const std::string>(x.begin(), x.size()),
                      std::span<const std::string>(y.begin(), y.size()));
}

double hashingBound(const MultiState& s, std::span<const std::string> a, std::span<const std::string> b) {
  return std::max(0.0, coherentInfo(s, a, b));
}

RateReport assistedLowerBoundL(const MultiState& s, const RoleMap& roles) {
  const Parties p = partiesOf(s, roles);
  RateReport report;
  const double s_b = vonNeumann(s, p.b);
  const double s_ab = vonNeumann(s, join({p.a, p.b}));
  const double i_ab = s_b - s_ab;
  report.set(kKeyHashing, i_ab);
  if (p.helpers.empty()) {
    report.set(kKeyL, i_ab);
    report.set(kKeyBound, std::max(0.0, i_ab));
    report.notes.push_back("no helpers: L reduces to I(A>B)");
    return report;
  }
  const double s_bc = vonNeumann(s, join({p.b, p.helpers}));
  const double s_abc = vonNeumann(s, join({p.a, p.b, p.helpers}));
  const double i_ac_b = s_b - s_abc;
  const double i_a_bc = s_bc - s_abc;
  const double l = std::min(i_ac_b, i_a_bc);
  report.set(kKeyAcToB, i_ac_b);
  report.set(kKeyAToBc, i_a_bc);
  report.set(kKeyL, l);
  report.set(kKeyBound, std::max(0.0, std::max(i_ab, l)));
  // The purifying reference R has S(R) = S(ABC) and S(AR) = S(BC).
  if (std::abs(s_ab - s_abc) < kDegeneracyTol) {
    report.notes.push_back("degenerate: S(AB) and S(R) coincide within 1e-6");
  }
  if (std::abs(s_bc - s_b) < kDegeneracyTol) {
    report.notes.push_back("degenerate: S(AR) and S(B) coincide within 1e-6");
  }
  return report;
}

HashingVerdict beatsHashing(const MultiState& s, const RoleMap& roles) {
  const Parties p = partiesOf(s, roles);
  HashingVerdict v;
  if (p.helpers.empty()) return v;
  const double s_b = vonNeumann(s, p.b);
  const double s_ab = vonNeumann(s, join({p.a, p.b}));
  const double s_bc = vonNeumann(s, join({p.b, p.helpers}));
  const double s_abc = vonNeumann(s, join({p.a, p.b, p.helpers}));
  v.coherentCToAB = s_ab - s_abc;
  v.condAGivenBC = s_abc - s_bc;
  v.condAGivenB = s_ab - s_b;
  v.beats = v.coherentCToAB > kVerdictTol && v.condAGivenBC < v.condAGivenB - kVerdictTol;
  return v;
}

std::vector<Cut> enumerateCuts(std::size_t m) {
  requireFewHelpers(m);
  std::vector<Cut> cuts;
  cuts.reserve(std::size_t{1} << m);
  for (std::size_t k = 0; k <= m; ++k) {
    // Lexicographic k-combinations of {0..m-1}.
    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    while (true) {
      cuts.push_back({comb});
      std::size_t i = k;
      while (i > 0 && comb[i - 1] == m - k + i - 1) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return cuts;
}

RateReport minCutCoherentInfo(const MultiState& s, const RoleMap& roles) {
  roles.validate(s.reg());
  const std::vector<Labels> groups = roles.helperGroups();
  const std::size_t m = groups.size();
  requireFewHelpers(m);
  const Labels a = {roles.a};
  const Labels b = {roles.b};

  const double i_ab = coherentInfo(s, a, b);
  const double s_total = vonNeumann(s, join({a, b, roles.helpers}));

  const std::vector<Cut> cuts = enumerateCuts(m);
  std::vector<double> values(cuts.size());
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const Labels bob_side = join({b, groupsUnion(groups, complementIndices(m, cuts[c].inT))});
    values[c] = vonNeumann(s, bob_side) - s_total;
  }

  const double best = *std::min_element(values.begin(), values.end());
  RateReport report;
  report.set(kKeyHashing, i_ab);
  report.set(kKeyIcmin, best);
  report.set(kKeyBound, std::max(0.0, std::max(i_ab, best)));
  std::vector<std::size_t> ties;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    if (values[c] <= best + kTieTol) ties.push_back(c);
  }
  report.minimizingCut = groupsUnion(groups, cuts[ties.front()].inT);
  if (ties.size() > 1) {
    std::ostringstream os;
    os << "tied minimizing cuts:";
    for (std::size_t c : ties) os << ' ' << braced(groupsUnion(groups, cuts[c].inT));
    report.notes.push_back(os.str());
  }

  // Distinctness assumed when the last helper measures: S(A R T) vs S(B T')
  // for cuts T without that helper, where S(A R T) = S(B T' C_m).
  if (m >= 1) {
    for (const Cut& cut : enumerateCuts(m - 1)) {
      const Labels rest = join({b, groupsUnion(groups, complementIndices(m - 1, cut.inT))});
      const Labels with_last = join({rest, groups[m - 1]});
      if (std::abs(vonNeumann(s, with_last) - vonNeumann(s, rest)) < kDegeneracyTol) {
        report.notes.push_back("degenerate: S(ART) and S(BT') coincide within 1e-6 for T=" +
                               braced(groupsUnion(groups, cut.inT)));
      }
    }
  }
  return report;
}

RateReport cutUpperBoundReport(const MultiState& s, const RoleMap& roles) {
  roles.validate(s.reg());
  const std::vector<Labels> groups = roles.helperGroups();
  const std::size_t m = groups.size();
  requireFewHelpers(m);
  const Labels a = {roles.a};
  const Labels b = {roles.b};
  const Labels all = join({a, b, roles.helpers});

  const std::vector<Cut> cuts = enumerateCuts(m);
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_cut = 0;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const Labels alice = join({a, groupsUnion(groups, cuts[c].inT)});
    const Labels bob = join({b, groupsUnion(groups, complementIndices(m, cuts[c].inT))});
    const double value = std::min(vonNeumann(s, alice), vonNeumann(s, bob));
    if (value < best - kTieTol) {
      best = value;
      best_cut = c;
    }
  }
  RateReport report;
  report.set(kKeyCutUpper, best);
  report.minimizingCut = groupsUnion(groups, cuts[best_cut].inT);
  if (!partialTrace(s, all).isPure()) {
    report.notes.push_back("relaxation: mixed state, per-cut value min{S(AT), S(BT')} bounds the cut distillable entanglement from above");
  }
  return report;
}

ChainRate chainHierarchicalRate(std::span<const ChainLink> links) {
  if (links.empty()) throw Error(ErrorCode::kEmptyChain, "chain has no links");
  ChainRate out;
  out.raw = std::numeric_limits<double>::infinity();
  for (const auto& link : links) {
    const double value = coherentInfo(link.state, link.sender, link.receiver);
    out.perLink.push_back(value);
    out.raw = std::min(out.raw, value);
  }
  out.rate = std::max(0.0, out.raw);
  return out;
}

std::vector<ChainLink> chainLinksFrom(const MultiState& s, std::span<const std::pair<Labels, Labels>> links) {
  std::vector<ChainLink> out;
  for (const auto& [sender, receiver] : links) {
    const Labels both = join({sender, receiver});
    out.push_back({partialTrace(s, both), sender, receiver});
  }
  return out;
}

double fannesBound(double eps, std::size_t dim) {
  if (!(eps >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "fannesBound: eps must be >= 0");
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "fannesBound: dim must be >= 1");
  const double inv_e = 1.0 / std::numbers::e;
  double eta;
  if (eps == 0.0) {
    eta = 0.0;
  } else if (eps <= inv_e) {
    eta = eps - eps * unitLog(eps);
  } else {
    eta = eps + unitLog(std::numbers::e) / std::numbers::e;
  }
  return eta * unitLog(static_cast<double>(dim));
}

}  // namespace eoa
