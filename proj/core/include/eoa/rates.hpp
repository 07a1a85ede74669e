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
#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eoa/qstate.hpp"

namespace eoa {

enum class EntropyUnit { kBits, kNats };

/// Logarithm base for every entropy and rate. Process-wide; bits by default.
EntropyUnit entropyUnit();
void setEntropyUnit(EntropyUnit unit);

/// Named rate quantities in insertion order, plus the minimizing cut for
/// cut-based reports and free-form notes (degeneracy flags and the like).
struct RateReport {
  std::vector<std::pair<std::string, double>> quantities;
  std::optional<Labels> minimizingCut;
  std::vector<std::string> notes;

  void set(const std::string& name, double value);
  bool has(const std::string& name) const;
  /// Throws InvalidArgument for a missing name.
  double at(const std::string& name) const;
};

// Fixed report keys.
inline constexpr const char* kKeyHashing = "I(A>B)";
inline constexpr const char* kKeyAcToB = "I(AC>B)";
inline constexpr const char* kKeyAToBc = "I(A>BC)";
inline constexpr const char* kKeyL = "L";
inline constexpr const char* kKeyBound = "bound";
inline constexpr const char* kKeyIcmin = "Icmin";
inline constexpr const char* kKeyHier = "R_hier";
inline constexpr const char* kKeyCutUpper = "cut_upper";

/// Shannon entropy of a (clamped) spectrum, 0 log 0 = 0.
double spectrumEntropy(std::span<const double> values);
double binaryEntropy(double p);

double vonNeumann(const MultiState& s, std::span<const std::string> subsystems);
double vonNeumann(const MultiState& s, std::initializer_list<std::string> subsystems);

/// I(X>Y) = S(Y) - S(XY); X and Y nonempty and disjoint.
double coherentInfo(const MultiState& s, std::span<const std::string> x, std::span<const std::string> y);
double coherentInfo(const MultiState& s, std::initializer_list<std::string> x, std::initializer_list<std::string> y);

/// max(0, I(A>B)).
double hashingBound(const MultiState& s, std::span<const std::string> a, std::span<const std::string> b);

/// Random-measurement lower bound with the union of all helpers as the
/// single block C: I(A>B), I(AC>B), I(A>BC), L = min of the last two and
/// bound = max(0, max(I(A>B), L)).
RateReport assistedLowerBoundL(const MultiState& s, const RoleMap& roles);

struct HashingVerdict {
  bool beats = false;
  double coherentCToAB = 0.0;   ///< I(C>AB)
  double condAGivenBC = 0.0;    ///< S(A|BC)
  double condAGivenB = 0.0;     ///< S(A|B)
};

/// I(C>AB) > 1e-9 and S(A|BC) < S(A|B) - 1e-9.
HashingVerdict beatsHashing(const MultiState& s, const RoleMap& roles);

inline constexpr std::size_t kMaxHelperGroups = 20;

/// A bipartition of the helper groups: indices (into helperGroups()) on A's side.
struct Cut {
  std::vector<std::size_t> inT;
};

/// All 2^m cuts ordered by size, then lexicographically by group index.
std::vector<Cut> enumerateCuts(std::size_t m);

/// Exact minimum over cuts of I(A T > B Tbar) and max(0, max(I(A>B), Icmin)).
RateReport minCutCoherentInfo(const MultiState& s, const RoleMap& roles);

/// Per-cut entanglement-entropy relaxation min{S(A T), S(B Tbar)} of the
/// cut distillable entanglement, minimized over cuts.
RateReport cutUpperBoundReport(const MultiState& s, const RoleMap& roles);

struct ChainLink {
  MultiState state;
  Labels sender;
  Labels receiver;
};

struct ChainRate {
  std::vector<double> perLink;  ///< I(sender > receiver) per link, unclipped
  double raw = 0.0;             ///< min over links, unclipped
  double rate = 0.0;            ///< max(0, raw)
};

ChainRate chainHierarchicalRate(std::span<const ChainLink> links);
/// Cuts each link out of a global state by partial trace.
std::vector<ChainLink> chainLinksFrom(const MultiState& s, std::span<const std::pair<Labels, Labels>> links);

/// eta(eps) log(dim) with eta(x) = x - x log x for x <= 1/e and
/// x + log(e)/e above.
double fannesBound(double eps, std::size_t dim);

}  // namespace eoa
