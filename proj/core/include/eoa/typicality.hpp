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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "eoa/measure.hpp"
#include "eoa/sampling.hpp"

namespace eoa {

/// Cap on entries of any dense tensor-power object (state vectors, density
/// matrices, projectors, sequence tables).
inline constexpr std::size_t kMaxTensorEntries = std::size_t{1} << 20;

/// The delta-typical sequences of p^{(x)n}: every letter frequency within
/// delta of its probability. Letters index the columns of 'basis'.
struct TypicalSubspace {
  std::size_t n = 0;
  double delta = 0.0;
  std::vector<double> p;
  CMatrix basis;                        ///< single-copy eigenbasis, column x = letter x
  std::vector<std::uint64_t> indices;   ///< ascending, first letter most significant

  std::size_t dim() const noexcept { return indices.size(); }
  /// sum over typical sequences of prod_k p(x_k) = Tr[Pi psi^{(x)n}].
  double mass() const;
  /// Dense projector in the computational basis; TooLarge beyond the cap.
  CMatrix projector() const;
};

/// True when every letter count satisfies |N(x)/n - p(x)| <= delta.
bool isTypical(std::span<const std::size_t> counts, std::size_t n, std::span<const double> p, double delta);

TypicalSubspace typicalProjector(std::span<const double> p, const CMatrix& eigenbasis, std::size_t n, double delta);

/// Typical subspace of rho^{(x)n} for rho with the given spectrum and
/// eigenbasis. Eigenvalues equal within 1e-9 count as one letter, so the
/// subspace does not depend on the basis picked inside a degenerate
/// eigenspace (a maximally mixed qubit gives the full space).
TypicalSubspace spectralTypicalSubspace(std::span<const double> spectrum, const CMatrix& eigenbasis, std::size_t n,
                                        double delta);

/// Haar-distributed d x d unitary: QR of a complex Ginibre matrix with the
/// phases of R's diagonal absorbed into Q.
CMatrix haarUnitary(std::size_t d, Rng& rng);

/// n copies of a pure state, helper projected onto the spectral typical
/// subspace of its marginal and renormalized, then measured in a
/// Haar-random basis of that subspace. Outcome states live on the remaining
/// systems of every copy, labelled "<label>#<copy>" (copy-major). The
/// projected-away mass is reported as discardedMass.
MeasurementEnsemble randomTypicalMeasurement(const MultiState& pure, std::span<const std::string> helper,
                                             std::size_t n, double delta, Rng& rng);

struct DecouplingRoles {
  Labels helper;
  Labels b;
  Labels r;
};

struct DecouplingOptions {
  std::vector<std::size_t> nList;
  std::size_t trials = 20;
  double delta = 0.2;
  double xi1 = 0.5;
  double xi2 = 0.5;
  std::uint64_t seed = 42;
  /// Also project B^n and R^n onto their typical subspaces and compare the
  /// outcomes with the projected marginals instead of the product marginals.
  bool projectAll = false;
};

struct TrialStats {
  std::size_t trial = 0;
  double avgTraceDistR = 0.0;        ///< sum_j p_j || psi_j^R - ref_R ||_1
  double avgTraceDistB = 0.0;
  double jointSuccessFraction = 0.0; ///< mass with both distances below xi1, xi2
  std::size_t outcomes = 0;
  /// Outcome-level data kept for threshold sweeps.
  std::vector<double> probs;
  std::vector<double> distR;
  std::vector<double> distB;

  /// Recomputes the joint success mass for other thresholds.
  double jointSuccessAt(double xi1, double xi2) const;
};

struct DecouplingStats {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double delta = 0.0;
  double xi1 = 0.0;
  double xi2 = 0.0;
  std::size_t typicalDim = 0;
  double discardedMass = 0.0;
  std::vector<TrialStats> perTrial;
  double meanR = 0.0, stddevR = 0.0;
  double meanB = 0.0, stddevB = 0.0;
  double meanJoint = 0.0, stddevJoint = 0.0;
  std::vector<std::string> notes;
};

/// For each n and each Haar trial: the average reference and B trace
/// distances of the outcome marginals from their product forms and the joint
/// success mass. Trial seeds derive from (seed, n, trial).
std::vector<DecouplingStats> decouplingExperiment(const MultiState& pure, const DecouplingRoles& roles,
                                                  const DecouplingOptions& options);

}  // namespace eoa
