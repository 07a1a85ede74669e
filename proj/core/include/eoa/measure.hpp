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
#include <span>
#include <utility>
#include <vector>

#include "eoa/qstate.hpp"

namespace eoa {

/// Positive operators on one block of subsystems, summing to the identity.
struct POVM {
  Labels system;
  std::vector<CMatrix> elements;

  std::size_t dim() const { return elements.empty() ? 0 : elements.front().rows(); }
  /// Completeness within 1e-9 and positivity within the clamp tolerance;
  /// throws InvalidPOVM.
  void validate() const;
  bool isRankOne(double tol = 1e-9) const;
};

/// Projective measurement onto the computational basis of a block of the
/// given dimension.
POVM basisPOVM(Labels system, std::size_t dim);

struct RefinedPOVM {
  POVM povm;                       ///< rank-one elements lambda |alpha><alpha|
  std::vector<std::size_t> parent; ///< refined index -> original outcome index
};

/// Splits each element along its eigendecomposition (eigenvalues above 1e-12).
RefinedPOVM rankOneRefine(const POVM& f);

struct Outcome {
  std::size_t index = 0;  ///< POVM element index
  double prob = 0.0;
  MultiState state;       ///< normalized post-measurement state on the unmeasured systems
};

struct MeasurementEnsemble {
  std::vector<Outcome> outcomes;
  /// Mass discarded before measuring (atypical projection); zero otherwise.
  double discardedMass = 0.0;

  double totalProbability() const;
  /// sum_x p_x psi_x.
  CMatrix mixture() const;
};

/// p_x = Tr[E_x psi^C], psi_x = Tr_C[(E_x (x) I) psi] / p_x. Outcomes with
/// p_x < 1e-12 are dropped and the remaining mass renormalized.
MeasurementEnsemble measureHelper(const MultiState& s, std::span<const std::string> block, const POVM& e);

/// Merges outcomes sharing a parent: p_x = sum q, psi_x = sum q psi / p_x.
MeasurementEnsemble coarseGrain(const MeasurementEnsemble& refined, std::span<const std::size_t> parent);

/// sum_x p_x max(0, I(A>B)_{psi_x}).
double avgHashingRate(const MeasurementEnsemble& ens, std::span<const std::string> a,
                      std::span<const std::string> b);

/// Exact assisted rate sum_i p_i S(A)_{psi_i} for states block diagonal in
/// the helper's computational basis with pure blocks. Certification uses the
/// Frobenius mass off the blocks (< 1e-9); throws NotClassicalQuantum.
double cqAssistance(const MultiState& s, const RoleMap& roles);

struct ConvexityWitness {
  double lhs = 0.0;  ///< sum_x q_x max(0, I(A>B)_{psi_x}) on the mixed outcomes
  double rhs = 0.0;  ///< sum_{x,i} p_i Tr[F_x psi_i^C] S(A) of the pure refined outcomes
};

/// Both sides of the pure-ensemble convexity inequality, with the
/// distillable entanglement bounded below by hashing on the left and above by
/// entanglement entropy on the right. The decomposition must mix to s within
/// 1e-8 (DecompositionMismatch) and E must be rank one (InvalidPOVM).
ConvexityWitness convexityWitness(const MultiState& s, std::span<const std::pair<double, MultiState>> decomposition,
                                  const POVM& e, const RoleMap& roles);

}  // namespace eoa
