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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eoa/densemat.hpp"

namespace eoa {

using Labels = std::vector<std::string>;

struct Subsystem {
  std::string label;
  std::size_t dim = 2;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

/// Ordered, labelled tensor factors. The first subsystem is the most
/// significant digit of a basis index.
class Register {
 public:
  Register() = default;
  explicit Register(std::vector<Subsystem> subsystems);

  const std::vector<Subsystem>& subsystems() const noexcept { return subsystems_; }
  std::size_t size() const noexcept { return subsystems_.size(); }
  std::size_t totalDim() const noexcept { return total_dim_; }
  Labels labels() const;

  bool contains(const std::string& label) const { return find(label).has_value(); }
  std::optional<std::size_t> find(const std::string& label) const;
  /// Position of label; throws UnknownLabel.
  std::size_t indexOf(const std::string& label) const;
  std::size_t dimOf(const std::string& label) const { return subsystems_[indexOf(label)].dim; }
  /// Product of the dims of the given labels.
  std::size_t dimOf(std::span<const std::string> labels) const;

  /// Subsystems for the given labels in register order; throws UnknownLabel.
  Register select(std::span<const std::string> labels) const;
  /// Labels not in the given set, in register order.
  Labels complement(std::span<const std::string> labels) const;
  /// Throws LabelClash when label sets overlap.
  Register concat(const Register& other) const;

  friend bool operator==(const Register& a, const Register& b) { return a.subsystems_ == b.subsystems_; }

 private:
  std::vector<Subsystem> subsystems_;
  std::size_t total_dim_ = 1;
};

/// Density operator on a register. Invariants (checked at construction):
/// Hermitian within 1e-9, unit trace within 1e-9, spectrum >= -1e-9.
class MultiState {
 public:
  MultiState(Register reg, CMatrix rho);

  /// Pure state from amplitudes in row-major subsystem order; the vector must
  /// be normalized within 1e-9.
  static MultiState fromAmplitudes(Register reg, std::span<const Complex> amplitudes);
  /// Skips the spectral check; used internally where the construction
  /// guarantees positivity (products, partial traces, conjugation).
  static MultiState trusted(Register reg, CMatrix rho);

  const Register& reg() const noexcept { return reg_; }
  const CMatrix& rho() const noexcept { return rho_; }
  std::size_t dim() const noexcept { return reg_.totalDim(); }

  /// Rank one within 1e-9 (largest eigenvalue within 1e-9 of the trace).
  bool isPure() const;
  /// The amplitude vector when isPure(): the constructing vector for states
  /// built by fromAmplitudes, the dominant eigenvector otherwise. The first
  /// component above 1e-12 is real positive.
  std::vector<Complex> amplitudes() const;

 private:
  MultiState(Register reg, CMatrix rho, bool validate);

  Register reg_;
  CMatrix rho_;
  std::vector<Complex> psi_;  ///< empty unless built from amplitudes
};

/// Role assignment for an assisted distillation scenario. A helper group is
/// one assisting party; its labels are measured jointly.
struct RoleMap {
  std::string a;                 ///< recipient A; may be empty for decoupling-only use
  std::string b;                 ///< recipient B
  Labels helpers;                ///< C_1 ... C_m (flattened)
  std::vector<Labels> groups;    ///< partition of helpers into parties; empty = one party per label
  std::optional<std::string> reference;

  /// Helper parties, resolving the empty-groups default.
  std::vector<Labels> helperGroups() const;
  /// Throws UnknownLabel/OverlappingSystems/RoleMissing as appropriate.
  void validate(const Register& reg, bool require_recipients = true) const;
};

MultiState tensorProduct(const MultiState& a, const MultiState& b);
/// Reduced state on the kept labels, ordered as in the original register.
MultiState partialTrace(const MultiState& s, std::span<const std::string> keep);
MultiState partialTrace(const MultiState& s, std::initializer_list<std::string> keep);
/// Eigen-purification: sum_k sqrt(lambda_k) |v_k>|k>_ref over eigenvalues
/// above 1e-12; the reference dimension equals the numerical rank.
MultiState purify(const MultiState& s, const std::string& ref_label);
/// rho -> (I (x) U (x) I) rho (...)^dag with U acting on 'on' in listed order.
MultiState applyLocalUnitary(const MultiState& s, std::span<const std::string> on, const CMatrix& u);
MultiState applyLocalUnitary(const MultiState& s, std::initializer_list<std::string> on, const CMatrix& u);
/// Reorders subsystems; 'order' must be a permutation of the register labels.
MultiState reorder(const MultiState& s, std::span<const std::string> order);

/// Reduced density operator of a pure vector on 'dims', keeping the given
/// subsystem positions (in the listed order). Never forms the full |v><v|.
CMatrix reducedFromPure(std::span<const Complex> amplitudes, std::span<const std::size_t> dims,
                        std::span<const std::size_t> keep);

/// Offset into the full basis index for every combined index over 'labels'
/// (row-major in the listed order). offsets(A)[a] + offsets(rest)[r] is the
/// full index of the basis state |a>|r>.
std::vector<std::size_t> subsystemOffsets(const Register& reg, std::span<const std::string> labels);

/// Permutes the tensor factors of a vector: result index digits follow 'order'.
std::vector<Complex> permuteAmplitudes(std::span<const Complex> amplitudes,
                                       std::span<const std::size_t> dims,
                                       std::span<const std::size_t> order);

/// 4x4 controlled-NOT, control on the first factor.
CMatrix cnotMatrix();

// Built-in example states.

struct ExampleState {
  MultiState state;
  RoleMap roles;
  /// (sender, receiver) pairs for a hierarchical chain reading, if any.
  std::vector<std::pair<Labels, Labels>> links;
};

/// Two-qubit pure link states by name: "bell", "product" (|00>),
/// "schmidt:x" (sqrt(x)|00> + sqrt(1-x)|11>).
std::vector<Complex> namedTwoQubitState(const std::string& name);

/// psi^{AC1} (x) psi^{BC2R} with helper party {C1, C2}; register A,C1,B,C2,R.
ExampleState factorizedChainExample();
/// factorizedChainExample() after CNOT with control C1 and target C2.
ExampleState cnotCorruptedExample();
/// The B C2 R factor of the chain on its own, with C2 as the only helper.
ExampleState decouplingExample();
/// sum_i p_i psi_i^{AB} (x) |i><i|^C with pure two-party psi_i given as
/// amplitude vectors on (dim_a, dim_b).
ExampleState cqExample(std::span<const double> probs, std::span<const std::vector<Complex>> states,
                       std::size_t dim_a = 2, std::size_t dim_b = 2);
/// Phi^M on A,B.
ExampleState maximallyEntangledExample(std::size_t m);
/// Chain A-C1 | C2-D1 | D2-B from three two-qubit link states; helper
/// parties {C1,C2} and {D1,D2}.
ExampleState chainTwoRepeatersExample(std::span<const MultiState> links);
/// Dispatch by name: factorized-chain, cnot-corrupted, decoupling, maximally-entangled,
/// chain-2-repeaters, cq. Parameterised examples use their defaults here.
ExampleState namedExample(const std::string& name);

}  // namespace eoa
