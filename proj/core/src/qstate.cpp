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
#include "eoa/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "eoa/error.hpp"

namespace eoa {
namespace {

constexpr double kStateTol = 1e-9;

std::vector<std::size_t> strides(std::span<const std::size_t> dims) {
  std::vector<std::size_t> out(dims.size(), 1);
  for (std::size_t j = dims.size(); j-- > 1;) out[j - 1] = out[j] * dims[j];
  return out;
}

// Offsets into the full index space for every combined index over the given
// positions, enumerated row-major in the listed order.
std::vector<std::size_t> offsetsFor(std::span<const std::size_t> dims,
                                    std::span<const std::size_t> positions) {
  const std::vector<std::size_t> stride = strides(dims);
  std::size_t count = 1;
  for (std::size_t p : positions) count *= dims[p];
  std::vector<std::size_t> out(count, 0);
  std::vector<std::size_t> digits(positions.size(), 0);
  for (std::size_t a = 0; a < count; ++a) {
    std::size_t offset = 0;
    for (std::size_t j = 0; j < positions.size(); ++j) offset += digits[j] * stride[positions[j]];
    out[a] = offset;
    for (std::size_t j = positions.size(); j-- > 0;) {
      if (++digits[j] < dims[positions[j]]) break;
      digits[j] = 0;
    }
  }
  return out;
}

std::vector<std::size_t> dimsOf(const Register& reg) {
  std::vector<std::size_t> dims;
  for (const auto& s : reg.subsystems()) dims.push_back(s.dim);
  return dims;
}

std::vector<std::size_t> positionsOf(const Register& reg, std::span<const std::string> labels) {
  std::vector<std::size_t> out;
  for (const auto& l : labels) out.push_back(reg.indexOf(l));
  return out;
}

std::vector<std::size_t> complementPositions(std::size_t n, std::span<const std::size_t> used) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::find(used.begin(), used.end(), j) == used.end()) out.push_back(j);
  }
  return out;
}

void requireDistinct(std::span<const std::string> labels, const char* what) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw Error(ErrorCode::kOverlappingSystems, std::string(what) + ": label '" + l + "' repeated");
    }
  }
}

MultiState relabel(const MultiState& s, const Labels& labels) {
  std::vector<Subsystem> subs;
  for (std::size_t j = 0; j < labels.size(); ++j) subs.push_back({labels[j], s.reg().subsystems()[j].dim});
  return MultiState::trusted(Register(std::move(subs)), s.rho());
}

}  // namespace

// ---------------------------------------------------------------- Register

Register::Register(std::vector<Subsystem> subsystems) : subsystems_(std::move(subsystems)) {
  std::set<std::string> seen;
  for (const auto& s : subsystems_) {
    if (s.label.empty()) throw Error(ErrorCode::kInvalidArgument, "Register: empty label");
    if (s.dim == 0) throw Error(ErrorCode::kInvalidArgument, "Register: subsystem '" + s.label + "' has dim 0");
    if (!seen.insert(s.label).second) {
      throw Error(ErrorCode::kLabelClash, "Register: duplicate label '" + s.label + "'");
    }
    total_dim_ *= s.dim;
  }
}

Labels Register::labels() const {
  Labels out;
  for (const auto& s : subsystems_) out.push_back(s.label);
  return out;
}

std::optional<std::size_t> Register::find(const std::string& label) const {
  for (std::size_t j = 0; j < subsystems_.size(); ++j) {
    if (subsystems_[j].label == label) return j;
  }
  return std::nullopt;
}

std::size_t Register::indexOf(const std::string& label) const {
  if (auto j = find(label)) return *j;
  throw Error(ErrorCode::kUnknownLabel, "no subsystem labelled '" + label + "'");
}

std::size_t Register::dimOf(std::span<const std::string> labels) const {
  std::size_t d = 1;
  for (const auto& l : labels) d *= dimOf(l);
  return d;
}

Register Register::select(std::span<const std::string> labels) const {
  std::vector<std::size_t> pos = positionsOf(*this, labels);
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  std::vector<Subsystem> subs;
  for (std::size_t p : pos) subs.push_back(subsystems_[p]);
  return Register(std::move(subs));
}

Labels Register::complement(std::span<const std::string> labels) const {
  Labels out;
  for (const auto& s : subsystems_) {
    if (std::find(labels.begin(), labels.end(), s.label) == labels.end()) out.push_back(s.label);
  }
  return out;
}

Register Register::concat(const Register& other) const {
  for (const auto& s : other.subsystems_) {
    if (contains(s.label)) throw Error(ErrorCode::kLabelClash, "label '" + s.label + "' present in both registers");
  }
  std::vector<Subsystem> subs = subsystems_;
  subs.insert(subs.end(), other.subsystems_.begin(), other.subsystems_.end());
  return Register(std::move(subs));
}

// -------------------------------------------------------------- MultiState

MultiState::MultiState(Register reg, CMatrix rho) : MultiState(std::move(reg), std::move(rho), true) {}

MultiState::MultiState(Register reg, CMatrix rho, bool validate) : reg_(std::move(reg)), rho_(std::move(rho)) {
  if (rho_.rows() != reg_.totalDim() || rho_.cols() != reg_.totalDim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "density matrix is " + std::to_string(rho_.rows()) + "x" + std::to_string(rho_.cols()) +
                    " but register dimension is " + std::to_string(reg_.totalDim()));
  }
  if (!validate) return;
  if (!isHermitian(rho_, kStateTol)) throw Error(ErrorCode::kNotHermitian, "density matrix is not Hermitian");
  const Complex tr = rho_.trace();
  if (std::abs(tr.real() - 1.0) > kStateTol || std::abs(tr.imag()) > kStateTol) {
    throw Error(ErrorCode::kInvalidState, "density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  for (double x : hermEigenvalues(rho_)) {
    if (x < -kStateTol) throw Error(ErrorCode::kNotPSD, "density matrix has eigenvalue " + std::to_string(x));
  }
}

MultiState MultiState::fromAmplitudes(Register reg, std::span<const Complex> amplitudes) {
  if (amplitudes.size() != reg.totalDim()) {
    throw Error(ErrorCode::kDimensionMismatch, "expected " + std::to_string(reg.totalDim()) +
                                                   " amplitudes, got " + std::to_string(amplitudes.size()));
  }
  double norm2 = 0.0;
  for (const auto& z : amplitudes) norm2 += std::norm(z);
  if (std::abs(norm2 - 1.0) > kStateTol) {
    throw Error(ErrorCode::kInvalidState, "amplitude vector has squared norm " + std::to_string(norm2));
  }
  MultiState out(std::move(reg), CMatrix::outer(amplitudes), false);
  out.psi_.assign(amplitudes.begin(), amplitudes.end());
  return out;
}

MultiState MultiState::trusted(Register reg, CMatrix rho) { return MultiState(std::move(reg), std::move(rho), false); }

bool MultiState::isPure() const {
  const std::vector<double> values = hermEigenvalues(rho_);
  return values.front() >= rho_.trace().real() - kStateTol;
}

std::vector<Complex> MultiState::amplitudes() const {
  std::vector<Complex> v;
  if (!psi_.empty()) {
    v = psi_;
  } else {
    const EigResult eig = hermEig(rho_);
    v = eig.vectors.columnVector(0);
    const double scale = std::sqrt(std::max(0.0, eig.values.front()));
    for (auto& w : v) w *= scale;
  }
  // Fix the global phase: first component above 1e-12 made real positive.
  for (const auto& z : v) {
    if (std::abs(z) > 1e-12) {
      if (z.imag() == 0.0 && z.real() > 0.0) break;
      const Complex phase = std::conj(z) / std::abs(z);
      for (auto& w : v) w *= phase;
      break;
    }
  }
  return v;
}

// ----------------------------------------------------------------- RoleMap

std::vector<Labels> RoleMap::helperGroups() const {
  if (!groups.empty()) return groups;
  std::vector<Labels> out;
  for (const auto& h : helpers) out.push_back({h});
  return out;
}

void RoleMap::validate(const Register& reg, bool require_recipients) const {
  if (require_recipients && (a.empty() || b.empty())) {
    throw Error(ErrorCode::kRoleMissing, "roles must name both recipients a and b");
  }
  Labels all;
  if (!a.empty()) all.push_back(a);
  if (!b.empty()) all.push_back(b);
  all.insert(all.end(), helpers.begin(), helpers.end());
  if (reference) all.push_back(*reference);
  for (const auto& l : all) reg.indexOf(l);
  requireDistinct(all, "roles");
  if (!groups.empty()) {
    Labels flat;
    for (const auto& g : groups) {
      if (g.empty()) throw Error(ErrorCode::kInvalidArgument, "empty helper group");
      flat.insert(flat.end(), g.begin(), g.end());
    }
    requireDistinct(flat, "helper groups");
    Labels sorted_flat = flat, sorted_helpers = helpers;
    std::sort(sorted_flat.begin(), sorted_flat.end());
    std::sort(sorted_helpers.begin(), sorted_helpers.end());
    if (sorted_flat != sorted_helpers) {
      throw Error(ErrorCode::kInvalidArgument, "helper groups must partition the helper labels");
    }
  }
}

// -------------------------------------------------------------- Operations

MultiState tensorProduct(const MultiState& a, const MultiState& b) {
  Register reg = a.reg().concat(b.reg());
  return MultiState::trusted(std::move(reg), kron(a.rho(), b.rho()));
}

MultiState partialTrace(const MultiState& s, std::span<const std::string> keep) {
  if (keep.empty()) throw Error(ErrorCode::kInvalidArgument, "partialTrace: keep set is empty");
  const Register kept = s.reg().select(keep);
  const std::vector<std::size_t> dims = dimsOf(s.reg());
  const Labels kept_labels = kept.labels();
  const std::vector<std::size_t> keep_pos = positionsOf(s.reg(), kept_labels);
  const std::vector<std::size_t> trace_pos = complementPositions(dims.size(), keep_pos);
  const std::vector<std::size_t> k_off = offsetsFor(dims, keep_pos);
  const std::vector<std::size_t> t_off = offsetsFor(dims, trace_pos);

  const CMatrix& rho = s.rho();
  CMatrix out(k_off.size(), k_off.size());
  for (std::size_t i = 0; i < k_off.size(); ++i) {
    for (std::size_t j = 0; j < k_off.size(); ++j) {
      Complex acc = 0.0;
      for (std::size_t t : t_off) acc += rho(k_off[i] + t, k_off[j] + t);
      out(i, j) = acc;
    }
  }
  return MultiState::trusted(kept, std::move(out));
}

MultiState partialTrace(const MultiState& s, std::initializer_list<std::string> keep) {
  return partialTrace(s, std::span<const std::string>(keep.begin(), keep.size()));
}

MultiState purify(const MultiState& s, const std::string& ref_label) {
  if (s.reg().contains(ref_label)) {
    throw Error(ErrorCode::kLabelClash, "purify: reference label '" + ref_label + "' already used");
  }
  const EigResult eig = hermEig(s.rho());
  std::size_t rank = 0;
  while (rank < eig.values.size() && eig.values[rank] > 1e-12) ++rank;
  rank = std::max<std::size_t>(rank, 1);
  const std::size_t d = s.dim();
  std::vector<Complex> amp(d * rank);
  double norm2 = 0.0;
  for (std::size_t k = 0; k < rank; ++k) {
    const double w = std::sqrt(std::max(0.0, eig.values[k]));
    for (std::size_t i = 0; i < d; ++i) {
      amp[i * rank + k] = w * eig.vectors(i, k);
      norm2 += std::norm(amp[i * rank + k]);
    }
  }
  // Renormalize away the dropped sub-1e-12 tail.
  for (auto& z : amp) z /= std::sqrt(norm2);
  std::vector<Subsystem> subs = s.reg().subsystems();
  subs.push_back({ref_label, rank});
  return MultiState::trusted(Register(std::move(subs)), CMatrix::outer(amp));
}

MultiState applyLocalUnitary(const MultiState& s, std::span<const std::string> on, const CMatrix& u) {
  requireDistinct(on, "applyLocalUnitary");
  const std::vector<std::size_t> on_pos = positionsOf(s.reg(), on);
  const std::size_t d_on = s.reg().dimOf(on);
  if (u.rows() != d_on || u.cols() != d_on) {
    throw Error(ErrorCode::kDimensionMismatch, "applyLocalUnitary: U is " + std::to_string(u.rows()) + "x" +
                                                   std::to_string(u.cols()) + ", subsystems have dim " +
                                                   std::to_string(d_on));
  }
  if (!isUnitary(u, 1e-9)) throw Error(ErrorCode::kNotUnitary, "applyLocalUnitary: U is not unitary");

  const std::vector<std::size_t> dims = dimsOf(s.reg());
  const std::vector<std::size_t> u_off = offsetsFor(dims, on_pos);
  const std::vector<std::size_t> r_off = offsetsFor(dims, complementPositions(dims.size(), on_pos));
  const std::size_t d = s.dim();
  CMatrix w(d, d);
  for (std::size_t r : r_off) {
    for (std::size_t i = 0; i < d_on; ++i) {
      for (std::size_t j = 0; j < d_on; ++j) w(u_off[i] + r, u_off[j] + r) = u(i, j);
    }
  }
  CMatrix rho = w * s.rho() * w.adjoint();
  return MultiState::trusted(s.reg(), std::move(rho));
}

MultiState applyLocalUnitary(const MultiState& s, std::initializer_list<std::string> on, const CMatrix& u) {
  return applyLocalUnitary(s, std::span<const std::string>(on.begin(), on.size()), u);
}

MultiState reorder(const MultiState& s, std::span<const std::string> order) {
  if (order.size() != s.reg().size()) {
    throw Error(ErrorCode::kInvalidArgument, "reorder: order must list every subsystem once");
  }
  requireDistinct(order, "reorder");
  const std::vector<std::size_t> pos = positionsOf(s.reg(), order);
  const std::vector<std::size_t> off = offsetsFor(dimsOf(s.reg()), pos);
  CMatrix rho(s.dim(), s.dim());
  for (std::size_t i = 0; i < off.size(); ++i) {
    for (std::size_t j = 0; j < off.size(); ++j) rho(i, j) = s.rho()(off[i], off[j]);
  }
  std::vector<Subsystem> subs;
  for (std::size_t p : pos) subs.push_back(s.reg().subsystems()[p]);
  return MultiState::trusted(Register(std::move(subs)), std::move(rho));
}

CMatrix reducedFromPure(std::span<const Complex> amplitudes, std::span<const std::size_t> dims,
                        std::span<const std::size_t> keep) {
  const std::vector<std::size_t> k_off = offsetsFor(dims, keep);
  const std::vector<std::size_t> t_off = offsetsFor(dims, complementPositions(dims.size(), keep));
  if (k_off.size() * t_off.size() != amplitudes.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "reducedFromPure: dims do not match amplitude count");
  }
  const std::size_t nk = k_off.size();
  const std::size_t nt = t_off.size();
  // M(k, t) = v(k, t); rho = M M^dag.
  std::vector<Complex> m(nk * nt);
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t t = 0; t < nt; ++t) m[k * nt + t] = amplitudes[k_off[k] + t_off[t]];
  }
  CMatrix rho(nk, nk);
  for (std::size_t i = 0; i < nk; ++i) {
    for (std::size_t j = i; j < nk; ++j) {
      Complex acc = 0.0;
      const Complex* mi = &m[i * nt];
      const Complex* mj = &m[j * nt];
      for (std::size_t t = 0; t < nt; ++t) acc += mi[t] * std::conj(mj[t]);
      rho(i, j) = acc;
      rho(j, i) = std::conj(acc);
    }
  }
  return rho;
}

std::vector<Complex> permuteAmplitudes(std::span<const Complex> amplitudes, std::span<const std::size_t> dims,
                                       std::span<const std::size_t> order) {
  const std::vector<std::size_t> off = offsetsFor(dims, order);
  if (off.size() != amplitudes.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "permuteAmplitudes: order must cover every factor");
  }
  std::vector<Complex> out(off.size());
  for (std::size_t i = 0; i < off.size(); ++i) out[i] = amplitudes[off[i]];
  return out;
}

std::vector<std::size_t> subsystemOffsets(const Register& reg, std::span<const std::string> labels) {
  requireDistinct(labels, "subsystemOffsets");
  return offsetsFor(dimsOf(reg), positionsOf(reg, labels));
}

CMatrix cnotMatrix() {
  return CMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
}

// ---------------------------------------------------------------- Examples

std::vector<Complex> namedTwoQubitState(const std::string& name) {
  if (name == "bell") return {std::sqrt(0.5), 0.0, 0.0, std::sqrt(0.5)};
  if (name == "product") return {1.0, 0.0, 0.0, 0.0};
  constexpr std::string_view kSchmidt = "schmidt:";
  if (name.rfind(kSchmidt, 0) == 0) {
    double x = 0.0;
    try {
      std::size_t used = 0;
      x = std::stod(name.substr(kSchmidt.size()), &used);
      if (used != name.size() - kSchmidt.size()) throw std::invalid_argument(name);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad Schmidt weight in '" + name + "'");
    }
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "Schmidt weight must lie in [0, 1]");
    return {std::sqrt(x), 0.0, 0.0, std::sqrt(1.0 - x)};
  }
  throw Error(ErrorCode::kUnknownExample, "unknown two-qubit state '" + name + "'");
}

ExampleState factorizedChainExample() {
  const double h = 0.5;
  const std::vector<Complex> ac1 = {h, 0.0, 0.0, std::sqrt(0.75)};
  // |psi>^{BC2R} = |000>/sqrt2 + |110>/2 + |111>/2
  std::vector<Complex> bc2r(8, 0.0);
  bc2r[0b000] = std::sqrt(0.5);
  bc2r[0b110] = h;
  bc2r[0b111] = h;
  const MultiState left = MultiState::fromAmplitudes(Register({{"A", 2}, {"C1", 2}}), ac1);
  const MultiState right = MultiState::fromAmplitudes(Register({{"B", 2}, {"C2", 2}, {"R", 2}}), bc2r);
  RoleMap roles{"A", "B", {"C1", "C2"}, {{"C1", "C2"}}, "R"};
  return {tensorProduct(left, right), std::move(roles), {{{"A"}, {"C1"}}, {{"C2"}, {"B"}}}};
}

ExampleState decouplingExample() {
  std::vector<Complex> bc2r(8, 0.0);
  bc2r[0b000] = std::sqrt(0.5);
  bc2r[0b110] = 0.5;
  bc2r[0b111] = 0.5;
  RoleMap roles{"", "B", {"C2"}, {}, "R"};
  return {MultiState::fromAmplitudes(Register({{"B", 2}, {"C2", 2}, {"R", 2}}), bc2r), std::move(roles), {}};
}

ExampleState cnotCorruptedExample() {
  ExampleState ex = factorizedChainExample();
  ex.state = applyLocalUnitary(ex.state, {"C1", "C2"}, cnotMatrix());
  return ex;
}

ExampleState cqExample(std::span<const double> probs, std::span<const std::vector<Complex>> states,
                       std::size_t dim_a, std::size_t dim_b) {
  if (probs.empty() || probs.size() != states.size()) {
    throw Error(ErrorCode::kInvalidArgument, "cq example needs one pure state per probability");
  }
  const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (std::abs(total - 1.0) > kStateTol) throw Error(ErrorCode::kInvalidState, "cq probabilities must sum to 1");
  const std::size_t dc = probs.size();
  const Register ab({{"A", dim_a}, {"B", dim_b}});
  Register reg({{"A", dim_a}, {"B", dim_b}, {"C", dc}});
  CMatrix rho(reg.totalDim(), reg.totalDim());
  for (std::size_t i = 0; i < dc; ++i) {
    if (probs[i] < 0.0) throw Error(ErrorCode::kInvalidState, "cq probabilities must be nonnegative");
    const MultiState psi = MultiState::fromAmplitudes(ab, states[i]);
    CMatrix flag(dc, dc);
    flag(i, i) = probs[i];
    rho += kron(psi.rho(), flag);
  }
  RoleMap roles{"A", "B", {"C"}, {}, std::nullopt};
  return {MultiState::trusted(std::move(reg), std::move(rho)), std::move(roles), {}};
}

ExampleState maximallyEntangledExample(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "maximally entangled state needs M >= 1");
  std::vector<Complex> amp(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) amp[i * m + i] = 1.0 / std::sqrt(static_cast<double>(m));
  RoleMap roles{"A", "B", {}, {}, std::nullopt};
  return {MultiState::fromAmplitudes(Register({{"A", m}, {"B", m}}), amp), std::move(roles), {}};
}

ExampleState chainTwoRepeatersExample(std::span<const MultiState> links) {
  if (links.size() != 3) throw Error(ErrorCode::kInvalidArgument, "chain-2-repeaters needs three link states");
  for (const auto& l : links) {
    if (l.reg().size() != 2) throw Error(ErrorCode::kInvalidArgument, "each chain link must be bipartite");
  }
  MultiState state = relabel(links[0], {"A", "C1"});
  state = tensorProduct(state, relabel(links[1], {"C2", "D1"}));
  state = tensorProduct(state, relabel(links[2], {"D2", "B"}));
  RoleMap roles{"A", "B", {"C1", "C2", "D1", "D2"}, {{"C1", "C2"}, {"D1", "D2"}}, std::nullopt};
  return {std::move(state), std::move(roles), {{{"A"}, {"C1"}}, {{"C2"}, {"D1"}}, {{"D2"}, {"B"}}}};
}

ExampleState namedExample(const std::string& name) {
  if (name == "factorized-chain") return factorizedChainExample();
  if (name == "cnot-corrupted") return cnotCorruptedExample();
  if (name == "decoupling") return decouplingExample();
  if (name == "maximally-entangled") return maximallyEntangledExample(2);
  if (name == "chain-2-repeaters") {
    const Register pair({{"X", 2}, {"Y", 2}});
    const MultiState bell = MultiState::fromAmplitudes(pair, namedTwoQubitState("bell"));
    const std::vector<MultiState> links = {bell, bell, bell};
    return chainTwoRepeatersExample(links);
  }
  if (name == "cq") {
    const std::vector<double> probs = {0.5, 0.5};
    const std::vector<std::vector<Complex>> states = {namedTwoQubitState("bell"), namedTwoQubitState("product")};
    return cqExample(probs, states);
  }
  throw Error(ErrorCode::kUnknownExample, "unknown example '" + name + "'");
}

}  // namespace eoa
