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
#include "eoa/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "eoa/error.hpp"
#include "eoa/rates.hpp"

namespace eoa {
namespace {

constexpr double kCompletenessTol = 1e-9;
constexpr double kDropProbability = 1e-12;

}  // namespace

void POVM::validate() const {
  if (elements.empty()) throw Error(ErrorCode::kInvalidPOVM, "POVM has no elements");
  const std::size_t d = dim();
  CMatrix sum(d, d);
  for (const auto& e : elements) {
    if (e.rows() != d || e.cols() != d) throw Error(ErrorCode::kInvalidPOVM, "POVM elements differ in shape");
    if (!isHermitian(e, kCompletenessTol)) throw Error(ErrorCode::kInvalidPOVM, "POVM element is not Hermitian");
    for (double x : hermEigenvalues(e)) {
      if (x < -clampTolerance()) throw Error(ErrorCode::kInvalidPOVM, "POVM element is not positive");
    }
    sum += e;
  }
  if (maxAbsDiff(sum, CMatrix::identity(d)) > kCompletenessTol) {
    throw Error(ErrorCode::kInvalidPOVM, "POVM elements do not sum to the identity");
  }
}

bool POVM::isRankOne(double tol) const {
  return std::all_of(elements.begin(), elements.end(), [&](const CMatrix& e) {
    const std::vector<double> v = hermEigenvalues(e);
    return v.size() < 2 || std::abs(v[1]) <= tol;
  });
}

POVM basisPOVM(Labels system, std::size_t dim) {
  POVM out{std::move(system), {}};
  for (std::size_t i = 0; i < dim; ++i) {
    CMatrix e(dim, dim);
    e(i, i) = 1.0;
    out.elements.push_back(std::move(e));
  }
  return out;
}

RefinedPOVM rankOneRefine(const POVM& f) {
  f.validate();
  RefinedPOVM out{{f.system, {}}, {}};
  for (std::size_t x = 0; x < f.elements.size(); ++x) {
    const EigResult eig = hermEig(f.elements[x]);
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
      if (eig.values[k] <= 1e-12) continue;
      const std::vector<Complex> alpha = eig.vectors.columnVector(k);
      out.povm.elements.push_back(CMatrix::outer(alpha) * Complex(eig.values[k]));
      out.parent.push_back(x);
    }
  }
  return out;
}

double MeasurementEnsemble::totalProbability() const {
  double total = 0.0;
  for (const auto& o : outcomes) total += o.prob;
  return total;
}

CMatrix MeasurementEnsemble::mixture() const {
  if (outcomes.empty()) return {};
  CMatrix out(outcomes.front().state.dim(), outcomes.front().state.dim());
  for (const auto& o : outcomes) out += o.state.rho() * Complex(o.prob);
  return out;
}

MeasurementEnsemble measureHelper(const MultiState& s, std::span<const std::string> block, const POVM& e) {
  e.validate();
  const std::size_t dc = s.reg().dimOf(block);
  if (e.dim() != dc) {
    throw Error(ErrorCode::kDimensionMismatch, "POVM acts on dimension " + std::to_string(e.dim()) +
                                                   " but the measured block has dimension " + std::to_string(dc));
  }
  const Labels rest = s.reg().complement(block);
  if (rest.empty()) throw Error(ErrorCode::kInvalidArgument, "measureHelper: nothing left unmeasured");
  const Register rest_reg = s.reg().select(rest);
  const std::vector<std::size_t> c_off = subsystemOffsets(s.reg(), block);
  const std::vector<std::size_t> r_off = subsystemOffsets(s.reg(), rest);
  const std::size_t dr = r_off.size();
  const CMatrix& rho = s.rho();

  struct Raw {
    std::size_t index;
    double prob;
    CMatrix block;
  };
  std::vector<Raw> kept;
  double kept_mass = 0.0;
  for (std::size_t x = 0; x < e.elements.size(); ++x) {
    const CMatrix& ex = e.elements[x];
    CMatrix out(dr, dr);
    for (std::size_t c = 0; c < dc; ++c) {
      for (std::size_t cp = 0; cp < dc; ++cp) {
        const Complex w = ex(c, cp);
        if (w == Complex(0.0, 0.0)) continue;
        for (std::size_t r = 0; r < dr; ++r) {
          for (std::size_t rp = 0; rp < dr; ++rp) out(r, rp) += w * rho(c_off[cp] + r_off[r], c_off[c] + r_off[rp]);
        }
      }
    }
    const double p = out.trace().real();
    if (p < kDropProbability) continue;
    kept_mass += p;
    kept.push_back({x, p, std::move(out)});
  }
  MeasurementEnsemble ens;
  for (auto& k : kept) {
    CMatrix state = k.block * Complex(1.0 / k.prob);
    state = 0.5 * (state + state.adjoint());
    ens.outcomes.push_back({k.index, k.prob / kept_mass, MultiState::trusted(rest_reg, std::move(state))});
  }
  return ens;
}

MeasurementEnsemble coarseGrain(const MeasurementEnsemble& refined, std::span<const std::size_t> parent) {
  std::map<std::size_t, std::pair<double, CMatrix>> merged;
  const Register* reg = nullptr;
  for (const auto& o : refined.outcomes) {
    if (o.index >= parent.size()) throw Error(ErrorCode::kInvalidArgument, "coarseGrain: outcome without parent");
    auto [it, inserted] = merged.try_emplace(parent[o.index], 0.0, CMatrix(o.state.dim(), o.state.dim()));
    it->second.first += o.prob;
    it->second.second += o.state.rho() * Complex(o.prob);
    reg = &o.state.reg();
  }
  MeasurementEnsemble out;
  out.discardedMass = refined.discardedMass;
  for (auto& [x, acc] : merged) {
    out.outcomes.push_back({x, acc.first, MultiState::trusted(*reg, acc.second * Complex(1.0 / acc.first))});
  }
  return out;
}

double avgHashingRate(const MeasurementEnsemble& ens, std::span<const std::string> a,
                      std::span<const std::string> b) {
  double rate = 0.0;
  for (const auto& o : ens.outcomes) rate += o.prob * hashingBound(o.state, a, b);
  return rate;
}

double cqAssistance(const MultiState& s, const RoleMap& roles) {
  roles.validate(s.reg());
  if (roles.helpers.empty()) throw Error(ErrorCode::kRoleMissing, "cqAssistance needs a classical helper");
  Labels kept = {roles.a, roles.b};
  kept.insert(kept.end(), roles.helpers.begin(), roles.helpers.end());
  const MultiState m = partialTrace(s, kept);
  const Labels ab = m.reg().complement(roles.helpers);
  const Register ab_reg = m.reg().select(ab);
  const std::vector<std::size_t> c_off = subsystemOffsets(m.reg(), roles.helpers);
  const std::vector<std::size_t> r_off = subsystemOffsets(m.reg(), ab);
  const CMatrix& rho = m.rho();

  double off_block = 0.0;
  for (std::size_t c = 0; c < c_off.size(); ++c) {
    for (std::size_t cp = 0; cp < c_off.size(); ++cp) {
      if (c == cp) continue;
      for (std::size_t r : r_off) {
        for (std::size_t rp : r_off) off_block += std::norm(rho(c_off[c] + r, c_off[cp] + rp));
      }
    }
  }
  if (std::sqrt(off_block) >= 1e-9) {
    throw Error(ErrorCode::kNotClassicalQuantum, "state has coherence across the helper basis");
  }

  const Labels a = {roles.a};
  double rate = 0.0;
  for (std::size_t c = 0; c < c_off.size(); ++c) {
    CMatrix block(r_off.size(), r_off.size());
    for (std::size_t i = 0; i < r_off.size(); ++i) {
      for (std::size_t j = 0; j < r_off.size(); ++j) block(i, j) = rho(c_off[c] + r_off[i], c_off[c] + r_off[j]);
    }
    const double p = block.trace().real();
    if (p < kDropProbability) continue;
    const MultiState psi = MultiState::trusted(ab_reg, block * Complex(1.0 / p));
    if (!psi.isPure()) {
      throw Error(ErrorCode::kNotClassicalQuantum, "block " + std::to_string(c) + " is not a pure state");
    }
    rate += p * vonNeumann(psi, a);
  }
  return rate;
}

ConvexityWitness convexityWitness(const MultiState& s, std::span<const std::pair<double, MultiState>> decomposition,
                                  const POVM& e, const RoleMap& roles) {
  roles.validate(s.reg());
  Labels named = {roles.a, roles.b};
  named.insert(named.end(), roles.helpers.begin(), roles.helpers.end());
  if (!s.reg().complement(named).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "convexityWitness: state must live on A, B and the helpers only");
  }
  if (!e.isRankOne()) throw Error(ErrorCode::kInvalidPOVM, "convexityWitness needs a rank-one POVM");
  if (decomposition.empty()) throw Error(ErrorCode::kDecompositionMismatch, "empty decomposition");

  CMatrix mix(s.dim(), s.dim());
  for (const auto& [p, psi] : decomposition) {
    if (!(psi.reg() == s.reg())) throw Error(ErrorCode::kDecompositionMismatch, "decomposition register differs");
    if (!psi.isPure()) throw Error(ErrorCode::kDecompositionMismatch, "decomposition state is not pure");
    mix += psi.rho() * Complex(p);
  }
  if (maxAbsDiff(mix, s.rho()) > 1e-8) {
    throw Error(ErrorCode::kDecompositionMismatch, "decomposition does not mix to the state");
  }

  const Labels a = {roles.a};
  const Labels b = {roles.b};
  ConvexityWitness w;
  w.lhs = avgHashingRate(measureHelper(s, roles.helpers, e), a, b);
  for (const auto& [p, psi] : decomposition) {
    if (p <= 0.0) continue;
    for (const auto& o : measureHelper(psi, roles.helpers, e).outcomes) {
      w.rhs += p * o.prob * vonNeumann(o.state, a);
    }
  }
  return w;
}

}  // namespace eoa
