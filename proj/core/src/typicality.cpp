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
#include "eoa/typicality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eoa/error.hpp"
#include "eoa/rates.hpp"

namespace eoa {
namespace {

constexpr double kFrequencySlack = 1e-12;
constexpr double kDropProbability = 1e-12;

std::size_t checkedPower(std::size_t base, std::size_t n, const char* what) {
  std::size_t out = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (base != 0 && out > kMaxTensorEntries / base) {
      throw Error(ErrorCode::kTooLarge, std::string(what) + " exceeds 2^20 entries");
    }
    out *= base;
  }
  return out;
}

void requireWithinCap(std::size_t entries, const char* what) {
  if (entries > kMaxTensorEntries) throw Error(ErrorCode::kTooLarge, std::string(what) + " exceeds 2^20 entries");
}

// Digits of a sequence index, first letter most significant.
void decode(std::uint64_t index, std::size_t d, std::span<std::size_t> digits) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    digits[k] = static_cast<std::size_t>(index % d);
    index /= d;
  }
}

// Letters whose probabilities agree within 1e-9 form one class.
struct LetterClasses {
  std::vector<std::size_t> of;  ///< class of each letter
  std::vector<double> mass;     ///< total probability of each class
};

LetterClasses letterClasses(std::span<const double> p) {
  LetterClasses out;
  std::vector<double> rep;
  for (double x : p) {
    std::size_t k = 0;
    while (k < rep.size() && std::abs(rep[k] - x) > 1e-9) ++k;
    if (k == rep.size()) {
      rep.push_back(x);
      out.mass.push_back(0.0);
    }
    out.of.push_back(k);
    out.mass[k] += x;
  }
  return out;
}

// Class counts of a letter sequence.
void classCounts(std::span<const std::size_t> letters, const LetterClasses& cls, std::vector<std::size_t>& counts) {
  counts.assign(cls.mass.size(), 0);
  for (std::size_t x : letters) ++counts[cls.of[x]];
}

CMatrix kronPower(const CMatrix& m, std::size_t n) {
  CMatrix out = CMatrix::identity(1);
  for (std::size_t k = 0; k < n; ++k) out = kron(out, m);
  return out;
}

// A pure state split as helper x rest with the helper rows expressed in the
// spectral basis of the helper marginal.
struct SingleCopy {
  std::size_t dh = 0;
  std::size_t drest = 0;
  std::vector<std::size_t> restDims;
  Register restReg;
  std::vector<Complex> restOrdered;  ///< amplitudes in (helper, rest) order, original basis
  CMatrix rotated;                   ///< dh x drest
  std::vector<double> p;
  CMatrix basis;
};

SingleCopy prepare(const MultiState& pure, std::span<const std::string> helper, std::span<const std::string> rest) {
  if (!pure.isPure()) throw Error(ErrorCode::kInvalidState, "random typical measurement needs a pure state");
  if (helper.empty() || rest.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "both the helper and the remaining systems must be nonempty");
  }
  SingleCopy sc;
  std::vector<std::size_t> dims;
  for (const auto& s : pure.reg().subsystems()) dims.push_back(s.dim);
  std::vector<std::size_t> order;
  for (const auto& l : helper) order.push_back(pure.reg().indexOf(l));
  for (const auto& l : rest) {
    order.push_back(pure.reg().indexOf(l));
    sc.restDims.push_back(pure.reg().dimOf(l));
  }
  if (order.size() != dims.size()) {
    throw Error(ErrorCode::kInvalidArgument, "helper and remaining systems must cover the register");
  }
  std::vector<Subsystem> rest_subs;
  for (const auto& l : rest) rest_subs.push_back({l, pure.reg().dimOf(l)});
  sc.restReg = Register(std::move(rest_subs));
  sc.dh = pure.reg().dimOf(helper);
  sc.drest = sc.restReg.totalDim();
  sc.restOrdered = permuteAmplitudes(pure.amplitudes(), dims, order);

  CMatrix psi(sc.dh, sc.drest, sc.restOrdered);
  CMatrix rho_h = psi * psi.adjoint();
  rho_h = 0.5 * (rho_h + rho_h.adjoint());
  EigResult eig = hermEig(rho_h);
  sc.p = clampSpectrum(eig.values);
  const double total = std::accumulate(sc.p.begin(), sc.p.end(), 0.0);
  for (double& x : sc.p) x /= total;
  sc.basis = eig.vectors;
  sc.rotated = eig.vectors.adjoint() * psi;
  return sc;
}

// Rows of psi^{(x)n} restricted to the typical helper sequences:
// row t = (x) rotated[x_k, :] over the copies of sequence t.
std::vector<Complex> typicalRows(const SingleCopy& sc, const TypicalSubspace& typ) {
  const std::size_t n = typ.n;
  const std::size_t cols = checkedPower(sc.drest, n, "rest^n");
  requireWithinCap(typ.dim() * cols, "projected state");
  std::vector<Complex> out(typ.dim() * cols);
  std::vector<std::size_t> digits(n);
  std::vector<Complex> row, next;
  for (std::size_t t = 0; t < typ.dim(); ++t) {
    decode(typ.indices[t], sc.dh, digits);
    row.assign(1, Complex(1.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
      next.assign(row.size() * sc.drest, Complex(0.0, 0.0));
      for (std::size_t a = 0; a < row.size(); ++a) {
        for (std::size_t c = 0; c < sc.drest; ++c) next[a * sc.drest + c] = row[a] * sc.rotated(digits[k], c);
      }
      row.swap(next);
    }
    std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(t * cols));
  }
  return out;
}

double normalize(std::vector<Complex>& v) {
  double mass = 0.0;
  for (const auto& z : v) mass += std::norm(z);
  if (mass < 1e-9) throw Error(ErrorCode::kDegenerateProjection, "typical projection has norm below 1e-9");
  const double scale = 1.0 / std::sqrt(mass);
  for (auto& z : v) z *= scale;
  return mass;
}

// phi = U^dag psi_T, rows are unnormalized outcome vectors.
std::vector<Complex> measureRows(const CMatrix& u, std::span<const Complex> rows, std::size_t cols) {
  const std::size_t t = u.rows();
  std::vector<Complex> out(t * cols, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < t; ++k) {
    const Complex* src = rows.data() + k * cols;
    for (std::size_t i = 0; i < t; ++i) {
      const Complex w = std::conj(u(k, i));
      Complex* dst = out.data() + i * cols;
      for (std::size_t c = 0; c < cols; ++c) dst[c] += w * src[c];
    }
  }
  return out;
}

double stddevOf(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

}  // namespace

double TypicalSubspace::mass() const {
  const std::size_t d = p.size();
  std::vector<std::size_t> digits(n);
  double total = 0.0;
  for (std::uint64_t idx : indices) {
    decode(idx, d, digits);
    double prob = 1.0;
    for (std::size_t x : digits) prob *= p[x];
    total += prob;
  }
  return total;
}

CMatrix TypicalSubspace::projector() const {
  const std::size_t full = checkedPower(p.size(), n, "typical space");
  requireWithinCap(full * full, "typical projector");
  const CMatrix v = kronPower(basis, n);
  CMatrix out(full, full);
  for (std::uint64_t idx : indices) {
    for (std::size_t i = 0; i < full; ++i) {
      const Complex vi = v(i, idx);
      if (vi == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < full; ++j) out(i, j) += vi * std::conj(v(j, idx));
    }
  }
  return out;
}

bool isTypical(std::span<const std::size_t> counts, std::size_t n, std::span<const double> p, double delta) {
  for (std::size_t x = 0; x < p.size(); ++x) {
    const double freq = static_cast<double>(counts[x]) / static_cast<double>(n);
    if (std::abs(freq - p[x]) > delta + kFrequencySlack) return false;
  }
  return true;
}

namespace {

TypicalSubspace enumerateTypical(std::span<const double> p, const CMatrix& eigenbasis, std::size_t n, double delta,
                                 bool merge_degenerate) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "typicalProjector: n must be >= 1");
  if (!(delta >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "typicalProjector: delta must be >= 0");
  if (p.empty()) throw Error(ErrorCode::kInvalidArgument, "typicalProjector: empty distribution");
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorCode::kInvalidArgument, "typicalProjector: p must sum to 1");
  if (eigenbasis.rows() != p.size() || eigenbasis.cols() != p.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "typicalProjector: basis must be square with one column per letter");
  }
  const std::size_t d = p.size();
  const std::size_t count = checkedPower(d, n, "sequence space");

  LetterClasses cls;
  if (merge_degenerate) {
    cls = letterClasses(p);
  } else {
    cls.of.resize(d);
    std::iota(cls.of.begin(), cls.of.end(), 0);
    cls.mass.assign(p.begin(), p.end());
  }

  TypicalSubspace out;
  out.n = n;
  out.delta = delta;
  out.p.assign(p.begin(), p.end());
  out.basis = eigenbasis;
  std::vector<std::size_t> digits(n);
  std::vector<std::size_t> counts;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    decode(idx, d, digits);
    classCounts(digits, cls, counts);
    if (isTypical(counts, n, cls.mass, delta)) out.indices.push_back(idx);
  }
  return out;
}

}  // namespace

TypicalSubspace typicalProjector(std::span<const double> p, const CMatrix& eigenbasis, std::size_t n, double delta) {
  return enumerateTypical(p, eigenbasis, n, delta, false);
}

TypicalSubspace spectralTypicalSubspace(std::span<const double> spectrum, const CMatrix& eigenbasis, std::size_t n,
                                        double delta) {
  return enumerateTypical(spectrum, eigenbasis, n, delta, true);
}

CMatrix haarUnitary(std::size_t d, Rng& rng) {
  if (d == 0) throw Error(ErrorCode::kInvalidArgument, "haarUnitary: d must be >= 1");
  CMatrix q = ginibre(d, d, rng);
  // Modified Gram-Schmidt, applied twice for orthogonality. The implied R
  // has a positive real diagonal, which is the phase normalization that makes
  // Q Haar distributed.
  for (std::size_t j = 0; j < d; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        Complex dot = 0.0;
        for (std::size_t r = 0; r < d; ++r) dot += std::conj(q(r, i)) * q(r, j);
        for (std::size_t r = 0; r < d; ++r) q(r, j) -= dot * q(r, i);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < d; ++r) norm += std::norm(q(r, j));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < d; ++r) q(r, j) /= norm;
  }
  return q;
}

double TrialStats::jointSuccessAt(double xi1, double xi2) const {
  double mass = 0.0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    if (distR[j] < xi1 && distB[j] < xi2) mass += probs[j];
  }
  return mass;
}

MeasurementEnsemble randomTypicalMeasurement(const MultiState& pure, std::span<const std::string> helper,
                                             std::size_t n, double delta, Rng& rng) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "randomTypicalMeasurement: n must be >= 1");
  const Labels rest = pure.reg().complement(helper);
  const SingleCopy sc = prepare(pure, helper, rest);
  checkedPower(sc.dh * sc.drest, n, "psi^n");
  const std::size_t cols = checkedPower(sc.drest, n, "rest^n");
  requireWithinCap(cols * cols, "outcome density matrix");

  const TypicalSubspace typ = spectralTypicalSubspace(sc.p, sc.basis, n, delta);
  if (typ.dim() == 0) throw Error(ErrorCode::kDegenerateProjection, "typical subspace is empty");
  std::vector<Complex> rows = typicalRows(sc, typ);
  const double mass = normalize(rows);
  const CMatrix u = haarUnitary(typ.dim(), rng);
  const std::vector<Complex> phi = measureRows(u, rows, cols);

  std::vector<Subsystem> subs;
  for (std::size_t k = 1; k <= n; ++k) {
    for (const auto& s : sc.restReg.subsystems()) subs.push_back({s.label + "#" + std::to_string(k), s.dim});
  }
  const Register out_reg(std::move(subs));

  MeasurementEnsemble ens;
  ens.discardedMass = 1.0 - mass;
  double kept = 0.0;
  for (std::size_t i = 0; i < typ.dim(); ++i) {
    std::span<const Complex> row(phi.data() + i * cols, cols);
    double p = 0.0;
    for (const auto& z : row) p += std::norm(z);
    if (p < kDropProbability) continue;
    kept += p;
    std::vector<Complex> v(row.begin(), row.end());
    for (auto& z : v) z /= std::sqrt(p);
    ens.outcomes.push_back({i, p, MultiState::trusted(out_reg, CMatrix::outer(v))});
  }
  for (auto& o : ens.outcomes) o.prob /= kept;
  return ens;
}

std::vector<DecouplingStats> decouplingExperiment(const MultiState& pure, const DecouplingRoles& roles,
                                                  const DecouplingOptions& options) {
  if (options.nList.empty()) throw Error(ErrorCode::kInvalidArgument, "decoupling: no block lengths given");
  if (options.trials == 0) throw Error(ErrorCode::kInvalidArgument, "decoupling: trials must be >= 1");
  if (!(options.xi1 > 0.0) || !(options.xi2 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "decoupling: thresholds must be positive");
  }
  if (roles.helper.empty() || roles.b.empty() || roles.r.empty()) {
    throw Error(ErrorCode::kRoleMissing, "decoupling needs helper, B and R systems");
  }
  Labels named = roles.helper;
  named.insert(named.end(), roles.b.begin(), roles.b.end());
  named.insert(named.end(), roles.r.begin(), roles.r.end());
  const Labels others = pure.reg().complement(named);
  Labels rest = roles.b;
  rest.insert(rest.end(), roles.r.begin(), roles.r.end());
  rest.insert(rest.end(), others.begin(), others.end());

  const SingleCopy sc = prepare(pure, roles.helper, rest);
  const std::size_t nb = roles.b.size();
  const std::size_t nr = roles.r.size();
  const std::size_t nf = rest.size();
  const std::size_t db = pure.reg().dimOf(roles.b);
  const std::size_t dr = pure.reg().dimOf(roles.r);
  const std::size_t dother = sc.drest / (db * dr);

  std::vector<std::string> notes;
  const double s_b = vonNeumann(pure, roles.b);
  const double s_r = vonNeumann(pure, roles.r);
  if (!(s_r < s_b)) {
    notes.push_back("hypothesis S(R) < S(B) violated: S(R)=" + std::to_string(s_r) + ", S(B)=" + std::to_string(s_b));
  }
  {
    Labels ab = others;
    ab.insert(ab.end(), roles.b.begin(), roles.b.end());
    Labels ar = others;
    ar.insert(ar.end(), roles.r.begin(), roles.r.end());
    if (!(s_r < vonNeumann(pure, ab))) notes.push_back("hypothesis S(R) < S(AB) violated");
    if (!(s_b < vonNeumann(pure, ar))) notes.push_back("hypothesis S(B) < S(AR) violated");
  }

  // Single-copy marginals of B and R in the original basis.
  std::vector<std::size_t> single_dims = sc.restDims;
  single_dims.insert(single_dims.begin(), sc.dh);
  std::vector<std::size_t> single_b(nb), single_r(nr);
  std::iota(single_b.begin(), single_b.end(), 1);
  std::iota(single_r.begin(), single_r.end(), 1 + nb);
  const CMatrix rho_b = reducedFromPure(sc.restOrdered, single_dims, single_b);
  const CMatrix rho_r = reducedFromPure(sc.restOrdered, single_dims, single_r);

  // Optional rotation of every copy's B and R factors into their eigenbases.
  CMatrix rotated = sc.rotated;
  LetterClasses cls_b, cls_r;
  if (options.projectAll) {
    const EigResult eb = hermEig(rho_b);
    const EigResult er = hermEig(rho_r);
    cls_b = letterClasses(clampSpectrum(eb.values));
    cls_r = letterClasses(clampSpectrum(er.values));
    const CMatrix w = kron(kron(eb.vectors.adjoint(), er.vectors.adjoint()), CMatrix::identity(dother));
    CMatrix wt(w.cols(), w.rows());
    for (std::size_t i = 0; i < w.rows(); ++i) {
      for (std::size_t j = 0; j < w.cols(); ++j) wt(j, i) = w(i, j);
    }
    rotated = sc.rotated * wt;
  }
  SingleCopy work = sc;
  work.rotated = rotated;

  std::vector<DecouplingStats> all;
  for (std::size_t n : options.nList) {
    if (n == 0) throw Error(ErrorCode::kInvalidArgument, "decoupling: block length must be >= 1");
    checkedPower(sc.dh * sc.drest, n, "psi^n");
    const std::size_t cols = checkedPower(sc.drest, n, "rest^n");
    requireWithinCap(checkedPower(db, n, "B^n") * checkedPower(db, n, "B^n"), "B^n density matrix");
    requireWithinCap(checkedPower(dr, n, "R^n") * checkedPower(dr, n, "R^n"), "R^n density matrix");

    const TypicalSubspace typ = spectralTypicalSubspace(sc.p, sc.basis, n, options.delta);
    if (typ.dim() == 0) throw Error(ErrorCode::kDegenerateProjection, "typical subspace is empty");
    std::vector<Complex> rows = typicalRows(work, typ);

    std::vector<std::size_t> dims_n;
    std::vector<std::size_t> pos_b, pos_r;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t f = 0; f < nf; ++f) {
        dims_n.push_back(sc.restDims[f]);
        if (f < nb) pos_b.push_back(k * nf + f);
        else if (f < nb + nr) pos_r.push_back(k * nf + f);
      }
    }

    CMatrix ref_b, ref_r;
    if (options.projectAll) {
      // Zero every column whose B or R letter sequence is atypical.
      std::vector<std::size_t> digits(n), letters_b(n), letters_r(n), counts_b, counts_r;
      for (std::size_t c = 0; c < cols; ++c) {
        decode(c, sc.drest, digits);
        for (std::size_t k = 0; k < n; ++k) {
          letters_b[k] = digits[k] / (dr * dother);
          letters_r[k] = (digits[k] / dother) % dr;
        }
        classCounts(letters_b, cls_b, counts_b);
        classCounts(letters_r, cls_r, counts_r);
        if (!isTypical(counts_b, n, cls_b.mass, options.delta) || !isTypical(counts_r, n, cls_r.mass, options.delta)) {
          for (std::size_t t = 0; t < typ.dim(); ++t) rows[t * cols + c] = 0.0;
        }
      }
    }
    const double mass = normalize(rows);
    if (options.projectAll) {
      std::vector<std::size_t> dims_full = dims_n;
      dims_full.insert(dims_full.begin(), typ.dim());
      std::vector<std::size_t> shifted_b = pos_b, shifted_r = pos_r;
      for (auto& x : shifted_b) ++x;
      for (auto& x : shifted_r) ++x;
      ref_b = reducedFromPure(rows, dims_full, shifted_b);
      ref_r = reducedFromPure(rows, dims_full, shifted_r);
    } else {
      ref_b = kronPower(rho_b, n);
      ref_r = kronPower(rho_r, n);
    }

    DecouplingStats stats;
    stats.n = n;
    stats.trials = options.trials;
    stats.seed = options.seed;
    stats.delta = options.delta;
    stats.xi1 = options.xi1;
    stats.xi2 = options.xi2;
    stats.typicalDim = typ.dim();
    stats.discardedMass = 1.0 - mass;
    stats.notes = notes;

    for (std::size_t trial = 0; trial < options.trials; ++trial) {
      Rng rng(deriveSeed(options.seed, n, trial));
      const CMatrix u = haarUnitary(typ.dim(), rng);
      const std::vector<Complex> phi = measureRows(u, rows, cols);
      TrialStats ts;
      ts.trial = trial;
      double kept = 0.0;
      for (std::size_t i = 0; i < typ.dim(); ++i) {
        std::vector<Complex> v(phi.begin() + static_cast<std::ptrdiff_t>(i * cols),
                               phi.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols));
        double p = 0.0;
        for (const auto& z : v) p += std::norm(z);
        if (p < kDropProbability) continue;
        for (auto& z : v) z /= std::sqrt(p);
        kept += p;
        ts.probs.push_back(p);
        ts.distR.push_back(traceNorm(reducedFromPure(v, dims_n, pos_r) - ref_r));
        ts.distB.push_back(traceNorm(reducedFromPure(v, dims_n, pos_b) - ref_b));
      }
      for (std::size_t j = 0; j < ts.probs.size(); ++j) {
        ts.probs[j] /= kept;
        ts.avgTraceDistR += ts.probs[j] * ts.distR[j];
        ts.avgTraceDistB += ts.probs[j] * ts.distB[j];
      }
      ts.outcomes = ts.probs.size();
      ts.jointSuccessFraction = ts.jointSuccessAt(options.xi1, options.xi2);
      stats.perTrial.push_back(std::move(ts));
    }

    std::vector<double> rs, bs, js;
    for (const auto& ts : stats.perTrial) {
      rs.push_back(ts.avgTraceDistR);
      bs.push_back(ts.avgTraceDistB);
      js.push_back(ts.jointSuccessFraction);
    }
    const double count = static_cast<double>(options.trials);
    stats.meanR = std::accumulate(rs.begin(), rs.end(), 0.0) / count;
    stats.meanB = std::accumulate(bs.begin(), bs.end(), 0.0) / count;
    stats.meanJoint = std::accumulate(js.begin(), js.end(), 0.0) / count;
    stats.stddevR = stddevOf(rs, stats.meanR);
    stats.stddevB = stddevOf(bs, stats.meanB);
    stats.stddevJoint = stddevOf(js, stats.meanJoint);
    all.push_back(std::move(stats));
  }
  return all;
}

}  // namespace eoa
