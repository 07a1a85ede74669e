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
#include "eoa/densemat.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "eoa/error.hpp"

namespace eoa {
namespace {

std::atomic<double> g_clamp_tolerance{1e-9};

constexpr double kHermitianTol = 1e-9;

void requireSameShape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

void requireSquare(const CMatrix& m, const char* op) {
  if (!m.isSquare()) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(op) + ": matrix is not square");
  }
}

// One complex Jacobi rotation zeroing a(p, q). The rotation is
// J = diag(1, conj(e)) * G with e = a_pq / |a_pq| and G the real Jacobi
// rotation of the phase-stripped 2x2 block.
void rotate(CMatrix& a, CMatrix* v, std::size_t p, std::size_t q) {
  const std::size_t n = a.rows();
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  const Complex e = apq / mag;
  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex ec = std::conj(e);
  const Complex sec = s * ec;
  const Complex cec = c * ec;
  const Complex se = s * e;
  const Complex ce = c * e;

  const double app = a(p, p).real() - t * mag;
  const double aqq = a(q, q).real() + t * mag;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - sec * akq;
    a(k, q) = s * akp + cec * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - se * aqk;
    a(q, k) = s * apk + ce * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app;
  a(q, q) = aqq;

  if (v == nullptr) return;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = (*v)(k, p);
    const Complex vkq = (*v)(k, q);
    (*v)(k, p) = c * vkp - sec * vkq;
    (*v)(k, q) = s * vkp + cec * vkq;
  }
}

double offDiagonalNorm(const CMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "CMatrix: entry count does not match shape");
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorCode::kDimensionMismatch, "CMatrix: ragged initializer");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
  CMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

CMatrix CMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

CMatrix CMatrix::outer(std::span<const Complex> v) {
  CMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  }
  return m;
}

CMatrix CMatrix::column(std::span<const Complex> v) {
  return CMatrix(v.size(), 1, std::vector<Complex>(v.begin(), v.end()));
}

std::vector<Complex> CMatrix::columnVector(std::size_t c) const {
  std::vector<Complex> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  }
  return out;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobeniusNorm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double CMatrix::maxAbs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  requireSameShape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  requireSameShape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "operator*: inner dimensions differ");
  }
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

double maxAbsDiff(const CMatrix& a, const CMatrix& b) {
  requireSameShape(a, b, "maxAbsDiff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return m;
}

bool isHermitian(const CMatrix& m, double tol) {
  if (!m.isSquare()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    }
  }
  return true;
}

bool isUnitary(const CMatrix& m, double tol) {
  if (!m.isSquare()) return false;
  return maxAbsDiff(m.adjoint() * m, CMatrix::identity(m.rows())) <= tol;
}

double clampTolerance() { return g_clamp_tolerance.load(std::memory_order_relaxed); }

void setClampTolerance(double tol) {
  if (!(tol >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "clamp tolerance must be >= 0");
  g_clamp_tolerance.store(tol, std::memory_order_relaxed);
}

namespace {

EigResult jacobi(const CMatrix& m, bool want_vectors) {
  requireSquare(m, "hermEig");
  if (!isHermitian(m, kHermitianTol)) {
    throw Error(ErrorCode::kNotHermitian, "hermEig: ||M - M^dag||_max exceeds 1e-9");
  }
  const std::size_t n = m.rows();
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  CMatrix v = want_vectors ? CMatrix::identity(n) : CMatrix();

  const double scale = a.frobeniusNorm();
  const double stop = static_cast<double>(std::max<std::size_t>(n, 1)) *
                      std::numeric_limits<double>::epsilon() * scale;
  int sweep = 0;
  while (n > 1 && offDiagonalNorm(a) > stop) {
    if (++sweep > kMaxJacobiSweeps) {
      throw Error(ErrorCode::kNoConvergence,
                  "hermEig: no convergence after " + std::to_string(kMaxJacobiSweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        // Negligible against both diagonal entries: drop it.
        if (sweep > 4 && std::abs(a(p, p).real()) + 100.0 * mag == std::abs(a(p, p).real()) &&
            std::abs(a(q, q).real()) + 100.0 * mag == std::abs(a(q, q).real())) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, want_vectors ? &v : nullptr, p, q);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });
  EigResult out{std::vector<double>(n), want_vectors ? CMatrix(n, n) : CMatrix()};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    if (!want_vectors) continue;
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

}  // namespace

EigResult hermEig(const CMatrix& m) { return jacobi(m, true); }

std::vector<double> hermEigenvalues(const CMatrix& m) { return jacobi(m, false).values; }

std::vector<double> clampSpectrum(std::vector<double> values) {
  const double tol = clampTolerance();
  for (double& x : values) {
    if (x < -tol) {
      throw Error(ErrorCode::kNotPSD, "eigenvalue " + std::to_string(x) + " below -" + std::to_string(tol));
    }
    if (x < 0.0) x = 0.0;
  }
  return values;
}

double traceDistance(const CMatrix& rho, const CMatrix& sigma) { return 0.5 * traceNorm(rho - sigma); }

namespace {

// Eigenvalues within rounding of zero would otherwise leak O(sqrt(eps)) mass
// through the square root.
double roundingFloor(const std::vector<double>& values) {
  double largest = 0.0;
  for (double x : values) largest = std::max(largest, std::abs(x));
  return 16.0 * static_cast<double>(values.size()) * std::numeric_limits<double>::epsilon() * largest;
}

double rootAboveFloor(double x, double floor) { return x > floor ? std::sqrt(x) : 0.0; }

}  // namespace

double traceNorm(const CMatrix& m) {
  requireSquare(m, "traceNorm");
  const double scale = std::max(1.0, m.maxAbs());
  if (isHermitian(m, 1e-13 * scale)) {
    double sum = 0.0;
    for (double x : hermEigenvalues(m)) sum += std::abs(x);
    return sum;
  }
  // Singular values are square roots of the spectrum of M^dag M.
  const std::vector<double> gram = hermEigenvalues(m.adjoint() * m);
  const double floor = roundingFloor(gram);
  double sum = 0.0;
  for (double x : gram) sum += rootAboveFloor(x, floor);
  return sum;
}

CMatrix sqrtPsd(const CMatrix& m) {
  EigResult eig = hermEig(m);
  const std::vector<double> values = clampSpectrum(eig.values);
  const double floor = roundingFloor(values);
  const std::size_t n = m.rows();
  CMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = rootAboveFloor(values[k], floor);
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.vectors(i, k) * root;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eig.vectors(j, k));
    }
  }
  return out;
}

namespace {

double checkedTrace(const CMatrix& rho, const char* name) {
  requireSquare(rho, name);
  const double tr = rho.trace().real();
  if (tr > 1.0 + clampTolerance()) {
    throw Error(ErrorCode::kInvalidState, std::string(name) + ": trace exceeds 1");
  }
  return tr;
}

}  // namespace

double fidelity(const CMatrix& rho, const CMatrix& sigma) {
  checkedTrace(rho, "fidelity");
  checkedTrace(sigma, "fidelity");
  requireSameShape(rho, sigma, "fidelity");
  clampSpectrum(hermEigenvalues(sigma));
  const CMatrix root = sqrtPsd(rho);
  CMatrix inner = root * sigma * root;
  inner = 0.5 * (inner + inner.adjoint());
  const std::vector<double> spectrum = hermEigenvalues(inner);
  const double floor = roundingFloor(spectrum);
  double f = 0.0;
  for (double x : spectrum) f += rootAboveFloor(x, floor);
  return std::clamp(f, 0.0, 1.0);
}

double generalizedFidelity(const CMatrix& rho, const CMatrix& sigma) {
  const double tr_rho = std::min(1.0, checkedTrace(rho, "generalizedFidelity"));
  const double tr_sigma = std::min(1.0, checkedTrace(sigma, "generalizedFidelity"));
  return std::min(1.0, fidelity(rho, sigma) + std::sqrt((1.0 - tr_rho) * (1.0 - tr_sigma)));
}

double purifiedDistance(const CMatrix& rho, const CMatrix& sigma) {
  const double f = generalizedFidelity(rho, sigma);
  return std::sqrt(std::max(0.0, 1.0 - f * f));
}

}  // namespace eoa
