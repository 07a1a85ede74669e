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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace eoa {

using Complex = std::complex<double>;

/// Dense complex matrix stored row-major.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
  static CMatrix diagonal(std::span<const double> values);
  static CMatrix diagonal(std::initializer_list<double> values);
  /// |v><v| for an amplitude vector.
  static CMatrix outer(std::span<const Complex> v);
  static CMatrix column(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool isSquare() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }
  std::vector<Complex> columnVector(std::size_t c) const;

  CMatrix adjoint() const;
  Complex trace() const;
  double frobeniusNorm() const;
  double maxAbs() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex scale);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
/// max_ij |a_ij - b_ij|; dimensions must agree.
double maxAbsDiff(const CMatrix& a, const CMatrix& b);
bool isHermitian(const CMatrix& m, double tol);
bool isUnitary(const CMatrix& m, double tol);

/// Tolerance below which small negative eigenvalues are clamped to zero
/// before square roots and logarithms. Values more negative raise NotPSD.
/// Process-wide; defaults to 1e-9.
double clampTolerance();
void setClampTolerance(double tol);

struct EigResult {
  std::vector<double> values;  ///< descending
  CMatrix vectors;             ///< column k pairs with values[k]
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Throws NotHermitian when ||M - M^dag||_max > 1e-9 and NoConvergence after
/// kMaxJacobiSweeps sweeps.
EigResult hermEig(const CMatrix& m);
std::vector<double> hermEigenvalues(const CMatrix& m);

inline constexpr int kMaxJacobiSweeps = 100;

/// Clamps eigenvalues in (-tol, 0) to zero; throws NotPSD below -tol.
std::vector<double> clampSpectrum(std::vector<double> values);

/// Sum of singular values.
double traceNorm(const CMatrix& m);
/// 0.5 ||rho - sigma||_1
double traceDistance(const CMatrix& rho, const CMatrix& sigma);
/// Square root of a PSD matrix through its clamped spectrum.
CMatrix sqrtPsd(const CMatrix& m);
/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)).
double fidelity(const CMatrix& rho, const CMatrix& sigma);
/// F(rho, sigma) + sqrt((1 - Tr rho)(1 - Tr sigma)) for subnormalized states.
double generalizedFidelity(const CMatrix& rho, const CMatrix& sigma);
/// sqrt(1 - generalizedFidelity^2).
double purifiedDistance(const CMatrix& rho, const CMatrix& sigma);

}  // namespace eoa
