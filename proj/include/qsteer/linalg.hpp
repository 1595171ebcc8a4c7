// Copyright 2026 The qsteer Authors
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

/**
 * @file linalg.hpp
 * @brief Small dense complex linear algebra.
 *
 * Everything here targets the handful-of-levels regime (dim <= ~16):
 * row-major dense storage, no blocking, no sparsity. The Hermitian
 * eigensolver is a cyclic complex Jacobi iteration, which is also what
 * backs the matrix exponential used to build control propagators.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qsteer::linalg {

using Complex = std::complex<double>;

class ComplexVector {
 public:
  explicit ComplexVector(std::size_t dim);
  ComplexVector(std::initializer_list<Complex> entries);
  explicit ComplexVector(std::vector<Complex> entries);

  std::size_t dim() const { return entries_.size(); }

  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

  /// Euclidean norm.
  double norm() const;

  bool operator==(const ComplexVector&) const = default;

 private:
  std::vector<Complex> entries_;
};

class ComplexMatrix {
 public:
  /// Zero matrix.
  explicit ComplexMatrix(std::size_t dim);
  /// Row-major entries; throws if the length is not a perfect square or any entry is non-finite.
  ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);
  /// Nested rows, e.g. {{0, 1}, {1, 0}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  std::span<const Complex> entries() const { return entries_; }

  ComplexMatrix operator+(const ComplexMatrix& other) const;
  ComplexMatrix operator-(const ComplexMatrix& other) const;
  ComplexMatrix operator*(Complex scalar) const;

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

/// Result of a Hermitian eigendecomposition: ascending eigenvalues, eigenvectors as columns.
struct HermitianEigen {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Jacobi iteration limits.
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiOffDiagonalTol = 1e-14;
inline constexpr double kHermitianTol = 1e-10;

ComplexVector mat_vec_mul(const ComplexMatrix& m, const ComplexVector& v);

/// out = m * v without allocating; out must already have m.dim() entries and must not alias v.
void mat_vec_mul_into(const ComplexMatrix& m, std::span<const Complex> v, std::span<Complex> out);

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& m);

/// max_ij |M_ij - conj(M_ji)|
double hermiticity_error(const ComplexMatrix& m);

/// max_ij |A_ij - B_ij|; dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
 *
 * Eigenvalues are returned in ascending order with eigenvector columns
 * permuted to match; equal eigenvalues keep their original column order.
 *
 * Throws std::invalid_argument if the input is not Hermitian within
 * kHermitianTol and std::runtime_error if the sweep cap is exhausted.
 */
HermitianEigen eig_hermitian(const ComplexMatrix& h);

/// exp(-i * scale * H) via the eigendecomposition of H.
ComplexMatrix expm_hermitian(const ComplexMatrix& h, double scale);

/// True iff max_ij |(M M^dagger - I)_ij| <= tol.
bool is_unitary(const ComplexMatrix& m, double tol);

}  // namespace qsteer::linalg
