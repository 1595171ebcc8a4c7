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

#include "qsteer/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qsteer::linalg {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(std::span<const Complex> entries, const char* what) {
  for (const auto& z : entries) {
    if (!is_finite(z)) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw std::invalid_argument(std::string(op) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

ComplexVector::ComplexVector(std::size_t dim) : entries_(dim) {
  if (dim == 0) throw std::invalid_argument("ComplexVector: dimension must be positive");
}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries)
    : ComplexVector(std::vector<Complex>(entries)) {}

ComplexVector::ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("ComplexVector: dimension must be positive");
  require_finite(entries_, "ComplexVector");
}

double ComplexVector::norm() const {
  double sum = 0.0;
  for (const auto& z : entries_) sum += std::norm(z);
  return std::sqrt(sum);
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
  if (dim == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
  if (entries_.size() != dim * dim) {
    throw std::invalid_argument("ComplexMatrix: expected " + std::to_string(dim * dim) +
                                " entries, got " + std::to_string(entries_.size()));
  }
  require_finite(entries_, "ComplexMatrix");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  if (dim_ == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) throw std::invalid_argument("ComplexMatrix: rows must form a square");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  require_finite(entries_, "ComplexMatrix");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
  require_same_dim(dim_, other.dim_, "ComplexMatrix::operator+");
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] + other.entries_[i];
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
  require_same_dim(dim_, other.dim_, "ComplexMatrix::operator-");
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] - other.entries_[i];
  return out;
}

ComplexMatrix ComplexMatrix::operator*(Complex scalar) const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i] * scalar;
  return out;
}

ComplexVector mat_vec_mul(const ComplexMatrix& m, const ComplexVector& v) {
  require_same_dim(m.dim(), v.dim(), "mat_vec_mul");
  ComplexVector out(m.dim());
  mat_vec_mul_into(m, v.entries(), out.entries());
  return out;
}

void mat_vec_mul_into(const ComplexMatrix& m, std::span<const Complex> v, std::span<Complex> out) {
  const std::size_t n = m.dim();
  require_same_dim(n, v.size(), "mat_vec_mul_into");
  require_same_dim(n, out.size(), "mat_vec_mul_into");
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
}

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "mat_mul");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = std::conj(m(j, i));
  return out;
}

double hermiticity_error(const ComplexMatrix& m) {
  double err = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j) err = std::max(err, std::abs(m(i, j) - std::conj(m(j, i))));
  return err;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  double err = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i)
    err = std::max(err, std::abs(a.entries()[i] - b.entries()[i]));
  return err;
}

HermitianEigen eig_hermitian(const ComplexMatrix& h) {
  const double herm_err = hermiticity_error(h);
  if (herm_err > kHermitianTol) {
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian (max deviation " +
                                std::to_string(herm_err) + ")");
  }
  const std::size_t n = h.dim();

  // Work on the exactly-Hermitian part so roundoff in the input cannot bias the sweep.
  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  double frob = 0.0;
  for (const auto& z : a.entries()) frob += std::norm(z);
  const double threshold = kJacobiOffDiagonalTol * std::max(1.0, std::sqrt(frob));

  auto max_off = [&] {
    double m = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) m = std::max(m, std::abs(a(p, q)));
    return m;
  };

  bool converged = max_off() <= threshold;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= threshold) continue;
        // Phase-align the (p,q) block to a real symmetric one, then rotate it diagonal.
        const Complex phase = apq / g;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * g, app - aqq);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Complex sconj = s * std::conj(phase);  // s e^{-i phi}
        const Complex cconj = c * std::conj(phase);  // c e^{-i phi}

        // A <- A G, V <- V G with G = [[c, -s], [s e^{-i phi}, c e^{-i phi}]] on (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + sconj * akq;
          a(k, q) = -s * akp + cconj * akq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + sconj * vkq;
          v(k, q) = -s * vkp + cconj * vkq;
        }
        // A <- G^dagger A.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + s * phase * aqk;
          a(q, k) = -s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
    converged = max_off() <= threshold;
  }
  if (!converged) {
    throw std::runtime_error("eig_hermitian: Jacobi iteration did not converge in " +
                             std::to_string(kJacobiMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& h, double scale) {
  if (!std::isfinite(scale)) throw std::invalid_argument("expm_hermitian: scale must be finite");
  const auto eig = eig_hermitian(h);
  const std::size_t n = h.dim();
  const auto& v = eig.eigenvectors;
  ComplexMatrix out(n);
  std::vector<Complex> phases(n);
  for (std::size_t k = 0; k < n; ++k) phases[k] = std::polar(1.0, -scale * eig.eigenvalues[k]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += v(i, k) * phases[k] * std::conj(v(j, k));
      out(i, j) = acc;
    }
  return out;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += m(i, k) * std::conj(m(j, k));
      if (i == j) acc -= 1.0;
      if (!(std::abs(acc) <= tol)) return false;
    }
  return true;
}

}  // namespace qsteer::linalg
