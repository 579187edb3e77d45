// Copyright 2026 The nosignal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
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

namespace nosignal {

using Complex = std::complex<double>;

/// Largest operator side length handled anywhere in the library.
inline constexpr std::size_t kMaxDim = 64;

/// Asymmetry ‖M − M†‖_max tolerated (and symmetrized away) by Hermitian routines.
inline constexpr double kHermitianTol = 1e-9;

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of row-major entries; throws if the count mismatches or
  /// any entry is NaN/Inf.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  /// Nested row literal, e.g. {{1, 0}, {0, 0}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  /// |v⟩⟨v|
  static ComplexMatrix outer(std::span<const Complex> v);
  static ComplexMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::span<const Complex> entries() const { return entries_; }

  Complex operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise modulus of a − b. Shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// ‖M − M†‖_max for a square matrix.
double hermitian_asymmetry(const ComplexMatrix& m);

/// Dimensions of a two-party system; the total dimension is capped at kMaxDim.
class BipartiteDims {
 public:
  BipartiteDims(std::size_t dim_a, std::size_t dim_b);

  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }
  std::size_t total() const { return dim_a_ * dim_b_; }

  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;

 private:
  std::size_t dim_a_;
  std::size_t dim_b_;
};

enum class Subsystem { A, B };

/// Kronecker product. Row (i_a, i_b) maps to i_a * b.rows() + i_b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out `side`: the result lives on B when side == A and vice versa.
ComplexMatrix partial_trace(const ComplexMatrix& m, const BipartiteDims& dims, Subsystem side);

struct HermitianEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Eigendecomposition of a Hermitian matrix.
///
/// Input asymmetry up to kHermitianTol is absorbed by symmetrizing; anything
/// larger is rejected. Eigenvalues are sorted descending, and each
/// eigenvector is rotated so that its first component with modulus above
/// 1e-12 is real and positive, which makes the output reproducible.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

/// V f(Λ) V† for Hermitian m.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix& m, F&& f) {
  const HermitianEigen eig = eig_hermitian(m);
  const std::size_t n = m.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += vik * std::conj(eig.vectors(j, k));
      }
    }
  }
  return out;
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& m);

}  // namespace nosignal
