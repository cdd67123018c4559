// Copyright 2025-2026 The evoqk developers.
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
#include <vector>

namespace evoqk {

// Dense row-major real matrix. Just enough linear algebra for Gram
// matrices and PCA; not a general-purpose library.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  const double* row_ptr(int r) const { return data_.data() + static_cast<std::size_t>(r) * cols_; }
  double* row_ptr(int r) { return data_.data() + static_cast<std::size_t>(r) * cols_; }

  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
// Eigenvalues are returned in descending order; if eigenvectors is
// non-null it receives the matching eigenvectors as columns.
void eigh_symmetric(Matrix a, std::vector<double>& eigenvalues, Matrix* eigenvectors);

// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Matrix& a);

// True iff a + shift*I admits a Cholesky factorization, i.e. the smallest
// eigenvalue of a is >= -shift up to roundoff.
bool is_positive_semidefinite(const Matrix& a, double shift);

}  // namespace evoqk
