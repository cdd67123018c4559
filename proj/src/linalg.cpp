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

#include "evoqk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evoqk/errors.hpp"

namespace evoqk {

namespace {

double offdiag_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(2.0 * s);
}

}  // namespace

void eigh_symmetric(Matrix a, std::vector<double>& eigenvalues, Matrix* eigenvectors) {
  const int n = a.rows();
  if (n != a.cols()) throw InternalError("eigh_symmetric: matrix must be square");

  Matrix v;
  if (eigenvectors) {
    v = Matrix(n, n, 0.0);
    for (int i = 0; i < n; ++i) v(i, i) = 1.0;
  }

  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  const double tol = (scale > 0 ? scale : 1.0) * 1e-14 * n;

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps && offdiag_norm(a) > tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= tol / (n * n)) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        if (eigenvectors) {
          for (int k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](int i, int j) { return a(i, i) > a(j, j); });

  eigenvalues.resize(n);
  for (int i = 0; i < n; ++i) eigenvalues[i] = a(order[i], order[i]);
  if (eigenvectors) {
    *eigenvectors = Matrix(n, n);
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) (*eigenvectors)(r, c) = v(r, order[c]);
  }
}

double min_eigenvalue(const Matrix& a) {
  std::vector<double> evals;
  eigh_symmetric(a, evals, nullptr);
  return evals.back();
}

bool is_positive_semidefinite(const Matrix& a, double shift) {
  const int n = a.rows();
  if (n != a.cols()) throw InternalError("is_positive_semidefinite: matrix must be square");
  Matrix l(n, n, 0.0);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j) + shift;
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d < 0.0) return false;
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = (l(j, j) > 0.0 ? s / l(j, j) : 0.0);
    }
  }
  return true;
}

}  // namespace evoqk
