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

#include <cstdint>
#include <vector>

#include "evoqk/kernels.hpp"
#include "evoqk/linalg.hpp"

namespace evoqk {

struct SvmConfig {
  double c = 1.0;
  double tol = 1e-3;
  long max_iter = 1000000;
};

// Soft-margin dual solution for one class pair. beta are the dual
// coefficients (0 <= beta_i <= C, sum beta_i y_i = 0); the decision value
// for a test column k is sum_i beta_i y_i K(x_i, x_k) + bias.
struct BinarySvmModel {
  std::vector<double> beta;
  std::vector<std::int8_t> y;  // +-1 per training sample
  double bias = 0.0;
  double c = 1.0;
  std::vector<int> support;  // indices with beta_i above support threshold
  int class_neg = -1;        // original label mapped to -1
  int class_pos = +1;        // original label mapped to +1
  bool converged = false;
  long iterations = 0;
  double dual_objective = 0.0;
};

// SMO with maximal-violating-pair working-set selection on a precomputed
// kernel. Hitting max_iter is not an error: the truncated model is returned
// with converged=false so a search loop can still use it.
BinarySvmModel train_binary(const Matrix& gram, const std::vector<std::int8_t>& y,
                            double c, double tol, long max_iter);

double decision_value(const BinarySvmModel& model, const Matrix& cross_gram, int column);

// One-vs-one multiclass: one binary model per unordered class pair, each
// trained only on its two classes' samples.
struct SvmModel {
  struct PairModel {
    BinarySvmModel model;
    std::vector<int> sample_index;  // rows of the full gram used by this pair
  };

  std::vector<int> classes;  // ascending
  std::vector<PairModel> pairs;

  bool all_converged() const;
};

SvmModel train_one_vs_one(const GramMatrix& gram, const std::vector<int>& y,
                          const SvmConfig& config);

// cross_gram: rows = training samples (same order as training), columns =
// test samples. Majority vote over pair models; ties go to the lowest
// class label.
std::vector<int> predict(const SvmModel& model, const Matrix& cross_gram);

double accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred);

}  // namespace evoqk
