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

#include <string>
#include <vector>

#include "evoqk/linalg.hpp"
#include "evoqk/rng.hpp"

namespace evoqk {

struct Dataset {
  Matrix x;            // m x f
  std::vector<int> y;  // m integer labels
  std::string name;

  std::vector<int> classes() const;  // ascending
};

// CSV with one sample per row, comma-separated real features and an integer
// label in the last column. Lines starting with '#' are comments.
Dataset load_csv(const std::string& path);

// Principal components of the (optionally standardized) centered data.
// `scale` is 1 for constant features so transforms never divide by zero.
struct PcaModel {
  std::vector<double> mean;
  std::vector<double> scale;
  Matrix components;                // f x c, orthonormal columns
  std::vector<double> eigenvalues;  // descending
  std::vector<double> ratios;       // explained-variance ratios, descending
  bool standardized = false;

  int max_components() const { return components.cols(); }
};

PcaModel pca_fit(const Matrix& x, bool standardize);
Matrix pca_transform(const PcaModel& model, const Matrix& x, int n_components);
int components_for_variance(const PcaModel& model, double threshold);

// component,eigenvalue,ratio,cumulative_ratio (eigenvalue in units of the
// fitted covariance).
std::string pca_report_csv(const PcaModel& model);

// Per-feature min-max map onto [0, pi], fitted on training data only.
// Constant features map to pi/2; out-of-range test values clamp.
struct AngleScaler {
  std::vector<double> lo;
  std::vector<double> hi;
};

AngleScaler fit_angle_scaler(const Matrix& x_train);
Matrix apply_angle_scaler(const AngleScaler& scaler, const Matrix& x);

// Fits on the training rows and scales both matrices.
struct ScaledAngles {
  Matrix train;
  Matrix test;
  AngleScaler scaler;
};

ScaledAngles scale_angles(const Matrix& x_train, const Matrix& x_test);

std::string scaler_to_text(const AngleScaler& scaler, bool standardized);
AngleScaler scaler_from_text(const std::string& text, bool* standardized);

// kfold = 0 selects a single stratified holdout split; caps bound the
// training and test sizes of every fold.
struct SplitConfig {
  int kfold = 0;
  int cap_train = 100;
  int cap_test = 100;
};

struct SplitPlan {
  std::vector<std::vector<int>> train;  // per fold
  std::vector<std::vector<int>> test;
  SplitConfig config;
  std::uint64_t seed = 0;

  int folds() const { return static_cast<int>(test.size()); }
};

// Stratified sampling without replacement. For k-fold, a capped subsample
// of at most cap_train + cap_test rows is partitioned into k near-equal
// stratified test folds; each fold's training rows are the remainder,
// subsampled down to cap_train when larger.
SplitPlan make_split(const Dataset& dataset, const SplitConfig& config, RngStream& rng);

}  // namespace evoqk
