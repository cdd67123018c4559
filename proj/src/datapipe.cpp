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

#include "evoqk/datapipe.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "evoqk/errors.hpp"
#include "evoqk/io.hpp"

namespace evoqk {

std::vector<int> Dataset::classes() const {
  std::set<int> s(y.begin(), y.end());
  return {s.begin(), s.end()};
}

namespace {

double parse_double_cell(const std::string& cell, int row_no) {
  char* end = nullptr;
  const std::string trimmed = [&] {
    std::size_t a = cell.find_first_not_of(" \t");
    std::size_t b = cell.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : cell.substr(a, b - a + 1);
  }();
  if (trimmed.empty()) throw DataError("csv parse error at row " + std::to_string(row_no) + ": empty cell");
  const double v = std::strtod(trimmed.c_str(), &end);
  if (end != trimmed.c_str() + trimmed.size() || !std::isfinite(v))
    throw DataError("csv parse error at row " + std::to_string(row_no) + ": non-numeric cell '" +
                    cell + "'");
  return v;
}

}  // namespace

Dataset load_csv(const std::string& path) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  int row_no = 0;
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  int n_features = -1;

  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        cells.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    cells.push_back(cur);
    if (cells.size() < 2)
      throw DataError("csv parse error at row " + std::to_string(row_no) +
                      ": need at least one feature and a label");
    if (n_features < 0) n_features = static_cast<int>(cells.size()) - 1;
    if (static_cast<int>(cells.size()) - 1 != n_features)
      throw DataError("csv parse error at row " + std::to_string(row_no) + ": ragged row (" +
                      std::to_string(cells.size() - 1) + " features, expected " +
                      std::to_string(n_features) + ")");
    std::vector<double> feat(n_features);
    for (int j = 0; j < n_features; ++j) feat[j] = parse_double_cell(cells[j], row_no);
    const double label_raw = parse_double_cell(cells.back(), row_no);
    const int label = static_cast<int>(std::llround(label_raw));
    if (std::abs(label_raw - label) > 1e-9)
      throw DataError("csv parse error at row " + std::to_string(row_no) +
                      ": label must be an integer");
    rows.push_back(std::move(feat));
    labels.push_back(label);
  }

  if (rows.empty()) throw DataError("csv file has no data rows: " + path);

  Dataset d;
  d.name = std::filesystem::path(path).stem().string();
  d.x = Matrix(static_cast<int>(rows.size()), n_features);
  for (int i = 0; i < d.x.rows(); ++i)
    for (int j = 0; j < n_features; ++j) d.x(i, j) = rows[i][j];
  d.y = std::move(labels);

  std::map<int, int> counts;
  for (int label : d.y) ++counts[label];
  if (counts.size() < 2) throw DataError("dataset needs at least two classes: " + path);
  for (const auto& [label, count] : counts)
    if (count < 2)
      throw DataError("class " + std::to_string(label) + " has fewer than 2 samples");
  return d;
}

PcaModel pca_fit(const Matrix& x, bool standardize) {
  const int m = x.rows();
  const int f = x.cols();
  if (m < 2) throw DataError("pca_fit: need at least 2 samples");

  PcaModel model;
  model.standardized = standardize;
  model.mean.assign(f, 0.0);
  model.scale.assign(f, 1.0);
  for (int j = 0; j < f; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += x(i, j);
    model.mean[j] = s / m;
  }
  if (standardize) {
    for (int j = 0; j < f; ++j) {
      double ss = 0.0;
      for (int i = 0; i < m; ++i) {
        const double d = x(i, j) - model.mean[j];
        ss += d * d;
      }
      const double sd = std::sqrt(ss / m);  // population convention
      model.scale[j] = sd > 0.0 ? sd : 1.0;
    }
  }

  Matrix z(m, f);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < f; ++j) z(i, j) = (x(i, j) - model.mean[j]) / model.scale[j];

  double total_variance = 0.0;
  for (int j = 0; j < f; ++j) {
    double ss = 0.0;
    for (int i = 0; i < m; ++i) ss += z(i, j) * z(i, j);
    total_variance += ss / (m - 1);
  }
  if (total_variance <= 0.0) total_variance = 1.0;

  std::vector<double> evals;
  if (f <= m) {
    Matrix cov(f, f);
    for (int a = 0; a < f; ++a)
      for (int b = a; b < f; ++b) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += z(i, a) * z(i, b);
        cov(a, b) = cov(b, a) = s / (m - 1);
      }
    eigh_symmetric(std::move(cov), evals, &model.components);
  } else {
    // Dual route for wide data: eigenvectors of (1/(m-1)) Z Z' map back to
    // covariance eigenvectors as Z'u / sqrt((m-1) lambda).
    Matrix g(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        double s = 0.0;
        for (int j = 0; j < f; ++j) s += z(a, j) * z(b, j);
        g(a, b) = g(b, a) = s / (m - 1);
      }
    Matrix u;
    std::vector<double> gvals;
    eigh_symmetric(std::move(g), gvals, &u);
    const double cutoff = std::max(gvals.front(), 0.0) * 1e-12;
    int kept = 0;
    while (kept < static_cast<int>(gvals.size()) && gvals[kept] > cutoff) ++kept;
    evals.assign(gvals.begin(), gvals.begin() + kept);
    model.components = Matrix(f, kept);
    for (int c = 0; c < kept; ++c) {
      const double inv = 1.0 / std::sqrt((m - 1) * gvals[c]);
      for (int j = 0; j < f; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += z(i, j) * u(i, c);
        model.components(j, c) = s * inv;
      }
    }
  }

  model.eigenvalues.resize(evals.size());
  model.ratios.resize(evals.size());
  for (std::size_t i = 0; i < evals.size(); ++i) {
    model.eigenvalues[i] = std::max(evals[i], 0.0);
    model.ratios[i] = model.eigenvalues[i] / total_variance;
  }
  return model;
}

Matrix pca_transform(const PcaModel& model, const Matrix& x, int n_components) {
  const int f = static_cast<int>(model.mean.size());
  if (x.cols() != f) throw InternalError("pca_transform: feature count mismatch");
  if (n_components < 1 || n_components > model.max_components())
    throw ConfigError("pca_transform: requested " + std::to_string(n_components) +
                      " components, model has " + std::to_string(model.max_components()));
  Matrix out(x.rows(), n_components);
  for (int i = 0; i < x.rows(); ++i) {
    for (int c = 0; c < n_components; ++c) {
      double s = 0.0;
      for (int j = 0; j < f; ++j)
        s += (x(i, j) - model.mean[j]) / model.scale[j] * model.components(j, c);
      out(i, c) = s;
    }
  }
  return out;
}

int components_for_variance(const PcaModel& model, double threshold) {
  if (threshold <= 0.0 || threshold > 1.0)
    throw ConfigError("components_for_variance: threshold must be in (0, 1]");
  double cum = 0.0;
  for (std::size_t i = 0; i < model.ratios.size(); ++i) {
    cum += model.ratios[i];
    if (cum >= threshold - 1e-9) return static_cast<int>(i) + 1;
  }
  return static_cast<int>(model.ratios.size());
}

std::string pca_report_csv(const PcaModel& model) {
  std::ostringstream out;
  out << "component,eigenvalue,ratio,cumulative_ratio\n";
  double cum = 0.0;
  for (std::size_t i = 0; i < model.ratios.size(); ++i) {
    cum += model.ratios[i];
    out << (i + 1) << ',' << format_double(model.eigenvalues[i]) << ','
        << format_double(model.ratios[i]) << ',' << format_double(cum) << '\n';
  }
  return out.str();
}

AngleScaler fit_angle_scaler(const Matrix& x_train) {
  if (x_train.rows() < 1) throw DataError("fit_angle_scaler: empty training data");
  AngleScaler s;
  s.lo.resize(x_train.cols());
  s.hi.resize(x_train.cols());
  for (int j = 0; j < x_train.cols(); ++j) {
    double lo = x_train(0, j), hi = x_train(0, j);
    for (int i = 1; i < x_train.rows(); ++i) {
      lo = std::min(lo, x_train(i, j));
      hi = std::max(hi, x_train(i, j));
    }
    s.lo[j] = lo;
    s.hi[j] = hi;
  }
  return s;
}

Matrix apply_angle_scaler(const AngleScaler& scaler, const Matrix& x) {
  if (x.cols() != static_cast<int>(scaler.lo.size()))
    throw InternalError("apply_angle_scaler: feature count mismatch");
  Matrix out(x.rows(), x.cols());
  for (int j = 0; j < x.cols(); ++j) {
    const double span = scaler.hi[j] - scaler.lo[j];
    for (int i = 0; i < x.rows(); ++i) {
      if (span <= 0.0) {
        out(i, j) = std::numbers::pi / 2.0;  // constant feature
      } else {
        const double t = std::clamp((x(i, j) - scaler.lo[j]) / span, 0.0, 1.0);
        out(i, j) = t * std::numbers::pi;
      }
    }
  }
  return out;
}

ScaledAngles scale_angles(const Matrix& x_train, const Matrix& x_test) {
  ScaledAngles out;
  out.scaler = fit_angle_scaler(x_train);
  out.train = apply_angle_scaler(out.scaler, x_train);
  out.test = apply_angle_scaler(out.scaler, x_test);
  return out;
}

std::string scaler_to_text(const AngleScaler& scaler, bool standardized) {
  std::ostringstream out;
  out << "qsvm-scaler v1\n";
  out << "standardize " << (standardized ? "on" : "off") << "\n";
  for (std::size_t j = 0; j < scaler.lo.size(); ++j)
    out << "feature " << j << " " << format_double(scaler.lo[j]) << " "
        << format_double(scaler.hi[j]) << "\n";
  return out.str();
}

AngleScaler scaler_from_text(const std::string& text, bool* standardized) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "qsvm-scaler v1")
    throw DataError("scaler parse error: bad header");
  if (!std::getline(in, line) || line.rfind("standardize ", 0) != 0)
    throw DataError("scaler parse error: missing standardize line");
  if (standardized) *standardized = line.substr(12) == "on";
  AngleScaler s;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    std::size_t idx;
    double lo, hi;
    if (!(ls >> tag >> idx >> lo >> hi) || tag != "feature" || idx != s.lo.size())
      throw DataError("scaler parse error: bad feature line '" + line + "'");
    s.lo.push_back(lo);
    s.hi.push_back(hi);
  }
  if (s.lo.empty()) throw DataError("scaler parse error: no features");
  return s;
}

namespace {

// Largest-remainder apportionment of `total` slots over class sizes, with
// per-class ceilings. Deterministic: remainder ties go to the lower class
// position.
std::vector<int> apportion(const std::vector<int>& sizes, int total,
                           const std::vector<int>& ceiling) {
  const int k = static_cast<int>(sizes.size());
  int pool = 0;
  for (int s : sizes) pool += s;
  total = std::min(total, pool);

  std::vector<int> out(k, 0);
  std::vector<double> frac(k, 0.0);
  int assigned = 0;
  for (int c = 0; c < k; ++c) {
    const double quota = pool > 0 ? static_cast<double>(total) * sizes[c] / pool : 0.0;
    out[c] = std::min(static_cast<int>(quota), ceiling[c]);
    frac[c] = quota - std::floor(quota);
    assigned += out[c];
  }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&frac](int a, int b) { return frac[a] > frac[b]; });
  // round-robin over descending remainders until the total is placed
  for (std::size_t pass = 0; assigned < total; ++pass) {
    bool progressed = false;
    for (int c : order) {
      if (assigned >= total) break;
      if (out[c] < std::min(sizes[c], ceiling[c])) {
        ++out[c];
        ++assigned;
        progressed = true;
      }
    }
    if (!progressed) break;
  }
  return out;
}

}  // namespace

SplitPlan make_split(const Dataset& dataset, const SplitConfig& config, RngStream& rng) {
  if (config.cap_train < 1 || config.cap_test < 1)
    throw ConfigError("make_split: caps must be positive");
  if (config.kfold == 1) throw ConfigError("make_split: kfold must be 0 (holdout) or >= 2");

  const std::vector<int> classes = dataset.classes();
  const int k_classes = static_cast<int>(classes.size());

  // Shuffle each class's sample list; all later choices are deterministic
  // prefixes of these orders. Draws: Fisher-Yates per class, ascending
  // class label.
  std::vector<std::vector<int>> by_class(k_classes);
  for (int i = 0; i < static_cast<int>(dataset.y.size()); ++i) {
    const auto it = std::lower_bound(classes.begin(), classes.end(), dataset.y[i]);
    by_class[it - classes.begin()].push_back(i);
  }
  for (auto& list : by_class) {
    for (int i = static_cast<int>(list.size()) - 1; i > 0; --i)
      std::swap(list[i], list[rng.next_int(i + 1)]);
  }

  std::vector<int> sizes(k_classes);
  for (int c = 0; c < k_classes; ++c) sizes[c] = static_cast<int>(by_class[c].size());

  SplitPlan plan;
  plan.config = config;
  plan.seed = rng.seed();

  if (config.kfold == 0) {
    // Holdout: train drawn first (leaving one sample per class for test
    // when possible), then test from the remainder.
    std::vector<int> train_ceiling(k_classes);
    for (int c = 0; c < k_classes; ++c) train_ceiling[c] = std::max(sizes[c] - 1, 1);
    const std::vector<int> n_train = apportion(sizes, config.cap_train, train_ceiling);

    std::vector<int> remaining(k_classes);
    for (int c = 0; c < k_classes; ++c) remaining[c] = sizes[c] - n_train[c];
    const std::vector<int> n_test = apportion(remaining, config.cap_test, remaining);

    std::vector<int> train, test;
    for (int c = 0; c < k_classes; ++c) {
      for (int i = 0; i < n_train[c]; ++i) train.push_back(by_class[c][i]);
      for (int i = 0; i < n_test[c]; ++i) test.push_back(by_class[c][n_train[c] + i]);
    }
    plan.train.push_back(std::move(train));
    plan.test.push_back(std::move(test));
    return plan;
  }

  // k-fold: stratified capped subsample, dealt round-robin into folds.
  const int k = config.kfold;
  const std::vector<int> n_cap = apportion(sizes, config.cap_train + config.cap_test, sizes);
  for (int c = 0; c < k_classes; ++c) {
    if (n_cap[c] < k)
      throw DataError("class " + std::to_string(classes[c]) + " has " +
                      std::to_string(n_cap[c]) + " samples, fewer than kfold=" +
                      std::to_string(k));
  }

  std::vector<std::vector<int>> folds(k);
  int counter = 0;
  std::vector<std::vector<int>> capped(k_classes);
  for (int c = 0; c < k_classes; ++c) {
    for (int i = 0; i < n_cap[c]; ++i) {
      folds[counter % k].push_back(by_class[c][i]);
      ++counter;
      capped[c].push_back(by_class[c][i]);
    }
  }

  for (int f = 0; f < k; ++f) {
    std::vector<int> in_fold = folds[f];
    std::sort(in_fold.begin(), in_fold.end());
    std::vector<std::vector<int>> rest_by_class(k_classes);
    for (int c = 0; c < k_classes; ++c)
      for (int idx : capped[c])
        if (!std::binary_search(in_fold.begin(), in_fold.end(), idx))
          rest_by_class[c].push_back(idx);

    std::vector<int> rest_sizes(k_classes);
    for (int c = 0; c < k_classes; ++c) rest_sizes[c] = static_cast<int>(rest_by_class[c].size());
    const std::vector<int> n_train = apportion(rest_sizes, config.cap_train, rest_sizes);

    std::vector<int> train;
    for (int c = 0; c < k_classes; ++c)
      for (int i = 0; i < n_train[c]; ++i) train.push_back(rest_by_class[c][i]);
    plan.train.push_back(std::move(train));
    plan.test.push_back(folds[f]);
  }
  return plan;
}

}  // namespace evoqk
