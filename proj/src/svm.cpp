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

#include "evoqk/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "evoqk/errors.hpp"

namespace evoqk {

namespace {

constexpr double kSupportEps = 1e-9;
constexpr double kCurvatureFloor = 1e-12;

}  // namespace

BinarySvmModel train_binary(const Matrix& gram, const std::vector<std::int8_t>& y,
                            double c, double tol, long max_iter) {
  const int m = gram.rows();
  if (gram.cols() != m) throw InternalError("train_binary: gram must be square");
  if (static_cast<int>(y.size()) != m)
    throw InternalError("train_binary: label count does not match gram size");
  if (c <= 0.0) throw ConfigError("train_binary: C must be positive");
  bool has_pos = false, has_neg = false;
  for (std::int8_t label : y) {
    if (label == 1) has_pos = true;
    else if (label == -1) has_neg = true;
    else throw InternalError("train_binary: labels must be +-1");
  }
  if (!has_pos || !has_neg) throw DataError("train_binary: both classes must be present");

  // Minimize (1/2) a'Qa - e'a with Q_ij = y_i y_j K_ij subject to the box
  // [0, C] and y'a = 0. grad_i = (Qa)_i - 1; alpha starts at 0.
  std::vector<double> alpha(m, 0.0);
  std::vector<double> grad(m, -1.0);

  auto q_entry = [&](int i, int j) { return y[i] * y[j] * gram(i, j); };

  long iter = 0;
  bool converged = false;
  while (iter < max_iter) {
    // Maximal violating pair over the feasible ascent/descent index sets.
    int i = -1, j = -1;
    double up_max = -std::numeric_limits<double>::infinity();
    double low_min = std::numeric_limits<double>::infinity();
    for (int t = 0; t < m; ++t) {
      const double v = -y[t] * grad[t];
      const bool in_up = (y[t] == 1 && alpha[t] < c) || (y[t] == -1 && alpha[t] > 0.0);
      const bool in_low = (y[t] == 1 && alpha[t] > 0.0) || (y[t] == -1 && alpha[t] < c);
      if (in_up && v > up_max) {
        up_max = v;
        i = t;
      }
      if (in_low && v < low_min) {
        low_min = v;
        j = t;
      }
    }
    if (i < 0 || j < 0 || up_max - low_min <= tol) {
      converged = true;
      break;
    }
    ++iter;

    const double old_ai = alpha[i];
    const double old_aj = alpha[j];
    // Curvature along the feasible direction is ||phi_i - phi_j||^2 in
    // kernel space for either label combination.
    const double curvature = gram(i, i) + gram(j, j) - 2.0 * gram(i, j);
    if (y[i] != y[j]) {
      double quad = curvature;
      if (quad <= 0.0) quad = kCurvatureFloor;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else {
        if (alpha[i] < 0.0) {
          alpha[i] = 0.0;
          alpha[j] = -diff;
        }
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = c + diff;
        }
      }
    } else {
      double quad = curvature;
      if (quad <= 0.0) quad = kCurvatureFloor;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = sum;
        }
        if (alpha[i] < 0.0) {
          alpha[i] = 0.0;
          alpha[j] = sum;
        }
      }
    }

    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (int t = 0; t < m; ++t) grad[t] += q_entry(t, i) * dai + q_entry(t, j) * daj;
  }

  BinarySvmModel model;
  model.beta = std::move(alpha);
  model.y = y;
  model.c = c;
  model.converged = converged;
  model.iterations = iter;

  // bias from the KKT conditions: average over free points when any exist,
  // else the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  int n_free = 0;
  for (int t = 0; t < m; ++t) {
    const double yg = y[t] * grad[t];
    const bool upper = model.beta[t] >= c - kSupportEps;
    const bool lower = model.beta[t] <= kSupportEps;
    if (upper) {
      if (y[t] == -1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (lower) {
      if (y[t] == 1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / n_free : (ub + lb) / 2.0;
  model.bias = -rho;

  double quad_term = 0.0;
  double lin_term = 0.0;
  for (int t = 0; t < m; ++t) {
    quad_term += model.beta[t] * (grad[t] + 1.0);  // (Q alpha)_t = grad_t + 1
    lin_term += model.beta[t];
    if (model.beta[t] > kSupportEps) model.support.push_back(t);
  }
  model.dual_objective = lin_term - 0.5 * quad_term;
  return model;
}

double decision_value(const BinarySvmModel& model, const Matrix& cross_gram, int column) {
  double v = model.bias;
  for (int i : model.support) v += model.beta[i] * model.y[i] * cross_gram(i, column);
  return v;
}

bool SvmModel::all_converged() const {
  for (const PairModel& p : pairs)
    if (!p.model.converged) return false;
  return true;
}

SvmModel train_one_vs_one(const GramMatrix& gram, const std::vector<int>& y,
                          const SvmConfig& config) {
  const int m = gram.size();
  if (static_cast<int>(y.size()) != m)
    throw InternalError("train_one_vs_one: label count does not match gram size");

  SvmModel model;
  {
    std::set<int> classes(y.begin(), y.end());
    model.classes.assign(classes.begin(), classes.end());
  }
  if (model.classes.size() < 2) throw DataError("train_one_vs_one: need at least two classes");

  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
      const int neg = model.classes[a];
      const int pos = model.classes[b];
      SvmModel::PairModel pair;
      std::vector<std::int8_t> labels;
      for (int i = 0; i < m; ++i) {
        if (y[i] == neg || y[i] == pos) {
          pair.sample_index.push_back(i);
          labels.push_back(y[i] == pos ? 1 : -1);
        }
      }
      const int mp = static_cast<int>(pair.sample_index.size());
      Matrix sub(mp, mp);
      for (int i = 0; i < mp; ++i)
        for (int j = 0; j < mp; ++j)
          sub(i, j) = gram.entries(pair.sample_index[i], pair.sample_index[j]);
      pair.model = train_binary(sub, labels, config.c, config.tol, config.max_iter);
      pair.model.class_neg = neg;
      pair.model.class_pos = pos;
      model.pairs.push_back(std::move(pair));
    }
  }
  return model;
}

std::vector<int> predict(const SvmModel& model, const Matrix& cross_gram) {
  if (model.pairs.empty()) throw InternalError("predict: model has no pair models");
  const int n_test = cross_gram.cols();
  const int k = static_cast<int>(model.classes.size());

  std::vector<int> out(n_test);
  std::vector<int> votes(k);
  for (int col = 0; col < n_test; ++col) {
    std::fill(votes.begin(), votes.end(), 0);
    for (const SvmModel::PairModel& pair : model.pairs) {
      const int mp = static_cast<int>(pair.sample_index.size());
      Matrix slice(mp, 1);
      for (int i = 0; i < mp; ++i) {
        if (pair.sample_index[i] >= cross_gram.rows())
          throw InternalError("predict: cross gram has fewer rows than the training set");
        slice(i, 0) = cross_gram(pair.sample_index[i], col);
      }
      const double v = decision_value(pair.model, slice, 0);
      const int winner = v > 0.0 ? pair.model.class_pos : pair.model.class_neg;
      const auto it = std::lower_bound(model.classes.begin(), model.classes.end(), winner);
      ++votes[it - model.classes.begin()];
    }
    int best = 0;
    for (int c = 1; c < k; ++c)
      if (votes[c] > votes[best]) best = c;  // ties keep the lowest class
    out[col] = model.classes[best];
  }
  return out;
}

double accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
  if (y_true.empty()) throw DataError("accuracy: empty label vectors");
  if (y_true.size() != y_pred.size()) throw InternalError("accuracy: length mismatch");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < y_true.size(); ++i)
    if (y_true[i] == y_pred[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(y_true.size());
}

}  // namespace evoqk
