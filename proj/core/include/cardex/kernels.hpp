/* Copyright 2026 The Cardex Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cardex/types.hpp"

// Reference implementations of the detector's training losses and optimizer
// step. They exist to be checked (finite differences, property suites), not to
// train anything.
namespace cardex::kernels {

// Lower clamp applied to probabilities before taking logs.
inline constexpr double kLogClamp = 1e-12;

struct OneHot {
  std::size_t index = 0;
  std::size_t length = 0;
};

struct OptimizerState {
  std::vector<double> theta;
  std::vector<double> m;
  std::vector<double> v;
  long t = 0;
  double alpha = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 0.0;

  // Zero moments, t = 0, default hyper-parameters.
  static OptimizerState fresh(std::vector<double> theta);
};

// Throws ShapeError if p is not a probability vector of the one-hot's length
// (entries in [0, 1], sum 1 within 1e-9).
void check_probability_vector(std::span<const double> p, std::size_t expected_length);

// Categorical cross-entropy -ln(max(p_k, 1e-12)).
double cce(const OneHot& y_true, std::span<const double> y_pred);
// dL/dp_i = -[i == k] / p_k.
std::vector<double> cce_grad(const OneHot& y_true, std::span<const double> y_pred);

// Distribution focal loss on bins 0..n (q has n + 1 entries):
// -((i + 1 - target) ln q_i + (target - i) ln q_{i+1}), i = floor(target).
double dfl(double target, std::span<const double> q);
std::vector<double> dfl_grad(double target, std::span<const double> q);

struct CiouTerms {
  double iou = 0;
  double center_distance_sq = 0;  // rho^2
  double enclosing_diag_sq = 0;   // c^2
  double aspect_v = 0;
  double alpha = 0;
  double ciou = 0;
};

CiouTerms ciou_terms(const AbsBox& a, const AbsBox& b);
double ciou(const AbsBox& a, const AbsBox& b);
double ciou_loss(const AbsBox& a, const AbsBox& b);
// Gradient of ciou_loss w.r.t. (a.x1, a.y1, a.x2, a.y2, b.x1, b.y1, b.x2, b.y2).
std::array<double, 8> ciou_loss_grad(const AbsBox& a, const AbsBox& b);

// Plain Adam with bias correction.
OptimizerState adam_step(const OptimizerState& state, std::span<const double> grad);
// Adam plus the decoupled decay term -alpha * weight_decay * theta_t.
OptimizerState adamw_step(const OptimizerState& state, std::span<const double> grad);

// --- self-check suite (used by `cardex kernel-check`) ---

struct KernelSet {
  std::function<double(const OneHot&, std::span<const double>)> cce = kernels::cce;
  std::function<std::vector<double>(const OneHot&, std::span<const double>)> cce_grad = kernels::cce_grad;
  std::function<double(double, std::span<const double>)> dfl = kernels::dfl;
  std::function<std::vector<double>(double, std::span<const double>)> dfl_grad = kernels::dfl_grad;
  std::function<double(const AbsBox&, const AbsBox&)> ciou_loss = kernels::ciou_loss;
  std::function<std::array<double, 8>(const AbsBox&, const AbsBox&)> ciou_loss_grad = kernels::ciou_loss_grad;
  std::function<OptimizerState(const OptimizerState&, std::span<const double>)> adam_step = kernels::adam_step;
  std::function<OptimizerState(const OptimizerState&, std::span<const double>)> adamw_step = kernels::adamw_step;
};

struct CheckResult {
  std::string kernel;
  std::string check;
  bool passed = false;
  std::string detail;
};

struct CheckOptions {
  unsigned seed = 20240;
  int points = 100;
  double fd_step = 1e-6;
  double tolerance = 1e-5;
};

// ||a - b|| / max(||a||, ||b||, 1e-12)
double relative_error(std::span<const double> a, std::span<const double> b);

std::vector<CheckResult> run_kernel_checks(const KernelSet& kernels = {}, const CheckOptions& options = {});

}  // namespace cardex::kernels
