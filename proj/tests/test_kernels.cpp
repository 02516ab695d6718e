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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cardex/error.hpp"
#include "cardex/kernels.hpp"
#include "cli.hpp"
#include "oracles.hpp"

using namespace cardex;
using namespace cardex::kernels;

namespace {

AbsBox random_abs_box(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0, 50), size(2, 30);
  const double x = pos(rng), y = pos(rng);
  return {x, y, x + size(rng), y + size(rng)};
}

// Textbook Adam written out independently of the library.
std::vector<double> adam_oracle(const OptimizerState& s, const std::vector<double>& g) {
  std::vector<double> out(s.theta.size());
  const double t = static_cast<double>(s.t + 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double m = s.beta1 * s.m[i] + (1 - s.beta1) * g[i];
    const double v = s.beta2 * s.v[i] + (1 - s.beta2) * g[i] * g[i];
    const double mh = m / (1 - std::pow(s.beta1, t));
    const double vh = v / (1 - std::pow(s.beta2, t));
    out[i] = s.theta[i] - s.alpha * mh / (std::sqrt(vh) + s.eps);
  }
  return out;
}

}  // namespace

TEST(Cce, Examples) {
  const std::vector<double> sure{0.0, 1.0, 0.0};
  EXPECT_EQ(cce({1, 3}, sure), 0.0);
  const std::vector<double> uniform(4, 0.25);
  EXPECT_NEAR(cce({2, 4}, uniform), std::log(4.0), 1e-12);
  const std::vector<double> p{0.8, 0.2};
  EXPECT_NEAR(cce({0, 2}, p), 0.22314, 1e-5);
  EXPECT_EQ(cce_grad({0, 2}, p), (std::vector<double>{-1.25, 0.0}));
  const std::vector<double> zero{1.0, 0.0};
  EXPECT_NEAR(cce({1, 2}, zero), -std::log(kLogClamp), 1e-9);
  EXPECT_THROW(cce({0, 3}, p), ShapeError);
  EXPECT_THROW(cce_grad({0, 3}, p), ShapeError);
  const std::vector<double> bad{0.7, 0.7};
  EXPECT_THROW(check_probability_vector(bad, 2), ShapeError);
  EXPECT_THROW(check_probability_vector(p, 3), ShapeError);
}

TEST(Cce, NonNegativeAndGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + i % 6;
    const auto p = oracle::random_simplex(rng, n);
    const OneHot y{static_cast<std::size_t>(i) % n, n};
    EXPECT_GT(cce(y, p), 0.0);
    // Differentiate the closed form directly; the library function checks that
    // its input is a probability vector, which perturbed points are not.
    const auto fd = oracle::central_diff([&](const std::vector<double>& q) { return -std::log(q[y.index]); }, p);
    EXPECT_LT(oracle::rel_error(cce_grad(y, p), fd), 1e-6);
  }
}

TEST(Dfl, ExamplesAndRange) {
  const std::vector<double> peaked{0, 0, 1, 0};
  EXPECT_EQ(dfl(2.0, peaked), 0.0);
  const std::vector<double> split{0.0, 0.5, 0.5, 0.0};
  EXPECT_NEAR(dfl(1.5, split), std::log(2.0), 1e-12);
  EXPECT_THROW(dfl(3.5, split), RangeError);
  EXPECT_THROW(dfl(-0.1, split), RangeError);
}

TEST(Dfl, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 3 + i % 12;
    const auto q = oracle::random_simplex(rng, n + 1);
    const double target = u(rng) * static_cast<double>(n) * 0.999;
    const auto fd = oracle::central_diff([&](const std::vector<double>& x) { return dfl(target, x); }, q);
    EXPECT_LT(oracle::rel_error(dfl_grad(target, q), fd), 1e-5) << "target " << target;
  }
}

TEST(Ciou, Examples) {
  const AbsBox a{0, 0, 2, 2}, b{2, 0, 4, 2};
  const auto t = ciou_terms(a, b);
  EXPECT_EQ(t.iou, 0.0);
  EXPECT_DOUBLE_EQ(t.center_distance_sq, 4.0);
  EXPECT_DOUBLE_EQ(t.enclosing_diag_sq, 20.0);
  EXPECT_EQ(t.aspect_v, 0.0);
  EXPECT_NEAR(ciou(a, b), -0.2, 1e-12);
  EXPECT_EQ(ciou(a, a), 1.0);
  EXPECT_EQ(ciou_loss(a, a), 0.0);
}

TEST(Ciou, BoundedByIouAndGradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 100) {
    const AbsBox a = random_abs_box(rng), b = random_abs_box(rng);
    EXPECT_LE(ciou(a, b), ciou_terms(a, b).iou + 1e-15);
    const auto f = [](const std::vector<double>& x) {
      return ciou_loss({x[0], x[1], x[2], x[3]}, {x[4], x[5], x[6], x[7]});
    };
    const std::vector<double> x{a.x1, a.y1, a.x2, a.y2, b.x1, b.y1, b.x2, b.y2};
    const auto g = ciou_loss_grad(a, b);
    EXPECT_LT(oracle::rel_error(std::vector<double>(g.begin(), g.end()), oracle::central_diff(f, x)), 1e-5);
    ++checked;
  }
  // Same center and aspect: equality.
  EXPECT_NEAR(ciou({0, 0, 4, 2}, {1, 0.5, 3, 1.5}), ciou_terms({0, 0, 4, 2}, {1, 0.5, 3, 1.5}).iou, 1e-15);
}

TEST(Adam, MatchesIndependentFormula) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0, 1);
  auto s = OptimizerState::fresh({0.5, -1.0, 2.0, 0.0});
  for (int step = 0; step < 20; ++step) {
    std::vector<double> g(4);
    for (auto& v : g) v = n(rng);
    const auto expect = adam_oracle(s, g);
    s = adam_step(s, g);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(s.theta[i], expect[i], 1e-15);
  }
}

TEST(AdamW, Examples) {
  auto s = OptimizerState::fresh({1.0});
  s.alpha = 0.1;
  s.weight_decay = 0.01;
  const std::vector<double> zero{0.0};
  EXPECT_DOUBLE_EQ(adamw_step(s, zero).theta[0], 0.999);
  auto plain = OptimizerState::fresh({1.0});
  EXPECT_EQ(adamw_step(plain, zero).theta[0], 1.0);
  const std::vector<double> one{1.0};
  EXPECT_NEAR(adamw_step(plain, one).theta[0], 1.0 - 0.001, 1e-10);
  EXPECT_THROW(adamw_step(plain, std::vector<double>{1.0, 2.0}), ShapeError);
}

TEST(AdamW, ZeroDecayIsBitIdenticalAndDecayIsDecoupled) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0, 1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> theta(6), g(6);
    for (auto& v : theta) v = n(rng);
    auto s = OptimizerState::fresh(theta);
    for (auto& v : s.m) v = n(rng) * 0.1;
    for (auto& v : s.v) v = u(rng);
    s.t = trial % 7;
    for (auto& v : g) v = n(rng);

    const auto adam = adam_step(s, g);
    const auto w0 = adamw_step(s, g);
    EXPECT_EQ(w0.theta, adam.theta);
    EXPECT_EQ(w0.m, adam.m);
    EXPECT_EQ(w0.v, adam.v);

    s.weight_decay = u(rng) * 0.1;
    const auto decayed = adamw_step(s, g);
    for (std::size_t i = 0; i < theta.size(); ++i)
      EXPECT_EQ(decayed.theta[i], adam.theta[i] - s.alpha * s.weight_decay * theta[i]);
    EXPECT_EQ(decayed.m, adam.m);
    EXPECT_EQ(decayed.v, adam.v);

    // The decay term does not depend on the gradient: difference two runs.
    std::vector<double> g2(6);
    for (auto& v : g2) v = n(rng);
    auto s0 = s;
    s0.weight_decay = 0;
    const auto a = adamw_step(s, g2), b = adamw_step(s0, g2);
    for (std::size_t i = 0; i < theta.size(); ++i)
      EXPECT_EQ(a.theta[i], b.theta[i] - s.alpha * s.weight_decay * theta[i]);
    EXPECT_EQ(adamw_step(s, g).theta, decayed.theta);
  }
}

TEST(KernelCheck, ShippedKernelsPass) {
  const auto results = run_kernel_checks();
  EXPECT_FALSE(results.empty());
  for (const auto& r : results) EXPECT_TRUE(r.passed) << r.kernel << ": " << r.check << " " << r.detail;
  std::ostringstream out;
  EXPECT_EQ(cli::kernel_check({}, {}, out), cli::kOk);
  EXPECT_NE(out.str().find("all kernel checks passed"), std::string::npos);
}

TEST(KernelCheck, DetectsInjectedFaults) {
  struct Fault {
    const char* kernel;
    KernelSet set;
  };
  std::vector<Fault> faults;
  {
    KernelSet s;
    s.cce_grad = [](const OneHot& y, std::span<const double> p) {
      auto g = cardex::kernels::cce_grad(y, p);
      g[y.index] *= 1.01;
      return g;
    };
    faults.push_back({"cce", s});
  }
  {
    KernelSet s;
    s.dfl_grad = [](double t, std::span<const double> q) {
      auto g = cardex::kernels::dfl_grad(t, q);
      std::reverse(g.begin(), g.end());
      return g;
    };
    faults.push_back({"dfl", s});
  }
  {
    KernelSet s;
    s.ciou_loss_grad = [](const AbsBox& a, const AbsBox& b) {
      auto g = cardex::kernels::ciou_loss_grad(a, b);
      g[2] = 0;
      return g;
    };
    faults.push_back({"ciou_loss", s});
  }
  {
    KernelSet s;
    // Coupled weight decay (L2 folded into the gradient) is the classic mistake.
    s.adamw_step = [](const OptimizerState& st, std::span<const double> g) {
      std::vector<double> g2(g.begin(), g.end());
      for (std::size_t i = 0; i < g2.size(); ++i) g2[i] += st.weight_decay * st.theta[i];
      return cardex::kernels::adam_step(st, g2);
    };
    faults.push_back({"adamw", s});
  }
  for (const auto& f : faults) {
    const auto results = run_kernel_checks(f.set);
    bool caught = false;
    for (const auto& r : results) {
      if (r.kernel == f.kernel && !r.passed) caught = true;
      if (r.kernel != f.kernel) EXPECT_TRUE(r.passed) << r.kernel << " flagged for a fault in " << f.kernel;
    }
    EXPECT_TRUE(caught) << f.kernel;
    std::ostringstream out;
    EXPECT_EQ(cli::kernel_check(f.set, {}, out), cli::kRuntime);
  }
}

TEST(KernelCheck, SurvivesThrowingKernel) {
  KernelSet s;
  s.dfl = [](double, std::span<const double>) -> double { throw std::runtime_error("boom"); };
  const auto results = run_kernel_checks(s);
  bool failed = false;
  for (const auto& r : results) failed = failed || (r.kernel == "dfl" && !r.passed);
  EXPECT_TRUE(failed);
}
