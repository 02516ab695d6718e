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

#include "cardex/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cardex/error.hpp"

namespace cardex::kernels {

OptimizerState OptimizerState::fresh(std::vector<double> theta) {
  OptimizerState s;
  s.m.assign(theta.size(), 0.0);
  s.v.assign(theta.size(), 0.0);
  s.theta = std::move(theta);
  return s;
}

void check_probability_vector(std::span<const double> p, std::size_t expected_length) {
  if (p.size() != expected_length)
    throw ShapeError("probability vector has length " + std::to_string(p.size()) + ", expected " +
                     std::to_string(expected_length));
  double sum = 0;
  for (double v : p) {
    if (!(v >= 0 && v <= 1)) throw ShapeError("probability outside [0, 1]");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ShapeError("probabilities do not sum to 1");
}

namespace {

void check_one_hot(const OneHot& y, std::span<const double> p) {
  if (y.length != p.size())
    throw ShapeError("one-hot length " + std::to_string(y.length) + " != prediction length " +
                     std::to_string(p.size()));
  if (y.index >= y.length) throw ShapeError("one-hot index out of range");
}

}  // namespace

double cce(const OneHot& y_true, std::span<const double> y_pred) {
  check_one_hot(y_true, y_pred);
  return -std::log(std::max(y_pred[y_true.index], kLogClamp));
}

std::vector<double> cce_grad(const OneHot& y_true, std::span<const double> y_pred) {
  check_one_hot(y_true, y_pred);
  std::vector<double> g(y_pred.size(), 0.0);
  const double pk = y_pred[y_true.index];
  // Below the clamp the loss is flat in p_k.
  g[y_true.index] = pk > kLogClamp ? -1.0 / pk : 0.0;
  return g;
}

namespace {

struct DflSupport {
  std::size_t lo;
  double w_lo;
  double w_hi;  // weight of lo + 1; 0 when target is integral
};

DflSupport dfl_support(double target, std::span<const double> q) {
  if (q.size() < 2) throw ShapeError("dfl needs at least two bins");
  const double n = static_cast<double>(q.size() - 1);
  if (!(target >= 0 && target <= n)) throw RangeError("dfl target outside [0, n]");
  const double fl = std::floor(target);
  const auto lo = static_cast<std::size_t>(fl);
  if (target == fl) return {lo, 1.0, 0.0};
  return {lo, fl + 1 - target, target - fl};
}

}  // namespace

double dfl(double target, std::span<const double> q) {
  const DflSupport s = dfl_support(target, q);
  double loss = -s.w_lo * std::log(std::max(q[s.lo], kLogClamp));
  if (s.w_hi > 0) loss -= s.w_hi * std::log(std::max(q[s.lo + 1], kLogClamp));
  return loss;
}

std::vector<double> dfl_grad(double target, std::span<const double> q) {
  const DflSupport s = dfl_support(target, q);
  std::vector<double> g(q.size(), 0.0);
  if (q[s.lo] > kLogClamp) g[s.lo] = -s.w_lo / q[s.lo];
  if (s.w_hi > 0 && q[s.lo + 1] > kLogClamp) g[s.lo + 1] = -s.w_hi / q[s.lo + 1];
  return g;
}

CiouTerms ciou_terms(const AbsBox& a, const AbsBox& b) {
  CiouTerms t;
  const double iw = std::max(0.0, std::min(a.x2, b.x2) - std::max(a.x1, b.x1));
  const double ih = std::max(0.0, std::min(a.y2, b.y2) - std::max(a.y1, b.y1));
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  t.iou = uni > 0 ? inter / uni : 0.0;

  const double dx = (b.x1 + b.x2) / 2 - (a.x1 + a.x2) / 2;
  const double dy = (b.y1 + b.y2) / 2 - (a.y1 + a.y2) / 2;
  t.center_distance_sq = dx * dx + dy * dy;
  const double cw = std::max(a.x2, b.x2) - std::min(a.x1, b.x1);
  const double ch = std::max(a.y2, b.y2) - std::min(a.y1, b.y1);
  t.enclosing_diag_sq = cw * cw + ch * ch;

  const double d = std::atan(b.width() / b.height()) - std::atan(a.width() / a.height());
  t.aspect_v = 4.0 / (std::numbers::pi * std::numbers::pi) * d * d;
  t.alpha = t.aspect_v == 0 ? 0.0 : t.aspect_v / ((1 - t.iou) + t.aspect_v);
  const double dist = t.enclosing_diag_sq > 0 ? t.center_distance_sq / t.enclosing_diag_sq : 0.0;
  t.ciou = t.iou - dist - t.alpha * t.aspect_v;
  return t;
}

double ciou(const AbsBox& a, const AbsBox& b) { return ciou_terms(a, b).ciou; }
double ciou_loss(const AbsBox& a, const AbsBox& b) { return 1.0 - ciou(a, b); }

std::array<double, 8> ciou_loss_grad(const AbsBox& a, const AbsBox& b) {
  using Grad = std::array<double, 8>;
  enum { AX1, AY1, AX2, AY2, BX1, BY1, BX2, BY2 };
  auto axpy = [](Grad& out, double s, const Grad& g) {
    for (int i = 0; i < 8; ++i) out[i] += s * g[i];
  };

  // Intersection extent along one axis and its partials.
  auto overlap = [](double a1, double a2, double b1, double b2, int ia1, int ia2, int ib1, int ib2,
                    double& len, Grad& d) {
    d.fill(0);
    const double hi = std::min(a2, b2);
    const double lo = std::max(a1, b1);
    len = hi - lo;
    if (len <= 0) {
      len = 0;
      return;
    }
    d[a2 <= b2 ? ia2 : ib2] += 1;
    d[a1 >= b1 ? ia1 : ib1] -= 1;
  };
  auto span_len = [](double a1, double a2, double b1, double b2, int ia1, int ia2, int ib1, int ib2,
                     double& len, Grad& d) {
    d.fill(0);
    len = std::max(a2, b2) - std::min(a1, b1);
    d[a2 >= b2 ? ia2 : ib2] += 1;
    d[a1 <= b1 ? ia1 : ib1] -= 1;
  };

  double iw, ih;
  Grad d_iw, d_ih;
  overlap(a.x1, a.x2, b.x1, b.x2, AX1, AX2, BX1, BX2, iw, d_iw);
  overlap(a.y1, a.y2, b.y1, b.y2, AY1, AY2, BY1, BY2, ih, d_ih);
  const double inter = iw * ih;
  Grad d_inter{};
  axpy(d_inter, ih, d_iw);
  axpy(d_inter, iw, d_ih);

  const double wa = a.width(), ha = a.height(), wb = b.width(), hb = b.height();
  Grad d_uni{};
  d_uni[AX1] = -ha;
  d_uni[AX2] = ha;
  d_uni[AY1] = -wa;
  d_uni[AY2] = wa;
  d_uni[BX1] = -hb;
  d_uni[BX2] = hb;
  d_uni[BY1] = -wb;
  d_uni[BY2] = wb;
  axpy(d_uni, -1, d_inter);
  const double uni = wa * ha + wb * hb - inter;
  const double iou = inter / uni;
  Grad d_iou{};
  axpy(d_iou, 1 / uni, d_inter);
  axpy(d_iou, -inter / (uni * uni), d_uni);

  const double dx = (b.x1 + b.x2) / 2 - (a.x1 + a.x2) / 2;
  const double dy = (b.y1 + b.y2) / 2 - (a.y1 + a.y2) / 2;
  const double rho2 = dx * dx + dy * dy;
  Grad d_rho2{};
  d_rho2[AX1] = d_rho2[AX2] = -dx;
  d_rho2[BX1] = d_rho2[BX2] = dx;
  d_rho2[AY1] = d_rho2[AY2] = -dy;
  d_rho2[BY1] = d_rho2[BY2] = dy;

  double cw, ch;
  Grad d_cw, d_ch;
  span_len(a.x1, a.x2, b.x1, b.x2, AX1, AX2, BX1, BX2, cw, d_cw);
  span_len(a.y1, a.y2, b.y1, b.y2, AY1, AY2, BY1, BY2, ch, d_ch);
  const double c2 = cw * cw + ch * ch;
  Grad d_c2{};
  axpy(d_c2, 2 * cw, d_cw);
  axpy(d_c2, 2 * ch, d_ch);
  Grad d_dist{};
  axpy(d_dist, 1 / c2, d_rho2);
  axpy(d_dist, -rho2 / (c2 * c2), d_c2);

  const double k = 4.0 / (std::numbers::pi * std::numbers::pi);
  const double diff = std::atan(wb / hb) - std::atan(wa / ha);
  const double v = k * diff * diff;
  Grad d_atan_a{}, d_atan_b{};
  const double na = wa * wa + ha * ha;
  const double nb = wb * wb + hb * hb;
  d_atan_a[AX1] = -ha / na;
  d_atan_a[AX2] = ha / na;
  d_atan_a[AY1] = wa / na;
  d_atan_a[AY2] = -wa / na;
  d_atan_b[BX1] = -hb / nb;
  d_atan_b[BX2] = hb / nb;
  d_atan_b[BY1] = wb / nb;
  d_atan_b[BY2] = -wb / nb;
  Grad d_v{};
  axpy(d_v, 2 * k * diff, d_atan_b);
  axpy(d_v, -2 * k * diff, d_atan_a);

  // alpha * v = v^2 / ((1 - iou) + v), alpha differentiated as well.
  Grad d_penalty{};
  const double den = (1 - iou) + v;
  if (v > 0 && den > 0) {
    axpy(d_penalty, v * (2 * (1 - iou) + v) / (den * den), d_v);
    axpy(d_penalty, v * v / (den * den), d_iou);
  }

  Grad g{};
  axpy(g, -1, d_iou);
  axpy(g, 1, d_dist);
  axpy(g, 1, d_penalty);
  return g;
}

namespace {

void check_grad_shape(const OptimizerState& s, std::span<const double> grad) {
  if (grad.size() != s.theta.size() || s.m.size() != s.theta.size() || s.v.size() != s.theta.size())
    throw ShapeError("optimizer state and gradient lengths differ");
}

}  // namespace

OptimizerState adam_step(const OptimizerState& state, std::span<const double> grad) {
  check_grad_shape(state, grad);
  OptimizerState next = state;
  next.t = state.t + 1;
  const double c1 = 1 - std::pow(state.beta1, static_cast<double>(next.t));
  const double c2 = 1 - std::pow(state.beta2, static_cast<double>(next.t));
  for (std::size_t i = 0; i < grad.size(); ++i) {
    next.m[i] = state.beta1 * state.m[i] + (1 - state.beta1) * grad[i];
    next.v[i] = state.beta2 * state.v[i] + (1 - state.beta2) * grad[i] * grad[i];
    const double m_hat = next.m[i] / c1;
    const double v_hat = next.v[i] / c2;
    next.theta[i] = state.theta[i] - state.alpha / (std::sqrt(v_hat) + state.eps) * m_hat;
  }
  return next;
}

OptimizerState adamw_step(const OptimizerState& state, std::span<const double> grad) {
  OptimizerState next = adam_step(state, grad);
  if (state.weight_decay == 0) return next;
  for (std::size_t i = 0; i < next.theta.size(); ++i)
    next.theta[i] -= state.alpha * state.weight_decay * state.theta[i];
  return next;
}

double relative_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ShapeError("relative_error: length mismatch");
  double diff = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::sqrt(diff) / std::max({std::sqrt(na), std::sqrt(nb), 1e-12});
}

// ---------------------------------------------------------------------------
// Self-check suite.

namespace {

std::string fmt_err(double worst, double tol) {
  std::ostringstream os;
  os << "max rel err " << worst << " (tol " << tol << ")";
  return os.str();
}

std::vector<double> random_simplex(std::mt19937& rng, std::size_t n, double floor) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(n);
  double sum = 0;
  for (auto& v : p) {
    v = floor + u(rng);
    sum += v;
  }
  for (auto& v : p) v /= sum;
  return p;
}

// Random box pair with every min/max comparison separated by at least `gap`,
// so central differences never straddle a kink.
std::pair<AbsBox, AbsBox> random_box_pair(std::mt19937& rng, double gap) {
  std::uniform_real_distribution<double> pos(0.0, 10.0);
  std::uniform_real_distribution<double> size(0.5, 6.0);
  for (;;) {
    const AbsBox a{pos(rng), pos(rng), 0, 0};
    const AbsBox b{pos(rng), pos(rng), 0, 0};
    AbsBox aa{a.x1, a.y1, a.x1 + size(rng), a.y1 + size(rng)};
    AbsBox bb{b.x1, b.y1, b.x1 + size(rng), b.y1 + size(rng)};
    const double iw = std::min(aa.x2, bb.x2) - std::max(aa.x1, bb.x1);
    const double ih = std::min(aa.y2, bb.y2) - std::max(aa.y1, bb.y1);
    const bool separated = std::abs(aa.x1 - bb.x1) > gap && std::abs(aa.x2 - bb.x2) > gap &&
                           std::abs(aa.y1 - bb.y1) > gap && std::abs(aa.y2 - bb.y2) > gap &&
                           std::abs(iw) > gap && std::abs(ih) > gap;
    if (separated) return {aa, bb};
  }
}

std::array<double, 8> box_coords(const AbsBox& a, const AbsBox& b) {
  return {a.x1, a.y1, a.x2, a.y2, b.x1, b.y1, b.x2, b.y2};
}

std::pair<AbsBox, AbsBox> boxes_from(const std::array<double, 8>& c) {
  return {AbsBox{c[0], c[1], c[2], c[3]}, AbsBox{c[4], c[5], c[6], c[7]}};
}

}  // namespace

std::vector<CheckResult> run_kernel_checks(const KernelSet& k, const CheckOptions& opt) {
  std::vector<CheckResult> out;
  std::mt19937 rng(opt.seed);
  const double h = opt.fd_step;

  auto guarded = [&](const std::string& kernel, const std::string& check, auto&& body) {
    CheckResult r{kernel, check, false, ""};
    try {
      body(r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("threw: ") + e.what();
    }
    out.push_back(std::move(r));
  };

  guarded("cce", "gradient vs central differences", [&](CheckResult& r) {
    double worst = 0;
    for (int n = 0; n < opt.points; ++n) {
      const std::size_t len = 2 + rng() % 6;
      const OneHot y{rng() % len, len};
      std::vector<double> p = random_simplex(rng, len, 0.2);
      const auto g = k.cce_grad(y, p);
      std::vector<double> fd(len);
      for (std::size_t i = 0; i < len; ++i) {
        auto pp = p, pm = p;
        pp[i] += h;
        pm[i] -= h;
        fd[i] = (k.cce(y, pp) - k.cce(y, pm)) / (2 * h);
      }
      worst = std::max(worst, relative_error(g, fd));
    }
    r.passed = worst <= opt.tolerance;
    r.detail = fmt_err(worst, opt.tolerance);
  });

  guarded("cce", "non-negative, zero iff p_k = 1, uniform = ln K", [&](CheckResult& r) {
    bool ok = true;
    for (int n = 0; n < opt.points && ok; ++n) {
      const std::size_t len = 2 + rng() % 6;
      const OneHot y{rng() % len, len};
      const auto p = random_simplex(rng, len, 0.0);
      ok = k.cce(y, p) >= 0 && (p[y.index] == 1.0) == (k.cce(y, p) == 0.0);
      std::vector<double> uniform(len, 1.0 / static_cast<double>(len));
      ok = ok && std::abs(k.cce(y, uniform) - std::log(static_cast<double>(len))) < 1e-12;
      std::vector<double> certain(len, 0.0);
      certain[y.index] = 1.0;
      ok = ok && k.cce(y, certain) == 0.0;
    }
    r.passed = ok;
    r.detail = ok ? "ok" : "property violated";
  });

  guarded("dfl", "gradient vs central differences", [&](CheckResult& r) {
    double worst = 0;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < opt.points; ++n) {
      const std::size_t bins = 3 + rng() % 14;
      const double target = u(rng) * static_cast<double>(bins - 1);
      const auto q = random_simplex(rng, bins, 0.2);
      const auto g = k.dfl_grad(target, q);
      std::vector<double> fd(bins);
      for (std::size_t i = 0; i < bins; ++i) {
        auto qp = q, qm = q;
        qp[i] += h;
        qm[i] -= h;
        fd[i] = (k.dfl(target, qp) - k.dfl(target, qm)) / (2 * h);
      }
      worst = std::max(worst, relative_error(g, fd));
    }
    r.passed = worst <= opt.tolerance;
    r.detail = fmt_err(worst, opt.tolerance);
  });

  guarded("dfl", "minimum over the two-bin support at q_i = i + 1 - target", [&](CheckResult& r) {
    bool ok = true;
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int n = 0; n < 20 && ok; ++n) {
      const double target = 2 + u(rng);
      double best_q = 0, best_loss = 1e300;
      for (int s = 1; s < 1000; ++s) {
        const double qi = s / 1000.0;
        const std::vector<double> q{0, 0, qi, 1 - qi, 0};
        const double l = k.dfl(target, q);
        if (l < best_loss) {
          best_loss = l;
          best_q = qi;
        }
      }
      ok = std::abs(best_q - (3 - target)) <= 1e-3 + 1e-12;
    }
    r.passed = ok;
    r.detail = ok ? "ok" : "grid minimum away from i + 1 - target";
  });

  guarded("ciou_loss", "gradient vs central differences", [&](CheckResult& r) {
    double worst = 0;
    for (int n = 0; n < opt.points; ++n) {
      const auto [a, b] = random_box_pair(rng, 1e-3);
      const auto g = k.ciou_loss_grad(a, b);
      const auto c = box_coords(a, b);
      std::array<double, 8> fd{};
      for (int i = 0; i < 8; ++i) {
        auto cp = c, cm = c;
        cp[i] += h;
        cm[i] -= h;
        const auto [ap, bp] = boxes_from(cp);
        const auto [am, bm] = boxes_from(cm);
        fd[i] = (k.ciou_loss(ap, bp) - k.ciou_loss(am, bm)) / (2 * h);
      }
      worst = std::max(worst, relative_error(g, fd));
    }
    r.passed = worst <= opt.tolerance;
    r.detail = fmt_err(worst, opt.tolerance);
  });

  guarded("ciou_loss", "identical boxes -> 0; ciou <= iou", [&](CheckResult& r) {
    bool ok = true;
    for (int n = 0; n < opt.points && ok; ++n) {
      const auto [a, b] = random_box_pair(rng, 0.0);
      ok = std::abs(k.ciou_loss(a, a)) < 1e-12;
      const CiouTerms t = ciou_terms(a, b);
      ok = ok && (1 - k.ciou_loss(a, b)) <= t.iou + 1e-12;
    }
    r.passed = ok;
    r.detail = ok ? "ok" : "property violated";
  });

  guarded("adamw", "weight_decay = 0 is bit-identical to Adam", [&](CheckResult& r) {
    bool ok = true;
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int n = 0; n < opt.points && ok; ++n) {
      const std::size_t len = 1 + rng() % 8;
      OptimizerState s;
      for (std::size_t i = 0; i < len; ++i) {
        s.theta.push_back(nd(rng));
        s.m.push_back(nd(rng) * 0.1);
        s.v.push_back(std::abs(nd(rng)) * 0.1);
      }
      s.t = static_cast<long>(rng() % 50);
      s.weight_decay = 0;
      std::vector<double> g(len);
      for (auto& x : g) x = nd(rng);
      const auto w = k.adamw_step(s, g);
      const auto a = k.adam_step(s, g);
      ok = w.theta == a.theta && w.m == a.m && w.v == a.v && w.t == a.t;
    }
    r.passed = ok;
    r.detail = ok ? "ok" : "AdamW(wd=0) differs from Adam";
  });

  guarded("adamw", "decay contribution is exactly -alpha*wd*theta, independent of grad", [&](CheckResult& r) {
    bool ok = true;
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int n = 0; n < opt.points && ok; ++n) {
      const std::size_t len = 1 + rng() % 8;
      OptimizerState s = OptimizerState::fresh(std::vector<double>(len));
      for (auto& x : s.theta) x = nd(rng);
      s.weight_decay = 0.01 + 0.1 * std::abs(nd(rng));
      s.alpha = 1e-3 * (1 + std::abs(nd(rng)));
      for (int trial = 0; trial < 2 && ok; ++trial) {
        std::vector<double> g(len);
        for (auto& x : g) x = nd(rng);
        const auto w = k.adamw_step(s, g);
        const auto a = k.adam_step(s, g);
        for (std::size_t i = 0; i < len; ++i)
          ok = ok && w.theta[i] == a.theta[i] - s.alpha * s.weight_decay * s.theta[i];
        ok = ok && w.m == a.m && w.v == a.v;
      }
      OptimizerState pure = s;
      pure.alpha = 0.1;
      pure.theta.assign(len, 1.0);
      const auto decayed = k.adamw_step(pure, std::vector<double>(len, 0.0));
      for (double x : decayed.theta) ok = ok && x == 1.0 - 0.1 * pure.weight_decay;
    }
    r.passed = ok;
    r.detail = ok ? "ok" : "decay term not decoupled";
  });

  guarded("adamw", "deterministic; first step moves theta by ~alpha", [&](CheckResult& r) {
    OptimizerState s = OptimizerState::fresh({0.5});
    s.alpha = 0.001;
    const std::vector<double> g{1.0};
    const auto a = k.adamw_step(s, g);
    const auto b = k.adamw_step(s, g);
    const bool ok = a.theta == b.theta && a.t == 1 && std::abs((0.5 - a.theta[0]) - 0.001) < 1e-9;
    r.passed = ok;
    r.detail = ok ? "ok" : "unexpected first step";
  });

  return out;
}

}  // namespace cardex::kernels
