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

#include "cardex/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "cardex/error.hpp"

namespace cardex::imaging {

namespace {

double clamp_sample(double v, SampleDomain domain) {
  return domain == SampleDomain::kByte ? std::clamp(v, 0.0, 255.0) : std::clamp(v, 0.0, 1.0);
}

std::uint8_t to_byte(double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0))); }

// Builds an image of the same domain as `like` from real-valued samples.
ImageBuffer from_reals(const ImageBuffer& like, int w, int h, int c, const std::vector<double>& v) {
  if (like.domain() == SampleDomain::kByte) {
    std::vector<std::uint8_t> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), to_byte);
    return ImageBuffer::bytes(w, h, c, std::move(out));
  }
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double s) { return std::clamp(s, 0.0, 1.0); });
  return ImageBuffer::units(w, h, c, std::move(out));
}

void require_gray(const ImageBuffer& img, const char* op) {
  if (img.empty()) throw InvalidParameter(std::string(op) + ": empty image");
  if (img.channels() != 1) throw InvalidParameter(std::string(op) + ": expects a 1-channel image");
}

}  // namespace

Kernel2D::Kernel2D(int size, std::vector<double> weights) : size_(size), weights_(std::move(weights)) {
  if (size < 1 || size % 2 == 0) throw InvalidParameter("kernel size must be odd and >= 1");
  if (weights_.size() != static_cast<std::size_t>(size) * size)
    throw ShapeError("kernel weights must be size x size");
}

Homography::Homography(const Matrix& m) : m_(m) {
  const double s = m[2][2];
  if (!std::isfinite(s) || std::abs(s) < 1e-12)
    throw DegenerateQuad("homography cannot be normalized (m[2][2] ~ 0)");
  for (auto& row : m_)
    for (double& v : row) v /= s;
  const double det = determinant();
  if (!std::isfinite(det) || std::abs(det) <= 1e-12) throw DegenerateQuad("homography is singular");
}

Homography Homography::identity() { return Homography(Matrix{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}); }

double Homography::determinant() const noexcept {
  const auto& a = m_;
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Point2 Homography::apply(const Point2& p) const {
  const auto& a = m_;
  const double w = a[2][0] * p.x + a[2][1] * p.y + a[2][2];
  return {(a[0][0] * p.x + a[0][1] * p.y + a[0][2]) / w, (a[1][0] * p.x + a[1][1] * p.y + a[1][2]) / w};
}

Homography Homography::inverse() const {
  const auto& a = m_;
  const double det = determinant();
  Matrix inv{};
  inv[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det;
  inv[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det;
  inv[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det;
  inv[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / det;
  inv[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det;
  inv[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det;
  inv[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / det;
  inv[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / det;
  inv[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det;
  return Homography(inv);
}

Homography Homography::operator*(const Homography& rhs) const {
  Matrix out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += m_[i][k] * rhs.m_[k][j];
  return Homography(out);
}

std::size_t EdgeMap::count() const {
  return static_cast<std::size_t>(std::count(edges.begin(), edges.end(), std::uint8_t{1}));
}

ImageBuffer to_grayscale(const ImageBuffer& img) {
  if (img.empty()) throw InvalidParameter("to_grayscale: empty image");
  if (img.channels() == 1) return img;
  const int w = img.width();
  const int h = img.height();
  std::vector<double> luma(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      luma[static_cast<std::size_t>(y) * w + x] =
          0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) + 0.114 * img.at(x, y, 2);
  return from_reals(img, w, h, 1, luma);
}

ImageBuffer normalize_pixels(const ImageBuffer& img) {
  if (img.domain() != SampleDomain::kByte) throw InvalidDomain("normalize_pixels: image is already unit-domain");
  const auto src = img.byte_data();
  std::vector<double> out(src.size());
  std::transform(src.begin(), src.end(), out.begin(), [](std::uint8_t v) { return v / 255.0; });
  return ImageBuffer::units(img.width(), img.height(), img.channels(), std::move(out));
}

Kernel2D gaussian_kernel(int size, double sigma) {
  if (size < 1 || size % 2 == 0) throw InvalidParameter("gaussian_kernel: size must be odd and >= 1");
  if (!(sigma > 0)) throw InvalidParameter("gaussian_kernel: sigma must be > 0");
  const int r = size / 2;
  std::vector<double> w(static_cast<std::size_t>(size) * size);
  double sum = 0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double v = std::exp(-(dx * dx + dy * dy) / (2 * sigma * sigma));
      w[static_cast<std::size_t>(dy + r) * size + (dx + r)] = v;
      sum += v;
    }
  }
  for (double& v : w) v /= sum;
  return Kernel2D(size, std::move(w));
}

int reflect_index(int i, int n, Border border) {
  if (n == 1) return 0;
  if (border == Border::kReflect101) {
    const int period = 2 * (n - 1);
    i = ((i % period) + period) % period;
    return i < n ? i : period - i;
  }
  const int period = 2 * n;
  i = ((i % period) + period) % period;
  return i < n ? i : period - 1 - i;
}

ImageBuffer convolve(const ImageBuffer& img, const Kernel2D& kernel, Border border) {
  require_gray(img, "convolve");
  const int w = img.width();
  const int h = img.height();
  const int r = kernel.radius();
  std::vector<int> xs(static_cast<std::size_t>(w) + 2 * r);
  std::vector<int> ys(static_cast<std::size_t>(h) + 2 * r);
  for (int i = -r; i < w + r; ++i) xs[i + r] = reflect_index(i, w, border);
  for (int i = -r; i < h + r; ++i) ys[i + r] = reflect_index(i, h, border);

  std::vector<double> out(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0;
      for (int dy = -r; dy <= r; ++dy) {
        const int sy = ys[y + dy + r];
        for (int dx = -r; dx <= r; ++dx) acc += kernel.at(dx, dy) * img.at(xs[x + dx + r], sy);
      }
      out[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return from_reals(img, w, h, 1, out);
}

ImageBuffer gaussian_blur(const ImageBuffer& img, int size, double sigma, Border border) {
  return convolve(img, gaussian_kernel(size, sigma), border);
}

GradientField sobel_gradients(const ImageBuffer& img) {
  require_gray(img, "sobel_gradients");
  const int w = img.width();
  const int h = img.height();
  const std::size_t n = static_cast<std::size_t>(w) * h;
  GradientField g{w, h, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
                  std::vector<double>(n)};
  for (int y = 0; y < h; ++y) {
    const int ym = reflect_index(y - 1, h);
    const int yp = reflect_index(y + 1, h);
    for (int x = 0; x < w; ++x) {
      const int xm = reflect_index(x - 1, w);
      const int xp = reflect_index(x + 1, w);
      const double gx = (img.at(xp, ym) + 2 * img.at(xp, y) + img.at(xp, yp)) -
                        (img.at(xm, ym) + 2 * img.at(xm, y) + img.at(xm, yp));
      const double gy = (img.at(xm, yp) + 2 * img.at(x, yp) + img.at(xp, yp)) -
                        (img.at(xm, ym) + 2 * img.at(x, ym) + img.at(xp, ym));
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      g.gx[i] = gx;
      g.gy[i] = gy;
      g.magnitude[i] = std::hypot(gx, gy);
      double a = std::atan2(gy, gx);
      if (a <= -std::numbers::pi) a = std::numbers::pi;
      g.angle[i] = a;
    }
  }
  return g;
}

EdgeMap canny_edges(const ImageBuffer& img, const CannyParams& p) {
  return canny_edges(img, p.low, p.high, p.blur_size, p.blur_sigma);
}

EdgeMap canny_edges(const ImageBuffer& img, double low, double high, int blur_size, double blur_sigma) {
  if (!(low >= 0) || !(low < high)) throw InvalidParameter("canny_edges: need 0 <= low < high");
  const ImageBuffer gray = to_grayscale(img);
  const ImageBuffer smooth = gaussian_blur(gray, blur_size, blur_sigma);
  const GradientField g = sobel_gradients(smooth);
  const int w = g.width;
  const int h = g.height;
  auto mag = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return 0.0;
    return g.magnitude[static_cast<std::size_t>(y) * w + x];
  };

  // Non-maximum suppression along the gradient direction quantized to
  // 0/45/90/135 degrees. Ties keep the pixel on the negative side.
  std::vector<double> thin(static_cast<std::size_t>(w) * h, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      const double m = g.magnitude[i];
      if (m < low || m == 0) continue;
      double deg = g.angle[i] * 180.0 / std::numbers::pi;
      if (deg < 0) deg += 180.0;
      int dx = 0;
      int dy = 0;
      if (deg < 22.5 || deg >= 157.5) {
        dx = 1;
      } else if (deg < 67.5) {
        dx = 1;
        dy = 1;
      } else if (deg < 112.5) {
        dy = 1;
      } else {
        dx = -1;
        dy = 1;
      }
      if (m > mag(x - dx, y - dy) && m >= mag(x + dx, y + dy)) thin[i] = m;
    }
  }

  // Hysteresis with 8-connectivity.
  EdgeMap out{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, 0)};
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < thin.size(); ++i) {
    if (thin[i] >= high) {
      out.edges[i] = 1;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const int x = static_cast<int>(i % w);
    const int y = static_cast<int>(i / w);
    for (int ny = y - 1; ny <= y + 1; ++ny) {
      for (int nx = x - 1; nx <= x + 1; ++nx) {
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
        if (!out.edges[j] && thin[j] >= low && thin[j] > 0) {
          out.edges[j] = 1;
          stack.push_back(j);
        }
      }
    }
  }
  return out;
}

namespace {

bool has_collinear_triple(const Quad& q) {
  double scale = 0;
  for (const auto& p : q)
    for (const auto& r : q) scale = std::max(scale, std::hypot(p.x - r.x, p.y - r.y));
  if (scale == 0) return true;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        const double cross = (q[j].x - q[i].x) * (q[k].y - q[i].y) - (q[j].y - q[i].y) * (q[k].x - q[i].x);
        if (std::abs(cross) <= 1e-9 * scale * scale) return true;
      }
  return false;
}

// Translates the centroid to the origin and scales the mean distance to sqrt(2).
Eigen::Matrix3d conditioning(const Quad& q) {
  double cx = 0;
  double cy = 0;
  for (const auto& p : q) {
    cx += p.x / 4;
    cy += p.y / 4;
  }
  double d = 0;
  for (const auto& p : q) d += std::hypot(p.x - cx, p.y - cy) / 4;
  const double s = std::sqrt(2.0) / d;
  Eigen::Matrix3d t;
  t << s, 0, -s * cx, 0, s, -s * cy, 0, 0, 1;
  return t;
}

}  // namespace

Homography solve_homography(const Quad& src, const Quad& dst) {
  if (has_collinear_triple(src)) throw DegenerateQuad("source quad has three collinear points");
  if (has_collinear_triple(dst)) throw DegenerateQuad("destination quad has three collinear points");

  const Eigen::Matrix3d ts = conditioning(src);
  const Eigen::Matrix3d td = conditioning(dst);
  Eigen::Matrix<double, 8, 8> a;
  Eigen::Matrix<double, 8, 1> b;
  for (int i = 0; i < 4; ++i) {
    const Eigen::Vector3d s = ts * Eigen::Vector3d(src[i].x, src[i].y, 1);
    const Eigen::Vector3d d = td * Eigen::Vector3d(dst[i].x, dst[i].y, 1);
    const double x = s.x(), y = s.y(), u = d.x(), v = d.y();
    a.row(2 * i) << x, y, 1, 0, 0, 0, -x * u, -y * u;
    a.row(2 * i + 1) << 0, 0, 0, x, y, 1, -x * v, -y * v;
    b(2 * i) = u;
    b(2 * i + 1) = v;
  }
  Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(a);
  if (!lu.isInvertible()) throw DegenerateQuad("DLT system is singular");
  const Eigen::Matrix<double, 8, 1> hv = lu.solve(b);

  Eigen::Matrix3d hn;
  hn << hv(0), hv(1), hv(2), hv(3), hv(4), hv(5), hv(6), hv(7), 1;
  const Eigen::Matrix3d full = td.inverse() * hn * ts;
  Homography::Matrix m{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = full(r, c);
  return Homography(m);
}

namespace {

// Bilinear sample at a real position; false when outside the pixel-center grid.
bool sample_bilinear(const ImageBuffer& img, double u, double v, int c, double& out) {
  constexpr double kEps = 1e-9;
  const int w = img.width();
  const int h = img.height();
  if (u < -kEps || v < -kEps || u > w - 1 + kEps || v > h - 1 + kEps) return false;
  u = std::clamp(u, 0.0, static_cast<double>(w - 1));
  v = std::clamp(v, 0.0, static_cast<double>(h - 1));
  const int x0 = static_cast<int>(std::floor(u));
  const int y0 = static_cast<int>(std::floor(v));
  const int x1 = std::min(x0 + 1, w - 1);
  const int y1 = std::min(y0 + 1, h - 1);
  const double fx = u - x0;
  const double fy = v - y0;
  const double top = img.at(x0, y0, c) * (1 - fx) + img.at(x1, y0, c) * fx;
  const double bottom = img.at(x0, y1, c) * (1 - fx) + img.at(x1, y1, c) * fx;
  out = top * (1 - fy) + bottom * fy;
  return true;
}

}  // namespace

ImageBuffer warp_perspective(const ImageBuffer& img, const Homography& h, int out_w, int out_h) {
  if (img.empty()) throw InvalidParameter("warp_perspective: empty image");
  if (out_w < 1 || out_h < 1) throw InvalidParameter("warp_perspective: output size must be >= 1");
  const Homography inv = h.inverse();
  const int c = img.channels();
  std::vector<double> out(static_cast<std::size_t>(out_w) * out_h * c, 0.0);
  for (int y = 0; y < out_h; ++y) {
    for (int x = 0; x < out_w; ++x) {
      const Point2 s = inv.apply({static_cast<double>(x), static_cast<double>(y)});
      if (!std::isfinite(s.x) || !std::isfinite(s.y)) continue;
      for (int k = 0; k < c; ++k) {
        double v = 0;
        if (sample_bilinear(img, s.x, s.y, k, v))
          out[(static_cast<std::size_t>(y) * out_w + x) * c + k] = v;
      }
    }
  }
  return from_reals(img, out_w, out_h, c, out);
}

ImageBuffer resize(const ImageBuffer& img, int out_w, int out_h) {
  if (img.empty()) throw InvalidParameter("resize: empty image");
  if (out_w < 1 || out_h < 1) throw InvalidParameter("resize: output size must be >= 1");
  if (out_w == img.width() && out_h == img.height()) return img;
  const int c = img.channels();
  const double sx = static_cast<double>(img.width()) / out_w;
  const double sy = static_cast<double>(img.height()) / out_h;
  std::vector<double> out(static_cast<std::size_t>(out_w) * out_h * c);
  for (int y = 0; y < out_h; ++y) {
    const double v = std::clamp((y + 0.5) * sy - 0.5, 0.0, img.height() - 1.0);
    for (int x = 0; x < out_w; ++x) {
      const double u = std::clamp((x + 0.5) * sx - 0.5, 0.0, img.width() - 1.0);
      for (int k = 0; k < c; ++k) {
        double s = 0;
        sample_bilinear(img, u, v, k, s);
        out[(static_cast<std::size_t>(y) * out_w + x) * c + k] = s;
      }
    }
  }
  return from_reals(img, out_w, out_h, c, out);
}

ImageBuffer crop(const ImageBuffer& img, const AbsBox& box) {
  if (img.empty()) throw InvalidParameter("crop: empty image");
  const double fx1 = std::max(std::floor(box.x1), 0.0);
  const double fy1 = std::max(std::floor(box.y1), 0.0);
  const double fx2 = std::min(std::ceil(box.x2), static_cast<double>(img.width()));
  const double fy2 = std::min(std::ceil(box.y2), static_cast<double>(img.height()));
  if (!(fx2 > fx1) || !(fy2 > fy1)) throw DegenerateBox("crop box does not intersect the image");
  const int x1 = static_cast<int>(fx1);
  const int y1 = static_cast<int>(fy1);
  const int w = static_cast<int>(fx2) - x1;
  const int h = static_cast<int>(fy2) - y1;
  const int c = img.channels();
  if (img.domain() == SampleDomain::kByte) {
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(w) * h * c);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        for (int k = 0; k < c; ++k) out.push_back(img.byte_at(x1 + x, y1 + y, k));
    return ImageBuffer::bytes(w, h, c, std::move(out));
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(w) * h * c);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int k = 0; k < c; ++k) out.push_back(img.unit_at(x1 + x, y1 + y, k));
  return ImageBuffer::units(w, h, c, std::move(out));
}

namespace {

template <typename Map>
ImageBuffer remap(const ImageBuffer& img, int out_w, int out_h, Map source_of) {
  const int c = img.channels();
  std::vector<double> out(static_cast<std::size_t>(out_w) * out_h * c);
  for (int y = 0; y < out_h; ++y)
    for (int x = 0; x < out_w; ++x) {
      const auto [sx, sy] = source_of(x, y);
      for (int k = 0; k < c; ++k) out[(static_cast<std::size_t>(y) * out_w + x) * c + k] = img.at(sx, sy, k);
    }
  return from_reals(img, out_w, out_h, c, out);
}

}  // namespace

std::pair<ImageBuffer, std::vector<NormBox>> augment(const ImageBuffer& img,
                                                     const std::vector<NormBox>& boxes,
                                                     const AugmentSpec& spec) {
  if (img.empty()) throw InvalidParameter("augment: empty image");
  const int w = img.width();
  const int h = img.height();
  std::vector<NormBox> out_boxes = boxes;

  if (std::holds_alternative<augment_ops::FlipH>(spec)) {
    for (auto& b : out_boxes) b.cx = 1 - b.cx;
    return {remap(img, w, h, [w](int x, int y) { return std::pair{w - 1 - x, y}; }), out_boxes};
  }
  if (std::holds_alternative<augment_ops::FlipV>(spec)) {
    for (auto& b : out_boxes) b.cy = 1 - b.cy;
    return {remap(img, w, h, [h](int x, int y) { return std::pair{x, h - 1 - y}; }), out_boxes};
  }
  if (std::holds_alternative<augment_ops::Rotate90Cw>(spec)) {
    for (auto& b : out_boxes) b = NormBox{1 - b.cy, b.cx, b.h, b.w};
    // Output is h wide and w tall; output (x, y) comes from source (y, h-1-x).
    return {remap(img, h, w, [h](int x, int y) { return std::pair{y, h - 1 - x}; }), out_boxes};
  }
  if (const auto* bc = std::get_if<augment_ops::BrightnessContrast>(&spec)) {
    if (!(bc->alpha > 0) || !std::isfinite(bc->beta))
      throw InvalidParameter("brightness_contrast: alpha must be > 0 and beta finite");
    const int c = img.channels();
    std::vector<double> out(img.sample_count());
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        for (int k = 0; k < c; ++k)
          out[img.index(x, y, k)] = clamp_sample(bc->alpha * img.at(x, y, k) + bc->beta, img.domain());
    return {from_reals(img, w, h, c, out), out_boxes};
  }
  const auto& sc = std::get<augment_ops::Scale>(spec);
  if (!(sc.factor > 0) || !std::isfinite(sc.factor)) throw InvalidParameter("scale: factor must be > 0");
  const int nw = std::max(1, static_cast<int>(std::lround(w * sc.factor)));
  const int nh = std::max(1, static_cast<int>(std::lround(h * sc.factor)));
  return {resize(img, nw, nh), out_boxes};
}

AugmentSpec parse_augment_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.empty()) throw InvalidParameter("empty augmentation spec");
  auto number = [&](std::size_t i) {
    try {
      std::size_t used = 0;
      const double v = std::stod(parts.at(i), &used);
      if (used != parts[i].size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw InvalidParameter("bad numeric parameter in augmentation spec '" + text + "'");
    }
  };
  const std::string& op = parts[0];
  if (op == "flip_h" && parts.size() == 1) return augment_ops::FlipH{};
  if (op == "flip_v" && parts.size() == 1) return augment_ops::FlipV{};
  if (op == "rotate90_cw" && parts.size() == 1) return augment_ops::Rotate90Cw{};
  if (op == "brightness_contrast" && parts.size() == 3) {
    augment_ops::BrightnessContrast bc{number(1), number(2)};
    if (!(bc.alpha > 0)) throw InvalidParameter("brightness_contrast: alpha must be > 0");
    return bc;
  }
  if (op == "scale" && parts.size() == 2) {
    augment_ops::Scale s{number(1)};
    if (!(s.factor > 0)) throw InvalidParameter("scale: factor must be > 0");
    return s;
  }
  throw InvalidParameter("unknown augmentation spec '" + text + "'");
}

std::string to_string(const AugmentSpec& spec) {
  struct Visitor {
    std::string operator()(augment_ops::FlipH) const { return "flip_h"; }
    std::string operator()(augment_ops::FlipV) const { return "flip_v"; }
    std::string operator()(augment_ops::Rotate90Cw) const { return "rotate90_cw"; }
    std::string operator()(const augment_ops::BrightnessContrast& b) const {
      std::ostringstream os;
      os << "brightness_contrast:" << b.alpha << ":" << b.beta;
      return os.str();
    }
    std::string operator()(const augment_ops::Scale& s) const {
      std::ostringstream os;
      os << "scale:" << s.factor;
      return os.str();
    }
  };
  return std::visit(Visitor{}, spec);
}

}  // namespace cardex::imaging
