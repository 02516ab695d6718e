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
#include <utility>
#include <variant>
#include <vector>

#include "cardex/types.hpp"

namespace cardex::imaging {

struct Point2 {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

using Quad = std::array<Point2, 4>;

class Kernel2D {
 public:
  Kernel2D(int size, std::vector<double> weights);

  int size() const noexcept { return size_; }
  int radius() const noexcept { return size_ / 2; }
  double at(int dx, int dy) const noexcept {
    return weights_[static_cast<std::size_t>(dy + radius()) * size_ + (dx + radius())];
  }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  int size_;
  std::vector<double> weights_;
};

// Projective 3x3 map, stored row-major and normalized so m[2][2] == 1.
class Homography {
 public:
  using Matrix = std::array<std::array<double, 3>, 3>;

  // Throws DegenerateQuad if the matrix cannot be normalized or is singular.
  explicit Homography(const Matrix& m);
  static Homography identity();

  const Matrix& matrix() const noexcept { return m_; }
  double determinant() const noexcept;
  Point2 apply(const Point2& p) const;
  Homography inverse() const;
  Homography operator*(const Homography& rhs) const;

 private:
  Matrix m_;
};

struct EdgeMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> edges;  // 1 = edge

  bool at(int x, int y) const { return edges[static_cast<std::size_t>(y) * width + x] != 0; }
  std::size_t count() const;
};

// Per-pixel real maps, row-major, same size as the source.
struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> gx;
  std::vector<double> gy;
  std::vector<double> magnitude;
  std::vector<double> angle;  // radians in (-pi, pi]
};

namespace augment_ops {
struct FlipH {};
struct FlipV {};
struct Rotate90Cw {};
struct BrightnessContrast {
  double alpha = 1.0;  // gain, > 0
  double beta = 0.0;   // bias, in the image's native scale
};
struct Scale {
  double factor = 1.0;
};
}  // namespace augment_ops

using AugmentSpec = std::variant<augment_ops::FlipH, augment_ops::FlipV, augment_ops::Rotate90Cw,
                                 augment_ops::BrightnessContrast, augment_ops::Scale>;

// Out-of-range taps are mirrored. kReflect101 excludes the edge sample
// (gfedcb|abcdefgh|gfedcba); kReflect repeats it (fedcba|abcdefgh|hgfedcba).
enum class Border { kReflect101, kReflect };

struct CannyParams {
  double low = 50.0;
  double high = 150.0;
  int blur_size = 5;
  double blur_sigma = 1.4;
};

// BT.601 luma. Single-channel input is returned unchanged.
ImageBuffer to_grayscale(const ImageBuffer& img);

// Byte -> unit domain (v / 255). Throws InvalidDomain on unit input.
ImageBuffer normalize_pixels(const ImageBuffer& img);

Kernel2D gaussian_kernel(int size, double sigma);

// Convolves a single-channel image. Byte images are rounded and clamped back
// to 0..255; unit images are clamped to [0, 1].
ImageBuffer convolve(const ImageBuffer& img, const Kernel2D& kernel,
                     Border border = Border::kReflect101);
ImageBuffer gaussian_blur(const ImageBuffer& img, int size, double sigma,
                          Border border = Border::kReflect101);

// Maps an out-of-range index back into [0, n).
int reflect_index(int i, int n, Border border = Border::kReflect101);

// 3x3 Sobel with reflect-101 borders.
GradientField sobel_gradients(const ImageBuffer& img);

EdgeMap canny_edges(const ImageBuffer& img, const CannyParams& params = {});
EdgeMap canny_edges(const ImageBuffer& img, double low, double high, int blur_size,
                    double blur_sigma);

// Direct linear transform on four correspondences.
Homography solve_homography(const Quad& src, const Quad& dst);

// Inverse mapping with bilinear sampling; samples falling outside the source
// are black.
ImageBuffer warp_perspective(const ImageBuffer& img, const Homography& h, int out_w, int out_h);

// Bilinear resize (pixel-center aligned).
ImageBuffer resize(const ImageBuffer& img, int out_w, int out_h);

// Sub-image of the integer rectangle [floor(x1), ceil(x2)) x [floor(y1), ceil(y2))
// clamped to the image. Throws DegenerateBox on an empty intersection.
ImageBuffer crop(const ImageBuffer& img, const AbsBox& box);

std::pair<ImageBuffer, std::vector<NormBox>> augment(const ImageBuffer& img,
                                                     const std::vector<NormBox>& boxes,
                                                     const AugmentSpec& spec);

// Parses "flip_h", "flip_v", "rotate90_cw", "brightness_contrast:A:B", "scale:F".
AugmentSpec parse_augment_spec(const std::string& text);
std::string to_string(const AugmentSpec& spec);

}  // namespace cardex::imaging
