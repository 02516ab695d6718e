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

#include "cardex/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "cardex/error.hpp"

namespace cardex::image_io {

namespace {

std::uint8_t quantize(double unit) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(unit, 0.0, 1.0) * 255.0));
}

}  // namespace

ImageBuffer decode(std::span<const std::uint8_t> encoded) {
  if (encoded.empty()) throw IoError("empty image payload");
  cv::Mat raw(1, static_cast<int>(encoded.size()), CV_8UC1,
              const_cast<std::uint8_t*>(encoded.data()));
  cv::Mat mat;
  try {
    mat = cv::imdecode(raw, cv::IMREAD_UNCHANGED);
  } catch (const cv::Exception& e) {
    throw IoError(std::string("image decode failed: ") + e.what());
  }
  if (mat.empty()) throw IoError("payload is not a decodable PNG/JPEG image");
  if (mat.depth() != CV_8U) {
    cv::Mat converted;
    mat.convertTo(converted, CV_8U, mat.depth() == CV_16U ? 1.0 / 257.0 : 1.0);
    mat = converted;
  }

  const int w = mat.cols;
  const int h = mat.rows;
  const int src_channels = mat.channels();
  const int channels = src_channels == 1 ? 1 : 3;
  std::vector<std::uint8_t> out(static_cast<std::size_t>(w) * h * channels);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < w; ++x) {
      const std::uint8_t* px = row + static_cast<std::size_t>(x) * src_channels;
      std::uint8_t* dst = out.data() + (static_cast<std::size_t>(y) * w + x) * channels;
      if (channels == 1) {
        dst[0] = px[0];
      } else if (src_channels == 2) {
        dst[0] = dst[1] = dst[2] = px[0];
      } else {
        // OpenCV hands back BGR(A).
        dst[0] = px[2];
        dst[1] = px[1];
        dst[2] = px[0];
      }
    }
  }
  return ImageBuffer::bytes(w, h, channels, std::move(out));
}

std::vector<std::uint8_t> encode_png(const ImageBuffer& img) {
  if (img.empty()) throw IoError("cannot encode an empty image");
  const int c = img.channels();
  cv::Mat mat(img.height(), img.width(), c == 1 ? CV_8UC1 : CV_8UC3);
  for (int y = 0; y < img.height(); ++y) {
    std::uint8_t* row = mat.ptr<std::uint8_t>(y);
    for (int x = 0; x < img.width(); ++x) {
      for (int k = 0; k < c; ++k) {
        const std::uint8_t v = img.domain() == SampleDomain::kByte ? img.byte_at(x, y, k)
                                                                   : quantize(img.unit_at(x, y, k));
        // RGB -> BGR for OpenCV.
        const int dst = c == 3 ? 2 - k : k;
        row[static_cast<std::size_t>(x) * c + dst] = v;
      }
    }
  }
  std::vector<std::uint8_t> out;
  if (!cv::imencode(".png", mat, out)) throw IoError("PNG encoding failed");
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ImageBuffer read(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  try {
    return decode(bytes);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_png(const std::filesystem::path& path, const ImageBuffer& img) {
  const auto bytes = encode_png(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

}  // namespace cardex::image_io
