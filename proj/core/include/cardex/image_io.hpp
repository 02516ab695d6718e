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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cardex/types.hpp"

namespace cardex::image_io {

// Decodes PNG or JPEG bytes into a byte-domain image. Grayscale inputs stay
// single-channel; everything else becomes RGB. Throws IoError when the bytes
// are not a decodable raster.
ImageBuffer decode(std::span<const std::uint8_t> encoded);

// Lossless PNG. Unit-domain images are quantized to bytes first.
std::vector<std::uint8_t> encode_png(const ImageBuffer& img);

ImageBuffer read(const std::filesystem::path& path);
void write_png(const std::filesystem::path& path, const ImageBuffer& img);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

}  // namespace cardex::image_io
