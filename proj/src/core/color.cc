// Copyright 2026 The texlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "texlab/color.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "texlab/errors.h"

namespace texlab {
namespace {

// Rows: Y, Cb, Cr. Columns: R, G, B. Scaled by 10^6 so the forward
// conversion is exact integer arithmetic.
constexpr std::int64_t kScale = 1000000;
constexpr std::array<std::array<std::int64_t, 3>, 3> kRgbToYcc = {{
    {299000, 587000, 114000},
    {-168736, -331264, 500000},
    {500000, -418688, -81312},
}};

std::uint8_t to_sample(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// num / den rounded half away from zero, clamped to a sample.
std::uint8_t rounded_sample(std::int64_t num, std::int64_t den) {
  const std::int64_t q = (num >= 0 ? num + den / 2 : num - den / 2) / den;
  return static_cast<std::uint8_t>(std::clamp<std::int64_t>(q, 0, 255));
}

}  // namespace

Frame rgb_to_yuv420(const RgbImage& rgb, int index) {
  const int w = rgb.width();
  const int h = rgb.height();
  if (w % 2 != 0 || h % 2 != 0) {
    throw DimensionError("rgb_to_yuv420 needs even dimensions, got " +
                         std::to_string(w) + "x" + std::to_string(h));
  }
  Frame frame(w, h, index);
  std::vector<std::int64_t> cb(static_cast<std::size_t>(w) * h);
  std::vector<std::int64_t> cr(cb.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::array<std::int64_t, 3> ycc{};
      for (int k = 0; k < 3; ++k) {
        for (int c = 0; c < 3; ++c) ycc[k] += kRgbToYcc[k][c] * rgb.at(x, y, c);
      }
      frame.y().at(x, y) = rounded_sample(ycc[0], kScale);
      cb[static_cast<std::size_t>(y) * w + x] = ycc[1] + 128 * kScale;
      cr[static_cast<std::size_t>(y) * w + x] = ycc[2] + 128 * kScale;
    }
  }
  for (int y = 0; y < h / 2; ++y) {
    for (int x = 0; x < w / 2; ++x) {
      const std::size_t i = static_cast<std::size_t>(2 * y) * w + 2 * x;
      frame.u().at(x, y) = rounded_sample(cb[i] + cb[i + 1] + cb[i + w] + cb[i + w + 1], 4 * kScale);
      frame.v().at(x, y) = rounded_sample(cr[i] + cr[i + 1] + cr[i + w] + cr[i + w + 1], 4 * kScale);
    }
  }
  return frame;
}

RgbImage yuv420_to_rgb(const Frame& frame) {
  RgbImage rgb(frame.width(), frame.height());
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      const double luma = frame.y().at(x, y);
      const double cb = frame.u().at(x / 2, y / 2) - 128.0;
      const double cr = frame.v().at(x / 2, y / 2) - 128.0;
      rgb.at(x, y, 0) = to_sample(luma + 1.402 * cr);
      rgb.at(x, y, 1) = to_sample(luma - 0.344136 * cb - 0.714136 * cr);
      rgb.at(x, y, 2) = to_sample(luma + 1.772 * cb);
    }
  }
  return rgb;
}

}  // namespace texlab
