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

#include "texlab/frame.h"

#include <algorithm>
#include <string>

#include "texlab/errors.h"

namespace texlab {

Plane::Plane(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw DimensionError("plane dimensions must be positive, got " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  samples_.assign(static_cast<std::size_t>(width) * height, fill);
}

std::uint8_t Plane::clamped(int x, int y) const {
  x = std::clamp(x, 0, width_ - 1);
  y = std::clamp(y, 0, height_ - 1);
  return samples_[index(x, y)];
}

namespace {

void check_frame_size(int width, int height) {
  if (width < Frame::kMinFrameSize || height < Frame::kMinFrameSize ||
      width % 2 != 0 || height % 2 != 0) {
    throw DimensionError("frame must be even-sized and at least 64x64, got " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

Frame::Frame(int width, int height, int index) : index_(index) {
  check_frame_size(width, height);
  y_ = Plane(width, height);
  u_ = Plane(width / 2, height / 2, 128);
  v_ = Plane(width / 2, height / 2, 128);
}

Frame::Frame(Plane y, Plane u, Plane v, int index)
    : y_(std::move(y)), u_(std::move(u)), v_(std::move(v)), index_(index) {
  check_frame_size(y_.width(), y_.height());
  if (u_.width() != y_.width() / 2 || u_.height() != y_.height() / 2 ||
      v_.width() != y_.width() / 2 || v_.height() != y_.height() / 2) {
    throw DimensionError("chroma planes must be half the luma size");
  }
}

RgbImage::RgbImage(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw DimensionError("image dimensions must be positive, got " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  samples_.assign(static_cast<std::size_t>(width) * height * 3, 0);
}

RgbImage RgbImage::crop(int x, int y, int w, int h) const {
  if (x < 0 || y < 0 || x + w > width_ || y + h > height_) {
    throw IndexError("crop region outside image");
  }
  RgbImage out(w, h);
  for (int row = 0; row < h; ++row) {
    const auto* src = samples_.data() +
                      (static_cast<std::size_t>(y + row) * width_ + x) * 3;
    std::copy(src, src + static_cast<std::size_t>(w) * 3,
              out.samples_.data() + static_cast<std::size_t>(row) * w * 3);
  }
  return out;
}

}  // namespace texlab
