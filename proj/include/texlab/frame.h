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

#ifndef TEXLAB_FRAME_H_
#define TEXLAB_FRAME_H_

#include <cstdint>
#include <span>
#include <vector>

namespace texlab {

// A single 8-bit sample plane, row-major with no padding between rows.
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return samples_.empty(); }

  std::uint8_t at(int x, int y) const { return samples_[index(x, y)]; }
  std::uint8_t& at(int x, int y) { return samples_[index(x, y)]; }

  // Edge-clamped read; coordinates outside the plane return the nearest
  // border sample.
  std::uint8_t clamped(int x, int y) const;

  std::span<const std::uint8_t> row(int y) const {
    return {samples_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }
  std::span<std::uint8_t> row(int y) {
    return {samples_.data() + static_cast<std::size_t>(y) * width_,
            static_cast<std::size_t>(width_)};
  }

  std::span<const std::uint8_t> samples() const { return samples_; }
  std::span<std::uint8_t> samples() { return samples_; }

  bool operator==(const Plane&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> samples_;
};

// Planar 4:2:0 frame. Chroma planes are exactly half the luma size in each
// direction; luma dimensions are even and at least kMinFrameSize.
class Frame {
 public:
  static constexpr int kMinFrameSize = 64;

  Frame() = default;
  Frame(int width, int height, int index = 0);
  Frame(Plane y, Plane u, Plane v, int index = 0);

  int width() const { return y_.width(); }
  int height() const { return y_.height(); }
  int index() const { return index_; }
  void set_index(int index) { index_ = index; }

  const Plane& y() const { return y_; }
  const Plane& u() const { return u_; }
  const Plane& v() const { return v_; }
  Plane& y() { return y_; }
  Plane& u() { return u_; }
  Plane& v() { return v_; }

  // Plane 0 is luma, 1 and 2 are chroma.
  const Plane& plane(int p) const { return p == 0 ? y_ : (p == 1 ? u_ : v_); }
  Plane& plane(int p) { return p == 0 ? y_ : (p == 1 ? u_ : v_); }

  // Compares pixel data only; the display index is metadata.
  bool same_pixels(const Frame& other) const {
    return y_ == other.y_ && u_ == other.u_ && v_ == other.v_;
  }

 private:
  Plane y_;
  Plane u_;
  Plane v_;
  int index_ = 0;
};

// Interleaved 8-bit RGB image. Unlike Frame it carries no size floor so that
// the classifier can be run on single 32x32 patches.
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  // c: 0 = R, 1 = G, 2 = B.
  std::uint8_t at(int x, int y, int c) const {
    return samples_[(static_cast<std::size_t>(y) * width_ + x) * 3 + c];
  }
  std::uint8_t& at(int x, int y, int c) {
    return samples_[(static_cast<std::size_t>(y) * width_ + x) * 3 + c];
  }

  std::span<const std::uint8_t> samples() const { return samples_; }
  std::span<std::uint8_t> samples() { return samples_; }

  // Copy of the w x h region at (x, y); the region must lie inside.
  RgbImage crop(int x, int y, int w, int h) const;

  bool operator==(const RgbImage&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> samples_;
};

}  // namespace texlab

#endif  // TEXLAB_FRAME_H_
