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

#include "tests/support/synthetic.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "texlab/color.h"

namespace texlab::testing {
namespace {

struct Wave {
  double fx, fy, phase, amp;
};

std::vector<Wave> make_waves(std::mt19937_64& rng, int count, double fmin, double fmax) {
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> freq(fmin, fmax);
  std::vector<Wave> waves;
  for (int i = 0; i < count; ++i) {
    const double a = angle(rng);
    const double f = freq(rng);
    waves.push_back({f * std::cos(a), f * std::sin(a), angle(rng), 1.0});
  }
  return waves;
}

double eval(const std::vector<Wave>& waves, double x, double y) {
  double s = 0.0;
  for (const Wave& w : waves) {
    s += w.amp * std::cos(2 * std::numbers::pi * (w.fx * x + w.fy * y) + w.phase);
  }
  return s;
}

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

}  // namespace

Clip make_scene(const SceneParams& p) {
  std::mt19937_64 rng(p.seed);
  const auto texture = make_waves(rng, 48, 0.12, 0.45);
  const auto clouds = make_waves(rng, 6, 0.004, 0.02);
  const double norm = std::sqrt(48 / 2.0);
  std::normal_distribution<double> shimmer(0.0, 1.0);
  const double cx = p.width / 2.0;
  const double cy = p.height / 2.0;

  Clip clip;
  for (int t = 0; t < p.n_frames; ++t) {
    RgbImage img(p.width, p.height);
    const double scale = std::pow(p.zoom, t);
    const double ang = p.rotation * t;
    const double ca = std::cos(ang) / scale;
    const double sa = std::sin(ang) / scale;
    for (int y = 0; y < p.height; ++y) {
      for (int x = 0; x < p.width; ++x) {
        double r, g, b;
        if (y >= p.texture_top) {
          const double dx = x - cx;
          const double dy = y - cy;
          const double wx = ca * dx - sa * dy + cx + p.pan_x * t;
          const double wy = sa * dx + ca * dy + cy + p.pan_y * t;
          double v = p.texture_amplitude * eval(texture, wx, wy) / norm;
          if (p.shimmer > 0) v += p.shimmer * shimmer(rng);
          r = 78 + 0.55 * v;
          g = 118 + v;
          b = 52 + 0.4 * v;
        } else {
          const double wx = x + p.pan_x * t;
          const double wy = y + p.pan_y * t;
          const double c = 14.0 * eval(clouds, wx, wy) / std::sqrt(3.0);
          r = 120 + 0.35 * y + c;
          g = 160 + 0.25 * y + c;
          b = 215 - 0.1 * y + c;
        }
        img.at(x, y, 0) = to_byte(r);
        img.at(x, y, 1) = to_byte(g);
        img.at(x, y, 2) = to_byte(b);
      }
    }
    if (p.box_size > 0) {
      const int bx = static_cast<int>(std::lround(8 + p.box_vx * t));
      const int by = static_cast<int>(std::lround(8 + p.box_vy * t));
      for (int y = std::max(0, by); y < std::min(p.height, by + p.box_size); ++y) {
        for (int x = std::max(0, bx); x < std::min(p.width, bx + p.box_size); ++x) {
          img.at(x, y, 0) = 200;
          img.at(x, y, 1) = 40;
          img.at(x, y, 2) = 40;
        }
      }
    }
    clip.frames.push_back(rgb_to_yuv420(img, t));
    clip.rgb.push_back(std::move(img));
  }
  return clip;
}

SceneParams pan_fixture_params() { return SceneParams{}; }

SceneParams static_fixture_params() {
  SceneParams p;
  p.n_frames = 9;
  p.pan_x = 0.0;
  p.shimmer = 0.0;
  return p;
}

std::vector<SceneParams> mirror_clip_params() {
  SceneParams pan;
  pan.width = 128;
  pan.height = 96;
  pan.n_frames = 9;
  pan.texture_top = 32;
  pan.seed = 2;

  SceneParams affine;
  affine.width = 144;
  affine.height = 112;
  affine.n_frames = 17;
  affine.texture_top = 32;
  affine.pan_x = 0.4;
  affine.pan_y = 0.3;
  affine.zoom = 1.004;
  affine.rotation = 0.003;
  affine.box_size = 20;
  affine.box_vx = 2.0;
  affine.box_vy = 1.0;
  affine.seed = 3;

  SceneParams still;
  still.width = 96;
  still.height = 64;
  still.n_frames = 5;
  still.texture_top = 32;
  still.pan_x = 0.0;
  still.shimmer = 1.0;
  still.seed = 4;
  return {pan, affine, still};
}

TextureMask mask_from_rows(const BlockGrid& grid, int first_texture_row, int frame_index) {
  TextureMask m(grid, frame_index);
  for (int r = first_texture_row; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) m.set_label(r, c, 0);
  }
  return m;
}

RgbImage random_rgb(int width, int height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RgbImage img(width, height);
  for (auto& v : img.samples()) v = static_cast<std::uint8_t>(rng() & 0xFF);
  return img;
}

Plane random_plane(int width, int height, std::uint64_t seed, int lo, int hi) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(lo, hi);
  Plane p(width, height);
  for (auto& v : p.samples()) v = static_cast<std::uint8_t>(dist(rng));
  return p;
}

}  // namespace texlab::testing
