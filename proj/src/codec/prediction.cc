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

#include "texlab/prediction.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "texlab/errors.h"

namespace texlab {
namespace {

constexpr int kWarpPrecisionBits = 6;
constexpr int kWarpOne = 1 << kWarpPrecisionBits;
// Keeps fixed-point positions finite for corrupted or extreme models.
constexpr double kPositionLimit = 1 << 20;

std::int64_t to_fixed(double v) {
  if (!std::isfinite(v)) return 0;
  v = std::clamp(v, -kPositionLimit, kPositionLimit);
  return std::llround(v * kWarpOne);
}

std::uint8_t bilinear(const Plane& p, std::int64_t fx_pos, std::int64_t fy_pos, int bits) {
  const int one = 1 << bits;
  const auto ix = static_cast<int>(fx_pos >> bits);
  const auto iy = static_cast<int>(fy_pos >> bits);
  const int fx = static_cast<int>(fx_pos & (one - 1));
  const int fy = static_cast<int>(fy_pos & (one - 1));
  const int a = p.clamped(ix, iy);
  if (fx == 0 && fy == 0) return static_cast<std::uint8_t>(a);
  const int b = p.clamped(ix + 1, iy);
  const int c = p.clamped(ix, iy + 1);
  const int d = p.clamped(ix + 1, iy + 1);
  const int sum = a * (one - fx) * (one - fy) + b * fx * (one - fy) + c * (one - fx) * fy +
                  d * fx * fy;
  return static_cast<std::uint8_t>((sum + (1 << (2 * bits - 1))) >> (2 * bits));
}

}  // namespace

std::uint8_t sample_sixteenth(const Plane& plane, int x16, int y16) {
  return bilinear(plane, x16, y16, 4);
}

PixelBlock predict_translational(const Plane& ref, const Rect& rect, int dx16, int dy16) {
  PixelBlock out(static_cast<std::size_t>(rect.w) * rect.h);
  const int fx = dx16 & 15;
  const int fy = dy16 & 15;
  const int ix = dx16 >> 4;
  const int iy = dy16 >> 4;
  const bool inside = rect.x + ix >= 0 && rect.y + iy >= 0 &&
                      rect.right() + ix + 1 <= ref.width() &&
                      rect.bottom() + iy + 1 <= ref.height();
  std::size_t i = 0;
  if (inside && fx == 0 && fy == 0) {
    for (int y = 0; y < rect.h; ++y) {
      const auto row = ref.row(rect.y + y + iy);
      std::copy_n(row.data() + rect.x + ix, rect.w, out.data() + i);
      i += rect.w;
    }
    return out;
  }
  for (int y = 0; y < rect.h; ++y) {
    for (int x = 0; x < rect.w; ++x) {
      out[i++] = sample_sixteenth(ref, (rect.x + x) * 16 + dx16, (rect.y + y) * 16 + dy16);
    }
  }
  return out;
}

PixelBlock predict_intra(const Plane& recon, const Rect& rect, IntraMode mode) {
  const int n_w = rect.w;
  const int n_h = rect.h;
  const bool has_top = rect.y > 0;
  const bool has_left = rect.x > 0;
  std::vector<int> top(n_w, 128), left(n_h, 128);
  if (has_top) {
    for (int x = 0; x < n_w; ++x) top[x] = recon.at(rect.x + x, rect.y - 1);
  }
  if (has_left) {
    for (int y = 0; y < n_h; ++y) left[y] = recon.at(rect.x - 1, rect.y + y);
  }
  PixelBlock out(static_cast<std::size_t>(n_w) * n_h);
  if (mode == IntraMode::kDc) {
    int sum = 0, count = 0;
    if (has_top) {
      for (int v : top) sum += v;
      count += n_w;
    }
    if (has_left) {
      for (int v : left) sum += v;
      count += n_h;
    }
    const int dc = count ? (sum + count / 2) / count : 128;
    std::fill(out.begin(), out.end(), static_cast<std::uint8_t>(dc));
    return out;
  }
  // Planar: blend of horizontal and vertical linear interpolations using the
  // last top sample as the right edge and the last left sample as the bottom.
  if (n_w != n_h || !std::has_single_bit(static_cast<unsigned>(n_w))) {
    throw ShapeError("planar prediction needs a square power-of-two block");
  }
  const int shift = std::countr_zero(static_cast<unsigned>(n_w)) + 1;
  const int top_right = top[n_w - 1];
  const int bottom_left = left[n_h - 1];
  for (int y = 0; y < n_h; ++y) {
    for (int x = 0; x < n_w; ++x) {
      const int horizontal = (n_w - 1 - x) * left[y] + (x + 1) * top_right;
      const int vertical = (n_h - 1 - y) * top[x] + (y + 1) * bottom_left;
      out[static_cast<std::size_t>(y) * n_w + x] =
          static_cast<std::uint8_t>((horizontal + vertical + n_w) >> shift);
    }
  }
  return out;
}

PixelBlock warp_plane_block(const Plane& ref, const AffineModel& model, const Rect& rect,
                            bool chroma) {
  PixelBlock out(static_cast<std::size_t>(rect.w) * rect.h);
  std::size_t i = 0;
  for (int y = rect.y; y < rect.bottom(); ++y) {
    for (int x = rect.x; x < rect.right(); ++x) {
      double sx, sy;
      if (chroma) {
        const double lx = 2.0 * x + 0.5;
        const double ly = 2.0 * y + 0.5;
        sx = (model.map_x(lx, ly) - 0.5) / 2.0;
        sy = (model.map_y(lx, ly) - 0.5) / 2.0;
      } else {
        sx = model.map_x(x, y);
        sy = model.map_y(x, y);
      }
      out[i++] = bilinear(ref, to_fixed(sx), to_fixed(sy), kWarpPrecisionBits);
    }
  }
  return out;
}

WarpedBlock warp_block(const Frame& ref_recon, const AffineModel& model, const Rect& rect) {
  if (rect.x % 2 || rect.y % 2 || rect.w % 2 || rect.h % 2 || rect.w <= 0 || rect.h <= 0) {
    throw ShapeError("warp_block needs an even-aligned luma rect");
  }
  WarpedBlock out;
  out.luma_rect = rect;
  out.y = warp_plane_block(ref_recon.y(), model, rect, false);
  const Rect c{rect.x / 2, rect.y / 2, rect.w / 2, rect.h / 2};
  out.u = warp_plane_block(ref_recon.u(), model, c, true);
  out.v = warp_plane_block(ref_recon.v(), model, c, true);
  return out;
}

PixelBlock average_predictions(const PixelBlock& a, const PixelBlock& b) {
  if (a.size() != b.size()) throw ShapeError("prediction sizes differ");
  PixelBlock out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = static_cast<std::uint8_t>((a[i] + b[i] + 1) >> 1);
  }
  return out;
}

}  // namespace texlab
