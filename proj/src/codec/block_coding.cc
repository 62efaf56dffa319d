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

#include "src/codec/block_coding.h"

#include <algorithm>
#include <cmath>

#include "texlab/transform.h"

namespace texlab::detail {

int padded_size(int n) { return (n + kSuperblockSize - 1) / kSuperblockSize * kSuperblockSize; }

Frame pad_frame(const Frame& frame) {
  Frame out(padded_size(frame.width()), padded_size(frame.height()), frame.index());
  for (int p = 0; p < 3; ++p) {
    const Plane& src = frame.plane(p);
    Plane& dst = out.plane(p);
    for (int y = 0; y < dst.height(); ++y) {
      for (int x = 0; x < dst.width(); ++x) dst.at(x, y) = src.clamped(x, y);
    }
  }
  return out;
}

void repad(Frame& frame, int visible_width, int visible_height) {
  for (int p = 0; p < 3; ++p) {
    Plane& pl = frame.plane(p);
    const int vw = p == 0 ? visible_width : visible_width / 2;
    const int vh = p == 0 ? visible_height : visible_height / 2;
    for (int y = 0; y < pl.height(); ++y) {
      const int sy = std::min(y, vh - 1);
      for (int x = (y < vh ? vw : 0); x < pl.width(); ++x) {
        pl.at(x, y) = pl.at(std::min(x, vw - 1), sy);
      }
    }
  }
}

Frame crop_frame(const Frame& padded, int width, int height, int index) {
  Frame out(width, height, index);
  for (int p = 0; p < 3; ++p) {
    const Plane& src = padded.plane(p);
    Plane& dst = out.plane(p);
    for (int y = 0; y < dst.height(); ++y) {
      std::copy_n(src.row(y).data(), dst.width(), dst.row(y).data());
    }
  }
  return out;
}

std::array<PlaneRect, 3> leaf_planes(const Rect& luma) {
  const Rect c{luma.x / 2, luma.y / 2, luma.w / 2, luma.h / 2};
  const int ctx = c.w >= 8 ? 8 : 4;
  return {PlaneRect{luma, 8}, PlaneRect{c, ctx}, PlaneRect{c, ctx}};
}

std::array<PixelBlock, 3> predict_leaf(const LeafSyntax& leaf, const Rect& luma,
                                       const Frame& recon, std::span<const Frame* const> refs) {
  const auto planes = leaf_planes(luma);
  std::array<PixelBlock, 3> out;
  for (int p = 0; p < 3; ++p) {
    const Rect& r = planes[p].rect;
    switch (leaf.mode) {
      case LeafMode::kInter: {
        const int scale = p == 0 ? 8 : 4;
        const Frame& ref = *refs[static_cast<std::size_t>(leaf.ref_slot)];
        out[p] = predict_translational(ref.plane(p), r, leaf.mv_x * scale, leaf.mv_y * scale);
        break;
      }
      case LeafMode::kIntraPlanar:
        out[p] = predict_intra(recon.plane(p), r, IntraMode::kPlanar);
        break;
      default:
        out[p] = predict_intra(recon.plane(p), r, IntraMode::kDc);
        break;
    }
  }
  return out;
}

std::vector<int> residual_levels(const Plane& source, const PlaneRect& pr, const PixelBlock& pred,
                                 double step) {
  const int n = pr.tx;
  const Rect& r = pr.rect;
  std::vector<int> levels;
  levels.reserve(static_cast<std::size_t>(r.w) * r.h);
  std::vector<double> block(static_cast<std::size_t>(n) * n);
  for (int by = 0; by < r.h; by += n) {
    for (int bx = 0; bx < r.w; bx += n) {
      for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
          const int s = source.at(r.x + bx + x, r.y + by + y);
          const int p = pred[static_cast<std::size_t>(by + y) * r.w + bx + x];
          block[static_cast<std::size_t>(y) * n + x] = s - p;
        }
      }
      const auto q = quantize(forward_dct(block, n), step);
      levels.insert(levels.end(), q.begin(), q.end());
    }
  }
  return levels;
}

PixelBlock reconstruct_plane(const PixelBlock& pred, const PlaneRect& pr,
                             std::span<const int> levels, double step) {
  const int n = pr.tx;
  const Rect& r = pr.rect;
  PixelBlock out = pred;
  const std::size_t block = static_cast<std::size_t>(n) * n;
  std::size_t off = 0;
  for (int by = 0; by < r.h; by += n) {
    for (int bx = 0; bx < r.w; bx += n, off += block) {
      const auto lv = levels.subspan(off, block);
      if (std::all_of(lv.begin(), lv.end(), [](int v) { return v == 0; })) continue;
      const auto res = inverse_dct(dequantize(lv, step), n);
      for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
          const std::size_t i = static_cast<std::size_t>(by + y) * r.w + bx + x;
          const double v = std::round(pred[i] + res[static_cast<std::size_t>(y) * n + x]);
          out[i] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
        }
      }
    }
  }
  return out;
}

void store_block(Plane& dst, const Rect& rect, const PixelBlock& pixels) {
  for (int y = 0; y < rect.h; ++y) {
    std::copy_n(pixels.data() + static_cast<std::size_t>(y) * rect.w, rect.w,
                dst.row(rect.y + y).data() + rect.x);
  }
}

double sse_visible(const Plane& source, const Rect& rect, const PixelBlock& pixels,
                   int visible_w, int visible_h) {
  const int w = std::min(rect.w, visible_w - rect.x);
  const int h = std::min(rect.h, visible_h - rect.y);
  std::int64_t sum = 0;
  for (int y = 0; y < h; ++y) {
    const auto row = source.row(rect.y + y);
    for (int x = 0; x < w; ++x) {
      const int d = row[rect.x + x] - pixels[static_cast<std::size_t>(y) * rect.w + x];
      sum += d * d;
    }
  }
  return static_cast<double>(sum);
}

}  // namespace texlab::detail
