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

// Leaf prediction, residual reconstruction and leaf syntax shared by the
// encoder and the decoder. Anything that affects reconstructed pixels lives
// here so the two sides cannot drift apart.

#ifndef TEXLAB_SRC_CODEC_BLOCK_CODING_H_
#define TEXLAB_SRC_CODEC_BLOCK_CODING_H_

#include <algorithm>
#include <array>
#include <span>
#include <vector>

#include "src/codec/syntax.h"
#include "texlab/codec.h"
#include "texlab/frame.h"
#include "texlab/prediction.h"

namespace texlab::detail {

int padded_size(int n);
Frame pad_frame(const Frame& frame);
// Overwrites everything right of / below the visible area with the nearest
// visible sample.
void repad(Frame& frame, int visible_width, int visible_height);
Frame crop_frame(const Frame& padded, int width, int height, int index);

struct PlaneRect {
  Rect rect;
  int tx = 8;  // transform size
};
// Luma rect and its two chroma footprints. Chroma uses 4x4 transforms when
// the chroma block is smaller than 8x8.
std::array<PlaneRect, 3> leaf_planes(const Rect& luma);

struct LeafSyntax {
  LeafMode mode = LeafMode::kIntraDc;
  int ref_slot = 0;
  int mv_x = 0;  // half-pel
  int mv_y = 0;
  // Per plane: levels for each transform block in raster order, each block
  // row-major.
  std::array<std::vector<int>, 3> levels;
};

std::array<PixelBlock, 3> predict_leaf(const LeafSyntax& leaf, const Rect& luma,
                                       const Frame& recon, std::span<const Frame* const> refs);

std::vector<int> residual_levels(const Plane& source, const PlaneRect& pr, const PixelBlock& pred,
                                 double step);
PixelBlock reconstruct_plane(const PixelBlock& pred, const PlaneRect& pr,
                             std::span<const int> levels, double step);

void store_block(Plane& dst, const Rect& rect, const PixelBlock& pixels);
// Sum of squared differences restricted to x < visible_w, y < visible_h.
double sse_visible(const Plane& source, const Rect& rect, const PixelBlock& pixels,
                   int visible_w, int visible_h);

template <class W>
void set_bucket(W& w, syntax::TallyingEncoder::Bucket b) {
  if constexpr (requires { w.set_bucket(b); }) w.set_bucket(b);
}

template <class W>
void write_leaf(W& w, syntax::CodingState& st, const LeafSyntax& leaf, int n_refs,
                const Rect& luma) {
  set_bucket(w, syntax::TallyingEncoder::kMode);
  const bool inter = leaf.mode == LeafMode::kInter;
  if (n_refs > 0) w.encode(st.ctx.is_inter, inter ? 1 : 0);
  if (inter) {
    if (n_refs > 1) w.encode(st.ctx.ref_idx, leaf.ref_slot);
    auto& pred = st.last_mv[leaf.ref_slot];
    syntax::write_mv_component(w, st.ctx, 0, leaf.mv_x - pred[0]);
    syntax::write_mv_component(w, st.ctx, 1, leaf.mv_y - pred[1]);
    pred = {leaf.mv_x, leaf.mv_y};
  } else {
    w.encode(st.ctx.planar, leaf.mode == LeafMode::kIntraPlanar ? 1 : 0);
  }
  set_bucket(w, syntax::TallyingEncoder::kCoeffConventional);
  const auto planes = leaf_planes(luma);
  for (int p = 0; p < 3; ++p) {
    const int n = planes[p].tx;
    const std::size_t block = static_cast<std::size_t>(n) * n;
    const std::span<const int> all(leaf.levels[p]);
    for (std::size_t off = 0; off < all.size(); off += block) {
      syntax::write_coeffs(w, st.ctx, p > 0 ? 1 : 0, n, all.subspan(off, block));
    }
  }
}

template <class R>
LeafSyntax read_leaf(R& r, syntax::CodingState& st, int n_refs, const Rect& luma) {
  LeafSyntax leaf;
  set_bucket(r, syntax::TallyingEncoder::kMode);
  const bool inter = n_refs > 0 && r.decode(st.ctx.is_inter) == 1;
  if (inter) {
    leaf.mode = LeafMode::kInter;
    leaf.ref_slot = n_refs > 1 ? r.decode(st.ctx.ref_idx) : 0;
    auto& pred = st.last_mv[leaf.ref_slot];
    // Bounded so that corrupted payloads cannot overflow the accumulation.
    constexpr int kMvLimit = 1 << 20;
    leaf.mv_x = std::clamp(pred[0] + syntax::read_mv_component(r, st.ctx, 0), -kMvLimit, kMvLimit);
    leaf.mv_y = std::clamp(pred[1] + syntax::read_mv_component(r, st.ctx, 1), -kMvLimit, kMvLimit);
    pred = {leaf.mv_x, leaf.mv_y};
  } else {
    leaf.mode = r.decode(st.ctx.planar) == 1 ? LeafMode::kIntraPlanar : LeafMode::kIntraDc;
  }
  set_bucket(r, syntax::TallyingEncoder::kCoeffConventional);
  const auto planes = leaf_planes(luma);
  for (int p = 0; p < 3; ++p) {
    const int n = planes[p].tx;
    const std::size_t block = static_cast<std::size_t>(n) * n;
    leaf.levels[p].assign(static_cast<std::size_t>(planes[p].rect.w) * planes[p].rect.h, 0);
    const std::span<int> all(leaf.levels[p]);
    for (std::size_t off = 0; off < all.size(); off += block) {
      syntax::read_coeffs(r, st.ctx, p > 0 ? 1 : 0, n, all.subspan(off, block));
    }
  }
  return leaf;
}

}  // namespace texlab::detail

#endif  // TEXLAB_SRC_CODEC_BLOCK_CODING_H_
