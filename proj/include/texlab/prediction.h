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

// Block predictors shared by the encoder and decoder: translational motion
// compensation, DC/planar intra, and the affine texture warp. All arithmetic
// is integer after the sample position is fixed, so both sides produce
// identical pixels.

#ifndef TEXLAB_PREDICTION_H_
#define TEXLAB_PREDICTION_H_

#include <cstdint>
#include <vector>

#include "texlab/block_grid.h"
#include "texlab/frame.h"
#include "texlab/motion.h"

namespace texlab {

using PixelBlock = std::vector<std::uint8_t>;  // row-major, rect.w x rect.h

// Bilinear sample at (x16 / 16, y16 / 16) with edge clamping.
std::uint8_t sample_sixteenth(const Plane& plane, int x16, int y16);

// Translational prediction of `rect` displaced by (dx16, dy16) sixteenths.
PixelBlock predict_translational(const Plane& ref, const Rect& rect, int dx16, int dy16);

enum class IntraMode { kDc = 0, kPlanar = 1 };

// Uses the reconstructed row above and column left of rect when they exist
// (y > 0, x > 0); missing neighbours read as 128.
PixelBlock predict_intra(const Plane& recon, const Rect& rect, IntraMode mode);

// Affine warp of `rect` in plane coordinates. Luma pixels sample the
// reference at model(x, y); chroma pixels map their luma-grid centre
// (2x + 0.5, 2y + 0.5) and convert back at half resolution. Positions are
// rounded to 1/64 pel and interpolated bilinearly with edge clamping.
PixelBlock warp_plane_block(const Plane& ref, const AffineModel& model, const Rect& rect,
                            bool chroma);

struct WarpedBlock {
  Rect luma_rect;
  PixelBlock y;
  PixelBlock u;
  PixelBlock v;
};

// Warps a luma-aligned rect (even offsets and sizes) and its chroma
// footprint from the reference reconstruction.
WarpedBlock warp_block(const Frame& ref_recon, const AffineModel& model, const Rect& rect);

// Per-sample (a + b + 1) >> 1: the mean with halves rounded up, which for
// non-negative values is rounding half away from zero.
PixelBlock average_predictions(const PixelBlock& a, const PixelBlock& b);

}  // namespace texlab

#endif  // TEXLAB_PREDICTION_H_
