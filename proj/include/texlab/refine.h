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

// Mask post-processing: texture clustering, three-frame temporal vote,
// 4-neighbour hole filling and small-component removal, applied per frame in
// that order.

#ifndef TEXLAB_REFINE_H_
#define TEXLAB_REFINE_H_

#include <array>
#include <span>
#include <vector>

#include "texlab/block_grid.h"
#include "texlab/frame.h"

namespace texlab {

using MaskSequence = std::vector<TextureMask>;

struct RefineParams {
  double split_tolerance = 1.0;  // tau_split, standardized feature units
  int max_clusters = 4;          // K_max
  int min_component_blocks = 5;
};

// Per-block clustering features: mean Y, mean U, mean V, Y variance.
using BlockFeatures = std::array<double, 4>;
BlockFeatures block_features(const Frame& frame, const Rect& rect);

// Lower bounds on the per-feature standard deviation used for
// standardization, so that a single homogeneous texture is not split on
// noise-level differences.
inline constexpr BlockFeatures kFeatureScaleFloor = {8.0, 8.0, 8.0, 64.0};

// Assigns texture blocks to clusters 0..K-1. Starts from K = 1 and splits the
// cluster with the largest within-cluster variance until every cluster's mean
// distance to its centroid is at most split_tolerance or K == max_clusters.
// Cluster ids are renumbered in raster order of first appearance. A mask
// with no texture is returned unchanged.
TextureMask adaptive_kmeans_cluster(const Frame& frame, const TextureMask& mask,
                                    const RefineParams& params = {});

// Majority vote over (previous, current, next). A block is texture iff it is
// texture in at least two masks; the cluster id comes from the current mask
// when it is texture there, otherwise from the previous mask, then the next.
// Throws InputError for mismatched grids.
TextureMask temporal_correct(const TextureMask& prev, const TextureMask& cur,
                             const TextureMask& next);

// One synchronous pass: a non-texture block with n in-grid 4-neighbours of
// which t are texture becomes texture when n > 0 and t >= ceil(3n/4). The new
// id is the most common neighbour id (smallest id on ties).
TextureMask spatial_correct(const TextureMask& mask);

// Relabels 4-connected texture components (cluster ids ignored) smaller than
// min_blocks as non-texture. Throws InputError when min_blocks < 1.
TextureMask remove_small_components(const TextureMask& mask, int min_blocks = 5);

// Full pipeline. The first and last frames vote with themselves in place of
// the missing neighbour. Throws InputError on length or grid mismatch.
MaskSequence refine_sequence(std::span<const Frame> frames,
                             std::span<const TextureMask> raw_masks,
                             const RefineParams& params = {});

}  // namespace texlab

#endif  // TEXLAB_REFINE_H_
