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

#ifndef TEXLAB_ANALYZER_H_
#define TEXLAB_ANALYZER_H_

#include <vector>

#include "texlab/block_grid.h"
#include "texlab/cnn.h"
#include "texlab/frame.h"

namespace texlab {

inline constexpr double kDefaultTextureThreshold = 0.5;

// Texture probability of every grid block, row-major. Blocks are scored
// independently and in parallel (see parallel_for).
std::vector<float> score_blocks(const RgbImage& image, const CnnWeights& weights);

// Labels each 32x32 block; texture blocks get cluster 0. Throws
// DimensionError for images smaller than one block.
TextureMask segment_frame(const RgbImage& image, const CnnWeights& weights,
                          double threshold = kDefaultTextureThreshold,
                          int frame_index = 0);

// Thresholds precomputed scores onto the image's grid.
TextureMask mask_from_scores(const BlockGrid& grid, const std::vector<float>& scores,
                             double threshold, int frame_index = 0);

}  // namespace texlab

#endif  // TEXLAB_ANALYZER_H_
