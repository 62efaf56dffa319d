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

#include "texlab/analyzer.h"

#include "texlab/errors.h"
#include "texlab/parallel.h"

namespace texlab {

std::vector<float> score_blocks(const RgbImage& image, const CnnWeights& weights) {
  if (image.width() < kPatchSize || image.height() < kPatchSize) {
    throw DimensionError("segment_frame needs at least one 32x32 block");
  }
  validate_weights(weights);
  const BlockGrid grid(image.width(), image.height());
  std::vector<float> scores(static_cast<std::size_t>(grid.count()));
  parallel_for(grid.count(), [&](int i) {
    const Rect rect = grid.block_rect(i / grid.cols(), i % grid.cols());
    scores[i] = cnn_probability(image.crop(rect.x, rect.y, rect.w, rect.h), weights);
  });
  return scores;
}

TextureMask mask_from_scores(const BlockGrid& grid, const std::vector<float>& scores,
                             double threshold, int frame_index) {
  if (scores.size() != static_cast<std::size_t>(grid.count())) {
    throw ShapeError("score count does not match the block grid");
  }
  TextureMask mask(grid, frame_index);
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      if (scores[static_cast<std::size_t>(r) * grid.cols() + c] >= threshold) {
        mask.set_label(r, c, 0);
      }
    }
  }
  return mask;
}

TextureMask segment_frame(const RgbImage& image, const CnnWeights& weights,
                          double threshold, int frame_index) {
  return mask_from_scores(BlockGrid(image.width(), image.height()),
                          score_blocks(image, weights), threshold, frame_index);
}

}  // namespace texlab
