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

#include "texlab/block_grid.h"

#include <algorithm>
#include <string>

#include "texlab/errors.h"

namespace texlab {

BlockGrid::BlockGrid(int frame_width, int frame_height)
    : frame_width_(frame_width),
      frame_height_(frame_height),
      cols_(std::max(frame_width, 0) / kBlockSize),
      rows_(std::max(frame_height, 0) / kBlockSize) {}

Rect BlockGrid::block_rect(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) {
    throw IndexError("block (" + std::to_string(r) + ", " + std::to_string(c) +
                     ") outside " + std::to_string(rows_) + "x" +
                     std::to_string(cols_) + " grid");
  }
  return {c * kBlockSize, r * kBlockSize, kBlockSize, kBlockSize};
}

TextureMask::TextureMask(BlockGrid grid, int frame_index)
    : grid_(grid),
      labels_(static_cast<std::size_t>(grid.count()), kNonTexture),
      frame_index_(frame_index) {}

std::size_t TextureMask::index(int r, int c) const {
  if (r < 0 || r >= grid_.rows() || c < 0 || c >= grid_.cols()) {
    throw IndexError("mask block (" + std::to_string(r) + ", " +
                     std::to_string(c) + ") outside grid");
  }
  return static_cast<std::size_t>(r) * grid_.cols() + c;
}

bool TextureMask::is_texture_pixel(int x, int y) const {
  if (x < 0 || y < 0) return false;
  const int c = x / BlockGrid::kBlockSize;
  const int r = y / BlockGrid::kBlockSize;
  if (r >= grid_.rows() || c >= grid_.cols()) return false;
  return labels_[static_cast<std::size_t>(r) * grid_.cols() + c] != kNonTexture;
}

int TextureMask::texture_block_count() const {
  return static_cast<int>(std::count_if(
      labels_.begin(), labels_.end(),
      [](std::int16_t l) { return l != kNonTexture; }));
}

}  // namespace texlab
