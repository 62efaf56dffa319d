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

#ifndef TEXLAB_BLOCK_GRID_H_
#define TEXLAB_BLOCK_GRID_H_

#include <cstdint>
#include <vector>

namespace texlab {

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  bool contains(int px, int py) const {
    return px >= x && px < x + w && py >= y && py < y + h;
  }
  bool operator==(const Rect&) const = default;
};

// Tiling of a frame into 32x32 classification blocks. Pixels in the right and
// bottom remainder strips (when the frame size is not a multiple of 32)
// belong to no block.
class BlockGrid {
 public:
  static constexpr int kBlockSize = 32;

  BlockGrid() = default;
  BlockGrid(int frame_width, int frame_height);

  int cols() const { return cols_; }
  int rows() const { return rows_; }
  int count() const { return cols_ * rows_; }
  int frame_width() const { return frame_width_; }
  int frame_height() const { return frame_height_; }

  // Throws IndexError when (r, c) is outside the grid.
  Rect block_rect(int r, int c) const;

  // The gridded area, [0, cols*32) x [0, rows*32).
  Rect covered_rect() const { return {0, 0, cols_ * kBlockSize, rows_ * kBlockSize}; }

  bool operator==(const BlockGrid&) const = default;

 private:
  int frame_width_ = 0;
  int frame_height_ = 0;
  int cols_ = 0;
  int rows_ = 0;
};

inline Rect block_rect(const BlockGrid& grid, int r, int c) {
  return grid.block_rect(r, c);
}

// Per-block labels for one frame: kNonTexture or a texture cluster id >= 0.
class TextureMask {
 public:
  static constexpr std::int16_t kNonTexture = -1;

  TextureMask() = default;
  TextureMask(BlockGrid grid, int frame_index = 0);

  const BlockGrid& grid() const { return grid_; }
  int rows() const { return grid_.rows(); }
  int cols() const { return grid_.cols(); }
  int frame_index() const { return frame_index_; }
  void set_frame_index(int index) { frame_index_ = index; }

  std::int16_t label(int r, int c) const { return labels_[index(r, c)]; }
  void set_label(int r, int c, std::int16_t label) { labels_[index(r, c)] = label; }
  bool is_texture(int r, int c) const { return label(r, c) != kNonTexture; }

  // Pixel lookup; pixels in remainder strips or outside the frame are never
  // texture.
  bool is_texture_pixel(int x, int y) const;

  int texture_block_count() const;
  bool has_texture() const { return texture_block_count() > 0; }

  const std::vector<std::int16_t>& labels() const { return labels_; }

  // Labels and grid only; frame_index is metadata.
  bool same_labels(const TextureMask& other) const {
    return grid_ == other.grid_ && labels_ == other.labels_;
  }

 private:
  std::size_t index(int r, int c) const;

  BlockGrid grid_;
  std::vector<std::int16_t> labels_;
  int frame_index_ = 0;
};

}  // namespace texlab

#endif  // TEXLAB_BLOCK_GRID_H_
