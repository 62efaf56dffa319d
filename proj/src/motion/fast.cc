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

#include <algorithm>
#include <array>
#include <climits>

#include "texlab/errors.h"
#include "texlab/motion.h"

namespace texlab {
namespace {

// Radius-3 Bresenham circle, clockwise from 12 o'clock.
constexpr std::array<std::array<int, 2>, 16> kCircle = {{
    {0, -3}, {1, -3}, {2, -2}, {3, -1}, {3, 0}, {3, 1}, {2, 2}, {1, 3},
    {0, 3}, {-1, 3}, {-2, 2}, {-3, 1}, {-3, 0}, {-3, -1}, {-2, -2}, {-1, -3},
}};
constexpr int kArc = 9;
constexpr int kBorder = 3;

// max over all 9-long arcs of the arc minimum of diff[].
int best_arc_min(const std::array<int, 16>& diff) {
  int best = INT_MIN;
  for (int start = 0; start < 16; ++start) {
    int m = INT_MAX;
    for (int k = 0; k < kArc; ++k) m = std::min(m, diff[(start + k) % 16]);
    best = std::max(best, m);
  }
  return best;
}

}  // namespace

int fast_corner_score(const Plane& luma, int x, int y) {
  if (x < kBorder || y < kBorder || x >= luma.width() - kBorder ||
      y >= luma.height() - kBorder) {
    return 0;
  }
  const int p = luma.at(x, y);
  std::array<int, 16> brighter{}, darker{};
  for (int k = 0; k < 16; ++k) {
    const int v = luma.at(x + kCircle[k][0], y + kCircle[k][1]);
    brighter[k] = v - p;
    darker[k] = p - v;
  }
  // The test "all > p + t" holds for every t below the arc minimum.
  const int score = std::max(best_arc_min(brighter), best_arc_min(darker)) - 1;
  return std::max(score, 0);
}

bool fast_segment_test(const Plane& luma, int x, int y, int threshold) {
  return fast_corner_score(luma, x, y) >= threshold;
}

std::vector<Keypoint> detect_fast(const Plane& luma, const TextureMask& region,
                                  int threshold) {
  if (threshold <= 0) throw InputError("FAST threshold must be positive");
  const int w = luma.width();
  const int h = luma.height();
  std::vector<Keypoint> out;
  if (!region.has_texture()) return out;

  // Scores on the texture area plus a one-pixel ring for suppression.
  std::vector<int> score(static_cast<std::size_t>(w) * h, 0);
  auto near_region = [&](int x, int y) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (region.is_texture_pixel(x + dx, y + dy)) return true;
      }
    }
    return false;
  };
  for (int y = kBorder; y < h - kBorder; ++y) {
    for (int x = kBorder; x < w - kBorder; ++x) {
      if (!near_region(x, y)) continue;
      const int s = fast_corner_score(luma, x, y);
      if (s >= threshold) score[static_cast<std::size_t>(y) * w + x] = s;
    }
  }
  for (int y = kBorder; y < h - kBorder; ++y) {
    for (int x = kBorder; x < w - kBorder; ++x) {
      const int s = score[static_cast<std::size_t>(y) * w + x];
      if (s == 0 || !region.is_texture_pixel(x, y)) continue;
      bool keep = true;
      for (int dy = -1; dy <= 1 && keep; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int n = score[static_cast<std::size_t>(y + dy) * w + x + dx];
          // Ties are broken in favour of the earlier pixel in raster order.
          const bool earlier = dy < 0 || (dy == 0 && dx < 0);
          if (n > s || (earlier && n == s)) {
            keep = false;
            break;
          }
        }
      }
      if (keep) out.push_back({x, y, s});
    }
  }
  return out;
}

}  // namespace texlab
