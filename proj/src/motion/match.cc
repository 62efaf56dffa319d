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
#include <climits>
#include <cstdlib>

#include "texlab/motion.h"

namespace texlab {
namespace {

std::vector<std::uint8_t> extract_patches(const Plane& luma,
                                          const std::vector<Keypoint>& kps, int radius) {
  const int side = 2 * radius + 1;
  std::vector<std::uint8_t> out(kps.size() * side * side);
  std::size_t i = 0;
  for (const auto& kp : kps) {
    for (int dy = -radius; dy <= radius; ++dy) {
      for (int dx = -radius; dx <= radius; ++dx) out[i++] = luma.clamped(kp.x + dx, kp.y + dy);
    }
  }
  return out;
}

int sad(const std::uint8_t* a, const std::uint8_t* b, int n) {
  int s = 0;
  for (int i = 0; i < n; ++i) s += std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i]));
  return s;
}

bool within(const Keypoint& a, const Keypoint& b, int max_distance) {
  const long dx = a.x - b.x;
  const long dy = a.y - b.y;
  return dx * dx + dy * dy <= static_cast<long>(max_distance) * max_distance;
}

struct Best {
  int index = -1;
  int cost = INT_MAX;
  int second = INT_MAX;
};

Best best_match(const std::uint8_t* query, const Keypoint& at,
                const std::vector<std::uint8_t>& patches,
                const std::vector<Keypoint>& candidates, int n, int max_distance) {
  Best best;
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    if (!within(at, candidates[j], max_distance)) continue;
    const int cost = sad(query, patches.data() + j * n, n);
    if (cost < best.cost) {
      best.second = best.cost;
      best.cost = cost;
      best.index = static_cast<int>(j);
    } else if (cost < best.second) {
      best.second = cost;
    }
  }
  return best;
}

}  // namespace

std::vector<Match> match_features(const Plane& cur_luma, const Plane& ref_luma,
                                  const std::vector<Keypoint>& kps_cur,
                                  const std::vector<Keypoint>& kps_ref,
                                  const MotionParams& params) {
  std::vector<Match> out;
  if (kps_cur.empty() || kps_ref.empty()) return out;
  const int side = 2 * params.patch_radius + 1;
  const int n = side * side;
  const auto cur_patches = extract_patches(cur_luma, kps_cur, params.patch_radius);
  const auto ref_patches = extract_patches(ref_luma, kps_ref, params.patch_radius);

  for (std::size_t i = 0; i < kps_cur.size(); ++i) {
    const Best fwd = best_match(cur_patches.data() + i * n, kps_cur[i], ref_patches, kps_ref,
                                n, params.max_search_distance);
    if (fwd.index < 0) continue;
    if (fwd.second != INT_MAX &&
        !(fwd.second > 0 && fwd.cost <= params.ratio * fwd.second)) {
      continue;
    }
    const Best back = best_match(ref_patches.data() + static_cast<std::size_t>(fwd.index) * n,
                                 kps_ref[fwd.index], cur_patches, kps_cur, n,
                                 params.max_search_distance);
    if (back.index != static_cast<int>(i)) continue;
    out.push_back({kps_cur[i], kps_ref[fwd.index], fwd.cost});
  }
  std::sort(out.begin(), out.end(), [](const Match& a, const Match& b) {
    return a.cur.y != b.cur.y ? a.cur.y < b.cur.y : a.cur.x < b.cur.x;
  });
  return out;
}

}  // namespace texlab
