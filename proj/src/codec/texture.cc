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

#include <zlib.h>

#include <array>
#include <cmath>

#include "texlab/codec.h"
#include "texlab/errors.h"

namespace texlab {
namespace {

bool lands_in_texture(const TextureMask& mask, const AffineModel& m, int x, int y) {
  const double mx = m.map_x(x, y);
  const double my = m.map_y(x, y);
  if (!std::isfinite(mx) || !std::isfinite(my)) return false;
  if (std::abs(mx) > 1e9 || std::abs(my) > 1e9) return false;
  return mask.is_texture_pixel(static_cast<int>(std::floor(mx)),
                               static_cast<int>(std::floor(my)));
}

}  // namespace

std::string leaf_mode_name(LeafMode mode) {
  switch (mode) {
    case LeafMode::kTexture:
      return "texture";
    case LeafMode::kIntraDc:
      return "intra-dc";
    case LeafMode::kIntraPlanar:
      return "intra-planar";
    case LeafMode::kInter:
      return "inter";
  }
  return "unknown";
}

bool is_texture_block(const Rect& rect, const TextureMask& cur_mask, const PlanEntry& entry,
                      const std::map<int, TextureMask>& ref_masks,
                      const std::map<int, AffineModel>& models, bool strict) {
  constexpr int kB = BlockGrid::kBlockSize;
  if (rect.w < kB || rect.h < kB || rect.x % kB || rect.y % kB || rect.w % kB || rect.h % kB) {
    throw InputError("texture decision needs a 32-aligned rect of at least 32x32");
  }
  for (int y = rect.y; y < rect.bottom(); y += kB) {
    for (int x = rect.x; x < rect.right(); x += kB) {
      if (!cur_mask.is_texture_pixel(x, y)) return false;
    }
  }
  if (entry.texture_refs.empty()) return false;
  for (int ref : entry.texture_refs) {
    const auto mask_it = ref_masks.find(ref);
    const auto model_it = models.find(ref);
    if (mask_it == ref_masks.end() || model_it == models.end()) return false;
    const TextureMask& mask = mask_it->second;
    const AffineModel& m = model_it->second;
    if (strict) {
      for (int y = rect.y; y < rect.bottom(); ++y) {
        for (int x = rect.x; x < rect.right(); ++x) {
          if (!lands_in_texture(mask, m, x, y)) return false;
        }
      }
      continue;
    }
    const std::array<std::array<int, 2>, 5> probes = {{{rect.x, rect.y},
                                                       {rect.right() - 1, rect.y},
                                                       {rect.x, rect.bottom() - 1},
                                                       {rect.right() - 1, rect.bottom() - 1},
                                                       {rect.x + rect.w / 2, rect.y + rect.h / 2}}};
    for (const auto& [x, y] : probes) {
      if (!lands_in_texture(mask, m, x, y)) return false;
    }
  }
  return true;
}

WarpedBlock reconstruct_texture_block(const Rect& rect, std::span<const AffineModel> models,
                                      std::span<const Frame* const> ref_recons) {
  if (models.empty() || models.size() != ref_recons.size() || models.size() > 2) {
    throw InputError("texture reconstruction needs one or two references with models");
  }
  WarpedBlock out = warp_block(*ref_recons[0], models[0], rect);
  if (models.size() == 2) {
    const WarpedBlock second = warp_block(*ref_recons[1], models[1], rect);
    out.y = average_predictions(out.y, second.y);
    out.u = average_predictions(out.u, second.u);
    out.v = average_predictions(out.v, second.v);
  }
  return out;
}

std::uint32_t frame_crc(const Frame& frame) {
  uLong crc = crc32(0L, Z_NULL, 0);
  for (int p = 0; p < 3; ++p) {
    const auto s = frame.plane(p).samples();
    crc = crc32(crc, s.data(), static_cast<uInt>(s.size()));
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace texlab
