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

#ifndef TEXLAB_GF_PLAN_H_
#define TEXLAB_GF_PLAN_H_

#include <optional>
#include <string>
#include <vector>

namespace texlab {

enum class CodecConfig { kBaseline, kTexAll, kTexSp, kTexCp };

std::string config_name(CodecConfig config);
// Accepts "baseline", "tex-all", "tex-sp", "tex-cp"; throws InputError.
CodecConfig parse_config(const std::string& name);

enum class FrameKind { kGolden, kAltref, kInter };

std::string frame_kind_name(FrameKind kind);

struct PlanEntry {
  int display_index = 0;
  int coding_order = 0;
  FrameKind kind = FrameKind::kInter;
  int layer = 0;  // 0 for anchors; leaves of the pyramid have the largest layer
  bool texture_enabled = false;
  // Conventional prediction references, forward (earlier) first. Empty for
  // the first frame, which is intra coded.
  std::vector<int> refs;
  // References used to warp texture blocks: the previous frame, plus the next
  // frame under tex-cp.
  std::vector<int> texture_refs;

  std::optional<int> forward_ref() const;
  std::optional<int> backward_ref() const;
};

// One GF group spanning display indices [start, start + interval]. The GOLDEN
// frame at `start` is the previous group's ALTREF (except in the first
// group) and is listed first; the ALTREF at start + interval is listed last.
struct GfGroupPlan {
  int start = 0;
  int interval = 0;
  std::vector<PlanEntry> entries;  // display order
};

inline constexpr int kPyramidInterval = 8;
inline constexpr int kDefaultTexAllInterval = 16;

// baseline, tex-sp and tex-cp share the 8-frame, four-layer pyramid; tex-all
// uses a single-layer structure with `tex_all_interval` (4..16). A trailing
// run shorter than the interval forms one truncated group. Throws InputError
// for n_frames < 2 or an out-of-range tex-all interval.
std::vector<GfGroupPlan> plan_gf_groups(int n_frames, CodecConfig config,
                                        int tex_all_interval = kDefaultTexAllInterval);

// Every frame exactly once, sorted by coding order.
std::vector<PlanEntry> coding_sequence(const std::vector<GfGroupPlan>& groups);

}  // namespace texlab

#endif  // TEXLAB_GF_PLAN_H_
