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

#include "texlab/gf_plan.h"

#include <algorithm>
#include <map>

#include "texlab/errors.h"

namespace texlab {

std::string config_name(CodecConfig config) {
  switch (config) {
    case CodecConfig::kBaseline: return "baseline";
    case CodecConfig::kTexAll: return "tex-all";
    case CodecConfig::kTexSp: return "tex-sp";
    case CodecConfig::kTexCp: return "tex-cp";
  }
  return "unknown";
}

CodecConfig parse_config(const std::string& name) {
  for (CodecConfig c : {CodecConfig::kBaseline, CodecConfig::kTexAll, CodecConfig::kTexSp,
                        CodecConfig::kTexCp}) {
    if (config_name(c) == name) return c;
  }
  throw InputError("unknown codec config '" + name + "'");
}

std::string frame_kind_name(FrameKind kind) {
  switch (kind) {
    case FrameKind::kGolden: return "GOLDEN";
    case FrameKind::kAltref: return "ALTREF";
    case FrameKind::kInter: return "INTER";
  }
  return "UNKNOWN";
}

std::optional<int> PlanEntry::forward_ref() const {
  for (int r : refs) {
    if (r < display_index) return r;
  }
  return std::nullopt;
}

std::optional<int> PlanEntry::backward_ref() const {
  for (int r : refs) {
    if (r > display_index) return r;
  }
  return std::nullopt;
}

namespace {

// Coding-order builder shared by both structures.
class GroupBuilder {
 public:
  GroupBuilder(int start, int interval, int& next_coding_order)
      : start_(start), interval_(interval), next_(next_coding_order) {}

  PlanEntry& add(int display, FrameKind kind, int layer, std::vector<int> refs) {
    PlanEntry e;
    e.display_index = display;
    e.coding_order = next_++;
    e.kind = kind;
    e.layer = layer;
    e.refs = std::move(refs);
    entries_[display] = e;
    return entries_[display];
  }

  void add_existing(const PlanEntry& e) { entries_[e.display_index] = e; }

  GfGroupPlan finish() {
    GfGroupPlan g;
    g.start = start_;
    g.interval = interval_;
    for (auto& [d, e] : entries_) g.entries.push_back(e);
    return g;
  }

 private:
  int start_;
  int interval_;
  int& next_;
  std::map<int, PlanEntry> entries_;
};

// Even offsets by recursive bisection between coded anchors, then odd
// offsets as the leaf layer.
void build_pyramid(GroupBuilder& b, int start, int end, CodecConfig config) {
  int leaf_layer = 1;
  std::vector<std::pair<int, int>> level{{start, end}};
  std::vector<int> depth_of_even;
  int depth = 1;
  while (!level.empty()) {
    std::vector<std::pair<int, int>> next;
    for (auto [lo, hi] : level) {
      const int mid = lo + std::max(2, 2 * ((hi - lo) / 4));
      if (mid >= hi) continue;
      b.add(mid, FrameKind::kInter, depth, {lo, hi});
      leaf_layer = std::max(leaf_layer, depth + 1);
      next.emplace_back(lo, mid);
      next.emplace_back(mid, hi);
    }
    level = std::move(next);
    ++depth;
  }
  for (int d = start + 1; d < end; d += 2) {
    PlanEntry& e = b.add(d, FrameKind::kInter, leaf_layer, {d - 1, d + 1});
    if (config == CodecConfig::kTexSp) {
      e.texture_enabled = true;
      e.texture_refs = {d - 1};
    } else if (config == CodecConfig::kTexCp) {
      e.texture_enabled = true;
      e.texture_refs = {d - 1, d + 1};
    }
  }
}

void build_single_layer(GroupBuilder& b, int start, int end) {
  for (int d = start + 1; d < end; ++d) {
    PlanEntry& e = b.add(d, FrameKind::kInter, 1, {d - 1, end});
    e.texture_enabled = true;
    e.texture_refs = {d - 1};
  }
}

}  // namespace

std::vector<GfGroupPlan> plan_gf_groups(int n_frames, CodecConfig config,
                                        int tex_all_interval) {
  if (n_frames < 2) throw InputError("need at least 2 frames to plan GF groups");
  int interval = kPyramidInterval;
  if (config == CodecConfig::kTexAll) {
    if (tex_all_interval < 4 || tex_all_interval > 16) {
      throw InputError("tex-all GF interval must be in [4, 16]");
    }
    interval = tex_all_interval;
  }
  std::vector<GfGroupPlan> groups;
  int next_coding_order = 0;
  std::optional<PlanEntry> previous_altref;
  for (int start = 0; start < n_frames - 1; start += interval) {
    const int end = std::min(start + interval, n_frames - 1);
    GroupBuilder b(start, end - start, next_coding_order);
    if (previous_altref) {
      PlanEntry golden = *previous_altref;
      golden.kind = FrameKind::kGolden;
      b.add_existing(golden);
    } else {
      b.add(start, FrameKind::kGolden, 0, {});
    }
    PlanEntry& alt = b.add(end, FrameKind::kAltref, 0, {start});
    previous_altref = alt;
    if (config == CodecConfig::kTexAll) {
      build_single_layer(b, start, end);
    } else {
      build_pyramid(b, start, end, config);
    }
    groups.push_back(b.finish());
  }
  return groups;
}

std::vector<PlanEntry> coding_sequence(const std::vector<GfGroupPlan>& groups) {
  std::map<int, PlanEntry> by_order;
  for (const auto& g : groups) {
    for (const auto& e : g.entries) by_order.emplace(e.coding_order, e);
  }
  std::vector<PlanEntry> out;
  out.reserve(by_order.size());
  for (auto& [order, e] : by_order) out.push_back(e);
  return out;
}

}  // namespace texlab
