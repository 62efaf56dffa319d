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

#include "texlab/refine.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

#include "texlab/errors.h"

namespace texlab {
namespace {

double squared_distance(const BlockFeatures& a, const BlockFeatures& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d += (a[k] - b[k]) * (a[k] - b[k]);
  return d;
}

// Index of the nearest centroid; ties go to the lowest index.
int nearest(const BlockFeatures& p, const std::vector<BlockFeatures>& centroids) {
  int best = 0;
  double best_d = squared_distance(p, centroids[0]);
  for (int k = 1; k < static_cast<int>(centroids.size()); ++k) {
    const double d = squared_distance(p, centroids[k]);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

void lloyd(const std::vector<BlockFeatures>& points, std::vector<BlockFeatures>& centroids,
           std::vector<int>& assignment) {
  constexpr int kMaxIterations = 100;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const int k = nearest(points[i], centroids);
      if (k != assignment[i]) {
        assignment[i] = k;
        changed = true;
      }
    }
    std::vector<BlockFeatures> sums(centroids.size(), BlockFeatures{});
    std::vector<int> counts(centroids.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t f = 0; f < 4; ++f) sums[assignment[i]][f] += points[i][f];
      ++counts[assignment[i]];
    }
    for (std::size_t k = 0; k < centroids.size(); ++k) {
      if (counts[k] == 0) continue;
      for (std::size_t f = 0; f < 4; ++f) centroids[k][f] = sums[k][f] / counts[k];
    }
    if (!changed && iter > 0) break;
  }
  // Drop clusters that ended up empty and compact the ids.
  std::vector<int> remap(centroids.size(), -1);
  std::vector<BlockFeatures> kept;
  for (int a : assignment) {
    if (remap[a] < 0) {
      remap[a] = 0;
    }
  }
  for (std::size_t k = 0; k < centroids.size(); ++k) {
    if (remap[k] == 0) {
      remap[k] = static_cast<int>(kept.size());
      kept.push_back(centroids[k]);
    }
  }
  for (int& a : assignment) a = remap[a];
  centroids = std::move(kept);
}

void check_same_grid(const TextureMask& a, const TextureMask& b) {
  if (!(a.grid() == b.grid())) throw InputError("masks have different block grids");
}

}  // namespace

BlockFeatures block_features(const Frame& frame, const Rect& rect) {
  double sum_y = 0.0, sum_yy = 0.0;
  for (int y = rect.y; y < rect.bottom(); ++y) {
    for (int x = rect.x; x < rect.right(); ++x) {
      const double v = frame.y().at(x, y);
      sum_y += v;
      sum_yy += v * v;
    }
  }
  const double n = static_cast<double>(rect.w) * rect.h;
  double sum_u = 0.0, sum_v = 0.0;
  for (int y = rect.y / 2; y < rect.bottom() / 2; ++y) {
    for (int x = rect.x / 2; x < rect.right() / 2; ++x) {
      sum_u += frame.u().at(x, y);
      sum_v += frame.v().at(x, y);
    }
  }
  const double nc = n / 4.0;
  const double mean_y = sum_y / n;
  return {mean_y, sum_u / nc, sum_v / nc, std::max(0.0, sum_yy / n - mean_y * mean_y)};
}

TextureMask adaptive_kmeans_cluster(const Frame& frame, const TextureMask& mask,
                                    const RefineParams& params) {
  std::vector<std::pair<int, int>> blocks;
  for (int r = 0; r < mask.rows(); ++r) {
    for (int c = 0; c < mask.cols(); ++c) {
      if (mask.is_texture(r, c)) blocks.emplace_back(r, c);
    }
  }
  if (blocks.empty()) return mask;

  std::vector<BlockFeatures> points;
  points.reserve(blocks.size());
  for (auto [r, c] : blocks) {
    points.push_back(block_features(frame, mask.grid().block_rect(r, c)));
  }
  const double n = static_cast<double>(points.size());
  for (std::size_t f = 0; f < 4; ++f) {
    double mean = 0.0;
    for (const auto& p : points) mean += p[f];
    mean /= n;
    double var = 0.0;
    for (const auto& p : points) var += (p[f] - mean) * (p[f] - mean);
    const double scale = std::max(std::sqrt(var / n), kFeatureScaleFloor[f]);
    for (auto& p : points) p[f] = (p[f] - mean) / scale;
  }

  std::vector<BlockFeatures> centroids(1, BlockFeatures{});
  std::vector<int> assignment(points.size(), 0);
  lloyd(points, centroids, assignment);

  while (true) {
    const int k = static_cast<int>(centroids.size());
    std::vector<double> dist_sum(k, 0.0), sq_sum(k, 0.0);
    std::vector<int> counts(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double d2 = squared_distance(points[i], centroids[assignment[i]]);
      dist_sum[assignment[i]] += std::sqrt(d2);
      sq_sum[assignment[i]] += d2;
      ++counts[assignment[i]];
    }
    bool all_tight = true;
    int worst = -1;
    double worst_var = -1.0;
    for (int j = 0; j < k; ++j) {
      if (dist_sum[j] / counts[j] > params.split_tolerance) all_tight = false;
      const double var = sq_sum[j] / counts[j];
      if (counts[j] >= 2 && var > worst_var) {
        worst_var = var;
        worst = j;
      }
    }
    if (all_tight || k >= params.max_clusters || worst < 0) break;

    // Deterministic seeds: the member farthest from the centroid, then the
    // member farthest from that one.
    std::size_t seed_a = 0, seed_b = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (assignment[i] != worst) continue;
      const double d = squared_distance(points[i], centroids[worst]);
      if (d > best) {
        best = d;
        seed_a = i;
      }
    }
    best = -1.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (assignment[i] != worst) continue;
      const double d = squared_distance(points[i], points[seed_a]);
      if (d > best) {
        best = d;
        seed_b = i;
      }
    }
    if (best <= 0.0) break;
    centroids[worst] = points[seed_a];
    centroids.push_back(points[seed_b]);
    lloyd(points, centroids, assignment);
    if (static_cast<int>(centroids.size()) <= k) break;
  }

  // Renumber in raster order of first appearance.
  std::vector<int> order(centroids.size(), -1);
  int next_id = 0;
  TextureMask out = mask;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    int& id = order[assignment[i]];
    if (id < 0) id = next_id++;
    out.set_label(blocks[i].first, blocks[i].second, static_cast<std::int16_t>(id));
  }
  return out;
}

TextureMask temporal_correct(const TextureMask& prev, const TextureMask& cur,
                             const TextureMask& next) {
  check_same_grid(prev, cur);
  check_same_grid(next, cur);
  TextureMask out = cur;
  for (int r = 0; r < cur.rows(); ++r) {
    for (int c = 0; c < cur.cols(); ++c) {
      const int votes = prev.is_texture(r, c) + cur.is_texture(r, c) + next.is_texture(r, c);
      if (votes < 2) {
        out.set_label(r, c, TextureMask::kNonTexture);
      } else if (!cur.is_texture(r, c)) {
        out.set_label(r, c, prev.is_texture(r, c) ? prev.label(r, c) : next.label(r, c));
      }
    }
  }
  return out;
}

TextureMask spatial_correct(const TextureMask& mask) {
  static constexpr int kDr[] = {-1, 1, 0, 0};
  static constexpr int kDc[] = {0, 0, -1, 1};
  TextureMask out = mask;
  for (int r = 0; r < mask.rows(); ++r) {
    for (int c = 0; c < mask.cols(); ++c) {
      if (mask.is_texture(r, c)) continue;
      int existing = 0;
      std::map<int, int> votes;
      for (int k = 0; k < 4; ++k) {
        const int rr = r + kDr[k];
        const int cc = c + kDc[k];
        if (rr < 0 || rr >= mask.rows() || cc < 0 || cc >= mask.cols()) continue;
        ++existing;
        if (mask.is_texture(rr, cc)) ++votes[mask.label(rr, cc)];
      }
      int texture = 0;
      for (auto [id, n] : votes) texture += n;
      const int needed = (3 * existing + 3) / 4;
      if (existing == 0 || texture < needed) continue;
      int best_id = 0, best_n = -1;
      for (auto [id, n] : votes) {
        if (n > best_n) {
          best_n = n;
          best_id = id;
        }
      }
      out.set_label(r, c, static_cast<std::int16_t>(best_id));
    }
  }
  return out;
}

TextureMask remove_small_components(const TextureMask& mask, int min_blocks) {
  if (min_blocks < 1) throw InputError("min_blocks must be at least 1");
  TextureMask out = mask;
  const int rows = mask.rows();
  const int cols = mask.cols();
  std::vector<char> seen(static_cast<std::size_t>(rows) * cols, 0);
  std::vector<std::pair<int, int>> component;
  for (int r0 = 0; r0 < rows; ++r0) {
    for (int c0 = 0; c0 < cols; ++c0) {
      if (seen[static_cast<std::size_t>(r0) * cols + c0] || !mask.is_texture(r0, c0)) continue;
      component.clear();
      std::queue<std::pair<int, int>> frontier;
      frontier.emplace(r0, c0);
      seen[static_cast<std::size_t>(r0) * cols + c0] = 1;
      while (!frontier.empty()) {
        auto [r, c] = frontier.front();
        frontier.pop();
        component.emplace_back(r, c);
        const std::pair<int, int> nbrs[] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
        for (auto [rr, cc] : nbrs) {
          if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
          auto& s = seen[static_cast<std::size_t>(rr) * cols + cc];
          if (s || !mask.is_texture(rr, cc)) continue;
          s = 1;
          frontier.emplace(rr, cc);
        }
      }
      if (static_cast<int>(component.size()) < min_blocks) {
        for (auto [r, c] : component) out.set_label(r, c, TextureMask::kNonTexture);
      }
    }
  }
  return out;
}

MaskSequence refine_sequence(std::span<const Frame> frames,
                             std::span<const TextureMask> raw_masks,
                             const RefineParams& params) {
  if (frames.size() != raw_masks.size()) {
    throw InputError("refine_sequence: " + std::to_string(frames.size()) + " frames but " +
                     std::to_string(raw_masks.size()) + " masks");
  }
  MaskSequence clustered;
  clustered.reserve(raw_masks.size());
  for (std::size_t i = 0; i < raw_masks.size(); ++i) {
    check_same_grid(raw_masks[i], raw_masks[0]);
    clustered.push_back(adaptive_kmeans_cluster(frames[i], raw_masks[i], params));
  }
  MaskSequence out;
  out.reserve(clustered.size());
  const std::size_t n = clustered.size();
  for (std::size_t i = 0; i < n; ++i) {
    const TextureMask& prev = i > 0 ? clustered[i - 1] : clustered[i];
    const TextureMask& next = i + 1 < n ? clustered[i + 1] : clustered[i];
    TextureMask m = temporal_correct(prev, clustered[i], next);
    m = spatial_correct(m);
    m = remove_small_components(m, params.min_component_blocks);
    m.set_frame_index(raw_masks[i].frame_index());
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace texlab
