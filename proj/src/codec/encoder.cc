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
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <memory>

#include "src/codec/block_coding.h"
#include "src/codec/syntax.h"
#include "texlab/bitstream.h"
#include "texlab/codec.h"
#include "texlab/errors.h"
#include "texlab/parallel.h"
#include "texlab/transform.h"

namespace texlab {
namespace {

using detail::LeafSyntax;
using syntax::CodingState;
using syntax::TallyingEncoder;

constexpr int kBorder = 32;
constexpr int kNodesPerSuperblock = 1 + 4 + 16 + 64;
constexpr std::array<int, 4> kLevelOffset = {0, 1, 5, 21};

using MvPair = std::array<int, 2>;
using NodeMvs = std::array<MvPair, kNodesPerSuperblock>;

int level_of(int size) { return size == 64 ? 0 : size == 32 ? 1 : size == 16 ? 2 : 3; }

int node_index(int sbx, int sby, const Rect& r) {
  const int per_row = kSuperblockSize / r.w;
  return kLevelOffset[level_of(r.w)] + ((r.y - sby) / r.w) * per_row + (r.x - sbx) / r.w;
}

Plane bordered(const Plane& p) {
  Plane out(p.width() + 2 * kBorder, p.height() + 2 * kBorder);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) out.at(x, y) = p.clamped(x - kBorder, y - kBorder);
  }
  return out;
}

std::int64_t motion_cost(std::int64_t sad, int mvx, int mvy) {
  return 8 * sad + std::abs(mvx) + std::abs(mvy);
}

std::int64_t block_sad(const Plane& src, const Rect& r, const PixelBlock& pred) {
  std::int64_t sum = 0;
  for (int y = 0; y < r.h; ++y) {
    const auto row = src.row(r.y + y);
    for (int x = 0; x < r.w; ++x) {
      sum += std::abs(row[r.x + x] - pred[static_cast<std::size_t>(y) * r.w + x]);
    }
  }
  return sum;
}

// Integer full search over +-kSearchRange for every quadtree node of one
// superblock, accumulated from 8x8 SADs, followed by a half-pel refinement of
// each node. Returns half-pel vectors.
NodeMvs search_superblock(const Plane& src, const Plane& ref, const Plane& ref_bordered,
                          int sbx, int sby) {
  std::array<std::int64_t, kNodesPerSuperblock> best_cost;
  best_cost.fill(std::numeric_limits<std::int64_t>::max());
  NodeMvs best{};
  std::array<int, 64> sad8;
  std::array<std::int64_t, kNodesPerSuperblock> sad;
  for (int dy = -kSearchRange; dy <= kSearchRange; ++dy) {
    for (int dx = -kSearchRange; dx <= kSearchRange; ++dx) {
      sad8.fill(0);
      for (int r = 0; r < kSuperblockSize; ++r) {
        const std::uint8_t* s = src.row(sby + r).data() + sbx;
        const std::uint8_t* q = ref_bordered.row(sby + r + dy + kBorder).data() + sbx + dx + kBorder;
        int* acc = &sad8[static_cast<std::size_t>(r >> 3) * 8];
        for (int bc = 0; bc < 8; ++bc) {
          int t = 0;
          for (int i = 0; i < 8; ++i) t += std::abs(s[bc * 8 + i] - q[bc * 8 + i]);
          acc[bc] += t;
        }
      }
      for (int k = 0; k < 64; ++k) sad[21 + k] = sad8[k];
      for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
          sad[5 + y * 4 + x] = sad[21 + (2 * y) * 8 + 2 * x] + sad[21 + (2 * y) * 8 + 2 * x + 1] +
                               sad[21 + (2 * y + 1) * 8 + 2 * x] +
                               sad[21 + (2 * y + 1) * 8 + 2 * x + 1];
        }
      }
      for (int y = 0; y < 2; ++y) {
        for (int x = 0; x < 2; ++x) {
          sad[1 + y * 2 + x] = sad[5 + (2 * y) * 4 + 2 * x] + sad[5 + (2 * y) * 4 + 2 * x + 1] +
                               sad[5 + (2 * y + 1) * 4 + 2 * x] +
                               sad[5 + (2 * y + 1) * 4 + 2 * x + 1];
        }
      }
      sad[0] = sad[1] + sad[2] + sad[3] + sad[4];
      for (int n = 0; n < kNodesPerSuperblock; ++n) {
        const std::int64_t c = motion_cost(sad[n], 2 * dx, 2 * dy);
        if (c < best_cost[n]) {
          best_cost[n] = c;
          best[n] = {2 * dx, 2 * dy};
        }
      }
    }
  }
  static constexpr std::array<MvPair, 8> kNeighbours = {
      {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}}};
  for (int size = 64, level = 0; size >= kMinLeafSize; size /= 2, ++level) {
    const int per_row = kSuperblockSize / size;
    for (int k = 0; k < per_row * per_row; ++k) {
      const int n = kLevelOffset[level] + k;
      const Rect r{sbx + (k % per_row) * size, sby + (k / per_row) * size, size, size};
      const MvPair start = best[n];
      std::int64_t cost = best_cost[n];
      for (const MvPair& d : kNeighbours) {
        const int mx = start[0] + d[0];
        const int my = start[1] + d[1];
        const auto pred = predict_translational(ref, r, mx * 8, my * 8);
        const std::int64_t c = motion_cost(block_sad(src, r, pred), mx, my);
        if (c < cost) {
          cost = c;
          best[n] = {mx, my};
        }
      }
    }
  }
  return best;
}

struct Node {
  Rect rect;
  bool texture = false;
  bool split = false;
  LeafSyntax leaf;
  double distortion = 0.0;
  std::array<std::unique_ptr<Node>, 4> kids;
};

struct FrameJob {
  const Frame* source = nullptr;  // padded
  int visible_w = 0;
  int visible_h = 0;
  int qp = 0;
  std::vector<const Frame*> refs;  // padded reconstructions
  bool texture_active = false;
  const TextureMask* cur_mask = nullptr;
  PlanEntry entry;
  std::map<int, TextureMask> ref_masks;
  std::map<int, AffineModel> models;
  std::vector<AffineModel> texture_models;  // entry.texture_refs order
  std::vector<const Frame*> texture_recons;
  bool strict = false;
  bool trace = false;
};

class FrameEncoder {
 public:
  explicit FrameEncoder(const FrameJob& job)
      : job_(job),
        step_(qp_to_step(job.qp)),
        lambda_(rd_lambda(step_)),
        recon_(job.source->width(), job.source->height(), job.source->index()) {}

  std::vector<std::uint8_t> run(FrameStats& stats) {
    const Frame& src = *job_.source;
    const int sb_cols = src.width() / kSuperblockSize;
    const int sb_rows = src.height() / kSuperblockSize;
    std::vector<Plane> borders;
    for (const Frame* f : job_.refs) borders.push_back(bordered(f->y()));
    mvs_.assign(static_cast<std::size_t>(sb_cols) * sb_rows,
                std::vector<NodeMvs>(job_.refs.size()));
    parallel_for(static_cast<std::size_t>(sb_cols) * sb_rows * job_.refs.size(),
                 [&](std::size_t i) {
                   const std::size_t sb = i / job_.refs.size();
                   const std::size_t ref = i % job_.refs.size();
                   const int sbx = static_cast<int>(sb % sb_cols) * kSuperblockSize;
                   const int sby = static_cast<int>(sb / sb_cols) * kSuperblockSize;
                   mvs_[sb][ref] =
                       search_superblock(src.y(), job_.refs[ref]->y(), borders[ref], sbx, sby);
                 });

    CodingState frame_state;
    TallyingEncoder enc;
    for (int sb = 0; sb < sb_cols * sb_rows; ++sb) {
      sbx_ = (sb % sb_cols) * kSuperblockSize;
      sby_ = (sb / sb_cols) * kSuperblockSize;
      sb_index_ = sb;
      CodingState st = frame_state;
      Node root;
      root.rect = {sbx_, sby_, kSuperblockSize, kSuperblockSize};
      search(root, st, stats);
      write_node(enc, frame_state, root, stats);
    }
    stats.partition_bits = enc.tally(TallyingEncoder::kPartition);
    stats.mode_bits = enc.tally(TallyingEncoder::kMode);
    stats.coeff_bits_conventional = enc.tally(TallyingEncoder::kCoeffConventional);
    stats.coeff_bits_texture = enc.tally(TallyingEncoder::kCoeffTexture);
    return enc.finish();
  }

  Frame& recon() { return recon_; }

 private:
  bool texture_node(const Rect& r) const {
    if (!job_.texture_active || r.w < kMinTextureLeafSize) return false;
    return is_texture_block(r, *job_.cur_mask, job_.entry, job_.ref_masks, job_.models,
                            job_.strict);
  }

  bool touches_texture(const Rect& r) const {
    if (!job_.texture_active) return false;
    constexpr int kB = BlockGrid::kBlockSize;
    for (int y = r.y; y < r.bottom(); y += kB) {
      for (int x = r.x; x < r.right(); x += kB) {
        if (job_.cur_mask->is_texture_pixel(x, y)) return true;
      }
    }
    return false;
  }

  double frame_sse(const Rect& luma, const std::array<PixelBlock, 3>& px) const {
    const auto planes = detail::leaf_planes(luma);
    double d = 0.0;
    for (int p = 0; p < 3; ++p) {
      const int vw = p == 0 ? job_.visible_w : job_.visible_w / 2;
      const int vh = p == 0 ? job_.visible_h : job_.visible_h / 2;
      d += detail::sse_visible(job_.source->plane(p), planes[p].rect, px[p], vw, vh);
    }
    return d;
  }

  void store(const Rect& luma, const std::array<PixelBlock, 3>& px) {
    const auto planes = detail::leaf_planes(luma);
    for (int p = 0; p < 3; ++p) detail::store_block(recon_.plane(p), planes[p].rect, px[p]);
  }

  // Leaves `st` in the state after coding the node as decided and the
  // reconstruction of the node in recon_. Returns D + lambda R.
  double search(Node& node, CodingState& st, FrameStats& stats) {
    const Rect& r = node.rect;
    const int si = syntax::node_size_index(r.w);
    RdNodeTrace tr;
    tr.rect = r;
    tr.lambda = lambda_;

    double flag_bits = 0.0;
    if (job_.texture_active && r.w >= kMinTextureLeafSize) {
      const bool texture = texture_node(r);
      BitCounter bc;
      bc.encode(st.ctx.texture_flag[si], texture ? 1 : 0);
      flag_bits = bc.bits();
      if (texture) {
        const WarpedBlock w = reconstruct_texture_block(r, job_.texture_models,
                                                        job_.texture_recons);
        const std::array<PixelBlock, 3> px = {w.y, w.u, w.v};
        node.texture = true;
        node.distortion = frame_sse(r, px);
        store(r, px);
        if (job_.trace) {
          tr.texture_leaf = true;
          stats.trace.push_back(tr);
        }
        return node.distortion + lambda_ * flag_bits;
      }
    }

    const bool can_split = r.w > kMinLeafSize;
    const bool forced = job_.texture_active && r.w == kSuperblockSize && touches_texture(r);
    tr.forced_split = forced;

    std::optional<double> leaf_cost;
    CodingState leaf_state;
    std::array<PixelBlock, 3> leaf_px;
    if (!forced) {
      leaf_state = st;
      double split_flag_bits = 0.0;
      if (can_split) {
        BitCounter bc;
        bc.encode(leaf_state.ctx.split[si], 0);
        split_flag_bits = bc.bits();
      }
      double leaf_d = 0.0, leaf_r = 0.0;
      evaluate_leaf(node, leaf_state, leaf_px, leaf_d, leaf_r, tr);
      leaf_r += split_flag_bits;
      leaf_cost = leaf_d + lambda_ * leaf_r;
      tr.leaf_option = RdCandidate{"leaf", leaf_d, leaf_r, *leaf_cost};
    }

    std::optional<double> split_cost;
    CodingState split_state;
    if (can_split) {
      split_state = st;
      BitCounter bc;
      bc.encode(split_state.ctx.split[si], 1);
      double total = lambda_ * bc.bits();
      double total_d = 0.0;
      const int h = r.w / 2;
      for (int k = 0; k < 4; ++k) {
        node.kids[k] = std::make_unique<Node>();
        node.kids[k]->rect = {r.x + (k % 2) * h, r.y + (k / 2) * h, h, h};
        total += search(*node.kids[k], split_state, stats);
        total_d += subtree_distortion(*node.kids[k]);
      }
      split_cost = total;
      tr.split_option = RdCandidate{"split", total_d, (total - total_d) / lambda_, total};
    }

    if (leaf_cost && (!split_cost || *leaf_cost <= *split_cost)) {
      node.split = false;
      for (auto& k : node.kids) k.reset();
      store(r, leaf_px);
      st = leaf_state;
    } else {
      node.split = true;
      st = split_state;
    }
    tr.split = node.split;
    if (job_.trace) stats.trace.push_back(std::move(tr));
    const double chosen = node.split ? *split_cost : *leaf_cost;
    return chosen + lambda_ * flag_bits;
  }

  static double subtree_distortion(const Node& n) {
    if (!n.split) return n.distortion;
    double d = 0.0;
    for (const auto& k : n.kids) d += subtree_distortion(*k);
    return d;
  }

  // Tries every conventional candidate from `st`; on return `st` is the state
  // after the best candidate and px its reconstruction.
  void evaluate_leaf(Node& node, CodingState& st, std::array<PixelBlock, 3>& px,
                     double& best_d, double& best_r, RdNodeTrace& tr) {
    const Rect& r = node.rect;
    const auto planes = detail::leaf_planes(r);
    std::vector<LeafSyntax> candidates;
    std::vector<std::string> labels;
    for (LeafMode m : {LeafMode::kIntraDc, LeafMode::kIntraPlanar}) {
      LeafSyntax s;
      s.mode = m;
      candidates.push_back(s);
      labels.push_back(leaf_mode_name(m));
    }
    const int n = node_index(sbx_, sby_, r);
    for (std::size_t ref = 0; ref < job_.refs.size(); ++ref) {
      LeafSyntax s;
      s.mode = LeafMode::kInter;
      s.ref_slot = static_cast<int>(ref);
      s.mv_x = mvs_[sb_index_][ref][n][0];
      s.mv_y = mvs_[sb_index_][ref][n][1];
      candidates.push_back(s);
      labels.push_back("inter-ref" + std::to_string(ref));
    }
    double best_cost = std::numeric_limits<double>::infinity();
    CodingState best_state;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      LeafSyntax& s = candidates[c];
      const auto pred = detail::predict_leaf(s, r, recon_, job_.refs);
      std::array<PixelBlock, 3> rec;
      for (int p = 0; p < 3; ++p) {
        s.levels[p] = detail::residual_levels(job_.source->plane(p), planes[p], pred[p], step_);
        rec[p] = detail::reconstruct_plane(pred[p], planes[p], s.levels[p], step_);
      }
      const double d = frame_sse(r, rec);
      CodingState cs = st;
      BitCounter bc;
      detail::write_leaf(bc, cs, s, static_cast<int>(job_.refs.size()), r);
      const double cost = d + lambda_ * bc.bits();
      tr.leaf_candidates.push_back({labels[c], d, bc.bits(), cost});
      if (cost < best_cost) {
        best_cost = cost;
        best_state = cs;
        best_d = d;
        best_r = bc.bits();
        px = std::move(rec);
        node.leaf = s;
        tr.chosen_leaf = static_cast<int>(c);
      }
    }
    node.distortion = best_d;
    st = best_state;
  }

  void write_node(TallyingEncoder& enc, CodingState& st, const Node& node, FrameStats& stats) {
    const Rect& r = node.rect;
    const int si = syntax::node_size_index(r.w);
    enc.set_bucket(TallyingEncoder::kPartition);
    if (job_.texture_active && r.w >= kMinTextureLeafSize) {
      enc.encode(st.ctx.texture_flag[si], node.texture ? 1 : 0);
    }
    if (node.texture) {
      // Anything a texture leaf codes past its flag is charged here.
      enc.set_bucket(TallyingEncoder::kCoeffTexture);
      const double before = enc.tally(TallyingEncoder::kCoeffTexture);
      CodedLeaf leaf{r, LeafMode::kTexture, -1, 0, 0, node.distortion, 0.0};
      leaf.coeff_bits = enc.tally(TallyingEncoder::kCoeffTexture) - before;
      stats.leaves.push_back(leaf);
      return;
    }
    if (r.w > kMinLeafSize) enc.encode(st.ctx.split[si], node.split ? 1 : 0);
    if (node.split) {
      for (const auto& k : node.kids) write_node(enc, st, *k, stats);
      return;
    }
    const double before = enc.tally(TallyingEncoder::kCoeffConventional);
    detail::write_leaf(enc, st, node.leaf, static_cast<int>(job_.refs.size()), r);
    CodedLeaf leaf{r, node.leaf.mode, node.leaf.mode == LeafMode::kInter ? node.leaf.ref_slot : -1,
                   node.leaf.mv_x, node.leaf.mv_y, node.distortion, 0.0};
    leaf.coeff_bits = enc.tally(TallyingEncoder::kCoeffConventional) - before;
    stats.leaves.push_back(leaf);
  }

  const FrameJob& job_;
  double step_;
  double lambda_;
  Frame recon_;
  std::vector<std::vector<NodeMvs>> mvs_;  // [superblock][ref]
  int sbx_ = 0;
  int sby_ = 0;
  int sb_index_ = 0;
};

std::uint64_t motion_seed(std::uint64_t seed, int frame, int ref) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(frame) * 65536 +
                                                    static_cast<std::uint64_t>(ref) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

EncodeResult encode_sequence(std::span<const Frame> frames, const EncoderSettings& settings,
                             std::span<const TextureMask> masks) {
  const int n = static_cast<int>(frames.size());
  if (n < 2) throw InputError("encoding needs at least two frames");
  const int w = frames[0].width();
  const int h = frames[0].height();
  for (const Frame& f : frames) {
    if (f.width() != w || f.height() != h) throw InputError("frame sizes differ");
  }
  qp_to_step(settings.qp);
  const bool texture_config = settings.config != CodecConfig::kBaseline;
  if (texture_config) {
    if (static_cast<int>(masks.size()) != n) {
      throw InputError("texture configs need one mask per frame");
    }
    const BlockGrid grid(w, h);
    for (const TextureMask& m : masks) {
      if (!(m.grid() == grid)) throw InputError("mask grid does not match the frames");
    }
  }

  const auto plan = coding_sequence(plan_gf_groups(n, settings.config, settings.tex_all_interval));
  std::vector<Frame> padded;
  padded.reserve(frames.size());
  for (const Frame& f : frames) padded.push_back(detail::pad_frame(f));

  EncodeResult result;
  result.frames.resize(frames.size());
  result.recon.resize(frames.size());
  std::map<int, Frame> recon_padded;
  std::vector<FrameRecord> records;

  for (const PlanEntry& entry : plan) {
    const int d = entry.display_index;
    FrameStats stats;
    stats.display_index = d;
    stats.coding_order = entry.coding_order;
    stats.kind = entry.kind;
    stats.layer = entry.layer;
    stats.qp = settings.qp;
    stats.refs = entry.refs;
    stats.texture_enabled = texture_config && entry.texture_enabled;

    FrameJob job;
    job.source = &padded[d];
    job.visible_w = w;
    job.visible_h = h;
    job.qp = settings.qp;
    job.strict = settings.strict_containment;
    job.trace = settings.record_trace;
    job.entry = entry;
    for (int ref : entry.refs) job.refs.push_back(&recon_padded.at(ref));

    if (stats.texture_enabled) {
      const TextureMask& cur = masks[d];
      if (!cur.has_texture()) {
        stats.fallback = "no texture in current mask";
      } else {
        for (int ref : entry.texture_refs) {
          if (!masks[ref].has_texture()) {
            stats.fallback = "no texture in mask of frame " + std::to_string(ref);
            break;
          }
          try {
            const MotionEstimate est =
                estimate_texture_motion(frames[d], frames[ref], cur, masks[ref],
                                        motion_seed(settings.seed, d, ref), settings.motion);
            const AffineModel m = est.model.as_transmitted();
            if (!m.is_valid(w, h)) throw NoModelError("model outside the valid range");
            stats.models.push_back({ref, m, est.inlier_count, est.match_count});
          } catch (const NoModelError& e) {
            stats.fallback = "no model for frame " + std::to_string(ref) + ": " + e.what();
            stats.models.clear();
            break;
          }
        }
      }
      if (stats.fallback.empty()) {
        job.texture_active = true;
        job.cur_mask = &cur;
        for (const TextureModelRecord& m : stats.models) {
          job.ref_masks.emplace(m.ref, masks[m.ref]);
          job.models.emplace(m.ref, m.model);
          job.texture_models.push_back(m.model);
          job.texture_recons.push_back(&recon_padded.at(m.ref));
        }
      }
    }
    stats.texture_active = job.texture_active;

    FrameEncoder fe(job);
    FrameRecord rec;
    rec.payload = fe.run(stats);
    Frame& rp = fe.recon();
    detail::repad(rp, w, h);
    result.recon[d] = detail::crop_frame(rp, w, h, d);
    stats.crc = frame_crc(result.recon[d]);
    stats.payload_bytes = rec.payload.size();
    stats.bits = static_cast<double>(rec.payload.size()) * 8 + kFrameHeaderBits +
                 6.0 * kModelParamBits * static_cast<double>(stats.models.size());

    rec.display_index = d;
    rec.kind = entry.kind;
    rec.layer = entry.layer;
    rec.qp = settings.qp;
    rec.refs = entry.refs;
    rec.texture_active = stats.texture_active;
    for (const TextureModelRecord& m : stats.models) {
      ModelParams mp;
      mp.ref = m.ref;
      mp.params = {static_cast<float>(m.model.a), static_cast<float>(m.model.b),
                   static_cast<float>(m.model.c), static_cast<float>(m.model.d),
                   static_cast<float>(m.model.tx), static_cast<float>(m.model.ty)};
      rec.models.push_back(mp);
    }
    rec.crc = stats.crc;
    records.push_back(std::move(rec));
    recon_padded.emplace(d, std::move(rp));
    result.frames[d] = std::move(stats);
  }

  SequenceHeader header{w, h, n, settings.qp};
  result.bitstream = write_container(header, records);
  const ParsedStream parsed = parse_container(result.bitstream);
  for (const FrameRecord& r : parsed.records) {
    result.frames[r.display_index].record_bytes = r.size;
  }
  return result;
}

}  // namespace texlab
