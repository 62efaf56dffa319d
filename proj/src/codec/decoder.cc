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
#include <map>
#include <set>

#include "src/codec/block_coding.h"
#include "src/codec/syntax.h"
#include "texlab/bitstream.h"
#include "texlab/codec.h"
#include "texlab/errors.h"
#include "texlab/transform.h"

namespace texlab {
namespace {

using syntax::CodingState;
using syntax::TallyingDecoder;
using syntax::TallyingEncoder;

class FrameDecoder {
 public:
  FrameDecoder(const FrameRecord& rec, int padded_w, int padded_h,
               std::vector<const Frame*> refs, std::vector<AffineModel> models,
               std::vector<const Frame*> texture_recons)
      : rec_(rec),
        step_(qp_to_step(std::min(rec.qp, kMaxQp))),
        recon_(padded_w, padded_h, rec.display_index),
        refs_(std::move(refs)),
        models_(std::move(models)),
        texture_recons_(std::move(texture_recons)),
        reader_(rec.payload) {}

  Frame& run(FrameStats& stats) {
    for (int y = 0; y < recon_.height(); y += kSuperblockSize) {
      for (int x = 0; x < recon_.width(); x += kSuperblockSize) {
        node({x, y, kSuperblockSize, kSuperblockSize}, stats);
      }
    }
    stats.partition_bits = reader_.tally(TallyingEncoder::kPartition);
    stats.mode_bits = reader_.tally(TallyingEncoder::kMode);
    stats.coeff_bits_conventional = reader_.tally(TallyingEncoder::kCoeffConventional);
    stats.coeff_bits_texture = reader_.tally(TallyingEncoder::kCoeffTexture);
    return recon_;
  }

 private:
  void store(const Rect& luma, const std::array<PixelBlock, 3>& px) {
    const auto planes = detail::leaf_planes(luma);
    for (int p = 0; p < 3; ++p) detail::store_block(recon_.plane(p), planes[p].rect, px[p]);
  }

  void node(const Rect& r, FrameStats& stats) {
    const int si = syntax::node_size_index(r.w);
    reader_.set_bucket(TallyingEncoder::kPartition);
    if (rec_.texture_active && r.w >= kMinTextureLeafSize &&
        reader_.decode(state_.ctx.texture_flag[si]) == 1) {
      reader_.set_bucket(TallyingEncoder::kCoeffTexture);
      const WarpedBlock w = reconstruct_texture_block(r, models_, texture_recons_);
      store(r, {w.y, w.u, w.v});
      stats.leaves.push_back({r, LeafMode::kTexture, -1, 0, 0, 0.0, 0.0});
      return;
    }
    if (r.w > kMinLeafSize && reader_.decode(state_.ctx.split[si]) == 1) {
      const int h = r.w / 2;
      for (int k = 0; k < 4; ++k) node({r.x + (k % 2) * h, r.y + (k / 2) * h, h, h}, stats);
      return;
    }
    const double before = reader_.tally(TallyingEncoder::kCoeffConventional);
    const int n_refs = static_cast<int>(refs_.size());
    detail::LeafSyntax leaf = detail::read_leaf(reader_, state_, n_refs, r);
    const auto planes = detail::leaf_planes(r);
    const auto pred = detail::predict_leaf(leaf, r, recon_, refs_);
    std::array<PixelBlock, 3> px;
    for (int p = 0; p < 3; ++p) {
      px[p] = detail::reconstruct_plane(pred[p], planes[p], leaf.levels[p], step_);
    }
    store(r, px);
    CodedLeaf info{r, leaf.mode, leaf.mode == LeafMode::kInter ? leaf.ref_slot : -1,
                   leaf.mv_x, leaf.mv_y, 0.0, 0.0};
    info.coeff_bits = reader_.tally(TallyingEncoder::kCoeffConventional) - before;
    stats.leaves.push_back(info);
  }

  const FrameRecord& rec_;
  double step_;
  Frame recon_;
  std::vector<const Frame*> refs_;
  std::vector<AffineModel> models_;
  std::vector<const Frame*> texture_recons_;
  CodingState state_;
  TallyingDecoder reader_;
};

}  // namespace

std::vector<DecodedFrame> decode_sequence(std::span<const std::uint8_t> bitstream) {
  const ParsedStream parsed = parse_container(bitstream);
  const SequenceHeader& hdr = parsed.header;

  // Reference structure is validated before any pixel is produced.
  std::set<int> seen;
  for (const FrameRecord& rec : parsed.records) {
    if (!seen.insert(rec.display_index).second) {
      throw ParseError("duplicate display index", rec.offset);
    }
    if (rec.qp > kMaxQp) throw ParseError("qp out of range", rec.offset);
    for (int ref : rec.refs) {
      if (ref == rec.display_index || !seen.contains(ref)) {
        throw ParseError("reference to a frame not yet decoded", rec.offset);
      }
    }
    std::set<int> model_refs;
    for (const ModelParams& m : rec.models) {
      if (m.ref == rec.display_index || !seen.contains(m.ref) ||
          !model_refs.insert(m.ref).second) {
        throw ParseError("texture model for an unavailable reference", rec.offset);
      }
    }
  }

  const int pw = detail::padded_size(hdr.width);
  const int ph = detail::padded_size(hdr.height);
  std::map<int, Frame> recon;
  std::vector<DecodedFrame> out(static_cast<std::size_t>(hdr.n_frames));
  int coding_order = 0;
  for (const FrameRecord& rec : parsed.records) {
    FrameStats stats;
    stats.display_index = rec.display_index;
    stats.coding_order = coding_order++;
    stats.kind = rec.kind;
    stats.layer = rec.layer;
    stats.qp = rec.qp;
    stats.refs = rec.refs;
    stats.texture_active = rec.texture_active;
    stats.payload_bytes = rec.payload.size();
    stats.record_bytes = rec.size;

    std::vector<const Frame*> refs;
    for (int ref : rec.refs) refs.push_back(&recon.at(ref));
    std::vector<AffineModel> models;
    std::vector<const Frame*> texture_recons;
    for (const ModelParams& m : rec.models) {
      const auto& p = m.params;
      AffineModel model{p[0], p[1], p[2], p[3], p[4], p[5]};
      models.push_back(model);
      texture_recons.push_back(&recon.at(m.ref));
      stats.models.push_back({m.ref, model, 0, 0});
    }
    stats.bits = static_cast<double>(rec.payload.size()) * 8 + kFrameHeaderBits +
                 6.0 * kModelParamBits * static_cast<double>(models.size());

    FrameDecoder fd(rec, pw, ph, std::move(refs), std::move(models), std::move(texture_recons));
    Frame padded = std::move(fd.run(stats));
    detail::repad(padded, hdr.width, hdr.height);
    DecodedFrame& df = out[static_cast<std::size_t>(rec.display_index)];
    df.frame = detail::crop_frame(padded, hdr.width, hdr.height, rec.display_index);
    stats.crc = frame_crc(df.frame);
    df.crc_ok = stats.crc == rec.crc;
    df.stats = std::move(stats);
    recon.emplace(rec.display_index, std::move(padded));
  }
  return out;
}

}  // namespace texlab
