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

// Hybrid block encoder and decoder with the texture mode.
//
// Frames are coded in 64x64 superblocks over a copy of the frame padded to a
// multiple of 64 by edge replication. Each superblock is a quadtree down to
// 8x8. Conventional leaves choose among DC intra, planar intra and
// translational inter prediction per reference by D + lambda R, with an 8x8
// (luma) DCT residual. Texture leaves, 32x32 or larger, are the warped
// reference texture (averaged over two references under tex-cp) and carry
// no residual.

#ifndef TEXLAB_CODEC_H_
#define TEXLAB_CODEC_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "texlab/block_grid.h"
#include "texlab/frame.h"
#include "texlab/gf_plan.h"
#include "texlab/motion.h"
#include "texlab/prediction.h"

namespace texlab {

inline constexpr int kSuperblockSize = 64;
inline constexpr int kMinLeafSize = 8;
inline constexpr int kMinTextureLeafSize = 32;
inline constexpr int kSearchRange = 24;
// Bits charged per transmitted texture motion parameter.
inline constexpr int kModelParamBits = 12;
// Bits charged for the fixed part of each frame header.
inline constexpr int kFrameHeaderBits = 32;

enum class LeafMode : std::uint8_t { kTexture, kIntraDc, kIntraPlanar, kInter };
std::string leaf_mode_name(LeafMode mode);

struct CodedLeaf {
  Rect rect;  // luma coordinates
  LeafMode mode = LeafMode::kIntraDc;
  int ref_slot = -1;   // index into the frame's refs for kInter
  int mv_x = 0;        // half-pel, kInter only
  int mv_y = 0;
  double distortion = 0.0;  // SSE over Y, U, V inside the visible frame
  double coeff_bits = 0.0;
};

struct TextureModelRecord {
  int ref = 0;
  AffineModel model;  // as transmitted
  int inliers = 0;
  int matches = 0;
};

// One rate-distortion comparison made while partitioning a node.
struct RdCandidate {
  std::string label;
  double distortion = 0.0;
  double rate = 0.0;
  double cost = 0.0;
};

struct RdNodeTrace {
  Rect rect;
  double lambda = 0.0;
  bool forced_split = false;
  bool texture_leaf = false;
  // Conventional leaf candidates; cost = distortion + lambda * rate.
  std::vector<RdCandidate> leaf_candidates;
  int chosen_leaf = -1;
  // Leaf-vs-split comparison, present when the node could be split.
  std::optional<RdCandidate> leaf_option;
  std::optional<RdCandidate> split_option;
  bool split = false;
};

struct FrameStats {
  int display_index = 0;
  int coding_order = 0;
  FrameKind kind = FrameKind::kInter;
  int layer = 0;
  int qp = 0;
  std::vector<int> refs;
  bool texture_enabled = false;  // by the GF-group plan
  bool texture_active = false;   // texture leaves were allowed in this frame
  std::string fallback;          // why an enabled frame was coded conventionally
  std::vector<TextureModelRecord> models;
  std::size_t payload_bytes = 0;
  std::size_t record_bytes = 0;
  // payload_bytes * 8 + kFrameHeaderBits + 6 * kModelParamBits per model.
  double bits = 0.0;
  double partition_bits = 0.0;
  double mode_bits = 0.0;
  double coeff_bits_conventional = 0.0;
  double coeff_bits_texture = 0.0;
  std::vector<CodedLeaf> leaves;
  std::vector<RdNodeTrace> trace;
  std::uint32_t crc = 0;
};

struct EncoderSettings {
  CodecConfig config = CodecConfig::kBaseline;
  int qp = 32;
  int tex_all_interval = kDefaultTexAllInterval;
  std::uint64_t seed = 1;
  MotionParams motion;
  // Step-2 containment over every pixel instead of corners and centre.
  bool strict_containment = false;
  bool record_trace = false;
};

struct EncodeResult {
  std::vector<std::uint8_t> bitstream;
  std::vector<Frame> recon;        // display order, visible size
  std::vector<FrameStats> frames;  // display order
};

// Closed-loop encode. Texture configs need one refined mask per frame;
// baseline ignores masks. Throws InputError for fewer than two frames,
// mismatched sizes or missing masks.
EncodeResult encode_sequence(std::span<const Frame> frames, const EncoderSettings& settings,
                             std::span<const TextureMask> masks = {});

struct DecodedFrame {
  Frame frame;
  FrameStats stats;  // as recovered from the stream; no trace
  bool crc_ok = false;
};

// Frames in display order. Container errors (bad magic, truncation,
// inconsistent headers) throw ParseError before any frame is produced.
// Payload corruption is reported through crc_ok.
std::vector<DecodedFrame> decode_sequence(std::span<const std::uint8_t> bitstream);

// Texture block decision. Step 1: every 32x32 block under rect is texture in
// cur_mask. Step 2: for every texture reference of the plan entry, the four
// corners and the centre of rect (or every pixel when strict) map through
// that reference's model into texture blocks of the reference mask. A
// missing mask or model yields false. Throws InputError when rect is not a
// 32-aligned block of at least 32x32.
bool is_texture_block(const Rect& rect, const TextureMask& cur_mask, const PlanEntry& entry,
                      const std::map<int, TextureMask>& ref_masks,
                      const std::map<int, AffineModel>& models, bool strict = false);

// Warped prediction for a texture leaf from one or two (tex-cp) references.
WarpedBlock reconstruct_texture_block(const Rect& rect,
                                      std::span<const AffineModel> models,
                                      std::span<const Frame* const> ref_recons);

// CRC-32 of the Y, U and V samples, in that order.
std::uint32_t frame_crc(const Frame& frame);

}  // namespace texlab

#endif  // TEXLAB_CODEC_H_
