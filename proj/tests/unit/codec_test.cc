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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "tests/support/synthetic.h"
#include "texlab/bitstream.h"
#include "texlab/codec.h"
#include "texlab/errors.h"
#include "texlab/transform.h"

namespace texlab {
namespace {

constexpr CodecConfig kAllConfigs[] = {CodecConfig::kBaseline, CodecConfig::kTexAll,
                                       CodecConfig::kTexSp, CodecConfig::kTexCp};

struct SmallClip {
  testing::Clip clip;
  std::vector<TextureMask> masks;
};

// 192x128, nine frames, texture in the lower two block rows.
const SmallClip& small_clip() {
  static const SmallClip c = [] {
    testing::SceneParams p;
    p.width = 192;
    p.height = 128;
    p.n_frames = 9;
    SmallClip out{testing::make_scene(p), {}};
    for (int i = 0; i < p.n_frames; ++i) {
      out.masks.push_back(testing::mask_from_rows(BlockGrid(192, 128), 2, i));
    }
    return out;
  }();
  return c;
}

EncodeResult encode(CodecConfig config, int qp, bool trace = false) {
  EncoderSettings s;
  s.config = config;
  s.qp = qp;
  s.tex_all_interval = 8;
  s.record_trace = trace;
  return encode_sequence(small_clip().clip.frames, s, small_clip().masks);
}

bool same_frame(const Frame& a, const Frame& b) {
  for (int p = 0; p < 3; ++p) {
    if (a.plane(p).width() != b.plane(p).width() || a.plane(p).height() != b.plane(p).height()) {
      return false;
    }
    for (int y = 0; y < a.plane(p).height(); ++y) {
      for (int x = 0; x < a.plane(p).width(); ++x) {
        if (a.plane(p).at(x, y) != b.plane(p).at(x, y)) return false;
      }
    }
  }
  return true;
}

class CodecByConfig : public ::testing::TestWithParam<CodecConfig> {};

TEST_P(CodecByConfig, DecoderMirrorsEncoder) {
  for (int qp : {16, 40}) {
    const EncodeResult r = encode(GetParam(), qp);
    const auto decoded = decode_sequence(r.bitstream);
    ASSERT_EQ(decoded.size(), r.recon.size());
    for (std::size_t i = 0; i < decoded.size(); ++i) {
      EXPECT_TRUE(decoded[i].crc_ok) << i;
      EXPECT_TRUE(same_frame(decoded[i].frame, r.recon[i])) << "qp " << qp << " frame " << i;
      EXPECT_EQ(decoded[i].stats.crc, r.frames[i].crc);
      EXPECT_EQ(frame_crc(r.recon[i]), r.frames[i].crc);
    }
  }
}

TEST_P(CodecByConfig, EncodingIsDeterministic) {
  EXPECT_EQ(encode(GetParam(), 32).bitstream, encode(GetParam(), 32).bitstream);
}

TEST_P(CodecByConfig, LeavesTileThePaddedFrame) {
  const EncodeResult r = encode(GetParam(), 24);
  for (const FrameStats& f : r.frames) {
    std::vector<int> cover(192 * 128, 0);
    for (const CodedLeaf& l : f.leaves) {
      EXPECT_TRUE(l.rect.w == l.rect.h && l.rect.w >= kMinLeafSize && l.rect.w <= kSuperblockSize);
      EXPECT_EQ(l.rect.x % l.rect.w, 0);
      EXPECT_EQ(l.rect.y % l.rect.h, 0);
      for (int y = l.rect.y; y < l.rect.bottom(); ++y) {
        for (int x = l.rect.x; x < l.rect.right(); ++x) ++cover[y * 192 + x];
      }
    }
    EXPECT_TRUE(std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; }));
  }
}

TEST_P(CodecByConfig, FrameBitsAccounting) {
  const EncodeResult r = encode(GetParam(), 32);
  for (const FrameStats& f : r.frames) {
    EXPECT_DOUBLE_EQ(f.bits, f.payload_bytes * 8.0 + kFrameHeaderBits +
                                 6.0 * kModelParamBits * static_cast<double>(f.models.size()));
  }
}

INSTANTIATE_TEST_SUITE_P(AllConfigs, CodecByConfig, ::testing::ValuesIn(kAllConfigs),
                         [](const auto& info) {
                           std::string n = config_name(info.param);
                           std::replace(n.begin(), n.end(), '-', '_');
                           return n;
                         });

// Texture leaves are exactly the warped reference texture: no residual.
TEST(Codec, TextureLeavesCarryNoResidual) {
  for (CodecConfig c : {CodecConfig::kTexAll, CodecConfig::kTexSp, CodecConfig::kTexCp}) {
    const EncodeResult r = encode(c, 24);
    int texture_leaves = 0;
    for (const FrameStats& f : r.frames) {
      EXPECT_DOUBLE_EQ(f.coeff_bits_texture, 0.0);
      std::map<int, AffineModel> models;
      for (const auto& m : f.models) models[m.ref] = m.model;
      for (const CodedLeaf& l : f.leaves) {
        if (l.mode != LeafMode::kTexture) continue;
        ++texture_leaves;
        EXPECT_GE(l.rect.w, kMinTextureLeafSize);
        EXPECT_DOUBLE_EQ(l.coeff_bits, 0.0);
        std::vector<AffineModel> ms;
        std::vector<const Frame*> refs;
        const int prev = f.display_index - 1;
        ms.push_back(models.at(prev));
        refs.push_back(&r.recon[prev]);
        if (c == CodecConfig::kTexCp) {
          ms.push_back(models.at(f.display_index + 1));
          refs.push_back(&r.recon[f.display_index + 1]);
        }
        const WarpedBlock w = reconstruct_texture_block(l.rect, ms, refs);
        for (int y = 0; y < l.rect.h; ++y) {
          for (int x = 0; x < l.rect.w; ++x) {
            ASSERT_EQ(r.recon[f.display_index].y().at(l.rect.x + x, l.rect.y + y),
                      w.y[y * l.rect.w + x]);
          }
        }
        for (int y = 0; y < l.rect.h / 2; ++y) {
          for (int x = 0; x < l.rect.w / 2; ++x) {
            ASSERT_EQ(r.recon[f.display_index].u().at(l.rect.x / 2 + x, l.rect.y / 2 + y),
                      w.u[y * l.rect.w / 2 + x]);
          }
        }
      }
    }
    EXPECT_GT(texture_leaves, 0) << config_name(c);
  }
}

// Texture leaves stay inside the texture rows of the mask; conventional
// blocks never extend into a texture leaf's superblock half.
TEST(Codec, TextureLeavesRespectTheMask) {
  const EncodeResult r = encode(CodecConfig::kTexCp, 24);
  for (const FrameStats& f : r.frames) {
    if (!f.texture_active) continue;
    for (const CodedLeaf& l : f.leaves) {
      if (l.mode == LeafMode::kTexture) {
        EXPECT_GE(l.rect.y, 64);
      } else if (l.rect.y + l.rect.h <= 64 || l.rect.y >= 64) {
        continue;
      } else {
        ADD_FAILURE() << "conventional leaf straddles the texture boundary";
      }
    }
  }
}

TEST(Codec, NoTextureMaskMatchesBaseline) {
  std::vector<TextureMask> empty;
  for (int i = 0; i < 9; ++i) empty.emplace_back(BlockGrid(192, 128), i);
  EncoderSettings base;
  base.qp = 32;
  const EncodeResult b = encode_sequence(small_clip().clip.frames, base);
  for (CodecConfig c : {CodecConfig::kTexSp, CodecConfig::kTexCp}) {
    EncoderSettings s = base;
    s.config = c;
    const EncodeResult t = encode_sequence(small_clip().clip.frames, s, empty);
    EXPECT_EQ(t.bitstream, b.bitstream) << config_name(c);
    for (std::size_t i = 0; i < b.recon.size(); ++i) {
      EXPECT_TRUE(same_frame(b.recon[i], t.recon[i])) << config_name(c) << " frame " << i;
      EXPECT_EQ(b.frames[i].payload_bytes, t.frames[i].payload_bytes);
      EXPECT_TRUE(t.frames[i].models.empty());
      if (t.frames[i].texture_enabled) EXPECT_FALSE(t.frames[i].fallback.empty());
    }
  }
}

// Every recorded decision picks the cheaper option under J = D + lambda R.
TEST(Codec, RateDistortionDecisionsAreConsistent) {
  for (CodecConfig c : {CodecConfig::kBaseline, CodecConfig::kTexCp}) {
    const EncodeResult r = encode(c, 28, true);
    const double lambda = rd_lambda(qp_to_step(28));
    int checked = 0;
    for (const FrameStats& f : r.frames) {
      ASSERT_FALSE(f.trace.empty());
      for (const RdNodeTrace& t : f.trace) {
        EXPECT_DOUBLE_EQ(t.lambda, lambda);
        if (t.texture_leaf) continue;
        if (!t.leaf_candidates.empty()) {
          ASSERT_GE(t.chosen_leaf, 0);
          for (const RdCandidate& cand : t.leaf_candidates) {
            EXPECT_NEAR(cand.cost, cand.distortion + lambda * cand.rate, 1e-6 * cand.cost + 1e-9);
            EXPECT_LE(t.leaf_candidates[t.chosen_leaf].cost, cand.cost);
          }
        }
        if (t.leaf_option && t.split_option) {
          EXPECT_EQ(t.split, t.split_option->cost < t.leaf_option->cost);
          ++checked;
        }
        if (t.forced_split) {
          EXPECT_FALSE(t.leaf_option.has_value());
          EXPECT_TRUE(t.split);
        }
      }
    }
    EXPECT_GT(checked, 0);
  }
}

TEST(Codec, ForcedSplitOnlyWhereTextureIsActive) {
  const EncodeResult base = encode(CodecConfig::kBaseline, 32, true);
  for (const FrameStats& f : base.frames) {
    for (const RdNodeTrace& t : f.trace) EXPECT_FALSE(t.forced_split);
  }
  const EncodeResult tex = encode(CodecConfig::kTexCp, 32, true);
  bool any = false;
  for (const FrameStats& f : tex.frames) {
    for (const RdNodeTrace& t : f.trace) {
      if (!t.forced_split) continue;
      any = true;
      EXPECT_TRUE(f.texture_active);
      EXPECT_EQ(t.rect.w, kSuperblockSize);
    }
  }
  EXPECT_TRUE(any);
}

TEST(Codec, CorruptedModelParametersFailChecksum) {
  const EncodeResult r = encode(CodecConfig::kTexCp, 32);
  ParsedStream s = parse_container(r.bitstream);
  int target = -1;
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    if (!s.records[i].models.empty()) {
      s.records[i].models[0].params[4] += 3.0f;
      target = s.records[i].display_index;
      break;
    }
  }
  ASSERT_GE(target, 0);
  const auto decoded = decode_sequence(write_container(s.header, s.records));
  EXPECT_FALSE(decoded[target].crc_ok);
  EXPECT_TRUE(decoded[0].crc_ok);
}

TEST(Codec, PayloadBitFlipIsDetected) {
  const EncodeResult r = encode(CodecConfig::kBaseline, 32);
  ParsedStream s = parse_container(r.bitstream);
  auto& rec = s.records[1];
  rec.payload[rec.payload.size() / 2] ^= 0x10;
  const auto decoded = decode_sequence(write_container(s.header, s.records));
  EXPECT_FALSE(decoded[rec.display_index].crc_ok);
}

TEST(Codec, TruncatedStreamThrowsBeforeDecoding) {
  const EncodeResult r = encode(CodecConfig::kBaseline, 40);
  EXPECT_THROW(decode_sequence(std::span(r.bitstream).first(r.bitstream.size() - 3)), ParseError);
  EXPECT_THROW(decode_sequence(std::span(r.bitstream).first(8)), ParseError);
}

const testing::Clip& static_clip() {
  static const testing::Clip c = [] {
    auto p = testing::static_fixture_params();
    p.width = 128;
    p.height = 128;
    p.n_frames = 3;
    return testing::make_scene(p);
  }();
  return c;
}

// On a static scene the texture models are identities, so texture leaves
// copy the reference reconstruction exactly.
TEST(Codec, StaticSceneTextureLeavesCopyReference) {
  std::vector<TextureMask> masks;
  for (int i = 0; i < 3; ++i) masks.push_back(testing::mask_from_rows(BlockGrid(128, 128), 2, i));
  EncoderSettings s;
  s.config = CodecConfig::kTexSp;
  s.qp = 24;
  const EncodeResult r = encode_sequence(static_clip().frames, s, masks);
  const FrameStats& f = r.frames[1];
  ASSERT_TRUE(f.texture_active);
  ASSERT_EQ(f.models.size(), 1u);
  const AffineModel& a = f.models[0].model;
  const AffineModel id = AffineModel::identity();
  EXPECT_NEAR(a.a, id.a, 1e-9);
  EXPECT_NEAR(a.b, id.b, 1e-9);
  EXPECT_NEAR(a.c, id.c, 1e-9);
  EXPECT_NEAR(a.d, id.d, 1e-9);
  EXPECT_NEAR(a.tx, id.tx, 1e-9);
  EXPECT_NEAR(a.ty, id.ty, 1e-9);
  int leaves = 0;
  for (const CodedLeaf& l : f.leaves) {
    if (l.mode != LeafMode::kTexture) continue;
    ++leaves;
    for (int y = l.rect.y; y < l.rect.bottom(); ++y) {
      for (int x = l.rect.x; x < l.rect.right(); ++x) {
        ASSERT_EQ(r.recon[1].y().at(x, y), r.recon[0].y().at(x, y));
      }
    }
  }
  EXPECT_GT(leaves, 0);
}

// Texture leaves replace coded residual, so the texture frame spends fewer
// bits than under baseline.
TEST(Codec, StaticSceneTexCpSpendsFewerBits) {
  std::vector<TextureMask> masks;
  for (int i = 0; i < 3; ++i) masks.push_back(testing::mask_from_rows(BlockGrid(128, 128), 2, i));
  EncoderSettings s;
  s.qp = 16;
  const EncodeResult base = encode_sequence(static_clip().frames, s);
  s.config = CodecConfig::kTexCp;
  const EncodeResult tex = encode_sequence(static_clip().frames, s, masks);
  ASSERT_TRUE(tex.frames[1].texture_active);
  EXPECT_LT(tex.frames[1].bits, base.frames[1].bits);
  EXPECT_EQ(tex.frames[0].bits, base.frames[0].bits);
  EXPECT_EQ(tex.frames[2].bits, base.frames[2].bits);
}

TEST(Codec, InputValidation) {
  const auto& frames = small_clip().clip.frames;
  EncoderSettings s;
  EXPECT_THROW(encode_sequence(std::span(frames).first(1), s), InputError);
  s.config = CodecConfig::kTexCp;
  EXPECT_THROW(encode_sequence(frames, s), InputError);
  s.config = CodecConfig::kBaseline;
  s.qp = 64;
  EXPECT_THROW(encode_sequence(frames, s), InputError);
}

TEST(Codec, RemainderSizesRoundTrip) {
  testing::SceneParams p;
  p.width = 200;
  p.height = 90;
  p.n_frames = 3;
  const auto clip = testing::make_scene(p);
  std::vector<TextureMask> masks;
  for (int i = 0; i < 3; ++i) masks.push_back(testing::mask_from_rows(BlockGrid(200, 90), 1, i));
  EncoderSettings s;
  s.config = CodecConfig::kTexCp;
  s.qp = 24;
  const EncodeResult r = encode_sequence(clip.frames, s, masks);
  const auto decoded = decode_sequence(r.bitstream);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(r.recon[i].width(), 200);
    EXPECT_EQ(r.recon[i].height(), 90);
    EXPECT_TRUE(decoded[i].crc_ok);
    EXPECT_TRUE(same_frame(decoded[i].frame, r.recon[i]));
  }
}

TEST(Codec, QualityImprovesWithLowerQp) {
  const EncodeResult hi = encode(CodecConfig::kBaseline, 16);
  const EncodeResult lo = encode(CodecConfig::kBaseline, 40);
  double bits_hi = 0, bits_lo = 0;
  for (std::size_t i = 0; i < hi.frames.size(); ++i) {
    bits_hi += hi.frames[i].bits;
    bits_lo += lo.frames[i].bits;
  }
  EXPECT_GT(bits_hi, bits_lo);
}

}  // namespace
}  // namespace texlab
