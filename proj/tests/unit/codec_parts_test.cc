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

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "tests/support/synthetic.h"
#include "texlab/bitstream.h"
#include "texlab/codec.h"
#include "texlab/color.h"
#include "texlab/errors.h"
#include "texlab/gf_plan.h"
#include "texlab/prediction.h"
#include "texlab/range_coder.h"
#include "texlab/transform.h"

namespace texlab {
namespace {

std::map<int, PlanEntry> by_display(int n, CodecConfig c, int interval = 16) {
  std::map<int, PlanEntry> out;
  for (const PlanEntry& e : coding_sequence(plan_gf_groups(n, c, interval))) {
    out[e.display_index] = e;
  }
  return out;
}

TEST(GfPlan, PyramidCodingOrder) {
  std::vector<int> order;
  for (const PlanEntry& e : coding_sequence(plan_gf_groups(9, CodecConfig::kBaseline))) {
    order.push_back(e.display_index);
  }
  EXPECT_EQ(order, (std::vector<int>{0, 8, 4, 2, 6, 1, 3, 5, 7}));
  const auto p = by_display(9, CodecConfig::kBaseline);
  EXPECT_EQ(p.at(0).kind, FrameKind::kGolden);
  EXPECT_EQ(p.at(8).kind, FrameKind::kAltref);
  EXPECT_EQ(p.at(4).layer, 1);
  EXPECT_EQ(p.at(6).layer, 2);
  EXPECT_EQ(p.at(5).layer, 3);
  EXPECT_EQ(p.at(6).refs, (std::vector<int>{4, 8}));
}

TEST(GfPlan, SeventeenFramesTexCp) {
  const auto groups = plan_gf_groups(17, CodecConfig::kTexCp);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[1].entries.front().display_index, 8);
  EXPECT_EQ(groups[1].entries.front().kind, FrameKind::kGolden);
  const auto p = by_display(17, CodecConfig::kTexCp);
  ASSERT_EQ(p.size(), 17u);
  std::set<int> enabled;
  for (const auto& [d, e] : p) {
    if (e.texture_enabled) enabled.insert(d);
  }
  EXPECT_EQ(enabled, (std::set<int>{1, 3, 5, 7, 9, 11, 13, 15}));
  EXPECT_EQ(p.at(3).texture_refs, (std::vector<int>{2, 4}));
  EXPECT_EQ(by_display(17, CodecConfig::kTexSp).at(3).texture_refs, (std::vector<int>{2}));
  for (const auto& [d, e] : by_display(17, CodecConfig::kBaseline)) {
    EXPECT_FALSE(e.texture_enabled);
  }
}

TEST(GfPlan, TexAllSingleLayer) {
  const auto p = by_display(20, CodecConfig::kTexAll, 16);
  EXPECT_EQ(p.at(16).kind, FrameKind::kAltref);
  EXPECT_EQ(p.at(19).kind, FrameKind::kAltref);
  for (int d : {1, 2, 9, 15, 17, 18}) {
    EXPECT_TRUE(p.at(d).texture_enabled);
    EXPECT_EQ(p.at(d).texture_refs, (std::vector<int>{d - 1}));
    EXPECT_EQ(p.at(d).layer, 1);
  }
  EXPECT_THROW(plan_gf_groups(20, CodecConfig::kTexAll, 3), InputError);
  EXPECT_THROW(plan_gf_groups(20, CodecConfig::kTexAll, 17), InputError);
  EXPECT_THROW(plan_gf_groups(1, CodecConfig::kBaseline), InputError);
}

// Every frame once; every reference coded earlier; texture references are
// conventional references too.
TEST(GfPlan, StructuralProperties) {
  for (CodecConfig c : {CodecConfig::kBaseline, CodecConfig::kTexAll, CodecConfig::kTexSp,
                        CodecConfig::kTexCp}) {
    for (int n = 2; n <= 40; ++n) {
      const auto seq = coding_sequence(plan_gf_groups(n, c, 4 + n % 13));
      ASSERT_EQ(static_cast<int>(seq.size()), n);
      std::map<int, int> order;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        ASSERT_EQ(seq[i].coding_order, static_cast<int>(i));
        order[seq[i].display_index] = seq[i].coding_order;
      }
      ASSERT_EQ(static_cast<int>(order.size()), n);
      for (const PlanEntry& e : seq) {
        for (int r : e.refs) ASSERT_LT(order.at(r), e.coding_order);
        for (int r : e.texture_refs) {
          ASSERT_NE(std::find(e.refs.begin(), e.refs.end(), r), e.refs.end());
        }
      }
    }
  }
}

TEST(GfPlan, ConfigNames) {
  for (const char* name : {"baseline", "tex-all", "tex-sp", "tex-cp"}) {
    EXPECT_EQ(config_name(parse_config(name)), name);
  }
  EXPECT_THROW(parse_config("tex"), InputError);
}

TEST(RangeCoder, RoundTripMixedContexts) {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_real_distribution<double> u(0, 1);
    const double bias = u(rng);
    std::vector<int> bits, ctx;
    for (int i = 0; i < 5000; ++i) {
      ctx.push_back(static_cast<int>(rng() % 5));
      bits.push_back(ctx.back() == 4 ? static_cast<int>(rng() & 1) : u(rng) < bias);
    }
    std::vector<Prob> enc_p(4), dec_p(4);
    RangeEncoder enc;
    BitCounter counter;
    std::vector<Prob> count_p(4);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (ctx[i] == 4) {
        enc.encode_bypass(bits[i]);
        counter.encode_bypass(bits[i]);
      } else {
        enc.encode(enc_p[ctx[i]], bits[i]);
        counter.encode(count_p[ctx[i]], bits[i]);
      }
    }
    const auto payload = enc.finish();
    RangeDecoder dec(payload);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      const int b = ctx[i] == 4 ? dec.decode_bypass() : dec.decode(dec_p[ctx[i]]);
      ASSERT_EQ(b, bits[i]) << "trial " << trial << " bit " << i;
    }
    EXPECT_NEAR(payload.size() * 8.0, counter.bits(), 48.0);
  }
}

TEST(RangeCoder, BitCost) {
  Prob p;
  EXPECT_NEAR(bit_cost(p, 0), 1.0, 1e-3);
  p.p0 = 1024;
  EXPECT_NEAR(bit_cost(p, 0), 2.0, 1e-3);
  EXPECT_NEAR(bit_cost(p, 1), -std::log2(0.75), 1e-3);
  Prob q;
  q.update(0);
  EXPECT_EQ(q.p0, 2048 + (2048 >> 5));
  q.update(1);
  EXPECT_EQ(q.p0, 2112 - (2112 >> 5));
}

TEST(Transform, QpToStep) {
  EXPECT_DOUBLE_EQ(qp_to_step(0), 2.0);
  EXPECT_DOUBLE_EQ(qp_to_step(8), 4.0);
  EXPECT_DOUBLE_EQ(qp_to_step(32), 32.0);
  EXPECT_NEAR(qp_to_step(12), std::pow(2.0, 2.5), 1e-12);
  for (int q = 1; q <= 63; ++q) EXPECT_GT(qp_to_step(q), qp_to_step(q - 1));
  EXPECT_THROW(qp_to_step(-1), InputError);
  EXPECT_THROW(qp_to_step(64), InputError);
  EXPECT_DOUBLE_EQ(rd_lambda(10.0), 85.0);
}

// Orthonormal DCT-II straight from its definition.
std::vector<double> dct_oracle(const std::vector<double>& x, int n) {
  std::vector<double> out(x.size());
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      double s = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          s += x[i * n + j] * std::cos((2 * i + 1) * u * std::numbers::pi / (2 * n)) *
               std::cos((2 * j + 1) * v * std::numbers::pi / (2 * n));
        }
      }
      const double cu = u ? std::sqrt(2.0 / n) : std::sqrt(1.0 / n);
      const double cv = v ? std::sqrt(2.0 / n) : std::sqrt(1.0 / n);
      out[u * n + v] = cu * cv * s;
    }
  }
  return out;
}

TEST(Transform, DctMatchesDefinitionAndInverts) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> u(-128, 128);
  for (int n : {4, 8}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> x(n * n);
      for (double& v : x) v = u(rng);
      const auto c = forward_dct(x, n);
      const auto want = dct_oracle(x, n);
      for (int i = 0; i < n * n; ++i) ASSERT_NEAR(c[i], want[i], 1e-9);
      const auto back = inverse_dct(c, n);
      for (int i = 0; i < n * n; ++i) ASSERT_NEAR(back[i], x[i], 1e-9);
    }
  }
}

TEST(Transform, QuantizerRounding) {
  const std::vector<double> c = {0.0, 7.9, 8.0, -8.0, 24.0, -23.9, 100.0, -4.0};
  const auto q = quantize(c, 16.0);
  EXPECT_EQ(q, (std::vector<int>{0, 0, 1, -1, 2, -1, 6, 0}));
  const auto d = dequantize(q, 16.0);
  EXPECT_EQ(d, (std::vector<double>{0, 0, 16, -16, 32, -16, 96, 0}));
}

TEST(Transform, Zigzag) {
  EXPECT_EQ(zigzag_order(4),
            (std::vector<int>{0, 1, 4, 8, 5, 2, 3, 6, 9, 12, 13, 10, 7, 11, 14, 15}));
  const auto& z8 = zigzag_order(8);
  ASSERT_EQ(z8.size(), 64u);
  EXPECT_EQ(std::set<int>(z8.begin(), z8.end()).size(), 64u);
  EXPECT_EQ((std::vector<int>(z8.begin(), z8.begin() + 6)), (std::vector<int>{0, 1, 8, 16, 9, 2}));
  EXPECT_EQ(z8.back(), 63);
  // Anti-diagonal index is non-decreasing along the scan.
  for (std::size_t i = 1; i < z8.size(); ++i) {
    EXPECT_GE(z8[i] / 8 + z8[i] % 8, z8[i - 1] / 8 + z8[i - 1] % 8);
  }
}

Frame ramp_frame(int w, int h) {
  Frame f(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) f.y().at(x, y) = static_cast<std::uint8_t>(2 * x + y);
  }
  for (int y = 0; y < h / 2; ++y) {
    for (int x = 0; x < w / 2; ++x) {
      f.u().at(x, y) = static_cast<std::uint8_t>(100 + x);
      f.v().at(x, y) = static_cast<std::uint8_t>(50 + 2 * y);
    }
  }
  return f;
}

PixelBlock crop(const Plane& p, const Rect& r, int dx = 0, int dy = 0) {
  PixelBlock out;
  for (int y = r.y; y < r.bottom(); ++y) {
    for (int x = r.x; x < r.right(); ++x) out.push_back(p.clamped(x + dx, y + dy));
  }
  return out;
}

TEST(Prediction, SixteenthSampling) {
  const Frame f = ramp_frame(64, 64);
  EXPECT_EQ(sample_sixteenth(f.y(), 5 * 16, 7 * 16), 2 * 5 + 7);
  EXPECT_EQ(sample_sixteenth(f.y(), 5 * 16 + 8, 7 * 16), 2 * 5 + 7 + 1);
  EXPECT_EQ(sample_sixteenth(f.y(), -100, -100), 0);  // clamped to the corner
  const Rect r{8, 8, 16, 16};
  EXPECT_EQ(predict_translational(f.y(), r, 3 * 16, -2 * 16), crop(f.y(), r, 3, -2));
}

TEST(Prediction, IntraDcAndPlanar) {
  Plane p(32, 32, 0);
  for (int x = 0; x < 32; ++x) p.at(x, 7) = 60;
  for (int y = 0; y < 32; ++y) p.at(7, y) = 100;
  const Rect r{8, 8, 8, 8};
  // Top row 8..15 at y=7 is 60; left column at x=7 is 100.
  EXPECT_EQ(predict_intra(p, r, IntraMode::kDc), PixelBlock(64, 80));
  EXPECT_EQ(predict_intra(p, {0, 0, 8, 8}, IntraMode::kDc), PixelBlock(64, 128));
  const PixelBlock planar = predict_intra(p, r, IntraMode::kPlanar);
  // Horizontal: (7 - x) * 100 + (x + 1) * 60, vertical: (7 - y) * 60 + (y + 1) * 100.
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      const int h = (7 - x) * 100 + (x + 1) * 60;
      const int v = (7 - y) * 60 + (y + 1) * 100;
      EXPECT_EQ(planar[y * 8 + x], (h + v + 8) >> 4);
    }
  }
  EXPECT_THROW(predict_intra(p, {8, 8, 16, 8}, IntraMode::kPlanar), ShapeError);
}

TEST(Warp, IdentityCopiesAllPlanes) {
  const Frame f = ramp_frame(96, 64);
  const Rect r{32, 0, 32, 32};
  const WarpedBlock w = warp_block(f, AffineModel::identity(), r);
  EXPECT_EQ(w.y, crop(f.y(), r));
  EXPECT_EQ(w.u, crop(f.u(), {16, 0, 16, 16}));
  EXPECT_EQ(w.v, crop(f.v(), {16, 0, 16, 16}));
}

TEST(Warp, IntegerTranslationShiftsLuma) {
  const Frame f = ramp_frame(96, 96);
  const Rect r{32, 32, 32, 32};
  EXPECT_EQ(warp_plane_block(f.y(), AffineModel::translation(5, -3), r, false),
            crop(f.y(), r, 5, -3));
  const PixelBlock chroma = warp_plane_block(f.u(), AffineModel::translation(4, 2), {16, 16, 16, 16}, true);
  EXPECT_EQ(chroma, crop(f.u(), {16, 16, 16, 16}, 2, 1));
}

TEST(Warp, HalfPelOnRampIsExactMidpoint) {
  const Frame f = ramp_frame(96, 64);
  const Rect r{32, 0, 32, 32};
  const PixelBlock w = warp_plane_block(f.y(), AffineModel::translation(0.5, 0), r, false);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) EXPECT_EQ(w[y * 32 + x], 2 * (32 + x) + y + 1);
  }
}

// Bilinear interpolation at the 1/64-pel rounded position, computed directly.
int warp_oracle(const Plane& p, const AffineModel& m, int x, int y) {
  const double sx = std::llround(m.map_x(x, y) * 64) / 64.0;
  const double sy = std::llround(m.map_y(x, y) * 64) / 64.0;
  const double x0 = std::floor(sx), y0 = std::floor(sy);
  const int fx = static_cast<int>((sx - x0) * 64), fy = static_cast<int>((sy - y0) * 64);
  const int ix = static_cast<int>(x0), iy = static_cast<int>(y0);
  const int s = p.clamped(ix, iy) * (64 - fx) * (64 - fy) + p.clamped(ix + 1, iy) * fx * (64 - fy) +
                p.clamped(ix, iy + 1) * (64 - fx) * fy + p.clamped(ix + 1, iy + 1) * fx * fy;
  return (s + 2048) >> 12;
}

TEST(Warp, AffineMatchesDirectBilinear) {
  const Plane p = testing::random_plane(128, 128, 4);
  const AffineModel m{1.013, -0.021, 0.017, 0.991, 2.37, -1.61};
  const Rect r{32, 64, 64, 32};
  const PixelBlock w = warp_plane_block(p, m, r, false);
  for (int y = 0; y < r.h; ++y) {
    for (int x = 0; x < r.w; ++x) {
      ASSERT_EQ(w[y * r.w + x], warp_oracle(p, m, r.x + x, r.y + y));
    }
  }
}

// A pixel's prediction depends only on its position, so adjacent leaves
// warped separately join without a seam.
TEST(Warp, AdjacentLeavesAreSeamless) {
  const Frame f = rgb_to_yuv420(testing::random_rgb(192, 128, 6));
  const AffineModel m{0.98, 0.03, -0.02, 1.01, 3.3, 1.7};
  const WarpedBlock whole = warp_block(f, m, {64, 32, 64, 32});
  const WarpedBlock left = warp_block(f, m, {64, 32, 32, 32});
  const WarpedBlock right = warp_block(f, m, {96, 32, 32, 32});
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      ASSERT_EQ(whole.y[y * 64 + x], left.y[y * 32 + x]);
      ASSERT_EQ(whole.y[y * 64 + 32 + x], right.y[y * 32 + x]);
    }
  }
  for (int y = 0; y < 16; ++y) {
    for (int x = 0; x < 16; ++x) {
      ASSERT_EQ(whole.u[y * 32 + x], left.u[y * 16 + x]);
      ASSERT_EQ(whole.v[y * 32 + 16 + x], right.v[y * 16 + x]);
    }
  }
}

TEST(Warp, AverageRoundsHalvesUp) {
  EXPECT_EQ(average_predictions({0, 1, 254, 255, 10}, {0, 2, 255, 255, 13}),
            (PixelBlock{0, 2, 255, 255, 12}));
}

TEST(Warp, CompoundTextureBlockAveragesBothReferences) {
  const Frame a = ramp_frame(96, 64);
  const Frame b = rgb_to_yuv420(testing::random_rgb(96, 64, 3));
  const Rect r{32, 0, 32, 32};
  const AffineModel models[] = {AffineModel::identity(), AffineModel::translation(2, 0)};
  const Frame* refs[] = {&a, &b};
  const WarpedBlock got = reconstruct_texture_block(r, models, refs);
  const WarpedBlock wa = warp_block(a, models[0], r);
  const WarpedBlock wb = warp_block(b, models[1], r);
  EXPECT_EQ(got.y, average_predictions(wa.y, wb.y));
  EXPECT_EQ(got.u, average_predictions(wa.u, wb.u));
  EXPECT_EQ(got.v, average_predictions(wa.v, wb.v));
  const WarpedBlock single = reconstruct_texture_block(r, std::span(models, 1), std::span(refs, 1));
  EXPECT_EQ(single.y, wa.y);
}

class TextureDecision : public ::testing::Test {
 protected:
  TextureDecision() : grid_(192, 128), cur_(grid_), ref_(grid_) {
    for (int r = 0; r < grid_.rows(); ++r) {
      for (int c = 0; c < grid_.cols(); ++c) {
        cur_.set_label(r, c, 0);
        ref_.set_label(r, c, 0);
      }
    }
    entry_.display_index = 3;
    entry_.refs = {2, 4};
    entry_.texture_refs = {2};
    ref_masks_ = {{2, ref_}, {4, ref_}};
    models_ = {{2, AffineModel::identity()}, {4, AffineModel::identity()}};
  }

  bool decide(const Rect& r, bool strict = false) {
    return is_texture_block(r, cur_, entry_, ref_masks_, models_, strict);
  }

  BlockGrid grid_;
  TextureMask cur_, ref_;
  PlanEntry entry_;
  std::map<int, TextureMask> ref_masks_;
  std::map<int, AffineModel> models_;
};

TEST_F(TextureDecision, AllTextureIdentityAccepts) {
  EXPECT_TRUE(decide({64, 64, 64, 64}));
  EXPECT_TRUE(decide({0, 0, 32, 32}, true));
}

TEST_F(TextureDecision, CurrentMaskMustCoverEveryBlock) {
  cur_.set_label(3, 3, TextureMask::kNonTexture);
  EXPECT_FALSE(decide({64, 64, 64, 64}));
  EXPECT_TRUE(decide({0, 64, 64, 64}));
}

TEST_F(TextureDecision, ProbesMustLandInReferenceTexture) {
  ref_masks_[2].set_label(2, 4, TextureMask::kNonTexture);  // pixels 128..159 x 64..95
  models_[2] = AffineModel::translation(64, 0);
  EXPECT_FALSE(decide({64, 64, 64, 64}));  // top-left corner lands at (128, 64)
  EXPECT_TRUE(decide({0, 0, 64, 32}));
  // Off the reference frame.
  models_[2] = AffineModel::translation(-10, 0);
  EXPECT_FALSE(decide({0, 0, 32, 32}));
}

TEST_F(TextureDecision, StrictContainmentChecksInteriorPixels) {
  // The 96x96 rect maps onto reference pixels 0..95 in both axes. Block
  // (row 1, col 2) covers 64..95 x 32..63, which no corner or centre probe
  // touches.
  ref_masks_[2].set_label(1, 2, TextureMask::kNonTexture);
  models_[2] = AffineModel::translation(-32, -32);
  const Rect r{32, 32, 96, 96};
  EXPECT_TRUE(decide(r));
  EXPECT_FALSE(decide(r, true));
}

TEST_F(TextureDecision, MissingModelOrCompoundReference) {
  models_.erase(2);
  EXPECT_FALSE(decide({0, 0, 32, 32}));
  models_[2] = AffineModel::identity();
  entry_.texture_refs = {2, 4};
  ref_masks_[4].set_label(0, 0, TextureMask::kNonTexture);
  EXPECT_FALSE(decide({0, 0, 32, 32}));
  entry_.texture_refs.clear();
  EXPECT_FALSE(decide({32, 32, 32, 32}));
}

TEST_F(TextureDecision, RejectsUnalignedRects) {
  EXPECT_THROW(decide({16, 0, 32, 32}), InputError);
  EXPECT_THROW(decide({0, 0, 16, 16}), InputError);
  EXPECT_THROW(decide({0, 0, 48, 32}), InputError);
}

FrameRecord sample_record(int display) {
  FrameRecord r;
  r.display_index = display;
  r.kind = FrameKind::kInter;
  r.layer = 3;
  r.qp = 24;
  r.refs = {display - 1, display + 1};
  r.texture_active = true;
  r.models = {{display - 1, {1.0f, 0.5f, -0.25f, 1.0f, 3.5f, -2.0f}}};
  r.payload = {1, 2, 3, 4, 5, 250};
  r.crc = 0xDEADBEEF;
  return r;
}

TEST(Bitstream, ContainerRoundTrip) {
  const SequenceHeader h{352, 288, 3, 24};
  FrameRecord first = sample_record(0);
  first.kind = FrameKind::kGolden;
  first.refs.clear();
  first.models.clear();
  first.texture_active = false;
  const std::vector<FrameRecord> recs = {first, sample_record(1), sample_record(2)};
  const auto bytes = write_container(h, recs);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 5), "TEXC1");
  const ParsedStream s = parse_container(bytes);
  EXPECT_EQ(s.header.width, 352);
  EXPECT_EQ(s.header.height, 288);
  EXPECT_EQ(s.header.n_frames, 3);
  EXPECT_EQ(s.header.qp, 24);
  ASSERT_EQ(s.records.size(), 3u);
  EXPECT_EQ(s.records[0].offset, kSequenceHeaderBytes);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(s.records[i].display_index, recs[i].display_index);
    EXPECT_EQ(s.records[i].kind, recs[i].kind);
    EXPECT_EQ(s.records[i].refs, recs[i].refs);
    EXPECT_EQ(s.records[i].texture_active, recs[i].texture_active);
    EXPECT_EQ(s.records[i].payload, recs[i].payload);
    EXPECT_EQ(s.records[i].crc, recs[i].crc);
    ASSERT_EQ(s.records[i].models.size(), recs[i].models.size());
    for (std::size_t m = 0; m < recs[i].models.size(); ++m) {
      EXPECT_EQ(s.records[i].models[m].params, recs[i].models[m].params);
    }
  }
  EXPECT_EQ(s.records.back().offset + s.records.back().size, bytes.size());
}

TEST(Bitstream, StructuralErrors) {
  const auto good = write_container({64, 64, 2, 16}, {sample_record(0), sample_record(1)});
  auto bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_THROW(parse_container(bad_magic), ParseError);
  for (std::size_t cut : {std::size_t{0}, std::size_t{4}, kSequenceHeaderBytes, good.size() - 1}) {
    EXPECT_THROW(parse_container(std::span(good).first(cut)), ParseError) << cut;
  }
  auto trailing = good;
  trailing.push_back(0);
  EXPECT_THROW(parse_container(trailing), ParseError);
  auto bad_version = good;
  bad_version[5] = 9;
  EXPECT_THROW(parse_container(bad_version), ParseError);
}

TEST(Bitstream, FuzzedBytesNeverCrash) {
  const auto good = write_container({64, 64, 2, 16}, {sample_record(0), sample_record(1)});
  std::mt19937 rng(5);
  for (int i = 0; i < 2000; ++i) {
    auto b = good;
    b[rng() % b.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    try {
      parse_container(b);
    } catch (const ParseError&) {
    }
  }
}

}  // namespace
}  // namespace texlab
