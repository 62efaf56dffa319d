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
#include <random>
#include <vector>

#include "tests/support/synthetic.h"
#include "texlab/color.h"
#include "texlab/errors.h"
#include "texlab/metrics.h"

namespace texlab {
namespace {

Frame noise_frame(int w, int h, std::uint64_t seed) {
  return rgb_to_yuv420(testing::random_rgb(w, h, seed));
}

Frame offset_luma(const Frame& f, int delta) {
  Frame out = f;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      out.y().at(x, y) = static_cast<std::uint8_t>(std::clamp(f.y().at(x, y) + delta, 0, 255));
    }
  }
  return out;
}

TEST(Psnr, UnitMse) {
  const Frame a(64, 64, 100);
  EXPECT_NEAR(psnr(a, offset_luma(a, 1)), 10 * std::log10(255.0 * 255.0), 1e-9);
  EXPECT_NEAR(psnr(a, offset_luma(a, 1)), 48.13, 0.005);
}

TEST(Psnr, IdenticalIsSentinel) {
  const Frame a = noise_frame(64, 64, 1);
  EXPECT_EQ(psnr(a, a), kPsnrIdentical);
}

TEST(Psnr, ChromaIsIgnored) {
  const Frame a = noise_frame(64, 64, 1);
  Frame b = a;
  b.u().at(3, 3) ^= 0xFF;
  EXPECT_EQ(psnr(a, b), kPsnrIdentical);
}

TEST(Psnr, MaskedMatchesBruteForce) {
  const Frame a = noise_frame(96, 64, 2);
  const Frame b = noise_frame(96, 64, 3);
  PixelRegion region(96, 64);
  region.fill({32, 0, 32, 32}, true);
  region.set(5, 60, true);
  double sse = 0;
  int n = 0;
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 96; ++x) {
      if (!region.contains(x, y)) continue;
      const double d = a.y().at(x, y) - b.y().at(x, y);
      sse += d * d;
      ++n;
    }
  }
  EXPECT_EQ(region.count(), 1025u);
  EXPECT_NEAR(psnr(a, b, &region), 10 * std::log10(255.0 * 255.0 * n / sse), 1e-9);
  EXPECT_EQ(region.complement().count(), 96u * 64 - 1025);
  EXPECT_THROW(psnr(a, b, &(const PixelRegion&)PixelRegion(96, 64)), InputError);
  EXPECT_THROW(psnr(a, Frame(64, 64)), DimensionError);
}

TEST(Ssim, IdenticalIsOneAndNoiseIsLower) {
  const Frame a = noise_frame(64, 64, 4);
  EXPECT_NEAR(ssim(a, a), 1.0, 1e-12);
  const double s = ssim(a, noise_frame(64, 64, 5));
  EXPECT_LT(s, 0.5);
  EXPECT_GT(s, -1.0);
  EXPECT_NEAR(ssim(a, noise_frame(64, 64, 5)), ssim(noise_frame(64, 64, 5), a), 1e-12);
}

TEST(DataRate, BitsPerFrame) {
  EXPECT_DOUBLE_EQ(data_rate(1000, 10), 800.0);
  EXPECT_THROW(data_rate(1000, 0), InputError);
}

std::vector<TextureMask> masks_with_rows(int n, int w, int h, int first_row) {
  std::vector<TextureMask> out;
  for (int i = 0; i < n; ++i) out.push_back(testing::mask_from_rows(BlockGrid(w, h), first_row, i));
  return out;
}

TEST(Flicker, SourceAgainstItselfIsZero) {
  std::vector<Frame> src;
  for (int i = 0; i < 4; ++i) src.push_back(noise_frame(64, 64, 10 + i));
  const FlickerResult f = flicker_score(src, src, masks_with_rows(4, 64, 64, 0));
  EXPECT_TRUE(f.has_texture);
  EXPECT_EQ(f.score, 0.0);
}

TEST(Flicker, ConstantStepOnStaticSource) {
  const Frame base(64, 64, 100);
  const std::vector<Frame> src = {base, base, base};
  const std::vector<Frame> rec = {base, offset_luma(base, 3), offset_luma(base, 3)};
  // Pair deltas are 3 and 0.
  EXPECT_DOUBLE_EQ(flicker_score(rec, src, masks_with_rows(3, 64, 64, 0)).score, 1.5);
}

TEST(Flicker, OnlySharedTexturePixelsCount) {
  const Frame base(64, 64, 100);
  Frame noisy = base;
  for (int x = 0; x < 64; ++x) noisy.y().at(x, 0) = 200;  // top row, outside texture
  const std::vector<Frame> src = {base, base};
  const std::vector<Frame> rec = {base, noisy};
  const FlickerResult f = flicker_score(rec, src, masks_with_rows(2, 64, 64, 1));
  EXPECT_TRUE(f.has_texture);
  EXPECT_EQ(f.score, 0.0);
  const FlickerResult none = flicker_score(rec, src, masks_with_rows(2, 64, 64, 2));
  EXPECT_FALSE(none.has_texture);
}

TEST(Flicker, MatchesBruteForceOnRandomInput) {
  std::vector<Frame> src, rec;
  for (int i = 0; i < 5; ++i) {
    src.push_back(noise_frame(96, 64, 20 + i));
    rec.push_back(noise_frame(96, 64, 40 + i));
  }
  std::vector<TextureMask> masks;
  std::mt19937 rng(3);
  for (int i = 0; i < 5; ++i) {
    TextureMask m(BlockGrid(96, 64), i);
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) {
        if (rng() % 2) m.set_label(r, c, 0);
      }
    }
    masks.push_back(m);
  }
  double total = 0;
  int pairs = 0;
  for (int t = 0; t + 1 < 5; ++t) {
    double s = 0;
    int n = 0;
    for (int y = 0; y < 64; ++y) {
      for (int x = 0; x < 96; ++x) {
        if (!masks[t].is_texture(y / 32, x / 32) || !masks[t + 1].is_texture(y / 32, x / 32)) {
          continue;
        }
        s += std::abs((rec[t + 1].y().at(x, y) - rec[t].y().at(x, y)) -
                      (src[t + 1].y().at(x, y) - src[t].y().at(x, y)));
        ++n;
      }
    }
    if (n) {
      total += s / n;
      ++pairs;
    }
  }
  ASSERT_GT(pairs, 0);
  EXPECT_NEAR(flicker_score(rec, src, masks).score, total / pairs, 1e-9);
}

TEST(Flicker, InputErrors) {
  const std::vector<Frame> one = {Frame(64, 64)};
  EXPECT_THROW(flicker_score(one, one, masks_with_rows(1, 64, 64, 0)), InputError);
  const std::vector<Frame> two = {Frame(64, 64), Frame(64, 64)};
  EXPECT_THROW(flicker_score(two, one, masks_with_rows(2, 64, 64, 0)), InputError);
}

EncodeReport report(const std::string& video, const std::string& config, int qp, double bpf) {
  EncodeReport r;
  r.video = video;
  r.config = config;
  r.qp = qp;
  r.width = 64;
  r.height = 64;
  r.n_frames = 2;
  r.bits_per_frame = bpf;
  r.psnr_full = 38.5;
  r.ssim = 0.95;
  r.coverage = config == "baseline" ? 0.0 : 0.25;
  if (config != "baseline") r.flicker = 1.234;
  return r;
}

TEST(Comparison, SavingsAndFormatting) {
  EXPECT_DOUBLE_EQ(rate_saving_percent(1000, 894.5), -10.55);
  EXPECT_EQ(format_fixed(-10.549999), "-10.55");
  EXPECT_EQ(format_fixed(-0.001), "0.00");
  EXPECT_EQ(format_fixed(3.14159, 3), "3.142");
  const std::vector<EncodeReport> base = {report("b", "baseline", 32, 2000),
                                          report("a", "baseline", 32, 1000)};
  const std::vector<EncodeReport> tex = {report("a", "tex-cp", 32, 894.5),
                                         report("a", "tex-sp", 32, 1000),
                                         report("b", "tex-cp", 32, 1500)};
  const auto rows = build_comparison(base, tex);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].video, "a");
  EXPECT_EQ(rows[0].config, "baseline");
  EXPECT_EQ(rows[1].config, "tex-sp");
  EXPECT_EQ(rows[2].config, "tex-cp");
  EXPECT_EQ(format_fixed(rows[2].rate_saving_pct), "-10.55");
  EXPECT_EQ(format_fixed(rows[1].rate_saving_pct), "0.00");
  EXPECT_DOUBLE_EQ(rows[4].rate_saving_pct, -25.0);
  EXPECT_DOUBLE_EQ(rows[2].coverage_pct, 25.0);
  const std::string csv = comparison_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "video,qp,config,bits_per_frame,rate_saving_pct,psnr_full,psnr_nontex,ssim,"
            "coverage_pct,flicker");
  EXPECT_NE(csv.find("a,32,tex-cp,894.5,-10.55,38.50,"), std::string::npos);
  EXPECT_NE(comparison_table(rows).find("-10.55"), std::string::npos);
  EXPECT_NE(saving_vs_qp_csv(rows).find("a,tex-cp,32,-10.55"), std::string::npos);
  EXPECT_EQ(saving_vs_qp_csv(rows).find("baseline"), std::string::npos);
}

TEST(Comparison, RejectsInconsistentInputs) {
  const std::vector<EncodeReport> base = {report("a", "baseline", 32, 1000)};
  const std::vector<EncodeReport> orphan = {report("a", "tex-cp", 24, 900)};
  EXPECT_THROW(build_comparison(base, orphan), InputError);
  const std::vector<EncodeReport> dup = {report("a", "tex-cp", 32, 900),
                                         report("a", "tex-cp", 32, 800)};
  EXPECT_THROW(build_comparison(base, dup), InputError);
  const std::vector<EncodeReport> not_base = {report("a", "tex-sp", 32, 1000)};
  EXPECT_THROW(build_comparison(not_base, {}), InputError);
}

TEST(Comparison, SavingTrends) {
  std::vector<ComparisonRow> rows;
  auto add = [&](const std::string& cfg, int qp, double s) {
    ComparisonRow r;
    r.video = "v";
    r.config = cfg;
    r.qp = qp;
    r.rate_saving_pct = s;
    rows.push_back(r);
  };
  add("tex-cp", 16, -30);
  add("tex-cp", 24, -24);
  add("tex-cp", 32, -24.8);  // within the 1 pp tolerance
  add("tex-cp", 40, -15);
  add("tex-sp", 16, -10);
  add("tex-sp", 24, -14);
  add("tex-all", 16, -10);
  add("baseline", 16, 0);
  const auto trends = saving_trends(rows);
  ASSERT_EQ(trends.size(), 2u);
  std::map<std::string, bool> by_config;
  for (const auto& t : trends) by_config[t.config] = t.monotone;
  EXPECT_TRUE(by_config.at("tex-cp"));
  EXPECT_FALSE(by_config.at("tex-sp"));
  EXPECT_FALSE(by_config.count("tex-all"));
  EXPECT_NE(trend_summary(trends).find("trend v tex-cp: savings shrink with qp (qp16 -30.00, qp24 "
                                       "-24.00, qp32 -24.80, qp40 -15.00)"),
            std::string::npos);
}

TEST(Report, JsonRoundTrip) {
  EncodeReport r = report("clip", "tex-cp", 24, 1234.5);
  r.seed = 7;
  r.psnr_nontexture = 40.25;
  FrameReport f;
  f.display_index = 1;
  f.kind = "INTER";
  f.fallback = "no model";
  f.bits = 99;
  f.psnr_full = 37.0;
  r.frames.push_back(f);
  f.display_index = 0;
  f.psnr_nontexture = 41.0;
  r.frames.push_back(f);
  const EncodeReport back = report_from_json(report_to_json(r));
  EXPECT_EQ(report_to_json(back), report_to_json(r));
  EXPECT_EQ(back.flicker, r.flicker);
  EXPECT_EQ(back.psnr_nontexture, r.psnr_nontexture);
  ASSERT_EQ(back.frames.size(), 2u);
  EXPECT_FALSE(back.frames[0].psnr_nontexture.has_value());
  EXPECT_EQ(back.frames[0].fallback, "no model");
  EXPECT_THROW(report_from_json("{"), InputError);
  EXPECT_THROW(report_from_json("{\"video\": 3}"), InputError);
}

TEST(Report, MeasuresAnEncode) {
  testing::SceneParams p;
  p.width = 128;
  p.height = 128;
  p.n_frames = 3;
  const auto clip = testing::make_scene(p);
  std::vector<TextureMask> masks;
  for (int i = 0; i < 3; ++i) masks.push_back(testing::mask_from_rows(BlockGrid(128, 128), 2, i));
  EncoderSettings s;
  s.config = CodecConfig::kTexCp;
  s.qp = 24;
  const EncodeResult res = encode_sequence(clip.frames, s, masks);
  const EncodeReport r = make_report(res, clip.frames, masks, "scene", s);
  EXPECT_EQ(r.config, "tex-cp");
  EXPECT_EQ(r.n_frames, 3);
  EXPECT_EQ(r.stream_bytes, res.bitstream.size());
  EXPECT_DOUBLE_EQ(r.container_bits_per_frame, data_rate(res.bitstream.size(), 3));
  double bits = 0;
  for (const FrameStats& f : res.frames) bits += f.bits;
  EXPECT_NEAR(r.bits_per_frame, bits / 3, 1e-9);
  ASSERT_EQ(r.frames.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(r.frames[i].psnr_full, psnr(res.recon[i], clip.frames[i]), 1e-9);
    const PixelRegion tex = texture_leaf_region(res.frames[i], 128, 128);
    EXPECT_NEAR(r.frames[i].coverage, static_cast<double>(tex.count()) / (128 * 128), 1e-12);
  }
  EXPECT_TRUE(r.flicker.has_value());
  EXPECT_GT(r.coverage, 0.0);
}

}  // namespace
}  // namespace texlab
