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

// Rate, fidelity, coverage and flicker measurements, and the per-QP
// comparison table built from encode reports.

#ifndef TEXLAB_METRICS_H_
#define TEXLAB_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "texlab/block_grid.h"
#include "texlab/codec.h"
#include "texlab/frame.h"

namespace texlab {

// Reported for identical inputs in place of an infinite PSNR.
inline constexpr double kPsnrIdentical = 999.0;

// Per-pixel membership over a luma plane.
class PixelRegion {
 public:
  PixelRegion() = default;
  PixelRegion(int width, int height, bool inside = false);

  int width() const { return width_; }
  int height() const { return height_; }
  bool contains(int x, int y) const { return inside_[index(x, y)] != 0; }
  void set(int x, int y, bool inside) { inside_[index(x, y)] = inside ? 1 : 0; }
  void fill(const Rect& rect, bool inside);
  std::size_t count() const;
  PixelRegion complement() const;

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> inside_;
};

// Pixels of the visible frame covered by texture leaves.
PixelRegion texture_leaf_region(const FrameStats& stats, int width, int height);

// Total stream size in bits divided by the frame count. Throws InputError
// for n_frames < 1.
double data_rate(std::size_t stream_bytes, int n_frames);

// Luma PSNR, optionally over a region only. Returns kPsnrIdentical when the
// compared samples are equal. Throws DimensionError on a size mismatch and
// InputError for an empty region.
double psnr(const Frame& a, const Frame& b, const PixelRegion* region = nullptr);

// Mean luma SSIM over 8x8 windows placed every 4 pixels, with the usual
// constants (0.01 * 255)^2 and (0.03 * 255)^2.
double ssim(const Frame& a, const Frame& b);

struct FlickerResult {
  double score = 0.0;
  bool has_texture = false;  // false when no frame pair shares a texture pixel
};

// Temporal inconsistency of the reconstruction inside texture regions. For
// each consecutive pair, over luma pixels that are texture in both masks,
// the mean of |(R[t+1] - R[t]) - (S[t+1] - S[t])|; the score is the mean over
// pairs that have such pixels. Zero when recon equals source. Throws
// InputError for fewer than two frames or mismatched lengths or sizes.
FlickerResult flicker_score(std::span<const Frame> recon, std::span<const Frame> source,
                            std::span<const TextureMask> masks);

struct FrameReport {
  int display_index = 0;
  int coding_order = 0;
  std::string kind;
  int layer = 0;
  bool texture_enabled = false;
  bool texture_active = false;
  std::string fallback;
  int models = 0;
  double bits = 0.0;
  std::size_t payload_bytes = 0;
  double coeff_bits_conventional = 0.0;
  double coeff_bits_texture = 0.0;
  int texture_leaves = 0;
  double psnr_full = 0.0;
  std::optional<double> psnr_nontexture;  // absent when every pixel is texture
  double ssim = 0.0;
  double coverage = 0.0;  // texture-leaf pixels / gridded pixels
};

struct EncodeReport {
  std::string video;
  std::string config;
  int qp = 0;
  int width = 0;
  int height = 0;
  int n_frames = 0;
  std::uint64_t seed = 0;
  std::size_t stream_bytes = 0;
  // Mean of per-frame accounted bits (payload, header and model parameters).
  double bits_per_frame = 0.0;
  // data_rate of the container file.
  double container_bits_per_frame = 0.0;
  // Sequence PSNRs pool the squared error over all frames.
  double psnr_full = 0.0;
  std::optional<double> psnr_nontexture;
  double ssim = 0.0;
  double coverage = 0.0;
  std::optional<double> flicker;  // absent without masks or shared texture
  double texture_coeff_bits = 0.0;
  std::vector<FrameReport> frames;
};

// Measures an encode against its source. masks may be empty, in which case
// no flicker score is produced.
EncodeReport make_report(const EncodeResult& result, std::span<const Frame> source,
                         std::span<const TextureMask> masks, const std::string& video,
                         const EncoderSettings& settings);

std::string report_to_json(const EncodeReport& report);
// Throws InputError for malformed or incomplete JSON.
EncodeReport report_from_json(const std::string& text);

// (bits_tex - bits_base) / bits_base * 100; negative values are savings.
double rate_saving_percent(double base_bits, double tex_bits);

struct ComparisonRow {
  std::string video;
  int qp = 0;
  std::string config;
  double bits_per_frame = 0.0;
  double rate_saving_pct = 0.0;
  double psnr_full = 0.0;
  std::optional<double> psnr_nontex;
  double ssim = 0.0;
  double coverage_pct = 0.0;
  std::optional<double> flicker;
};

// One row per report, sorted by video, qp and configuration, with savings
// relative to the baseline report of the same video and qp. Throws
// InputError when a texture report has no baseline partner or a (video, qp,
// config) key repeats.
std::vector<ComparisonRow> build_comparison(std::span<const EncodeReport> base_reports,
                                            std::span<const EncodeReport> tex_reports);

// Fixed-precision number as used in tables: "-10.55".
std::string format_fixed(double value, int decimals = 2);

std::string comparison_csv(std::span<const ComparisonRow> rows);
std::string comparison_table(std::span<const ComparisonRow> rows);
// video,config,qp,rate_saving_pct for texture configurations.
std::string saving_vs_qp_csv(std::span<const ComparisonRow> rows);

struct TrendCheck {
  std::string video;
  std::string config;
  bool monotone = false;  // |saving| non-increasing in qp within tolerance
  std::vector<std::pair<int, double>> savings;
};

// Per texture configuration with at least two QPs.
std::vector<TrendCheck> saving_trends(std::span<const ComparisonRow> rows,
                                      double tolerance_pct = 1.0);
std::string trend_summary(std::span<const TrendCheck> trends);

}  // namespace texlab

#endif  // TEXLAB_METRICS_H_
