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

#include "texlab/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "texlab/errors.h"
#include "texlab/parallel.h"

namespace texlab {

PixelRegion::PixelRegion(int width, int height, bool inside)
    : width_(width),
      height_(height),
      inside_(static_cast<std::size_t>(width) * height, inside ? 1 : 0) {}

void PixelRegion::fill(const Rect& rect, bool inside) {
  const int x0 = std::max(rect.x, 0);
  const int y0 = std::max(rect.y, 0);
  const int x1 = std::min(rect.right(), width_);
  const int y1 = std::min(rect.bottom(), height_);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) set(x, y, inside);
  }
}

std::size_t PixelRegion::count() const {
  return static_cast<std::size_t>(std::count(inside_.begin(), inside_.end(), 1));
}

PixelRegion PixelRegion::complement() const {
  PixelRegion out = *this;
  for (auto& v : out.inside_) v = v ? 0 : 1;
  return out;
}

PixelRegion texture_leaf_region(const FrameStats& stats, int width, int height) {
  PixelRegion region(width, height);
  for (const CodedLeaf& leaf : stats.leaves) {
    if (leaf.mode == LeafMode::kTexture) region.fill(leaf.rect, true);
  }
  return region;
}

double data_rate(std::size_t stream_bytes, int n_frames) {
  if (n_frames < 1) throw InputError("data rate needs at least one frame");
  return static_cast<double>(stream_bytes) * 8.0 / n_frames;
}

namespace {

struct SquaredError {
  double sse = 0.0;
  std::size_t count = 0;
};

SquaredError luma_sse(const Frame& a, const Frame& b, const PixelRegion* region) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw DimensionError("frames differ in size");
  }
  if (region && (region->width() != a.width() || region->height() != a.height())) {
    throw DimensionError("region does not match the frame size");
  }
  SquaredError out;
  for (int y = 0; y < a.height(); ++y) {
    const auto ra = a.y().row(y);
    const auto rb = b.y().row(y);
    for (int x = 0; x < a.width(); ++x) {
      if (region && !region->contains(x, y)) continue;
      const double d = static_cast<double>(ra[x]) - rb[x];
      out.sse += d * d;
      ++out.count;
    }
  }
  return out;
}

double psnr_from(const SquaredError& e) {
  if (e.count == 0) throw InputError("PSNR over an empty region");
  if (e.sse == 0.0) return kPsnrIdentical;
  return 10.0 * std::log10(255.0 * 255.0 / (e.sse / static_cast<double>(e.count)));
}

}  // namespace

double psnr(const Frame& a, const Frame& b, const PixelRegion* region) {
  return psnr_from(luma_sse(a, b, region));
}

double ssim(const Frame& a, const Frame& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw DimensionError("frames differ in size");
  }
  constexpr int kWindow = 8;
  constexpr int kStride = 4;
  constexpr double kC1 = (0.01 * 255) * (0.01 * 255);
  constexpr double kC2 = (0.03 * 255) * (0.03 * 255);
  double total = 0.0;
  int windows = 0;
  for (int y = 0; y + kWindow <= a.height(); y += kStride) {
    for (int x = 0; x + kWindow <= a.width(); x += kStride) {
      double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
      for (int j = 0; j < kWindow; ++j) {
        for (int i = 0; i < kWindow; ++i) {
          const double pa = a.y().at(x + i, y + j);
          const double pb = b.y().at(x + i, y + j);
          sa += pa;
          sb += pb;
          saa += pa * pa;
          sbb += pb * pb;
          sab += pa * pb;
        }
      }
      constexpr double n = kWindow * kWindow;
      const double ma = sa / n;
      const double mb = sb / n;
      const double va = saa / n - ma * ma;
      const double vb = sbb / n - mb * mb;
      const double cov = sab / n - ma * mb;
      total += ((2 * ma * mb + kC1) * (2 * cov + kC2)) /
               ((ma * ma + mb * mb + kC1) * (va + vb + kC2));
      ++windows;
    }
  }
  return windows > 0 ? total / windows : 1.0;
}

FlickerResult flicker_score(std::span<const Frame> recon, std::span<const Frame> source,
                            std::span<const TextureMask> masks) {
  if (recon.size() < 2) throw InputError("flicker needs at least two frames");
  if (source.size() != recon.size() || masks.size() != recon.size()) {
    throw InputError("flicker inputs differ in length");
  }
  for (std::size_t i = 0; i < recon.size(); ++i) {
    if (recon[i].width() != source[i].width() || recon[i].height() != source[i].height() ||
        recon[i].width() != recon[0].width() || recon[i].height() != recon[0].height()) {
      throw InputError("flicker inputs differ in size");
    }
  }
  const std::size_t pairs = recon.size() - 1;
  std::vector<double> sums(pairs, 0.0);
  std::vector<std::size_t> counts(pairs, 0);
  parallel_for(static_cast<int>(pairs), [&](int t) {
    const Frame& r0 = recon[t];
    const Frame& r1 = recon[t + 1];
    const Frame& s0 = source[t];
    const Frame& s1 = source[t + 1];
    for (int y = 0; y < r0.height(); ++y) {
      for (int x = 0; x < r0.width(); ++x) {
        if (!masks[t].is_texture_pixel(x, y) || !masks[t + 1].is_texture_pixel(x, y)) continue;
        const int dr = r1.y().at(x, y) - r0.y().at(x, y);
        const int ds = s1.y().at(x, y) - s0.y().at(x, y);
        sums[t] += std::abs(dr - ds);
        ++counts[t];
      }
    }
  });
  FlickerResult out;
  int used = 0;
  for (std::size_t t = 0; t < pairs; ++t) {
    if (counts[t] == 0) continue;
    out.score += sums[t] / static_cast<double>(counts[t]);
    ++used;
  }
  if (used > 0) {
    out.score /= used;
    out.has_texture = true;
  }
  return out;
}

EncodeReport make_report(const EncodeResult& result, std::span<const Frame> source,
                         std::span<const TextureMask> masks, const std::string& video,
                         const EncoderSettings& settings) {
  const std::size_t n = result.recon.size();
  if (n == 0 || source.size() != n || result.frames.size() != n) {
    throw InputError("report inputs differ in length");
  }
  EncodeReport report;
  report.video = video;
  report.config = config_name(settings.config);
  report.qp = settings.qp;
  report.width = source[0].width();
  report.height = source[0].height();
  report.n_frames = static_cast<int>(n);
  report.seed = settings.seed;
  report.stream_bytes = result.bitstream.size();
  report.container_bits_per_frame = data_rate(result.bitstream.size(), report.n_frames);

  const BlockGrid grid(report.width, report.height);
  const double gridded = static_cast<double>(grid.covered_rect().w) * grid.covered_rect().h;
  report.frames.resize(n);
  std::vector<SquaredError> full(n), nontex(n);
  parallel_for(static_cast<int>(n), [&](int i) {
    const FrameStats& s = result.frames[i];
    FrameReport& f = report.frames[i];
    f.display_index = s.display_index;
    f.coding_order = s.coding_order;
    f.kind = frame_kind_name(s.kind);
    f.layer = s.layer;
    f.texture_enabled = s.texture_enabled;
    f.texture_active = s.texture_active;
    f.fallback = s.fallback;
    f.models = static_cast<int>(s.models.size());
    f.bits = s.bits;
    f.payload_bytes = s.payload_bytes;
    f.coeff_bits_conventional = s.coeff_bits_conventional;
    f.coeff_bits_texture = s.coeff_bits_texture;
    f.texture_leaves = static_cast<int>(std::count_if(
        s.leaves.begin(), s.leaves.end(),
        [](const CodedLeaf& l) { return l.mode == LeafMode::kTexture; }));
    const PixelRegion tex = texture_leaf_region(s, report.width, report.height);
    const PixelRegion rest = tex.complement();
    full[i] = luma_sse(result.recon[i], source[i], nullptr);
    f.psnr_full = psnr_from(full[i]);
    nontex[i] = luma_sse(result.recon[i], source[i], &rest);
    if (nontex[i].count > 0) f.psnr_nontexture = psnr_from(nontex[i]);
    f.ssim = ssim(result.recon[i], source[i]);
    f.coverage = gridded > 0 ? static_cast<double>(tex.count()) / gridded : 0.0;
  });

  SquaredError pooled_full, pooled_nontex;
  for (std::size_t i = 0; i < n; ++i) {
    const FrameReport& f = report.frames[i];
    report.bits_per_frame += f.bits;
    report.ssim += f.ssim;
    report.coverage += f.coverage;
    report.texture_coeff_bits += f.coeff_bits_texture;
    pooled_full.sse += full[i].sse;
    pooled_full.count += full[i].count;
    pooled_nontex.sse += nontex[i].sse;
    pooled_nontex.count += nontex[i].count;
  }
  report.bits_per_frame /= static_cast<double>(n);
  report.ssim /= static_cast<double>(n);
  report.coverage /= static_cast<double>(n);
  report.psnr_full = psnr_from(pooled_full);
  if (pooled_nontex.count > 0) report.psnr_nontexture = psnr_from(pooled_nontex);
  if (masks.size() == n && n >= 2) {
    const FlickerResult fl = flicker_score(result.recon, source, masks);
    if (fl.has_texture) report.flicker = fl.score;
  }
  return report;
}

}  // namespace texlab
