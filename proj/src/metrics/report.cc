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

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "texlab/errors.h"
#include "texlab/gf_plan.h"
#include "texlab/metrics.h"

namespace texlab {

using Json = nlohmann::ordered_json;

namespace {

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> optional_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

std::string report_to_json(const EncodeReport& r) {
  Json frames = Json::array();
  for (const FrameReport& f : r.frames) {
    frames.push_back({{"display_index", f.display_index},
                      {"coding_order", f.coding_order},
                      {"kind", f.kind},
                      {"layer", f.layer},
                      {"texture_enabled", f.texture_enabled},
                      {"texture_active", f.texture_active},
                      {"fallback", f.fallback},
                      {"models", f.models},
                      {"bits", f.bits},
                      {"payload_bytes", f.payload_bytes},
                      {"coeff_bits_conventional", f.coeff_bits_conventional},
                      {"coeff_bits_texture", f.coeff_bits_texture},
                      {"texture_leaves", f.texture_leaves},
                      {"psnr_full", f.psnr_full},
                      {"psnr_nontexture", optional_json(f.psnr_nontexture)},
                      {"ssim", f.ssim},
                      {"coverage", f.coverage}});
  }
  const Json j = {{"video", r.video},
                  {"config", r.config},
                  {"qp", r.qp},
                  {"width", r.width},
                  {"height", r.height},
                  {"n_frames", r.n_frames},
                  {"seed", r.seed},
                  {"stream_bytes", r.stream_bytes},
                  {"bits_per_frame", r.bits_per_frame},
                  {"container_bits_per_frame", r.container_bits_per_frame},
                  {"psnr_full", r.psnr_full},
                  {"psnr_nontexture", optional_json(r.psnr_nontexture)},
                  {"ssim", r.ssim},
                  {"coverage", r.coverage},
                  {"flicker", optional_json(r.flicker)},
                  {"texture_coeff_bits", r.texture_coeff_bits},
                  {"frames", frames}};
  return j.dump(2) + "\n";
}

EncodeReport report_from_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    EncodeReport r;
    r.video = j.at("video").get<std::string>();
    r.config = j.at("config").get<std::string>();
    r.qp = j.at("qp").get<int>();
    r.width = j.at("width").get<int>();
    r.height = j.at("height").get<int>();
    r.n_frames = j.at("n_frames").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.stream_bytes = j.at("stream_bytes").get<std::size_t>();
    r.bits_per_frame = j.at("bits_per_frame").get<double>();
    r.container_bits_per_frame = j.at("container_bits_per_frame").get<double>();
    r.psnr_full = j.at("psnr_full").get<double>();
    r.psnr_nontexture = optional_from(j.at("psnr_nontexture"));
    r.ssim = j.at("ssim").get<double>();
    r.coverage = j.at("coverage").get<double>();
    r.flicker = optional_from(j.at("flicker"));
    r.texture_coeff_bits = j.at("texture_coeff_bits").get<double>();
    for (const Json& jf : j.at("frames")) {
      FrameReport f;
      f.display_index = jf.at("display_index").get<int>();
      f.coding_order = jf.at("coding_order").get<int>();
      f.kind = jf.at("kind").get<std::string>();
      f.layer = jf.at("layer").get<int>();
      f.texture_enabled = jf.at("texture_enabled").get<bool>();
      f.texture_active = jf.at("texture_active").get<bool>();
      f.fallback = jf.at("fallback").get<std::string>();
      f.models = jf.at("models").get<int>();
      f.bits = jf.at("bits").get<double>();
      f.payload_bytes = jf.at("payload_bytes").get<std::size_t>();
      f.coeff_bits_conventional = jf.at("coeff_bits_conventional").get<double>();
      f.coeff_bits_texture = jf.at("coeff_bits_texture").get<double>();
      f.texture_leaves = jf.at("texture_leaves").get<int>();
      f.psnr_full = jf.at("psnr_full").get<double>();
      f.psnr_nontexture = optional_from(jf.at("psnr_nontexture"));
      f.ssim = jf.at("ssim").get<double>();
      f.coverage = jf.at("coverage").get<double>();
      r.frames.push_back(std::move(f));
    }
    parse_config(r.config);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

double rate_saving_percent(double base_bits, double tex_bits) {
  if (!(base_bits > 0.0)) throw InputError("baseline bit count must be positive");
  return (tex_bits - base_bits) / base_bits * 100.0;
}

namespace {

ComparisonRow row_from(const EncodeReport& r, double base_bits) {
  ComparisonRow row;
  row.video = r.video;
  row.qp = r.qp;
  row.config = r.config;
  row.bits_per_frame = r.bits_per_frame;
  row.rate_saving_pct = rate_saving_percent(base_bits, r.bits_per_frame);
  row.psnr_full = r.psnr_full;
  row.psnr_nontex = r.psnr_nontexture;
  row.ssim = r.ssim;
  row.coverage_pct = r.coverage * 100.0;
  row.flicker = r.flicker;
  return row;
}

}  // namespace

std::vector<ComparisonRow> build_comparison(std::span<const EncodeReport> base_reports,
                                            std::span<const EncodeReport> tex_reports) {
  std::map<std::pair<std::string, int>, const EncodeReport*> base;
  for (const EncodeReport& r : base_reports) {
    if (parse_config(r.config) != CodecConfig::kBaseline) {
      throw InputError("report " + r.video + "/qp" + std::to_string(r.qp) + " is not baseline");
    }
    if (!base.emplace(std::pair{r.video, r.qp}, &r).second) {
      throw InputError("duplicate baseline report for " + r.video + "/qp" + std::to_string(r.qp));
    }
  }
  std::vector<ComparisonRow> rows;
  std::set<std::tuple<std::string, int, std::string>> seen;
  for (const auto& [key, r] : base) {
    rows.push_back(row_from(*r, r->bits_per_frame));
    seen.emplace(r->video, r->qp, r->config);
  }
  for (const EncodeReport& r : tex_reports) {
    const auto it = base.find({r.video, r.qp});
    if (it == base.end()) {
      throw InputError("no baseline report for " + r.video + "/qp" + std::to_string(r.qp));
    }
    if (!seen.emplace(r.video, r.qp, r.config).second) {
      throw InputError("duplicate report for " + r.video + "/qp" + std::to_string(r.qp) + "/" +
                       r.config);
    }
    rows.push_back(row_from(r, it->second->bits_per_frame));
  }
  std::sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    return std::tuple(a.video, a.qp, parse_config(a.config)) <
           std::tuple(b.video, b.qp, parse_config(b.config));
  });
  return rows;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  // Rounding to zero should not leave a sign behind.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

namespace {

std::string optional_text(const std::optional<double>& v, int decimals) {
  return v ? format_fixed(*v, decimals) : std::string("");
}

}  // namespace

std::string comparison_csv(std::span<const ComparisonRow> rows) {
  std::ostringstream out;
  out << "video,qp,config,bits_per_frame,rate_saving_pct,psnr_full,psnr_nontex,ssim,"
         "coverage_pct,flicker\n";
  for (const ComparisonRow& r : rows) {
    out << r.video << ',' << r.qp << ',' << r.config << ',' << format_fixed(r.bits_per_frame, 1)
        << ',' << format_fixed(r.rate_saving_pct) << ',' << format_fixed(r.psnr_full) << ','
        << optional_text(r.psnr_nontex, 2) << ',' << format_fixed(r.ssim, 4) << ','
        << format_fixed(r.coverage_pct) << ',' << optional_text(r.flicker, 3) << '\n';
  }
  return out.str();
}

std::string comparison_table(std::span<const ComparisonRow> rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %4s %-9s %12s %9s %8s %8s %7s %7s %8s\n", "video", "qp",
                "config", "bits/frame", "saving%", "psnr", "psnr-nt", "ssim", "tex%", "flicker");
  out << line;
  for (const ComparisonRow& r : rows) {
    std::snprintf(line, sizeof line, "%-16s %4d %-9s %12s %9s %8s %8s %7s %7s %8s\n",
                  r.video.c_str(), r.qp, r.config.c_str(),
                  format_fixed(r.bits_per_frame, 1).c_str(),
                  format_fixed(r.rate_saving_pct).c_str(), format_fixed(r.psnr_full).c_str(),
                  (r.psnr_nontex ? format_fixed(*r.psnr_nontex) : std::string("-")).c_str(),
                  format_fixed(r.ssim, 4).c_str(), format_fixed(r.coverage_pct).c_str(),
                  (r.flicker ? format_fixed(*r.flicker, 3) : std::string("-")).c_str());
    out << line;
  }
  return out.str();
}

std::string saving_vs_qp_csv(std::span<const ComparisonRow> rows) {
  std::ostringstream out;
  out << "video,config,qp,rate_saving_pct\n";
  for (const ComparisonRow& r : rows) {
    if (parse_config(r.config) == CodecConfig::kBaseline) continue;
    out << r.video << ',' << r.config << ',' << r.qp << ',' << format_fixed(r.rate_saving_pct)
        << '\n';
  }
  return out.str();
}

std::vector<TrendCheck> saving_trends(std::span<const ComparisonRow> rows,
                                      double tolerance_pct) {
  std::map<std::pair<std::string, CodecConfig>, std::vector<std::pair<int, double>>> series;
  for (const ComparisonRow& r : rows) {
    const CodecConfig c = parse_config(r.config);
    if (c == CodecConfig::kBaseline) continue;
    series[{r.video, c}].emplace_back(r.qp, r.rate_saving_pct);
  }
  std::vector<TrendCheck> out;
  for (auto& [key, points] : series) {
    if (points.size() < 2) continue;
    std::sort(points.begin(), points.end());
    TrendCheck t;
    t.video = key.first;
    t.config = config_name(key.second);
    t.savings = points;
    t.monotone = true;
    // A saving is the negated rate change; it must not grow with qp.
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (-points[i].second > -points[i - 1].second + tolerance_pct) t.monotone = false;
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::string trend_summary(std::span<const TrendCheck> trends) {
  std::ostringstream out;
  for (const TrendCheck& t : trends) {
    out << "trend " << t.video << ' ' << t.config << ": "
        << (t.monotone ? "savings shrink with qp" : "savings do not shrink with qp") << " (";
    for (std::size_t i = 0; i < t.savings.size(); ++i) {
      if (i) out << ", ";
      out << "qp" << t.savings[i].first << ' ' << format_fixed(t.savings[i].second);
    }
    out << ")\n";
  }
  return out.str();
}

}  // namespace texlab
