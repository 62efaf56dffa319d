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

#include "texlab/cli.h"

#include <json.hpp>

#include <cstdio>
#include <regex>
#include <set>
#include <sstream>

#include "texlab/codec.h"
#include "texlab/color.h"
#include "texlab/errors.h"
#include "texlab/io.h"
#include "texlab/metrics.h"
#include "texlab/pipeline.h"
#include "texlab/texw1.h"
#include "texlab/transform.h"

namespace texlab {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

template <class T>
void take(const Json& obj, const char* key, T& dst) {
  if (obj.contains(key)) dst = obj.at(key).get<T>();
}

void reject_unknown(const Json& obj, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw InputError("unknown settings key '" + where + key + "'");
  }
}

}  // namespace

void apply_settings_json(RunConfig& cfg, const std::string& json) {
  try {
    const Json j = Json::parse(json);
    if (!j.is_object()) throw InputError("settings must be a JSON object");
    reject_unknown(j,
                   {"input", "format", "size", "video", "configs", "qps", "weights", "threshold",
                    "seed", "tex_all_interval", "strict_containment", "out", "refine", "motion"},
                   "");
    if (j.contains("input")) cfg.input = j.at("input").get<std::string>();
    take(j, "format", cfg.format);
    if (j.contains("size")) parse_size(j.at("size").get<std::string>(), cfg.width, cfg.height);
    take(j, "video", cfg.video);
    take(j, "configs", cfg.configs);
    take(j, "qps", cfg.qps);
    if (j.contains("weights")) cfg.weights = j.at("weights").get<std::string>();
    take(j, "threshold", cfg.threshold);
    take(j, "seed", cfg.seed);
    take(j, "tex_all_interval", cfg.tex_all_interval);
    take(j, "strict_containment", cfg.strict_containment);
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("refine")) {
      const Json& r = j.at("refine");
      reject_unknown(r, {"split_tolerance", "max_clusters", "min_component_blocks"}, "refine.");
      take(r, "split_tolerance", cfg.refine.split_tolerance);
      take(r, "max_clusters", cfg.refine.max_clusters);
      take(r, "min_component_blocks", cfg.refine.min_component_blocks);
    }
    if (j.contains("motion")) {
      const Json& m = j.at("motion");
      reject_unknown(m,
                     {"fast_threshold", "patch_radius", "ratio", "max_search_distance",
                      "ransac_iterations", "inlier_tolerance"},
                     "motion.");
      take(m, "fast_threshold", cfg.motion.fast_threshold);
      take(m, "patch_radius", cfg.motion.patch_radius);
      take(m, "ratio", cfg.motion.ratio);
      take(m, "max_search_distance", cfg.motion.max_search_distance);
      take(m, "ransac_iterations", cfg.motion.ransac_iterations);
      take(m, "inlier_tolerance", cfg.motion.inlier_tolerance);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad settings: ") + e.what());
  }
}

void parse_size(const std::string& text, int& width, int& height) {
  static const std::regex kSize(R"((\d{1,5})x(\d{1,5}))");
  std::smatch m;
  if (!std::regex_match(text, m, kSize)) throw InputError("size must be WxH, got '" + text + "'");
  width = std::stoi(m[1]);
  height = std::stoi(m[2]);
}

namespace {

void validate(const RunConfig& cfg) {
  if (cfg.input.empty()) throw InputError("no input given");
  if (cfg.format != "png-dir" && cfg.format != "yuv420") {
    throw InputError("unknown input format '" + cfg.format + "'");
  }
  if (cfg.threshold < 0.0 || cfg.threshold > 1.0) throw InputError("threshold must be in [0, 1]");
  for (int qp : cfg.qps) {
    if (qp < 0 || qp > kMaxQp) throw InputError("qp out of range: " + std::to_string(qp));
  }
  for (const std::string& c : cfg.configs) parse_config(c);
  if (cfg.refine.max_clusters < 1 || cfg.refine.min_component_blocks < 1 ||
      !(cfg.refine.split_tolerance > 0.0)) {
    throw InputError("refinement parameters out of range");
  }
  if (cfg.motion.fast_threshold <= 0 || cfg.motion.patch_radius < 0 ||
      cfg.motion.ransac_iterations < 1 || !(cfg.motion.inlier_tolerance > 0.0)) {
    throw InputError("motion parameters out of range");
  }
}

std::string video_name(const RunConfig& cfg) {
  if (!cfg.video.empty()) return cfg.video;
  fs::path p = cfg.input;
  if (!p.has_filename()) p = p.parent_path();
  return p.stem().string();
}

std::string indexed(const char* fmt, int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, fmt, i);
  return buf;
}

double mask_coverage(const TextureMask& m) {
  return m.grid().count() > 0 ? static_cast<double>(m.texture_block_count()) / m.grid().count()
                              : 0.0;
}

std::string models_csv(const EncodeResult& result) {
  std::string out = motion_csv_header() + "\n";
  for (const FrameStats& s : result.frames) {
    for (const TextureModelRecord& m : s.models) {
      out += motion_csv_row(s.display_index, m.ref, {m.model, m.inliers, m.matches}) + "\n";
    }
  }
  return out;
}

}  // namespace

InputSequence load_input(const RunConfig& cfg) {
  InputSequence seq;
  if (cfg.format == "png-dir") {
    seq.rgb = read_png_dir(cfg.input);
    for (std::size_t i = 0; i < seq.rgb.size(); ++i) {
      if (seq.rgb[i].width() != seq.rgb[0].width() || seq.rgb[i].height() != seq.rgb[0].height()) {
        throw InputError("frame " + std::to_string(i) + " differs in size");
      }
      seq.frames.push_back(rgb_to_yuv420(seq.rgb[i], static_cast<int>(i)));
    }
  } else if (cfg.format == "yuv420") {
    if (cfg.width <= 0 || cfg.height <= 0) throw InputError("yuv420 input needs --size WxH");
    seq.frames = read_yuv420(cfg.input, cfg.width, cfg.height);
    for (const Frame& f : seq.frames) seq.rgb.push_back(yuv420_to_rgb(f));
  } else {
    throw InputError("unknown input format '" + cfg.format + "'");
  }
  return seq;
}

std::string encode_stem(const std::string& video, const std::string& config, int qp) {
  return video + "_" + config + "_qp" + std::to_string(qp);
}

int cmd_analyze(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const CnnWeights weights = load_texw1(cfg.weights);
  const InputSequence seq = load_input(cfg);
  const SequenceAnalysis analysis =
      analyze_sequence(seq.rgb, seq.frames, weights, cfg.threshold, cfg.refine);
  Json frames = Json::array();
  double mean = 0.0;
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    const TextureMask& m = analysis.refined[i];
    const int idx = static_cast<int>(i);
    write_file_atomic(cfg.out / "masks" / indexed("%03d.pgm", idx), encode_mask_pgm(m));
    write_file_atomic(cfg.out / "raw_masks" / indexed("%03d.pgm", idx),
                      encode_mask_pgm(analysis.raw[i]));
    const fs::path overlay = cfg.out / "overlays" / indexed("%03d.png", idx);
    fs::create_directories(overlay.parent_path());
    fs::path tmp = overlay;
    tmp += ".tmp";
    write_png(mask_overlay(seq.rgb[i], m), tmp);
    fs::rename(tmp, overlay);
    int clusters = 0;
    for (auto label : m.labels()) clusters = std::max(clusters, label + 1);
    frames.push_back({{"frame", idx},
                      {"raw_coverage", mask_coverage(analysis.raw[i])},
                      {"coverage", mask_coverage(m)},
                      {"texture_blocks", m.texture_block_count()},
                      {"clusters", clusters}});
    mean += mask_coverage(m);
  }
  mean /= static_cast<double>(seq.frames.size());
  const Json summary = {{"video", video_name(cfg)},
                        {"frames", static_cast<int>(seq.frames.size())},
                        {"grid", {{"cols", analysis.refined[0].cols()},
                                  {"rows", analysis.refined[0].rows()}}},
                        {"threshold", cfg.threshold},
                        {"mean_coverage", mean},
                        {"per_frame", frames}};
  write_file_atomic(cfg.out / "analyze_summary.json", summary.dump(2) + "\n");
  log << "analyzed " << seq.frames.size() << " frames, mean texture coverage "
      << format_fixed(mean * 100.0) << "%\n";
  return kExitOk;
}

int cmd_encode(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  if (cfg.configs.empty() || cfg.qps.empty()) throw InputError("nothing to encode");
  bool needs_masks = false;
  for (const std::string& c : cfg.configs) {
    needs_masks = needs_masks || parse_config(c) != CodecConfig::kBaseline;
  }
  if (needs_masks && cfg.weights.empty()) throw InputError("texture configs need --weights");
  const InputSequence seq = load_input(cfg);
  if (seq.frames.size() < 2) throw InputError("encoding needs at least two frames");
  std::vector<TextureMask> masks;
  if (!cfg.weights.empty()) {
    const CnnWeights weights = load_texw1(cfg.weights);
    masks = analyze_sequence(seq.rgb, seq.frames, weights, cfg.threshold, cfg.refine).refined;
  }
  const std::string video = video_name(cfg);
  for (const std::string& c : cfg.configs) {
    for (int qp : cfg.qps) {
      EncoderSettings settings;
      settings.config = parse_config(c);
      settings.qp = qp;
      settings.seed = cfg.seed;
      settings.motion = cfg.motion;
      settings.tex_all_interval = cfg.tex_all_interval;
      settings.strict_containment = cfg.strict_containment;
      const EncodeResult result = encode_sequence(seq.frames, settings, masks);
      const EncodeReport report = make_report(result, seq.frames, masks, video, settings);
      const std::string stem = encode_stem(video, config_name(settings.config), qp);
      write_file_atomic(cfg.out / (stem + ".texc"), result.bitstream);
      write_file_atomic(cfg.out / (stem + ".json"), report_to_json(report));
      if (settings.config != CodecConfig::kBaseline) {
        write_file_atomic(cfg.out / (stem + "_models.csv"), models_csv(result));
      }
      log << stem << ": " << format_fixed(report.bits_per_frame, 1) << " bits/frame, psnr "
          << format_fixed(report.psnr_full) << " dB, texture "
          << format_fixed(report.coverage * 100.0) << "%\n";
    }
  }
  return kExitOk;
}

int cmd_compare(std::span<const fs::path> reports, const fs::path& out, std::ostream& log) {
  std::vector<EncodeReport> base, tex;
  for (const fs::path& p : reports) {
    const auto bytes = read_file_bytes(p);
    EncodeReport r = report_from_json(std::string(bytes.begin(), bytes.end()));
    (parse_config(r.config) == CodecConfig::kBaseline ? base : tex).push_back(std::move(r));
  }
  if (reports.size() < 2) {
    log << "error: comparison needs at least two reports\n";
    return kExitComparison;
  }
  std::vector<ComparisonRow> rows;
  try {
    rows = build_comparison(base, tex);
  } catch (const InputError& e) {
    log << "error: " << e.what() << '\n';
    return kExitComparison;
  }
  std::set<std::pair<std::string, int>> paired;
  for (const EncodeReport& r : tex) paired.emplace(r.video, r.qp);
  for (const EncodeReport& r : base) {
    if (!paired.contains({r.video, r.qp})) {
      log << "error: baseline " << r.video << "/qp" << r.qp << " has no texture report\n";
      return kExitComparison;
    }
  }
  const auto trends = saving_trends(rows);
  write_file_atomic(out / "comparison.csv", comparison_csv(rows));
  write_file_atomic(out / "comparison.txt", comparison_table(rows) + trend_summary(trends));
  write_file_atomic(out / "saving_vs_qp.csv", saving_vs_qp_csv(rows));
  log << comparison_table(rows) << trend_summary(trends);
  return kExitOk;
}

int cmd_roundtrip(const fs::path& stream, std::ostream& log) {
  const auto bytes = read_file_bytes(stream);
  const std::vector<DecodedFrame> frames = decode_sequence(bytes);
  int bad = 0;
  for (const DecodedFrame& f : frames) {
    if (!f.crc_ok) {
      ++bad;
      log << "frame " << f.stats.display_index << ": crc mismatch\n";
    }
  }
  if (bad > 0) {
    log << "FAIL " << bad << " of " << frames.size() << " frames\n";
    return kExitVerification;
  }
  log << "PASS " << frames.size() << " frames\n";
  return kExitOk;
}

int run_guarded(const std::function<int()>& body, std::ostream& log) {
  try {
    return body();
  } catch (const ParseError& e) {
    log << "error: " << e.what() << '\n';
    return kExitCodec;
  } catch (const InputError& e) {
    log << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DimensionError& e) {
    log << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ModelError& e) {
    log << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    log << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitCodec;
  }
}

}  // namespace texlab
