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

// texlab: analyze, encode, compare and roundtrip.
//
// Values from --settings are applied first; flags given on the command line
// override them.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "texlab/cli.h"
#include "texlab/io.h"

namespace {

struct Flags {
  std::string settings;
  std::string input;
  std::string format;
  std::string size;
  std::string video;
  std::vector<std::string> configs;
  std::vector<int> qps;
  std::string weights;
  double threshold = 0.0;
  std::uint64_t seed = 0;
  int tex_all_interval = 0;
  bool strict = false;
  std::string out;
};

struct Options {
  CLI::Option* input = nullptr;
  CLI::Option* format = nullptr;
  CLI::Option* size = nullptr;
  CLI::Option* video = nullptr;
  CLI::Option* config = nullptr;
  CLI::Option* qp = nullptr;
  CLI::Option* weights = nullptr;
  CLI::Option* threshold = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* interval = nullptr;
  CLI::Option* strict = nullptr;
  CLI::Option* out = nullptr;
};

Options add_run_options(CLI::App* cmd, Flags& f, bool encode) {
  Options o;
  cmd->add_option("--settings", f.settings, "JSON settings file; flags override its values");
  o.input = cmd->add_option("--input", f.input, "PNG frame directory or I420 file");
  o.format = cmd->add_option("--format", f.format, "png-dir or yuv420")
                 ->check(CLI::IsMember({"png-dir", "yuv420"}));
  o.size = cmd->add_option("--size", f.size, "frame size WxH for yuv420 input");
  o.video = cmd->add_option("--video", f.video, "name used in reports and file names");
  o.weights = cmd->add_option("--weights", f.weights, "TEXW1 classifier weights");
  o.threshold = cmd->add_option("--threshold", f.threshold, "texture probability threshold");
  o.out = cmd->add_option("--out", f.out, "output directory");
  if (encode) {
    o.config = cmd->add_option("--config", f.configs, "baseline, tex-all, tex-sp or tex-cp")
                   ;
    o.qp = cmd->add_option("--qp", f.qps, "quantization parameter (repeatable)");
    o.seed = cmd->add_option("--seed", f.seed, "motion estimation seed");
    o.interval = cmd->add_option("--tex-all-interval", f.tex_all_interval,
                                 "GF interval for tex-all (4..16)");
    o.strict = cmd->add_flag("--strict-containment", f.strict,
                             "check every pixel in the texture warp containment test");
  }
  return o;
}

bool given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

texlab::RunConfig resolve(const Flags& f, const Options& o) {
  texlab::RunConfig cfg;
  if (!f.settings.empty()) {
    const auto bytes = texlab::read_file_bytes(f.settings);
    texlab::apply_settings_json(cfg, std::string(bytes.begin(), bytes.end()));
  }
  if (given(o.input)) cfg.input = f.input;
  if (given(o.format)) cfg.format = f.format;
  if (given(o.size)) texlab::parse_size(f.size, cfg.width, cfg.height);
  if (given(o.video)) cfg.video = f.video;
  if (given(o.config)) cfg.configs = f.configs;
  if (given(o.qp)) cfg.qps = f.qps;
  if (given(o.weights)) cfg.weights = f.weights;
  if (given(o.threshold)) cfg.threshold = f.threshold;
  if (given(o.seed)) cfg.seed = f.seed;
  if (given(o.interval)) cfg.tex_all_interval = f.tex_all_interval;
  if (given(o.strict)) cfg.strict_containment = f.strict;
  if (given(o.out)) cfg.out = f.out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Texture-mode video coding laboratory"};
  app.require_subcommand(1);

  Flags analyze_flags;
  CLI::App* analyze = app.add_subcommand("analyze", "classify and refine texture masks");
  const Options analyze_opts = add_run_options(analyze, analyze_flags, false);

  Flags encode_flags;
  CLI::App* encode = app.add_subcommand("encode", "encode with each config and qp");
  const Options encode_opts = add_run_options(encode, encode_flags, true);

  std::vector<std::string> reports;
  std::string compare_out = ".";
  CLI::App* compare = app.add_subcommand("compare", "tabulate rate savings from reports");
  compare->add_option("reports", reports, "EncodeReport JSON files")->required();
  compare->add_option("--out", compare_out, "output directory");

  std::string stream;
  CLI::App* roundtrip = app.add_subcommand("roundtrip", "decode a stream and verify checksums");
  roundtrip->add_option("stream", stream, "TEXC1 file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return texlab::kExitInput;
  }

  return texlab::run_guarded(
      [&]() -> int {
        if (analyze->parsed()) {
          return texlab::cmd_analyze(resolve(analyze_flags, analyze_opts), std::cerr);
        }
        if (encode->parsed()) {
          return texlab::cmd_encode(resolve(encode_flags, encode_opts), std::cerr);
        }
        if (compare->parsed()) {
          std::vector<std::filesystem::path> paths(reports.begin(), reports.end());
          return texlab::cmd_compare(paths, compare_out, std::cout);
        }
        return texlab::cmd_roundtrip(stream, std::cout);
      },
      std::cerr);
}
