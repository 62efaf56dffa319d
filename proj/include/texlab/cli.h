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

// The texlab commands, callable in-process. Each returns a process exit code
// and writes human-readable progress to `log`.

#ifndef TEXLAB_CLI_H_
#define TEXLAB_CLI_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "texlab/analyzer.h"
#include "texlab/frame.h"
#include "texlab/gf_plan.h"
#include "texlab/motion.h"
#include "texlab/refine.h"

namespace texlab {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitCodec = 3,
  kExitComparison = 4,
  kExitVerification = 5,
};

struct RunConfig {
  std::filesystem::path input;
  std::string format = "png-dir";  // or "yuv420"
  int width = 0;                   // yuv420 only
  int height = 0;
  std::string video;  // defaults to the input file or directory name
  std::vector<std::string> configs = {"baseline", "tex-cp"};
  std::vector<int> qps = {32};
  std::filesystem::path weights;
  double threshold = kDefaultTextureThreshold;
  RefineParams refine;
  MotionParams motion;
  std::uint64_t seed = 1;
  int tex_all_interval = kDefaultTexAllInterval;
  bool strict_containment = false;
  std::filesystem::path out = ".";
};

// Overlays the members present in a settings JSON document onto cfg.
// Throws InputError for malformed JSON, unknown keys or mistyped values.
void apply_settings_json(RunConfig& cfg, const std::string& json);

// Throws InputError for an unparseable "WxH".
void parse_size(const std::string& text, int& width, int& height);

struct InputSequence {
  std::vector<RgbImage> rgb;
  std::vector<Frame> frames;
};
InputSequence load_input(const RunConfig& cfg);

// File stem for one encode: <video>_<config>_qp<qp>.
std::string encode_stem(const std::string& video, const std::string& config, int qp);

int cmd_analyze(const RunConfig& cfg, std::ostream& log);
int cmd_encode(const RunConfig& cfg, std::ostream& log);
int cmd_compare(std::span<const std::filesystem::path> reports,
                const std::filesystem::path& out, std::ostream& log);
int cmd_roundtrip(const std::filesystem::path& stream, std::ostream& log);

// Runs body and maps texlab exceptions to exit codes, printing the message
// to log.
int run_guarded(const std::function<int()>& body, std::ostream& log);

}  // namespace texlab

#endif  // TEXLAB_CLI_H_
