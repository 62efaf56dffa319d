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

// TEXW1 classifier weights container. Layout (normative copy in
// docs/texw1.md):
//
//   "TEXW1\n" | JSON header (UTF-8) | '\0' | float32 LE blobs
//
// Blobs follow the header's layer order; each parameterized layer stores its
// weights then its bias.

#ifndef TEXLAB_TEXW1_H_
#define TEXLAB_TEXW1_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "texlab/cnn.h"

namespace texlab {

// Throws ModelError for any structural problem (bad magic, malformed header,
// architecture or hash mismatch, blob size mismatch).
CnnWeights parse_texw1(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize_texw1(const CnnWeights& weights);

// File wrappers. load throws InputError if the file cannot be read.
CnnWeights load_texw1(const std::filesystem::path& path);
void save_texw1(const CnnWeights& weights, const std::filesystem::path& path);

}  // namespace texlab

#endif  // TEXLAB_TEXW1_H_
