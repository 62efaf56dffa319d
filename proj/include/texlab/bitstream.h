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

// TEXC1 container: a sequence header followed by one length-prefixed record
// per frame in coding order. docs/bitstream.md is the normative layout.

#ifndef TEXLAB_BITSTREAM_H_
#define TEXLAB_BITSTREAM_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "texlab/gf_plan.h"

namespace texlab {

inline constexpr char kBitstreamMagic[] = "TEXC1";
inline constexpr int kBitstreamVersion = 1;

struct SequenceHeader {
  int width = 0;
  int height = 0;
  int n_frames = 0;
  int qp = 0;
};

struct ModelParams {
  int ref = 0;
  std::array<float, 6> params{};  // a, b, c, d, tx, ty
};

struct FrameRecord {
  int display_index = 0;
  FrameKind kind = FrameKind::kInter;
  int layer = 0;
  int qp = 0;
  std::vector<int> refs;
  bool texture_active = false;
  std::vector<ModelParams> models;
  std::vector<std::uint8_t> payload;
  std::uint32_t crc = 0;
  // Filled by the parser: offset of the record's size field and the total
  // record length including that field.
  std::size_t offset = 0;
  std::size_t size = 0;
};

struct ParsedStream {
  SequenceHeader header;
  std::vector<FrameRecord> records;  // coding order
};

std::vector<std::uint8_t> write_container(const SequenceHeader& header,
                                          const std::vector<FrameRecord>& records);

// Checks structure only: magic, version, sizes, enumerations, record lengths
// and trailing data. Throws ParseError with the offending byte offset.
ParsedStream parse_container(std::span<const std::uint8_t> bytes);

// Offset of the first header byte of the sequence, i.e. the size of the
// fixed sequence header.
inline constexpr std::size_t kSequenceHeaderBytes = 13;

}  // namespace texlab

#endif  // TEXLAB_BITSTREAM_H_
