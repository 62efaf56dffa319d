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

#ifndef TEXLAB_IO_H_
#define TEXLAB_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "texlab/block_grid.h"
#include "texlab/frame.h"

namespace texlab {

// All readers throw InputError on missing or malformed input.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path,
                       std::span<const std::uint8_t> bytes);
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

// 8-bit RGB or RGBA (alpha dropped), gray promoted to RGB.
RgbImage read_png(const std::filesystem::path& path);
void write_png(const RgbImage& image, const std::filesystem::path& path);

// PNG frames in a directory, ordered by file name.
std::vector<RgbImage> read_png_dir(const std::filesystem::path& dir);

// Concatenated planar I420 frames of the given luma size.
std::vector<Frame> read_yuv420(const std::filesystem::path& path, int width, int height);
void write_yuv420(const std::vector<Frame>& frames, const std::filesystem::path& path);

// One byte per block: 0 for non-texture, 1 + k for cluster k.
std::vector<std::uint8_t> encode_mask_pgm(const TextureMask& mask);
TextureMask decode_mask_pgm(std::span<const std::uint8_t> bytes, int frame_width,
                            int frame_height);

// Source image with texture blocks tinted per cluster and block outlines.
RgbImage mask_overlay(const RgbImage& image, const TextureMask& mask);

}  // namespace texlab

#endif  // TEXLAB_IO_H_
