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

#include "texlab/io.h"

#include <png.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>

#include "texlab/errors.h"

namespace texlab {

namespace fs = std::filesystem;

std::vector<std::uint8_t> read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_atomic(const fs::path& path, std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw InputError("short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_file_atomic(const fs::path& path, const std::string& text) {
  write_file_atomic(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                                    text.size()));
}

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_fail(png_structp png, png_const_charp msg) {
  auto* what = static_cast<std::string*>(png_get_error_ptr(png));
  if (what) *what = msg;
  png_longjmp(png, 1);
}

}  // namespace

RgbImage read_png(const fs::path& path) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw InputError("cannot open " + path.string());
  std::string error;
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, &error, png_fail, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InputError("libpng init failed");
  }
  RgbImage image;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InputError("bad PNG " + path.string() + ": " + error);
  }
  png_init_io(png, file.get());
  png_read_info(png, info);
  png_set_strip_16(png);
  png_set_strip_alpha(png);
  png_set_packing(png);
  png_set_expand(png);
  png_set_gray_to_rgb(png);
  png_read_update_info(png, info);
  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  if (png_get_rowbytes(png, info) != static_cast<std::size_t>(w) * 3) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InputError("unsupported PNG layout in " + path.string());
  }
  image = RgbImage(w, h);
  rows.resize(h);
  for (int y = 0; y < h; ++y) {
    rows[y] = image.samples().data() + static_cast<std::size_t>(y) * w * 3;
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return image;
}

void write_png(const RgbImage& image, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    FilePtr file(std::fopen(tmp.c_str(), "wb"));
    if (!file) throw InputError("cannot write " + tmp.string());
    std::string error;
    png_structp png =
        png_create_write_struct(PNG_LIBPNG_VER_STRING, &error, png_fail, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
      png_destroy_write_struct(&png, &info);
      throw InputError("libpng init failed");
    }
    std::vector<png_bytep> rows(image.height());
    if (setjmp(png_jmpbuf(png))) {
      png_destroy_write_struct(&png, &info);
      throw InputError("PNG write failed: " + error);
    }
    png_init_io(png, file.get());
    png_set_IHDR(png, info, image.width(), image.height(), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    auto* base = const_cast<std::uint8_t*>(image.samples().data());
    for (int y = 0; y < image.height(); ++y) {
      rows[y] = base + static_cast<std::size_t>(y) * image.width() * 3;
    }
    png_set_rows(png, info, rows.data());
    png_write_png(png, info, PNG_TRANSFORM_IDENTITY, nullptr);
    png_destroy_write_struct(&png, &info);
  }
  fs::rename(tmp, path);
}

std::vector<RgbImage> read_png_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (entry.is_regular_file() && ext == ".png") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no PNG frames in " + dir.string());
  std::vector<RgbImage> frames;
  frames.reserve(files.size());
  for (const auto& f : files) frames.push_back(read_png(f));
  for (const auto& f : frames) {
    if (f.width() != frames[0].width() || f.height() != frames[0].height()) {
      throw InputError("PNG frames in " + dir.string() + " differ in size");
    }
  }
  return frames;
}

std::vector<Frame> read_yuv420(const fs::path& path, int width, int height) {
  if (width <= 0 || height <= 0 || width % 2 || height % 2) {
    throw InputError("yuv420 input needs a positive even --size");
  }
  const auto bytes = read_file_bytes(path);
  const std::size_t luma = static_cast<std::size_t>(width) * height;
  const std::size_t frame_bytes = luma + 2 * (luma / 4);
  if (bytes.empty() || bytes.size() % frame_bytes != 0) {
    throw InputError("yuv420 file size is not a multiple of the frame size");
  }
  std::vector<Frame> frames;
  for (std::size_t off = 0, idx = 0; off < bytes.size(); off += frame_bytes, ++idx) {
    Frame f(width, height, static_cast<int>(idx));
    const auto* p = bytes.data() + off;
    std::copy(p, p + luma, f.y().samples().begin());
    std::copy(p + luma, p + luma + luma / 4, f.u().samples().begin());
    std::copy(p + luma + luma / 4, p + frame_bytes, f.v().samples().begin());
    frames.push_back(std::move(f));
  }
  return frames;
}

void write_yuv420(const std::vector<Frame>& frames, const fs::path& path) {
  std::vector<std::uint8_t> out;
  for (const auto& f : frames) {
    for (int p = 0; p < 3; ++p) {
      const auto s = f.plane(p).samples();
      out.insert(out.end(), s.begin(), s.end());
    }
  }
  write_file_atomic(path, out);
}

std::vector<std::uint8_t> encode_mask_pgm(const TextureMask& mask) {
  const std::string header = "P5\n" + std::to_string(mask.cols()) + " " +
                             std::to_string(mask.rows()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (int r = 0; r < mask.rows(); ++r) {
    for (int c = 0; c < mask.cols(); ++c) {
      out.push_back(static_cast<std::uint8_t>(mask.label(r, c) + 1));
    }
  }
  return out;
}

TextureMask decode_mask_pgm(std::span<const std::uint8_t> bytes, int frame_width,
                            int frame_height) {
  std::string text(bytes.begin(), bytes.begin() + std::min<std::size_t>(bytes.size(), 64));
  std::istringstream in(text);
  std::string magic;
  int cols = 0, rows = 0, maxval = 0;
  in >> magic >> cols >> rows >> maxval;
  if (!in || magic != "P5" || maxval != 255) throw InputError("not an 8-bit P5 PGM mask");
  const auto header_len = static_cast<std::size_t>(in.tellg()) + 1;
  TextureMask mask(BlockGrid(frame_width, frame_height));
  if (cols != mask.cols() || rows != mask.rows() ||
      bytes.size() != header_len + static_cast<std::size_t>(cols) * rows) {
    throw InputError("PGM mask does not match the frame's block grid");
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      mask.set_label(r, c, static_cast<std::int16_t>(
                               bytes[header_len + static_cast<std::size_t>(r) * cols + c]) - 1);
    }
  }
  return mask;
}

RgbImage mask_overlay(const RgbImage& image, const TextureMask& mask) {
  static constexpr std::array<std::array<int, 3>, 4> kTints = {
      {{0, 200, 0}, {0, 80, 255}, {255, 160, 0}, {200, 0, 200}}};
  RgbImage out = image;
  for (int r = 0; r < mask.rows(); ++r) {
    for (int c = 0; c < mask.cols(); ++c) {
      if (!mask.is_texture(r, c)) continue;
      const auto& tint = kTints[static_cast<std::size_t>(mask.label(r, c)) % kTints.size()];
      const Rect rect = mask.grid().block_rect(r, c);
      for (int y = rect.y; y < rect.bottom(); ++y) {
        for (int x = rect.x; x < rect.right(); ++x) {
          const bool edge = y == rect.y || x == rect.x;
          for (int k = 0; k < 3; ++k) {
            auto& s = out.at(x, y, k);
            s = static_cast<std::uint8_t>(edge ? tint[k] : (s + tint[k]) / 2);
          }
        }
      }
    }
  }
  return out;
}

}  // namespace texlab
