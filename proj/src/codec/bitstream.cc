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

#include "texlab/bitstream.h"

#include <bit>
#include <cstring>
#include <string>

#include "texlab/errors.h"
#include "texlab/frame.h"

namespace texlab {
namespace {

class ByteWriter {
 public:
  void u8(unsigned v) { out_.push_back(static_cast<std::uint8_t>(v)); }
  void u16(unsigned v) {
    u8(v & 0xFF);
    u8((v >> 8) & 0xFF);
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8((v >> (8 * i)) & 0xFF);
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  std::vector<std::uint8_t>& data() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}
  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return in_.size() - pos_; }
  void need(std::size_t n, const char* what) const {
    if (remaining() < n) throw ParseError(std::string("truncated ") + what, pos_);
  }
  unsigned u8(const char* what) {
    need(1, what);
    return in_[pos_++];
  }
  unsigned u16(const char* what) {
    need(2, what);
    const unsigned v = in_[pos_] | (in_[pos_ + 1] << 8);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  float f32(const char* what) { return std::bit_cast<float>(u32(what)); }
  std::span<const std::uint8_t> bytes(std::size_t n, const char* what) {
    need(n, what);
    auto s = in_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

void check_u16(int v, const char* what) {
  if (v < 0 || v > 0xFFFF) throw InputError(std::string(what) + " does not fit the container");
}

}  // namespace

std::vector<std::uint8_t> write_container(const SequenceHeader& header,
                                          const std::vector<FrameRecord>& records) {
  check_u16(header.width, "width");
  check_u16(header.height, "height");
  check_u16(header.n_frames, "frame count");
  ByteWriter w;
  for (int i = 0; i < 5; ++i) w.u8(static_cast<std::uint8_t>(kBitstreamMagic[i]));
  w.u8(kBitstreamVersion);
  w.u16(header.width);
  w.u16(header.height);
  w.u16(header.n_frames);
  w.u8(header.qp);
  for (const FrameRecord& r : records) {
    ByteWriter body;
    body.u16(r.display_index);
    body.u8(static_cast<unsigned>(r.kind));
    body.u8(r.layer);
    body.u8(r.qp);
    body.u8(r.refs.size());
    for (int ref : r.refs) body.u16(ref);
    body.u8(r.texture_active ? 1 : 0);
    if (r.texture_active) {
      body.u8(r.models.size());
      for (const ModelParams& m : r.models) {
        body.u16(m.ref);
        for (float p : m.params) body.f32(p);
      }
    }
    body.u32(r.payload.size());
    body.bytes(r.payload);
    body.u32(r.crc);
    w.u32(body.data().size());
    w.bytes(body.data());
  }
  return std::move(w.data());
}

ParsedStream parse_container(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const auto magic = r.bytes(5, "magic");
  if (std::memcmp(magic.data(), kBitstreamMagic, 5) != 0) throw ParseError("bad magic", 0);
  const std::size_t version_at = r.pos();
  if (r.u8("version") != kBitstreamVersion) throw ParseError("unsupported version", version_at);
  ParsedStream out;
  const std::size_t dims_at = r.pos();
  out.header.width = static_cast<int>(r.u16("width"));
  out.header.height = static_cast<int>(r.u16("height"));
  if (out.header.width < Frame::kMinFrameSize || out.header.height < Frame::kMinFrameSize ||
      out.header.width % 2 || out.header.height % 2) {
    throw ParseError("invalid frame dimensions", dims_at);
  }
  const std::size_t count_at = r.pos();
  out.header.n_frames = static_cast<int>(r.u16("frame count"));
  if (out.header.n_frames < 1) throw ParseError("empty sequence", count_at);
  out.header.qp = static_cast<int>(r.u8("qp"));

  for (int i = 0; i < out.header.n_frames; ++i) {
    FrameRecord rec;
    rec.offset = r.pos();
    const std::uint32_t size = r.u32("record size");
    r.need(size, "frame record");
    const std::size_t body_start = r.pos();
    rec.display_index = static_cast<int>(r.u16("display index"));
    if (rec.display_index >= out.header.n_frames) {
      throw ParseError("display index out of range", body_start);
    }
    const std::size_t kind_at = r.pos();
    const unsigned kind = r.u8("frame kind");
    if (kind > static_cast<unsigned>(FrameKind::kInter)) {
      throw ParseError("unknown frame kind", kind_at);
    }
    rec.kind = static_cast<FrameKind>(kind);
    rec.layer = static_cast<int>(r.u8("layer"));
    rec.qp = static_cast<int>(r.u8("qp"));
    const std::size_t refs_at = r.pos();
    const unsigned n_refs = r.u8("reference count");
    if (n_refs > 2) throw ParseError("too many references", refs_at);
    for (unsigned k = 0; k < n_refs; ++k) rec.refs.push_back(static_cast<int>(r.u16("reference")));
    const std::size_t flag_at = r.pos();
    const unsigned active = r.u8("texture flag");
    if (active > 1) throw ParseError("invalid texture flag", flag_at);
    rec.texture_active = active == 1;
    if (rec.texture_active) {
      const std::size_t models_at = r.pos();
      const unsigned n_models = r.u8("model count");
      if (n_models < 1 || n_models > 2) throw ParseError("invalid model count", models_at);
      for (unsigned k = 0; k < n_models; ++k) {
        ModelParams m;
        m.ref = static_cast<int>(r.u16("model reference"));
        for (float& p : m.params) p = r.f32("model parameter");
        rec.models.push_back(m);
      }
    }
    const std::size_t len_at = r.pos();
    const std::uint32_t payload_len = r.u32("payload length");
    if (std::uint64_t{r.pos() - body_start} + payload_len + 4 > size) {
      throw ParseError("payload length exceeds record", len_at);
    }
    const auto payload = r.bytes(payload_len, "payload");
    rec.payload.assign(payload.begin(), payload.end());
    rec.crc = r.u32("checksum");
    if (r.pos() - body_start != size) throw ParseError("record size mismatch", rec.offset);
    rec.size = size + 4;
    out.records.push_back(std::move(rec));
  }
  if (r.remaining() != 0) throw ParseError("trailing bytes after last frame", r.pos());
  return out;
}

}  // namespace texlab
