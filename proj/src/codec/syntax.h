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

// Payload syntax elements and their context layout. Writers are templated on
// the sink so that the same code drives RangeEncoder, BitCounter and the
// tallying encoder; every reader mirrors its writer bit for bit.

#ifndef TEXLAB_SRC_CODEC_SYNTAX_H_
#define TEXLAB_SRC_CODEC_SYNTAX_H_

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <vector>

#include "texlab/range_coder.h"
#include "texlab/transform.h"

namespace texlab::syntax {

inline constexpr int kGolombPrefixCap = 20;
inline constexpr int kGolombContexts = 12;

// plane_type: 0 luma, 1 chroma. tx index: 0 for 4x4, 1 for 8x8.
struct Contexts {
  std::array<Prob, 2> texture_flag;  // node size 64, 32
  std::array<Prob, 3> split;         // node size 64, 32, 16
  Prob is_inter;
  Prob ref_idx;
  Prob planar;
  std::array<Prob, 2> mv_zero;  // per component
  std::array<std::array<Prob, kGolombContexts>, 2> mv_golomb;
  std::array<std::array<Prob, 2>, 2> cbf;
  std::array<std::array<std::array<Prob, 64>, 2>, 2> last;  // bit-tree nodes
  std::array<std::array<std::array<Prob, 16>, 2>, 2> sig;
  std::array<std::array<Prob, 2>, 2> gt1;
  std::array<Prob, kGolombContexts> coeff_golomb;
};

// Everything that evolves while coding a frame: adaptive contexts and the
// per-reference-slot motion vector predictors.
struct CodingState {
  Contexts ctx;
  std::array<std::array<int, 2>, 2> last_mv{};  // [slot][component], half-pel
};

inline int node_size_index(int size) { return size == 64 ? 0 : (size == 32 ? 1 : 2); }
inline int tx_index(int n) { return n == 8 ? 1 : 0; }

// Exp-Golomb style code for v >= 0: a unary prefix of k = floor(log2(v + 1))
// context-coded ones and a terminating zero (omitted at the cap), then k
// bypass suffix bits of v + 1 - 2^k, most significant first.
template <class W>
void write_golomb(W& w, std::span<Prob> prefix, std::uint32_t v) {
  const std::uint32_t x = v + 1;
  int k = 0;
  while ((x >> (k + 1)) != 0) ++k;
  for (int i = 0; i < k; ++i) w.encode(prefix[std::min<int>(i, prefix.size() - 1)], 1);
  if (k < kGolombPrefixCap) w.encode(prefix[std::min<int>(k, prefix.size() - 1)], 0);
  for (int i = k - 1; i >= 0; --i) w.encode_bypass((x >> i) & 1);
}

template <class R>
std::uint32_t read_golomb(R& r, std::span<Prob> prefix) {
  int k = 0;
  while (k < kGolombPrefixCap && r.decode(prefix[std::min<int>(k, prefix.size() - 1)]) == 1) {
    ++k;
  }
  std::uint32_t x = 1;
  for (int i = 0; i < k; ++i) x = (x << 1) | static_cast<std::uint32_t>(r.decode_bypass());
  return x - 1;
}

// Motion vector component coded as a delta from the slot predictor.
template <class W>
void write_mv_component(W& w, Contexts& c, int comp, int delta) {
  w.encode(c.mv_zero[comp], delta == 0 ? 1 : 0);
  if (delta == 0) return;
  w.encode_bypass(delta < 0 ? 1 : 0);
  write_golomb(w, std::span<Prob>(c.mv_golomb[comp]), static_cast<std::uint32_t>(std::abs(delta) - 1));
}

template <class R>
int read_mv_component(R& r, Contexts& c, int comp) {
  if (r.decode(c.mv_zero[comp]) == 1) return 0;
  const bool negative = r.decode_bypass() == 1;
  const auto mag = static_cast<int>(std::min<std::uint32_t>(
      read_golomb(r, std::span<Prob>(c.mv_golomb[comp])) + 1, 1u << 24));
  return negative ? -mag : mag;
}

// Coefficients of one n x n transform block, levels in raster order. Coded as
// a coded-block flag, the scan position of the last nonzero level as a
// bit-tree, then levels from the last position down to 0: significance
// (except at the last position), greater-than-one, remainder and sign.
template <class W>
void write_coeffs(W& w, Contexts& c, int plane_type, int n, std::span<const int> levels) {
  const auto& scan = zigzag_order(n);
  const int t = tx_index(n);
  int last = -1;
  for (int i = n * n - 1; i >= 0; --i) {
    if (levels[scan[i]] != 0) {
      last = i;
      break;
    }
  }
  w.encode(c.cbf[plane_type][t], last >= 0 ? 1 : 0);
  if (last < 0) return;
  const int bits = n == 8 ? 6 : 4;
  int node = 1;
  for (int b = bits - 1; b >= 0; --b) {
    const int bit = (last >> b) & 1;
    w.encode(c.last[plane_type][t][node], bit);
    node = (node << 1) | bit;
  }
  for (int i = last; i >= 0; --i) {
    const int level = levels[scan[i]];
    if (i != last) {
      w.encode(c.sig[plane_type][t][std::min(i, 15)], level != 0 ? 1 : 0);
      if (level == 0) continue;
    }
    const int mag = std::abs(level);
    w.encode(c.gt1[plane_type][t], mag > 1 ? 1 : 0);
    if (mag > 1) {
      write_golomb(w, std::span<Prob>(c.coeff_golomb), static_cast<std::uint32_t>(mag - 2));
    }
    w.encode_bypass(level < 0 ? 1 : 0);
  }
}

template <class R>
void read_coeffs(R& r, Contexts& c, int plane_type, int n, std::span<int> levels) {
  std::fill(levels.begin(), levels.end(), 0);
  const int t = tx_index(n);
  if (r.decode(c.cbf[plane_type][t]) == 0) return;
  const auto& scan = zigzag_order(n);
  const int bits = n == 8 ? 6 : 4;
  int node = 1;
  for (int b = bits - 1; b >= 0; --b) node = (node << 1) | r.decode(c.last[plane_type][t][node]);
  const int last = node - (1 << bits);
  for (int i = last; i >= 0; --i) {
    if (i != last && r.decode(c.sig[plane_type][t][std::min(i, 15)]) == 0) continue;
    int mag = 1;
    if (r.decode(c.gt1[plane_type][t]) == 1) {
      mag = static_cast<int>(std::min<std::uint32_t>(
          read_golomb(r, std::span<Prob>(c.coeff_golomb)) + 2, 1u << 24));
    }
    levels[scan[i]] = r.decode_bypass() == 1 ? -mag : mag;
  }
}

// Range encoder that also accumulates the ideal cost of everything it codes
// into a caller-selected bucket.
class TallyingEncoder {
 public:
  enum Bucket { kHeader = 0, kPartition, kMode, kCoeffConventional, kCoeffTexture, kBuckets };

  void set_bucket(Bucket b) { bucket_ = b; }
  void encode(Prob& p, int bit) {
    tally_[bucket_] += bit_cost(p, bit);
    coder_.encode(p, bit);
  }
  void encode_bypass(int bit) {
    tally_[bucket_] += 1.0;
    coder_.encode_bypass(bit);
  }
  double tally(Bucket b) const { return tally_[b]; }
  std::vector<std::uint8_t> finish() { return coder_.finish(); }

 private:
  RangeEncoder coder_;
  Bucket bucket_ = kHeader;
  std::array<double, kBuckets> tally_{};
};

// Decoder-side twin of TallyingEncoder.
class TallyingDecoder {
 public:
  explicit TallyingDecoder(std::span<const std::uint8_t> payload) : coder_(payload) {}
  void set_bucket(TallyingEncoder::Bucket b) { bucket_ = b; }
  int decode(Prob& p) {
    const Prob before = p;
    const int bit = coder_.decode(p);
    tally_[bucket_] += bit_cost(before, bit);
    return bit;
  }
  int decode_bypass() {
    tally_[bucket_] += 1.0;
    return coder_.decode_bypass();
  }
  double tally(TallyingEncoder::Bucket b) const { return tally_[b]; }

 private:
  RangeDecoder coder_;
  TallyingEncoder::Bucket bucket_ = TallyingEncoder::kHeader;
  std::array<double, TallyingEncoder::kBuckets> tally_{};
};

}  // namespace texlab::syntax

#endif  // TEXLAB_SRC_CODEC_SYNTAX_H_
