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

// Adaptive binary range coder (LZMA-style carry propagation) plus a bit
// counter that applies the identical probability updates, so rate estimates
// used in mode decisions equal what the real coder spends up to the final
// flush.

#ifndef TEXLAB_RANGE_CODER_H_
#define TEXLAB_RANGE_CODER_H_

#include <cstdint>
#include <span>
#include <vector>

namespace texlab {

// Probability that the next bit is 0, in units of 1/4096.
struct Prob {
  static constexpr int kBits = 12;
  static constexpr std::uint16_t kOne = 1 << kBits;
  static constexpr int kAdaptShift = 5;

  std::uint16_t p0 = kOne / 2;

  void update(int bit) {
    if (bit) {
      p0 -= p0 >> kAdaptShift;
    } else {
      p0 += (kOne - p0) >> kAdaptShift;
    }
  }
};

// Cost in bits of coding `bit` with probability state p.
double bit_cost(const Prob& p, int bit);

class RangeEncoder {
 public:
  void encode(Prob& p, int bit);
  // Equiprobable bit; no state.
  void encode_bypass(int bit);
  // Flushes and returns the payload. The encoder must not be used afterwards.
  std::vector<std::uint8_t> finish();

 private:
  void shift_low();

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  std::vector<std::uint8_t> out_;
};

// Reads past the end of the payload as zero bytes; callers detect corruption
// through the frame checksum rather than through the coder.
class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const std::uint8_t> payload);

  int decode(Prob& p);
  int decode_bypass();

 private:
  std::uint8_t next_byte();
  void normalize();

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t code_ = 0;
};

// Accumulates the ideal cost of each coded bit and adapts probabilities the
// same way RangeEncoder does.
class BitCounter {
 public:
  void encode(Prob& p, int bit) {
    bits_ += bit_cost(p, bit);
    p.update(bit);
  }
  void encode_bypass(int) { bits_ += 1.0; }
  double bits() const { return bits_; }

 private:
  double bits_ = 0.0;
};

}  // namespace texlab

#endif  // TEXLAB_RANGE_CODER_H_
