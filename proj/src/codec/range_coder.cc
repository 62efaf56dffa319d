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

#include "texlab/range_coder.h"

#include <array>
#include <cmath>

namespace texlab {
namespace {

constexpr std::uint32_t kTop = 1u << 24;

const std::array<double, Prob::kOne + 1>& cost_table() {
  static const auto table = [] {
    std::array<double, Prob::kOne + 1> t{};
    t[0] = 64.0;
    for (int i = 1; i <= Prob::kOne; ++i) t[i] = -std::log2(i / double(Prob::kOne));
    return t;
  }();
  return table;
}

}  // namespace

double bit_cost(const Prob& p, int bit) {
  return cost_table()[bit ? Prob::kOne - p.p0 : p.p0];
}

void RangeEncoder::encode(Prob& p, int bit) {
  const std::uint32_t bound = (range_ >> Prob::kBits) * p.p0;
  if (bit == 0) {
    range_ = bound;
  } else {
    low_ += bound;
    range_ -= bound;
  }
  p.update(bit);
  while (range_ < kTop) {
    range_ <<= 8;
    shift_low();
  }
}

void RangeEncoder::encode_bypass(int bit) {
  Prob fixed;
  const std::uint32_t bound = (range_ >> Prob::kBits) * fixed.p0;
  if (bit == 0) {
    range_ = bound;
  } else {
    low_ += bound;
    range_ -= bound;
  }
  while (range_ < kTop) {
    range_ <<= 8;
    shift_low();
  }
}

void RangeEncoder::shift_low() {
  if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    const auto carry = static_cast<std::uint8_t>(low_ >> 32);
    std::uint8_t temp = cache_;
    do {
      out_.push_back(static_cast<std::uint8_t>(temp + carry));
      temp = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFu) << 8;
}

std::vector<std::uint8_t> RangeEncoder::finish() {
  for (int i = 0; i < 5; ++i) shift_low();
  return std::move(out_);
}

RangeDecoder::RangeDecoder(std::span<const std::uint8_t> payload) : in_(payload) {
  for (int i = 0; i < 5; ++i) code_ = (code_ << 8) | next_byte();
}

std::uint8_t RangeDecoder::next_byte() { return pos_ < in_.size() ? in_[pos_++] : 0; }

void RangeDecoder::normalize() {
  while (range_ < kTop) {
    range_ <<= 8;
    code_ = (code_ << 8) | next_byte();
  }
}

int RangeDecoder::decode(Prob& p) {
  const std::uint32_t bound = (range_ >> Prob::kBits) * p.p0;
  int bit;
  if (code_ < bound) {
    range_ = bound;
    bit = 0;
  } else {
    code_ -= bound;
    range_ -= bound;
    bit = 1;
  }
  p.update(bit);
  normalize();
  return bit;
}

int RangeDecoder::decode_bypass() {
  Prob fixed;
  const std::uint32_t bound = (range_ >> Prob::kBits) * fixed.p0;
  int bit;
  if (code_ < bound) {
    range_ = bound;
    bit = 0;
  } else {
    code_ -= bound;
    range_ -= bound;
    bit = 1;
  }
  normalize();
  return bit;
}

}  // namespace texlab
