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

#include "texlab/transform.h"

#include <cmath>
#include <numbers>

#include "texlab/errors.h"

namespace texlab {
namespace {

// basis[k * n + i] = alpha(k) cos(pi (2i + 1) k / 2n)
const std::vector<double>& dct_basis(int n) {
  static const auto make = [](int size) {
    std::vector<double> b(static_cast<std::size_t>(size) * size);
    for (int k = 0; k < size; ++k) {
      const double alpha = k == 0 ? std::sqrt(1.0 / size) : std::sqrt(2.0 / size);
      for (int i = 0; i < size; ++i) {
        b[static_cast<std::size_t>(k) * size + i] =
            alpha * std::cos(std::numbers::pi * (2 * i + 1) * k / (2.0 * size));
      }
    }
    return b;
  };
  static const std::vector<double> b4 = make(4);
  static const std::vector<double> b8 = make(8);
  if (n == 4) return b4;
  if (n == 8) return b8;
  throw ShapeError("DCT size must be 4 or 8");
}

void check_block(std::size_t size, int n) {
  if (size != static_cast<std::size_t>(n) * n) throw ShapeError("DCT block size mismatch");
}

}  // namespace

double qp_to_step(int qp) {
  if (qp < kMinQp || qp > kMaxQp) {
    throw InputError("qp " + std::to_string(qp) + " outside [0, 63]");
  }
  return std::pow(2.0, qp / 8.0 + 1.0);
}

std::vector<double> forward_dct(std::span<const double> block, int n) {
  check_block(block.size(), n);
  const auto& b = dct_basis(n);
  std::vector<double> tmp(block.size()), out(block.size());
  // Rows, then columns.
  for (int y = 0; y < n; ++y) {
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += b[k * n + i] * block[y * n + i];
      tmp[y * n + k] = s;
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += b[k * n + i] * tmp[i * n + x];
      out[k * n + x] = s;
    }
  }
  return out;
}

std::vector<double> inverse_dct(std::span<const double> coeffs, int n) {
  check_block(coeffs.size(), n);
  const auto& b = dct_basis(n);
  std::vector<double> tmp(coeffs.size()), out(coeffs.size());
  for (int x = 0; x < n; ++x) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += b[k * n + i] * coeffs[k * n + x];
      tmp[i * n + x] = s;
    }
  }
  for (int y = 0; y < n; ++y) {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += b[k * n + i] * tmp[y * n + k];
      out[y * n + i] = s;
    }
  }
  return out;
}

std::vector<int> quantize(std::span<const double> coeffs, double step) {
  std::vector<int> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out[i] = static_cast<int>(std::round(coeffs[i] / step));
  }
  return out;
}

std::vector<double> dequantize(std::span<const int> levels, double step) {
  std::vector<double> out(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) out[i] = levels[i] * step;
  return out;
}

const std::vector<int>& zigzag_order(int n) {
  static const auto make = [](int size) {
    std::vector<int> order;
    for (int s = 0; s <= 2 * (size - 1); ++s) {
      for (int i = 0; i < size; ++i) {
        // Odd diagonals run top-right to bottom-left.
        const int y = (s % 2 == 0) ? s - i : i;
        const int x = s - y;
        if (y < 0 || y >= size || x < 0 || x >= size) continue;
        order.push_back(y * size + x);
      }
    }
    return order;
  };
  static const std::vector<int> z4 = make(4);
  static const std::vector<int> z8 = make(8);
  if (n == 4) return z4;
  if (n == 8) return z8;
  throw ShapeError("zigzag size must be 4 or 8");
}

}  // namespace texlab
