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

#ifndef TEXLAB_TRANSFORM_H_
#define TEXLAB_TRANSFORM_H_

#include <array>
#include <span>
#include <vector>

namespace texlab {

inline constexpr int kMinQp = 0;
inline constexpr int kMaxQp = 63;

// Step size 2^(qp/8 + 1); strictly increasing in qp. Throws InputError
// outside [0, 63].
double qp_to_step(int qp);

// Lagrange multiplier for D + lambda R with D in squared-error units.
inline double rd_lambda(double step) { return 0.85 * step * step; }

// Orthonormal 2D type-II DCT of an n x n block (n = 4 or 8), row-major.
std::vector<double> forward_dct(std::span<const double> block, int n);
std::vector<double> inverse_dct(std::span<const double> coeffs, int n);

// q = round(c / step), halves rounded away from zero.
std::vector<int> quantize(std::span<const double> coeffs, double step);
std::vector<double> dequantize(std::span<const int> levels, double step);

// Zig-zag scan order for an n x n block: scan position -> raster index.
const std::vector<int>& zigzag_order(int n);

}  // namespace texlab

#endif  // TEXLAB_TRANSFORM_H_
