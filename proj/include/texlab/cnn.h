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

// Forward-pass primitives for the 32x32 block texture classifier.
//
// Every layer accumulates in double precision and rounds its output to float
// exactly once, so results are reproducible by any evaluator that follows the
// same rule regardless of summation order (differences stay far below 1e-6).

#ifndef TEXLAB_CNN_H_
#define TEXLAB_CNN_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "texlab/frame.h"

namespace texlab {

// Dense C x H x W float tensor, channel-major.
struct Tensor {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<float> values;

  Tensor() = default;
  Tensor(int c, int h, int w, float fill = 0.0f)
      : channels(c), height(h), width(w),
        values(static_cast<std::size_t>(c) * h * w, fill) {}

  float at(int c, int y, int x) const {
    return values[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  float& at(int c, int y, int x) {
    return values[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
};

// Same-size 3x3 convolution with zero padding of 1. kernel is laid out
// [out][in][ky][kx]; bias has one entry per output channel. Throws
// ShapeError on inconsistent sizes.
Tensor conv3x3_forward(const Tensor& input, std::span<const float> kernel,
                       std::span<const float> bias, int out_channels);

// 2x2 non-overlapping max. Throws ShapeError for odd spatial dimensions.
Tensor maxpool2(const Tensor& input);

void relu_inplace(Tensor& t);

// y = W x + b over the flattened (channel-major) input. weights is laid out
// [out][in].
std::vector<float> fully_connected(std::span<const float> input,
                                   std::span<const float> weights,
                                   std::span<const float> bias, int out_features);

float sigmoid(float x);

enum class LayerKind { kConv3x3, kMaxPool2, kFullyConnected, kRelu, kSigmoid };

std::string layer_kind_name(LayerKind kind);

struct CnnLayer {
  LayerKind kind = LayerKind::kRelu;
  int in_size = 0;   // input channels (conv) or features (fc)
  int out_size = 0;  // output channels (conv) or features (fc)
  std::vector<float> weights;
  std::vector<float> bias;

  bool has_parameters() const {
    return kind == LayerKind::kConv3x3 || kind == LayerKind::kFullyConnected;
  }
  std::size_t expected_weight_count() const;
};

// Classifier weights as stored in a TEXW1 file. Layers follow the fixed
// architecture returned by fixed_architecture().
struct CnnWeights {
  std::vector<CnnLayer> layers;
  std::array<float, 3> channel_means{0.5f, 0.5f, 0.5f};
  std::string metadata_json = "{}";  // opaque training metadata
};

// conv3x3(3,32) relu conv3x3(32,32) relu maxpool2 conv3x3(32,64) relu
// conv3x3(64,64) relu maxpool2 fully_connected(4096,256) relu
// fully_connected(256,1) sigmoid
const std::string& fixed_architecture();

// "fnv1a64:" followed by 16 lowercase hex digits of the 64-bit FNV-1a hash.
std::string architecture_hash(const std::string& architecture);

// Layer list with correct shapes and zero-filled parameters.
CnnWeights make_zero_weights();

// Throws ModelError if the layers do not match the fixed architecture.
void validate_weights(const CnnWeights& weights);

struct BlockScore {
  float probability = 0.0f;
  bool texture = false;
};

inline constexpr int kPatchSize = 32;

// Classifies a 32x32 RGB patch. Inputs are scaled to [0, 1] and the stored
// per-channel means are subtracted. Throws ShapeError for a wrongly sized
// patch and ModelError for weights that fail validation.
BlockScore cnn_forward(const RgbImage& patch, const CnnWeights& weights,
                       double threshold = 0.5);

// Raw probability with no validation of the weights; callers that score many
// patches validate once up front.
float cnn_probability(const RgbImage& patch, const CnnWeights& weights);

}  // namespace texlab

#endif  // TEXLAB_CNN_H_
