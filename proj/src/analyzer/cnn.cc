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

#include "texlab/cnn.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "texlab/errors.h"

namespace texlab {

Tensor conv3x3_forward(const Tensor& input, std::span<const float> kernel,
                       std::span<const float> bias, int out_channels) {
  const int c_in = input.channels;
  const int h = input.height;
  const int w = input.width;
  if (h < 1 || w < 1 || c_in < 1 || out_channels < 1) {
    throw ShapeError("conv3x3: empty tensor");
  }
  if (kernel.size() != static_cast<std::size_t>(out_channels) * c_in * 9 ||
      bias.size() != static_cast<std::size_t>(out_channels) ||
      input.values.size() != static_cast<std::size_t>(c_in) * h * w) {
    throw ShapeError("conv3x3: kernel/bias/input shape mismatch");
  }

  // Zero-padded double copy of the input so the inner loops are branch-free.
  const int pw = w + 2;
  const int ph = h + 2;
  std::vector<double> padded(static_cast<std::size_t>(c_in) * ph * pw, 0.0);
  for (int c = 0; c < c_in; ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        padded[(static_cast<std::size_t>(c) * ph + y + 1) * pw + x + 1] =
            input.at(c, y, x);
      }
    }
  }

  Tensor out(out_channels, h, w);
  std::vector<double> acc(static_cast<std::size_t>(h) * w);
  for (int oc = 0; oc < out_channels; ++oc) {
    std::fill(acc.begin(), acc.end(), static_cast<double>(bias[oc]));
    for (int ic = 0; ic < c_in; ++ic) {
      const float* k = kernel.data() + (static_cast<std::size_t>(oc) * c_in + ic) * 9;
      const double* plane = padded.data() + static_cast<std::size_t>(ic) * ph * pw;
      for (int ky = 0; ky < 3; ++ky) {
        for (int kx = 0; kx < 3; ++kx) {
          const double kv = k[ky * 3 + kx];
          if (kv == 0.0) continue;
          for (int y = 0; y < h; ++y) {
            const double* src = plane + static_cast<std::size_t>(y + ky) * pw + kx;
            double* dst = acc.data() + static_cast<std::size_t>(y) * w;
            for (int x = 0; x < w; ++x) dst[x] += kv * src[x];
          }
        }
      }
    }
    float* dst = out.values.data() + static_cast<std::size_t>(oc) * h * w;
    for (std::size_t i = 0; i < acc.size(); ++i) dst[i] = static_cast<float>(acc[i]);
  }
  return out;
}

Tensor maxpool2(const Tensor& input) {
  if (input.height % 2 != 0 || input.width % 2 != 0 || input.height == 0 ||
      input.width == 0) {
    throw ShapeError("maxpool2: spatial dimensions must be even and nonzero");
  }
  Tensor out(input.channels, input.height / 2, input.width / 2);
  for (int c = 0; c < input.channels; ++c) {
    for (int y = 0; y < out.height; ++y) {
      for (int x = 0; x < out.width; ++x) {
        out.at(c, y, x) = std::max({input.at(c, 2 * y, 2 * x),
                                    input.at(c, 2 * y, 2 * x + 1),
                                    input.at(c, 2 * y + 1, 2 * x),
                                    input.at(c, 2 * y + 1, 2 * x + 1)});
      }
    }
  }
  return out;
}

void relu_inplace(Tensor& t) {
  for (float& v : t.values) v = std::max(v, 0.0f);
}

std::vector<float> fully_connected(std::span<const float> input,
                                   std::span<const float> weights,
                                   std::span<const float> bias, int out_features) {
  const std::size_t n_in = input.size();
  if (out_features < 1 ||
      weights.size() != static_cast<std::size_t>(out_features) * n_in ||
      bias.size() != static_cast<std::size_t>(out_features)) {
    throw ShapeError("fully_connected: weight/bias shape mismatch");
  }
  std::vector<float> out(static_cast<std::size_t>(out_features));
  for (int o = 0; o < out_features; ++o) {
    const float* row = weights.data() + static_cast<std::size_t>(o) * n_in;
    double acc = bias[o];
    for (std::size_t i = 0; i < n_in; ++i) {
      acc += static_cast<double>(row[i]) * input[i];
    }
    out[o] = static_cast<float>(acc);
  }
  return out;
}

float sigmoid(float x) {
  return static_cast<float>(1.0 / (1.0 + std::exp(-static_cast<double>(x))));
}

std::string layer_kind_name(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv3x3: return "conv3x3";
    case LayerKind::kMaxPool2: return "maxpool2";
    case LayerKind::kFullyConnected: return "fully_connected";
    case LayerKind::kRelu: return "relu";
    case LayerKind::kSigmoid: return "sigmoid";
  }
  return "unknown";
}

std::size_t CnnLayer::expected_weight_count() const {
  switch (kind) {
    case LayerKind::kConv3x3:
      return static_cast<std::size_t>(out_size) * in_size * 9;
    case LayerKind::kFullyConnected:
      return static_cast<std::size_t>(out_size) * in_size;
    default:
      return 0;
  }
}

namespace {

struct LayerSpec {
  LayerKind kind;
  int in_size;
  int out_size;
};

constexpr LayerSpec kFixedLayers[] = {
    {LayerKind::kConv3x3, 3, 32},           {LayerKind::kRelu, 0, 0},
    {LayerKind::kConv3x3, 32, 32},          {LayerKind::kRelu, 0, 0},
    {LayerKind::kMaxPool2, 0, 0},           {LayerKind::kConv3x3, 32, 64},
    {LayerKind::kRelu, 0, 0},               {LayerKind::kConv3x3, 64, 64},
    {LayerKind::kRelu, 0, 0},               {LayerKind::kMaxPool2, 0, 0},
    {LayerKind::kFullyConnected, 4096, 256}, {LayerKind::kRelu, 0, 0},
    {LayerKind::kFullyConnected, 256, 1},   {LayerKind::kSigmoid, 0, 0},
};

std::string describe(const LayerSpec& spec) {
  std::string s = layer_kind_name(spec.kind);
  if (spec.kind == LayerKind::kConv3x3 || spec.kind == LayerKind::kFullyConnected) {
    s += "(" + std::to_string(spec.in_size) + "," + std::to_string(spec.out_size) + ")";
  }
  return s;
}

}  // namespace

const std::string& fixed_architecture() {
  static const std::string architecture = [] {
    std::string s;
    for (const auto& spec : kFixedLayers) {
      if (!s.empty()) s += ' ';
      s += describe(spec);
    }
    return s;
  }();
  return architecture;
}

std::string architecture_hash(const std::string& architecture) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : architecture) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

CnnWeights make_zero_weights() {
  CnnWeights weights;
  for (const auto& spec : kFixedLayers) {
    CnnLayer layer;
    layer.kind = spec.kind;
    layer.in_size = spec.in_size;
    layer.out_size = spec.out_size;
    layer.weights.assign(layer.expected_weight_count(), 0.0f);
    if (layer.has_parameters()) layer.bias.assign(spec.out_size, 0.0f);
    weights.layers.push_back(std::move(layer));
  }
  return weights;
}

void validate_weights(const CnnWeights& weights) {
  constexpr std::size_t n = std::size(kFixedLayers);
  if (weights.layers.size() != n) {
    throw ModelError("expected " + std::to_string(n) + " layers, got " +
                     std::to_string(weights.layers.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& spec = kFixedLayers[i];
    const auto& layer = weights.layers[i];
    if (layer.kind != spec.kind) {
      throw ModelError("layer " + std::to_string(i) + " is " +
                       layer_kind_name(layer.kind) + ", expected " +
                       layer_kind_name(spec.kind));
    }
    if (!layer.has_parameters()) continue;
    if (layer.in_size != spec.in_size || layer.out_size != spec.out_size ||
        layer.weights.size() != layer.expected_weight_count() ||
        layer.bias.size() != static_cast<std::size_t>(spec.out_size)) {
      throw ModelError("layer " + std::to_string(i) + " shape does not match " +
                       describe(spec));
    }
  }
}

float cnn_probability(const RgbImage& patch, const CnnWeights& weights) {
  if (patch.width() != kPatchSize || patch.height() != kPatchSize) {
    throw ShapeError("cnn_forward expects a 32x32 patch");
  }
  Tensor t(3, kPatchSize, kPatchSize);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < kPatchSize; ++y) {
      for (int x = 0; x < kPatchSize; ++x) {
        t.at(c, y, x) = static_cast<float>(patch.at(x, y, c) / 255.0 -
                                           static_cast<double>(weights.channel_means[c]));
      }
    }
  }
  std::vector<float> flat;
  bool flattened = false;
  for (const auto& layer : weights.layers) {
    switch (layer.kind) {
      case LayerKind::kConv3x3:
        t = conv3x3_forward(t, layer.weights, layer.bias, layer.out_size);
        break;
      case LayerKind::kMaxPool2:
        t = maxpool2(t);
        break;
      case LayerKind::kRelu:
        if (flattened) {
          for (float& v : flat) v = std::max(v, 0.0f);
        } else {
          relu_inplace(t);
        }
        break;
      case LayerKind::kFullyConnected:
        if (!flattened) {
          flat = std::move(t.values);
          flattened = true;
        }
        flat = fully_connected(flat, layer.weights, layer.bias, layer.out_size);
        break;
      case LayerKind::kSigmoid:
        for (float& v : flat) v = sigmoid(v);
        break;
    }
  }
  if (flat.size() != 1) throw ModelError("network does not emit a single scalar");
  return flat[0];
}

BlockScore cnn_forward(const RgbImage& patch, const CnnWeights& weights,
                       double threshold) {
  validate_weights(weights);
  BlockScore score;
  score.probability = cnn_probability(patch, weights);
  score.texture = score.probability >= threshold;
  return score;
}

}  // namespace texlab
