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

#include "texlab/texw1.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "json.hpp"
#include "texlab/errors.h"
#include "texlab/io.h"

namespace texlab {
namespace {

constexpr char kMagic[] = "TEXW1\n";
constexpr std::size_t kMagicSize = sizeof(kMagic) - 1;

static_assert(std::endian::native == std::endian::little,
              "TEXW1 blobs are read in place as little-endian floats");

LayerKind kind_from_name(const std::string& name) {
  for (LayerKind kind : {LayerKind::kConv3x3, LayerKind::kMaxPool2,
                         LayerKind::kFullyConnected, LayerKind::kRelu,
                         LayerKind::kSigmoid}) {
    if (layer_kind_name(kind) == name) return kind;
  }
  throw ModelError("unknown layer kind '" + name + "'");
}

void read_floats(std::span<const std::uint8_t> bytes, std::size_t& offset,
                 std::size_t count, std::vector<float>& out) {
  const std::size_t n = count * sizeof(float);
  if (bytes.size() - offset < n) {
    throw ModelError("TEXW1 blob truncated at byte " + std::to_string(offset));
  }
  out.resize(count);
  std::memcpy(out.data(), bytes.data() + offset, n);
  offset += n;
}

}  // namespace

CnnWeights parse_texw1(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kMagicSize ||
      !std::equal(kMagic, kMagic + kMagicSize, bytes.begin())) {
    throw ModelError("not a TEXW1 file (bad magic)");
  }
  const auto header_end =
      std::find(bytes.begin() + kMagicSize, bytes.end(), std::uint8_t{0});
  if (header_end == bytes.end()) throw ModelError("TEXW1 header not terminated");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.begin() + kMagicSize, header_end);
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("TEXW1 header is not valid JSON: ") + e.what());
  }

  CnnWeights weights;
  try {
    const std::string arch = header.at("architecture").get<std::string>();
    if (arch != fixed_architecture()) {
      throw ModelError("architecture mismatch: '" + arch + "'");
    }
    if (header.at("architecture_hash").get<std::string>() != architecture_hash(arch)) {
      throw ModelError("architecture hash mismatch");
    }
    const auto& means = header.at("normalization").at("channel_means");
    if (!means.is_array() || means.size() != 3) {
      throw ModelError("channel_means must have 3 entries");
    }
    for (int c = 0; c < 3; ++c) weights.channel_means[c] = means[c].get<float>();
    if (header.contains("training")) weights.metadata_json = header["training"].dump();

    for (const auto& entry : header.at("layers")) {
      CnnLayer layer;
      layer.kind = kind_from_name(entry.at("kind").get<std::string>());
      if (layer.kind == LayerKind::kConv3x3) {
        layer.in_size = entry.at("in_channels").get<int>();
        layer.out_size = entry.at("out_channels").get<int>();
      } else if (layer.kind == LayerKind::kFullyConnected) {
        layer.in_size = entry.at("in_features").get<int>();
        layer.out_size = entry.at("out_features").get<int>();
      }
      weights.layers.push_back(std::move(layer));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("TEXW1 header field error: ") + e.what());
  }
  // Shapes are checked before any blob is sized from them.
  for (auto& layer : weights.layers) {
    if (layer.has_parameters() && (layer.in_size <= 0 || layer.out_size <= 0)) {
      throw ModelError("layer sizes must be positive");
    }
  }
  {
    CnnWeights shape_only = weights;
    for (auto& layer : shape_only.layers) {
      layer.weights.assign(layer.expected_weight_count(), 0.0f);
      if (layer.has_parameters()) layer.bias.assign(layer.out_size, 0.0f);
    }
    validate_weights(shape_only);
  }

  std::size_t offset = static_cast<std::size_t>(header_end - bytes.begin()) + 1;
  for (auto& layer : weights.layers) {
    if (!layer.has_parameters()) continue;
    read_floats(bytes, offset, layer.expected_weight_count(), layer.weights);
    read_floats(bytes, offset, static_cast<std::size_t>(layer.out_size), layer.bias);
  }
  if (offset != bytes.size()) {
    throw ModelError("TEXW1 has " + std::to_string(bytes.size() - offset) +
                     " trailing bytes");
  }
  return weights;
}

std::vector<std::uint8_t> serialize_texw1(const CnnWeights& weights) {
  validate_weights(weights);
  nlohmann::json header;
  header["format"] = "TEXW1";
  header["architecture"] = fixed_architecture();
  header["architecture_hash"] = architecture_hash(fixed_architecture());
  header["input"] = {{"height", kPatchSize}, {"width", kPatchSize}, {"channels", 3}};
  header["normalization"] = {
      {"scale", "1/255"},
      {"channel_means",
       {weights.channel_means[0], weights.channel_means[1], weights.channel_means[2]}}};
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& layer : weights.layers) {
    nlohmann::json entry{{"kind", layer_kind_name(layer.kind)}};
    if (layer.kind == LayerKind::kConv3x3) {
      entry["in_channels"] = layer.in_size;
      entry["out_channels"] = layer.out_size;
    } else if (layer.kind == LayerKind::kFullyConnected) {
      entry["in_features"] = layer.in_size;
      entry["out_features"] = layer.out_size;
    }
    if (layer.has_parameters()) {
      entry["weight_count"] = layer.weights.size();
      entry["bias_count"] = layer.bias.size();
    }
    layers.push_back(std::move(entry));
  }
  header["layers"] = std::move(layers);
  header["training"] = nlohmann::json::parse(weights.metadata_json, nullptr, false);
  if (header["training"].is_discarded()) header["training"] = nlohmann::json::object();

  const std::string text = header.dump();
  std::vector<std::uint8_t> out(kMagic, kMagic + kMagicSize);
  out.insert(out.end(), text.begin(), text.end());
  out.push_back(0);
  auto append = [&out](const std::vector<float>& values) {
    const auto* p = reinterpret_cast<const std::uint8_t*>(values.data());
    out.insert(out.end(), p, p + values.size() * sizeof(float));
  };
  for (const auto& layer : weights.layers) {
    if (!layer.has_parameters()) continue;
    append(layer.weights);
    append(layer.bias);
  }
  return out;
}

CnnWeights load_texw1(const std::filesystem::path& path) {
  return parse_texw1(read_file_bytes(path));
}

void save_texw1(const CnnWeights& weights, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_texw1(weights));
}

}  // namespace texlab
