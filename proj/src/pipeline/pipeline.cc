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

#include "texlab/pipeline.h"

#include "texlab/errors.h"

namespace texlab {

SequenceAnalysis analyze_sequence(std::span<const RgbImage> rgb, std::span<const Frame> frames,
                                  const CnnWeights& weights, double threshold,
                                  const RefineParams& params) {
  if (rgb.size() != frames.size()) throw InputError("RGB and YUV sequences differ in length");
  validate_weights(weights);
  SequenceAnalysis out;
  out.raw.reserve(rgb.size());
  for (std::size_t i = 0; i < rgb.size(); ++i) {
    if (rgb[i].width() != frames[i].width() || rgb[i].height() != frames[i].height()) {
      throw InputError("RGB and YUV frame sizes differ");
    }
    out.raw.push_back(segment_frame(rgb[i], weights, threshold, static_cast<int>(i)));
  }
  out.refined = refine_sequence(frames, out.raw, params);
  return out;
}

}  // namespace texlab
