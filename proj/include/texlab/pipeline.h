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

#ifndef TEXLAB_PIPELINE_H_
#define TEXLAB_PIPELINE_H_

#include <span>
#include <vector>

#include "texlab/analyzer.h"
#include "texlab/cnn.h"
#include "texlab/frame.h"
#include "texlab/refine.h"

namespace texlab {

struct SequenceAnalysis {
  MaskSequence raw;      // classifier output, one cluster
  MaskSequence refined;  // after the full refinement pipeline
};

// Classifies every frame and refines the masks. rgb[i] and frames[i] must
// show the same picture; the classifier reads the RGB source and the
// clustering features come from the 4:2:0 frame.
SequenceAnalysis analyze_sequence(std::span<const RgbImage> rgb, std::span<const Frame> frames,
                                  const CnnWeights& weights,
                                  double threshold = kDefaultTextureThreshold,
                                  const RefineParams& params = {});

}  // namespace texlab

#endif  // TEXLAB_PIPELINE_H_
