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

#ifndef TEXLAB_COLOR_H_
#define TEXLAB_COLOR_H_

#include "texlab/frame.h"

namespace texlab {

// BT.601 full-range RGB to 4:2:0. Each chroma sample is the rounded mean of
// the four unrounded full-resolution chroma values it covers. Throws
// DimensionError for odd dimensions or sizes below Frame::kMinFrameSize.
Frame rgb_to_yuv420(const RgbImage& rgb, int index = 0);

// Inverse BT.601 full-range conversion with nearest-neighbour chroma
// upsampling.
RgbImage yuv420_to_rgb(const Frame& frame);

}  // namespace texlab

#endif  // TEXLAB_COLOR_H_
