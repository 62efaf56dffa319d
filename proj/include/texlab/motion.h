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

// Texture-region affine motion estimation: FAST-9 corners restricted to the
// texture mask, SAD patch matching, seeded RANSAC over three-point affine
// hypotheses and a least-squares refit on the winning inlier set.

#ifndef TEXLAB_MOTION_H_
#define TEXLAB_MOTION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "texlab/block_grid.h"
#include "texlab/frame.h"

namespace texlab {

// Maps (x, y) in the current frame to (a x + b y + tx, c x + d y + ty) in the
// reference frame.
struct AffineModel {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;
  double tx = 0.0;
  double ty = 0.0;

  static AffineModel identity() { return {}; }
  static AffineModel translation(double dx, double dy) { return {1, 0, 0, 1, dx, dy}; }

  double map_x(double x, double y) const { return a * x + b * y + tx; }
  double map_y(double x, double y) const { return c * x + d * y + ty; }
  double determinant() const { return a * d - b * c; }

  // |det| >= 1e-3, all parameters finite and |tx|, |ty| bounded by the
  // larger frame dimension.
  bool is_valid(int frame_width, int frame_height) const;

  // Rounds every parameter through float32, as transmitted in the bitstream.
  AffineModel as_transmitted() const;

  // Throws NoModelError when the model is not invertible.
  AffineModel inverse() const;

  bool operator==(const AffineModel&) const = default;
};

struct Keypoint {
  int x = 0;
  int y = 0;
  int score = 0;
  bool operator==(const Keypoint&) const = default;
};

struct Match {
  Keypoint cur;
  Keypoint ref;
  int distance = 0;  // SAD over the comparison patch
};

struct MotionParams {
  int fast_threshold = 20;
  int patch_radius = 8;
  double ratio = 0.8;
  int max_search_distance = 64;
  int ransac_iterations = 2000;
  double inlier_tolerance = 1.5;
};

// Segment-test score used for non-maximum suppression: the largest t' for
// which the pixel still passes the 9-contiguous test. Zero for non-corners.
int fast_corner_score(const Plane& luma, int x, int y);

// True iff at least 9 contiguous pixels of the radius-3 Bresenham circle are
// all brighter than p + t or all darker than p - t.
bool fast_segment_test(const Plane& luma, int x, int y, int threshold);

// FAST-9 with 3x3 non-maximum suppression; only pixels inside texture blocks
// of region are returned, sorted by (y, x). Throws InputError for t <= 0.
std::vector<Keypoint> detect_fast(const Plane& luma, const TextureMask& region,
                                  int threshold = 20);

// Mutual-best SAD matching with a best/second-best ratio test and a maximum
// search distance. Patches are sampled with edge clamping. Output is sorted by
// the current keypoint's (y, x).
std::vector<Match> match_features(const Plane& cur_luma, const Plane& ref_luma,
                                  const std::vector<Keypoint>& kps_cur,
                                  const std::vector<Keypoint>& kps_ref,
                                  const MotionParams& params = {});

struct RansacResult {
  AffineModel model;
  std::vector<int> inliers;  // indices into the canonically sorted match list
  std::vector<Match> matches;  // the canonically sorted match list
};

// Exact affine through three correspondences; empty when the points are
// (near-)collinear.
std::optional<AffineModel> affine_from_three(const Match& m0, const Match& m1,
                                             const Match& m2);

// Least-squares affine over the given correspondences; empty when the system
// is rank deficient.
std::optional<AffineModel> fit_affine_least_squares(const std::vector<Match>& matches);

double reprojection_error(const AffineModel& model, const Match& m);

// Matches are sorted by (cur.x, cur.y, ref.x, ref.y) before sampling so the
// result is independent of input order. Throws NoModelError for fewer than 3
// matches or when no valid model is found.
RansacResult ransac_affine(std::vector<Match> matches, int iterations, double inlier_tolerance,
                           std::uint64_t seed);

struct MotionEstimate {
  AffineModel model;
  int inlier_count = 0;
  int match_count = 0;
};

// Frame-level texture motion from the current frame to a reference frame,
// using only corners inside the respective texture masks. Throws
// NoModelError when either mask is empty or fitting fails.
MotionEstimate estimate_texture_motion(const Frame& cur, const Frame& ref,
                                       const TextureMask& cur_mask,
                                       const TextureMask& ref_mask, std::uint64_t seed,
                                       const MotionParams& params = {});

// "frame,ref,a,b,c,d,tx,ty,inlier_count"
std::string motion_csv_header();
std::string motion_csv_row(int frame, int ref, const MotionEstimate& estimate);

}  // namespace texlab

#endif  // TEXLAB_MOTION_H_
