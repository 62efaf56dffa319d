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

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <tuple>

#include "texlab/errors.h"
#include "texlab/motion.h"

namespace texlab {

bool AffineModel::is_valid(int frame_width, int frame_height) const {
  for (double v : {a, b, c, d, tx, ty}) {
    if (!std::isfinite(v)) return false;
  }
  const double limit = std::max(frame_width, frame_height);
  return std::abs(determinant()) >= 1e-3 && std::abs(tx) <= limit && std::abs(ty) <= limit;
}

namespace {

[[gnu::noinline]] double round_to_float(double v) { return static_cast<float>(v); }

}  // namespace

AffineModel AffineModel::as_transmitted() const {
  return {round_to_float(a),  round_to_float(b),  round_to_float(c),
          round_to_float(d),  round_to_float(tx), round_to_float(ty)};
}

AffineModel AffineModel::inverse() const {
  const double det = determinant();
  if (!(std::abs(det) >= 1e-12)) throw NoModelError("affine model is not invertible");
  AffineModel inv;
  inv.a = d / det;
  inv.b = -b / det;
  inv.c = -c / det;
  inv.d = a / det;
  inv.tx = -(inv.a * tx + inv.b * ty);
  inv.ty = -(inv.c * tx + inv.d * ty);
  return inv;
}

std::optional<AffineModel> affine_from_three(const Match& m0, const Match& m1,
                                             const Match& m2) {
  const double x0 = m0.cur.x, y0 = m0.cur.y;
  const double x1 = m1.cur.x, y1 = m1.cur.y;
  const double x2 = m2.cur.x, y2 = m2.cur.y;
  // Twice the signed triangle area; zero for collinear points.
  const double det = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0);
  if (std::abs(det) < 1e-6) return std::nullopt;
  auto solve = [&](double u0, double u1, double u2) {
    // u = p x + q y + r through the three points.
    const double p = ((u1 - u0) * (y2 - y0) - (u2 - u0) * (y1 - y0)) / det;
    const double q = ((x1 - x0) * (u2 - u0) - (x2 - x0) * (u1 - u0)) / det;
    const double r = u0 - p * x0 - q * y0;
    return std::tuple{p, q, r};
  };
  AffineModel m;
  std::tie(m.a, m.b, m.tx) = solve(m0.ref.x, m1.ref.x, m2.ref.x);
  std::tie(m.c, m.d, m.ty) = solve(m0.ref.y, m1.ref.y, m2.ref.y);
  return m;
}

std::optional<AffineModel> fit_affine_least_squares(const std::vector<Match>& matches) {
  if (matches.size() < 3) return std::nullopt;
  const Eigen::Index n = static_cast<Eigen::Index>(matches.size());
  // Centre the coordinates for conditioning.
  double cx = 0.0, cy = 0.0;
  for (const auto& m : matches) {
    cx += m.cur.x;
    cy += m.cur.y;
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);
  Eigen::MatrixXd A(n, 3);
  Eigen::MatrixXd B(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& m = matches[static_cast<std::size_t>(i)];
    A(i, 0) = m.cur.x - cx;
    A(i, 1) = m.cur.y - cy;
    A(i, 2) = 1.0;
    B(i, 0) = m.ref.x;
    B(i, 1) = m.ref.y;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 3) return std::nullopt;
  const Eigen::MatrixXd X = qr.solve(B);
  AffineModel model;
  model.a = X(0, 0);
  model.b = X(1, 0);
  model.c = X(0, 1);
  model.d = X(1, 1);
  model.tx = X(2, 0) - model.a * cx - model.b * cy;
  model.ty = X(2, 1) - model.c * cx - model.d * cy;
  return model;
}

double reprojection_error(const AffineModel& model, const Match& m) {
  const double ex = model.map_x(m.cur.x, m.cur.y) - m.ref.x;
  const double ey = model.map_y(m.cur.x, m.cur.y) - m.ref.y;
  return std::sqrt(ex * ex + ey * ey);
}

namespace {

std::vector<int> inliers_of(const AffineModel& model, const std::vector<Match>& matches,
                            double tolerance, double* error_sum = nullptr) {
  std::vector<int> inliers;
  double sum = 0.0;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    const double e = reprojection_error(model, matches[i]);
    if (e <= tolerance) {
      inliers.push_back(static_cast<int>(i));
      sum += e;
    }
  }
  if (error_sum) *error_sum = sum;
  return inliers;
}

bool usable(const AffineModel& m) {
  for (double v : {m.a, m.b, m.c, m.d, m.tx, m.ty}) {
    if (!std::isfinite(v)) return false;
  }
  return std::abs(m.determinant()) >= 1e-3;
}

}  // namespace

RansacResult ransac_affine(std::vector<Match> matches, int iterations, double inlier_tolerance,
                           std::uint64_t seed) {
  if (matches.size() < 3) {
    throw NoModelError("RANSAC needs at least 3 matches, got " +
                       std::to_string(matches.size()));
  }
  std::sort(matches.begin(), matches.end(), [](const Match& p, const Match& q) {
    return std::tie(p.cur.x, p.cur.y, p.ref.x, p.ref.y) <
           std::tie(q.cur.x, q.cur.y, q.ref.x, q.ref.y);
  });
  const std::uint64_t n = matches.size();
  std::mt19937_64 rng(seed);

  std::vector<int> best_inliers;
  double best_error = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const auto i0 = static_cast<std::size_t>(rng() % n);
    auto i1 = static_cast<std::size_t>(rng() % n);
    auto i2 = static_cast<std::size_t>(rng() % n);
    if (i0 == i1 || i0 == i2 || i1 == i2) continue;
    const auto hypothesis = affine_from_three(matches[i0], matches[i1], matches[i2]);
    if (!hypothesis || !usable(*hypothesis)) continue;
    double error = 0.0;
    auto inliers = inliers_of(*hypothesis, matches, inlier_tolerance, &error);
    if (inliers.size() > best_inliers.size() ||
        (inliers.size() == best_inliers.size() && error < best_error)) {
      best_inliers = std::move(inliers);
      best_error = error;
    }
  }
  if (best_inliers.size() < 3) throw NoModelError("RANSAC found no consistent model");

  // Refit on the consensus set until it stops changing.
  RansacResult result;
  std::vector<int> inliers = best_inliers;
  std::optional<AffineModel> model;
  for (int round = 0; round < 5; ++round) {
    std::vector<Match> subset;
    subset.reserve(inliers.size());
    for (int i : inliers) subset.push_back(matches[i]);
    auto refit = fit_affine_least_squares(subset);
    if (!refit || !usable(*refit)) break;
    model = refit;
    auto next = inliers_of(*model, matches, inlier_tolerance);
    if (next == inliers || next.size() < 3) break;
    inliers = std::move(next);
  }
  if (!model) throw NoModelError("least-squares refit is degenerate");
  result.model = *model;
  result.inliers = std::move(inliers);
  result.matches = std::move(matches);
  return result;
}

MotionEstimate estimate_texture_motion(const Frame& cur, const Frame& ref,
                                       const TextureMask& cur_mask,
                                       const TextureMask& ref_mask, std::uint64_t seed,
                                       const MotionParams& params) {
  if (!cur_mask.has_texture() || !ref_mask.has_texture()) {
    throw NoModelError("texture region is empty");
  }
  constexpr std::size_t kMaxKeypoints = 768;
  auto strongest = [](std::vector<Keypoint> kps) {
    if (kps.size() > kMaxKeypoints) {
      std::stable_sort(kps.begin(), kps.end(),
                       [](const Keypoint& a, const Keypoint& b) { return a.score > b.score; });
      kps.resize(kMaxKeypoints);
      std::sort(kps.begin(), kps.end(), [](const Keypoint& a, const Keypoint& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
      });
    }
    return kps;
  };
  const auto kps_cur = strongest(detect_fast(cur.y(), cur_mask, params.fast_threshold));
  const auto kps_ref = strongest(detect_fast(ref.y(), ref_mask, params.fast_threshold));
  auto matches = match_features(cur.y(), ref.y(), kps_cur, kps_ref, params);
  MotionEstimate estimate;
  estimate.match_count = static_cast<int>(matches.size());
  const auto fit = ransac_affine(std::move(matches), params.ransac_iterations,
                                 params.inlier_tolerance, seed);
  constexpr int kMinInliers = 6;
  if (static_cast<int>(fit.inliers.size()) < kMinInliers) {
    throw NoModelError("too few texture inliers (" + std::to_string(fit.inliers.size()) + ")");
  }
  if (!fit.model.is_valid(cur.width(), cur.height())) {
    throw NoModelError("texture motion model is degenerate");
  }
  estimate.model = fit.model;
  estimate.inlier_count = static_cast<int>(fit.inliers.size());
  return estimate;
}

std::string motion_csv_header() { return "frame,ref,a,b,c,d,tx,ty,inlier_count"; }

std::string motion_csv_row(int frame, int ref, const MotionEstimate& e) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%d,%d,%.9g,%.9g,%.9g,%.9g,%.6f,%.6f,%d", frame, ref,
                e.model.a, e.model.b, e.model.c, e.model.d, e.model.tx, e.model.ty,
                e.inlier_count);
  return buf;
}

}  // namespace texlab
