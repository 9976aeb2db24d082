// Copyright 2026 The egomotion Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EGOMOTION_PIPELINE_HPP_
#define EGOMOTION_PIPELINE_HPP_

#include <array>
#include <string>
#include <vector>

#include "egomotion/geometry.hpp"
#include "egomotion/imaging.hpp"

namespace egomotion {

/// Per-adjacent-pair motions of a frame list: motions[k] takes frame k to
/// frame k + 1.
struct ChainEstimate {
  std::vector<MotionParams> motions;
  int reference = 0;

  int frame_count() const { return static_cast<int>(motions.size()) + 1; }
  /// Throws ConfigError when the reference index is out of range.
  void validate() const;
};

/// Displacement from frame k to frame `to` by registration-group composition.
Displacement chain_displacement(const ChainEstimate& chain, int k, int to);

/// psi map taking frame-k points to reference-frame points (focal units).
/// Throws DomainError for an out-of-range index.
ProjectiveMap chain_to_reference(const ChainEstimate& chain, int k);

/// Point map (homogeneous, pixel coordinates) sending src[i] to dst[i].
/// Throws DegenerateMapError for collinear configurations.
ProjectiveMap homography_from_points(const std::array<Vec2, 4>& src, const std::array<Vec2, 4>& dst);

/// Quadrilateral in reference-frame pixels, corners in order
/// top-left, top-right, bottom-right, bottom-left.
struct PlacementRect {
  std::array<Vec2, 4> corners;

  static PlacementRect axis_aligned(double x0, double y0, double x1, double y1);
  /// Throws ConfigError for self-intersecting quads or corners outside the
  /// open frame interior.
  void validate(int width, int height) const;
};

struct MosaicResult {
  ImageBuffer canvas;
  ValidityMask coverage;
  /// Each frame resampled onto the canvas before blending.
  std::vector<WarpResult> layers;
  std::vector<std::string> warnings;
};

/// Canvas = reference frame grown by `margin` pixels on every side. Frames in
/// `selected` (all when empty) are blended with weights equal to the distance
/// to their own border.
MosaicResult build_mosaic(const std::vector<ImageBuffer>& frames, const ChainEstimate& chain,
                          const Intrinsics& intr, int margin, const std::vector<int>& selected = {});

/// Largest |t| of any frame-to-reference displacement in the chain; mosaics
/// are exact only when this is 0 or the scene is planar.
double chain_translation_magnitude(const ChainEstimate& chain);

struct AugmentResult {
  std::vector<ImageBuffer> frames;
  /// Pixels covered by the poster in each frame.
  std::vector<ValidityMask> poster_masks;
};

/// Pastes `poster`, fitted to `rect` in frame 0, into every frame through the
/// frame-0 to frame-k map. Pixels outside the poster are left untouched.
AugmentResult augment_sequence(const std::vector<ImageBuffer>& frames, const ChainEstimate& chain,
                               const Intrinsics& intr, const ImageBuffer& poster,
                               const PlacementRect& rect);

}  // namespace egomotion

#endif  // EGOMOTION_PIPELINE_HPP_
