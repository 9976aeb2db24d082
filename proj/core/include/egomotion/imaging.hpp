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

#ifndef EGOMOTION_IMAGING_HPP_
#define EGOMOTION_IMAGING_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "egomotion/geometry.hpp"

namespace egomotion {

/// Single-channel raster of real intensities (nominal range [0, 255]),
/// row-major, pixel (i, j) = column i, row j.
class ImageBuffer {
 public:
  ImageBuffer() = default;
  ImageBuffer(int width, int height, double fill = 0.0);
  ImageBuffer(int width, int height, std::vector<double> samples);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return samples_.empty(); }
  std::size_t size() const { return samples_.size(); }

  double at(int i, int j) const { return samples_[index(i, j)]; }
  double& at(int i, int j) { return samples_[index(i, j)]; }

  const std::vector<double>& samples() const { return samples_; }
  std::vector<double>& samples() { return samples_; }

  double mean() const;

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(i);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<double> samples_;
};

/// Per-pixel flag, true where a warped sample fell inside the source.
struct ValidityMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> valid;

  bool at(int i, int j) const {
    return valid[static_cast<std::size_t>(j) * width + i] != 0;
  }
  double fraction() const;
};

/// Pixel <-> focal-unit mapping: x = (i - cx) / focal_px.
struct Intrinsics {
  double focal_px = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  /// Principal point at the image center, focal length from the view angle.
  static Intrinsics for_view_angle(int width, int height, double view_angle_deg);

  /// Focal and principal point divided by 2 (one pyramid level down).
  Intrinsics halved() const { return {focal_px / 2.0, cx / 2.0, cy / 2.0}; }

  /// Largest image dimension in focal units.
  double extent(int width, int height) const;

  /// Throws ConfigError for focal_px <= 0 or an extent above 8 focal lengths.
  void validate(int width, int height) const;

  Vec2 pixel_to_focal(const Vec2& px) const {
    return {(px.x() - cx) / focal_px, (px.y() - cy) / focal_px};
  }
  Vec2 focal_to_pixel(const Vec2& pt) const {
    return {pt.x() * focal_px + cx, pt.y() * focal_px + cy};
  }
};

/// Largest admissible image extent, in focal lengths.
inline constexpr double kMaxExtent = 8.0;

Vec2 pixel_to_focal(const Intrinsics& intr, const Vec2& px);
Vec2 focal_to_pixel(const Intrinsics& intr, const Vec2& pt);

/// Bilinear sample with coordinates clamped to the image rectangle.
double sample_bilinear(const ImageBuffer& img, double i, double j);

/// True when (i, j) lies in [0, w-1] x [0, h-1] (all four neighbors exist).
inline bool inside(const ImageBuffer& img, double i, double j) {
  return i >= 0.0 && j >= 0.0 && i <= img.width() - 1 && j <= img.height() - 1;
}

struct WarpResult {
  ImageBuffer image;
  ValidityMask mask;
};

/// Inverse warp: dst(p) = src(map(p)) with p converted to focal units through
/// `intr`. Out-of-source pixels are 0 and masked out. Throws HorizonError.
WarpResult warp_image(const ImageBuffer& src, const ProjectiveMap& map, const Intrinsics& intr);

/// Inverse warp into a destination raster of a different size/intrinsics.
WarpResult warp_image(const ImageBuffer& src, const Intrinsics& src_intr, const ProjectiveMap& map,
                      int dst_width, int dst_height, const Intrinsics& dst_intr);

/// Deforms `src` by the forward point map `map` so that dst(map(p)) = src(p).
WarpResult deform_image(const ImageBuffer& src, const ProjectiveMap& map, const Intrinsics& intr);

/// Gaussian pyramid: binomial (1,4,6,4,1)/16 blur, edge-clamped, then keep the
/// even samples. Level 0 is `img`; stops before a side would drop below min_dim.
std::vector<ImageBuffer> build_pyramid(const ImageBuffer& img, int min_dim);

/// One blur-and-decimate step of build_pyramid.
ImageBuffer pyramid_down(const ImageBuffer& img);

struct Gradients {
  ImageBuffer gx;
  ImageBuffer gy;
};

/// Central differences in the interior, one-sided at the borders (gray/pixel).
Gradients gradients(const ImageBuffer& img);

/// Replaces round(level% * w * h) distinct pixels with uniform integers in [0, 255].
ImageBuffer add_impulse_noise(const ImageBuffer& img, double level_percent, std::uint64_t seed);

/// Adds i.i.d. N(0, sigma^2) noise, clamped to [0, 255].
ImageBuffer add_gaussian_noise(const ImageBuffer& img, double sigma, std::uint64_t seed);

/// Rounds and clamps every sample to an integer in [0, 255].
ImageBuffer quantize(const ImageBuffer& img);

/// Axis-aligned sub-image starting at pixel (i0, j0).
ImageBuffer crop(const ImageBuffer& img, int i0, int j0, int width, int height);

/// Reads binary PGM (P5, maxval 255). Any other format, including PNG, raises
/// ImageFormatError; unreadable files raise IoError.
ImageBuffer load_image(const std::filesystem::path& path);

/// Writes binary PGM (P5, maxval 255); samples are rounded and clamped.
void save_image(const std::filesystem::path& path, const ImageBuffer& img);

/// Parses a PGM from memory; `origin` is used in error messages.
ImageBuffer decode_pgm(const std::vector<std::uint8_t>& bytes, const std::string& origin = "<memory>");
std::vector<std::uint8_t> encode_pgm(const ImageBuffer& img);

}  // namespace egomotion

#endif  // EGOMOTION_IMAGING_HPP_
