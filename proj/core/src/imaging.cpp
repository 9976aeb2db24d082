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

#include "egomotion/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "egomotion/errors.hpp"
#include "egomotion/random.hpp"

namespace egomotion {

namespace {

// Removes sub-1e-9 pixel jitter left by the pixel/focal round trip so that
// exact integer sample positions stay exact.
double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-9 ? r : v;
}

double clamp_gray(double v) { return std::clamp(v, 0.0, 255.0); }

}  // namespace

ImageBuffer::ImageBuffer(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) throw DomainError("ImageBuffer: negative dimensions");
  samples_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

ImageBuffer::ImageBuffer(int width, int height, std::vector<double> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  if (width < 0 || height < 0 ||
      samples_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw DomainError("ImageBuffer: sample count does not match dimensions");
  }
  if (!std::all_of(samples_.begin(), samples_.end(), [](double v) { return std::isfinite(v); })) {
    throw DomainError("ImageBuffer: samples must be finite");
  }
}

double ImageBuffer::mean() const {
  if (samples_.empty()) return 0.0;
  return std::accumulate(samples_.begin(), samples_.end(), 0.0) /
         static_cast<double>(samples_.size());
}

double ValidityMask::fraction() const {
  if (valid.empty()) return 0.0;
  const auto n = std::count(valid.begin(), valid.end(), std::uint8_t{1});
  return static_cast<double>(n) / static_cast<double>(valid.size());
}

Intrinsics Intrinsics::for_view_angle(int width, int height, double view_angle_deg) {
  if (!(view_angle_deg > 0.0 && view_angle_deg < 180.0)) {
    throw ConfigError("view angle must lie in (0, 180) degrees");
  }
  const double half = 0.5 * view_angle_deg * std::numbers::pi / 180.0;
  Intrinsics intr;
  intr.focal_px = 0.5 * std::max(width, height) / std::tan(half);
  intr.cx = 0.5 * (width - 1);
  intr.cy = 0.5 * (height - 1);
  return intr;
}

double Intrinsics::extent(int width, int height) const {
  return static_cast<double>(std::max(width, height)) / focal_px;
}

void Intrinsics::validate(int width, int height) const {
  if (!(focal_px > 0.0) || !std::isfinite(focal_px) || !std::isfinite(cx) || !std::isfinite(cy)) {
    throw ConfigError("intrinsics: focal_px must be positive and finite");
  }
  const double L = extent(width, height);
  if (L > kMaxExtent) {
    std::ostringstream os;
    os << "intrinsics: image extent " << L << " focal lengths exceeds " << kMaxExtent;
    throw ConfigError(os.str());
  }
}

Vec2 pixel_to_focal(const Intrinsics& intr, const Vec2& px) { return intr.pixel_to_focal(px); }
Vec2 focal_to_pixel(const Intrinsics& intr, const Vec2& pt) { return intr.focal_to_pixel(pt); }

double sample_bilinear(const ImageBuffer& img, double i, double j) {
  const int w = img.width(), h = img.height();
  i = std::clamp(i, 0.0, static_cast<double>(w - 1));
  j = std::clamp(j, 0.0, static_cast<double>(h - 1));
  int i0 = static_cast<int>(i);
  int j0 = static_cast<int>(j);
  if (i0 > w - 2) i0 = std::max(w - 2, 0);
  if (j0 > h - 2) j0 = std::max(h - 2, 0);
  const double fx = i - i0, fy = j - j0;
  const int i1 = std::min(i0 + 1, w - 1), j1 = std::min(j0 + 1, h - 1);
  const double top = img.at(i0, j0) + fx * (img.at(i1, j0) - img.at(i0, j0));
  const double bot = img.at(i0, j1) + fx * (img.at(i1, j1) - img.at(i0, j1));
  return top + fy * (bot - top);
}

WarpResult warp_image(const ImageBuffer& src, const Intrinsics& src_intr, const ProjectiveMap& map,
                      int dst_width, int dst_height, const Intrinsics& dst_intr) {
  WarpResult out{ImageBuffer(dst_width, dst_height, 0.0),
                 ValidityMask{dst_width, dst_height, {}}};
  out.mask.valid.assign(out.image.size(), 0);
  for (int j = 0; j < dst_height; ++j) {
    for (int i = 0; i < dst_width; ++i) {
      const Vec2 q = apply_map(map, dst_intr.pixel_to_focal(Vec2(i, j)));
      const Vec2 s = src_intr.focal_to_pixel(q);
      const double si = snap(s.x()), sj = snap(s.y());
      if (!inside(src, si, sj)) continue;
      out.image.at(i, j) = sample_bilinear(src, si, sj);
      out.mask.valid[static_cast<std::size_t>(j) * dst_width + i] = 1;
    }
  }
  return out;
}

WarpResult warp_image(const ImageBuffer& src, const ProjectiveMap& map, const Intrinsics& intr) {
  return warp_image(src, intr, map, src.width(), src.height(), intr);
}

WarpResult deform_image(const ImageBuffer& src, const ProjectiveMap& map, const Intrinsics& intr) {
  return warp_image(src, map.inverse(), intr);
}

ImageBuffer pyramid_down(const ImageBuffer& img) {
  static constexpr double k[5] = {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16};
  const int w = img.width(), h = img.height();
  ImageBuffer tmp(w, h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      double acc = 0.0;
      for (int d = -2; d <= 2; ++d) acc += k[d + 2] * img.at(std::clamp(i + d, 0, w - 1), j);
      tmp.at(i, j) = acc;
    }
  }
  const int w2 = (w + 1) / 2, h2 = (h + 1) / 2;
  ImageBuffer out(w2, h2);
  for (int j = 0; j < h2; ++j) {
    for (int i = 0; i < w2; ++i) {
      double acc = 0.0;
      for (int d = -2; d <= 2; ++d) acc += k[d + 2] * tmp.at(2 * i, std::clamp(2 * j + d, 0, h - 1));
      out.at(i, j) = acc;
    }
  }
  return out;
}

std::vector<ImageBuffer> build_pyramid(const ImageBuffer& img, int min_dim) {
  if (min_dim < 8) throw ConfigError("build_pyramid: min_dim must be at least 8");
  std::vector<ImageBuffer> levels{img};
  while (true) {
    const ImageBuffer& top = levels.back();
    if ((top.width() + 1) / 2 < min_dim || (top.height() + 1) / 2 < min_dim) break;
    levels.push_back(pyramid_down(top));
  }
  return levels;
}

Gradients gradients(const ImageBuffer& img) {
  const int w = img.width(), h = img.height();
  if (w < 3 || h < 3) throw DomainError("gradients: image must be at least 3x3");
  Gradients g{ImageBuffer(w, h), ImageBuffer(w, h)};
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      if (i == 0) {
        g.gx.at(i, j) = img.at(1, j) - img.at(0, j);
      } else if (i == w - 1) {
        g.gx.at(i, j) = img.at(w - 1, j) - img.at(w - 2, j);
      } else {
        g.gx.at(i, j) = 0.5 * (img.at(i + 1, j) - img.at(i - 1, j));
      }
      if (j == 0) {
        g.gy.at(i, j) = img.at(i, 1) - img.at(i, 0);
      } else if (j == h - 1) {
        g.gy.at(i, j) = img.at(i, h - 1) - img.at(i, h - 2);
      } else {
        g.gy.at(i, j) = 0.5 * (img.at(i, j + 1) - img.at(i, j - 1));
      }
    }
  }
  return g;
}

ImageBuffer add_impulse_noise(const ImageBuffer& img, double level_percent, std::uint64_t seed) {
  if (!(level_percent >= 0.0 && level_percent <= 100.0)) {
    throw DomainError("add_impulse_noise: level must lie in [0, 100]");
  }
  ImageBuffer out = img;
  const std::size_t n = img.size();
  const auto count = static_cast<std::size_t>(std::llround(level_percent / 100.0 * static_cast<double>(n)));
  if (count == 0) return out;
  Rng rng(seed);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  auto& s = out.samples();
  for (std::size_t k = 0; k < count; ++k) {
    const auto pick = k + static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n - k - 1)));
    std::swap(idx[k], idx[pick]);
    // A selected pixel always changes value.
    double v = static_cast<double>(rng.uniform_int(0, 255));
    while (v == s[idx[k]]) v = static_cast<double>(rng.uniform_int(0, 255));
    s[idx[k]] = v;
  }
  return out;
}

ImageBuffer add_gaussian_noise(const ImageBuffer& img, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw DomainError("add_gaussian_noise: sigma must be non-negative");
  ImageBuffer out = img;
  if (sigma == 0.0) return out;
  Rng rng(seed);
  for (double& v : out.samples()) v = clamp_gray(v + sigma * rng.normal());
  return out;
}

ImageBuffer quantize(const ImageBuffer& img) {
  ImageBuffer out = img;
  for (double& v : out.samples()) v = std::round(clamp_gray(v));
  return out;
}

ImageBuffer crop(const ImageBuffer& img, int i0, int j0, int width, int height) {
  if (i0 < 0 || j0 < 0 || width < 0 || height < 0 || i0 + width > img.width() ||
      j0 + height > img.height()) {
    throw DomainError("crop: window exceeds the image");
  }
  ImageBuffer out(width, height);
  for (int j = 0; j < height; ++j) {
    for (int i = 0; i < width; ++i) out.at(i, j) = img.at(i0 + i, j0 + j);
  }
  return out;
}

}  // namespace egomotion
