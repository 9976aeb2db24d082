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

#include "egomotion/pipeline.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "egomotion/errors.hpp"

namespace egomotion {

namespace {

Mat3 camera_matrix(const Intrinsics& in) {
  Mat3 k;
  k << in.focal_px, 0.0, in.cx, 0.0, in.focal_px, in.cy, 0.0, 0.0, 1.0;
  return k;
}

double snap(double v) {
  const double r = std::round(v);
  return std::abs(v - r) < 1e-9 ? r : v;
}

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
         d4 != 0;
}

// Distance to the nearest border plus one, so border pixels keep some weight.
ImageBuffer feather_weights(int w, int h) {
  ImageBuffer out(w, h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      out.at(i, j) = 1.0 + std::min(std::min(i, w - 1 - i), std::min(j, h - 1 - j));
    }
  }
  return out;
}

}  // namespace

void ChainEstimate::validate() const {
  if (reference < 0 || reference >= frame_count()) {
    throw ConfigError("chain: reference index " + std::to_string(reference) +
                      " outside [0, " + std::to_string(frame_count() - 1) + "]");
  }
}

Displacement chain_displacement(const ChainEstimate& chain, int k, int to) {
  const int n = chain.frame_count();
  if (k < 0 || k >= n || to < 0 || to >= n) {
    throw DomainError("chain: frame index out of range [0, " + std::to_string(n - 1) + "]");
  }
  if (k > to) return inverse(chain_displacement(chain, to, k));
  Displacement d = Displacement::identity();
  for (int i = k; i < to; ++i) d = compose(d, displacement_from_params(chain.motions[i]));
  return d;
}

ProjectiveMap chain_to_reference(const ChainEstimate& chain, int k) {
  chain.validate();
  if (k == chain.reference) {
    if (k < 0 || k >= chain.frame_count()) throw DomainError("chain: frame index out of range");
    return ProjectiveMap::identity();
  }
  return psi_map(params_from_displacement(chain_displacement(chain, k, chain.reference)));
}

ProjectiveMap homography_from_points(const std::array<Vec2, 4>& src,
                                     const std::array<Vec2, 4>& dst) {
  Eigen::Matrix<double, 8, 8> a;
  Eigen::Matrix<double, 8, 1> b;
  for (int i = 0; i < 4; ++i) {
    const double x = src[i].x(), y = src[i].y(), u = dst[i].x(), v = dst[i].y();
    a.row(2 * i) << x, y, 1, 0, 0, 0, -u * x, -u * y;
    a.row(2 * i + 1) << 0, 0, 0, x, y, 1, -v * x, -v * y;
    b(2 * i) = u;
    b(2 * i + 1) = v;
  }
  Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(a);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw DegenerateMapError("homography: degenerate point configuration");
  const Eigen::Matrix<double, 8, 1> h = lu.solve(b);
  Mat3 m;
  m << h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), 1.0;
  return ProjectiveMap(m);
}

PlacementRect PlacementRect::axis_aligned(double x0, double y0, double x1, double y1) {
  return {{Vec2(x0, y0), Vec2(x1, y0), Vec2(x1, y1), Vec2(x0, y1)}};
}

void PlacementRect::validate(int width, int height) const {
  for (const Vec2& c : corners) {
    if (!(c.x() > 0.0 && c.y() > 0.0 && c.x() < width - 1 && c.y() < height - 1)) {
      std::ostringstream os;
      os << "placement corner (" << c.x() << ", " << c.y() << ") is not strictly inside the "
         << width << "x" << height << " frame";
      throw ConfigError(os.str());
    }
  }
  double area = 0.0;
  for (int i = 0; i < 4; ++i) area += cross(corners[i], corners[(i + 1) % 4]);
  if (std::abs(area) < 1e-9) throw ConfigError("placement quad has zero area");
  if (segments_cross(corners[0], corners[1], corners[2], corners[3]) ||
      segments_cross(corners[1], corners[2], corners[3], corners[0])) {
    throw ConfigError("placement quad is self-intersecting");
  }
}

double chain_translation_magnitude(const ChainEstimate& chain) {
  chain.validate();
  double m = 0.0;
  for (int k = 0; k < chain.frame_count(); ++k) {
    m = std::max(m, chain_displacement(chain, k, chain.reference).t.norm());
  }
  return m;
}

MosaicResult build_mosaic(const std::vector<ImageBuffer>& frames, const ChainEstimate& chain,
                          const Intrinsics& intr, int margin, const std::vector<int>& selected) {
  chain.validate();
  if (frames.empty() || static_cast<int>(frames.size()) != chain.frame_count()) {
    throw ConfigError("mosaic: frame count does not match the chain");
  }
  if (margin < 0) throw ConfigError("mosaic: margin must be non-negative");
  const int w = frames[0].width(), h = frames[0].height();
  for (const ImageBuffer& f : frames) {
    if (f.width() != w || f.height() != h) throw ConfigError("mosaic: frames differ in size");
  }
  std::vector<int> order = selected;
  if (order.empty()) {
    for (int k = 0; k < chain.frame_count(); ++k) order.push_back(k);
  }
  const int cw = w + 2 * margin, ch = h + 2 * margin;
  const Intrinsics canvas_intr{intr.focal_px, intr.cx + margin, intr.cy + margin};
  const ImageBuffer weights = feather_weights(w, h);

  MosaicResult res;
  std::vector<ImageBuffer> layer_weights;
  for (int k : order) {
    if (k < 0 || k >= chain.frame_count()) throw DomainError("mosaic: frame index out of range");
    const ProjectiveMap to_frame = chain_to_reference(chain, k).inverse();
    WarpResult layer = warp_image(frames[k], intr, to_frame, cw, ch, canvas_intr);
    layer_weights.push_back(warp_image(weights, intr, to_frame, cw, ch, canvas_intr).image);
    std::size_t n_valid = 0;
    for (std::uint8_t v : layer.mask.valid) n_valid += v;
    if (static_cast<double>(n_valid) < 0.1 * static_cast<double>(w) * h) {
      res.warnings.push_back("frame " + std::to_string(k) +
                             " overlaps the canvas by less than 10% of its area");
    }
    res.layers.push_back(std::move(layer));
  }

  res.canvas = ImageBuffer(cw, ch, 0.0);
  res.coverage = ValidityMask{cw, ch, std::vector<std::uint8_t>(res.canvas.size(), 0)};
  for (int j = 0; j < ch; ++j) {
    for (int i = 0; i < cw; ++i) {
      // Offsets from the first contributing layer keep equal layers exact.
      bool any = false;
      double base = 0.0, wsum = 0.0, acc = 0.0;
      for (std::size_t l = 0; l < res.layers.size(); ++l) {
        if (!res.layers[l].mask.at(i, j)) continue;
        const double v = res.layers[l].image.at(i, j);
        const double wt = layer_weights[l].at(i, j);
        if (!any) {
          base = v;
          any = true;
        }
        wsum += wt;
        acc += wt * (v - base);
      }
      if (!any) continue;
      res.canvas.at(i, j) = wsum > 0.0 ? base + acc / wsum : base;
      res.coverage.valid[static_cast<std::size_t>(j) * cw + i] = 1;
    }
  }
  return res;
}

AugmentResult augment_sequence(const std::vector<ImageBuffer>& frames, const ChainEstimate& chain,
                               const Intrinsics& intr, const ImageBuffer& poster,
                               const PlacementRect& rect) {
  if (frames.empty() || static_cast<int>(frames.size()) != chain.frame_count()) {
    throw ConfigError("augment: frame count does not match the chain");
  }
  if (poster.width() < 2 || poster.height() < 2) {
    throw ConfigError("augment: poster must be at least 2x2");
  }
  rect.validate(frames[0].width(), frames[0].height());
  const double pw = poster.width() - 1, ph = poster.height() - 1;
  const ProjectiveMap fit = homography_from_points(
      {Vec2(0, 0), Vec2(pw, 0), Vec2(pw, ph), Vec2(0, ph)}, rect.corners);
  const Mat3 k = camera_matrix(intr);
  const Mat3 k_inv = k.inverse();
  const Mat3 fit_inv = fit.inverse().matrix();

  AugmentResult res;
  for (int f = 0; f < chain.frame_count(); ++f) {
    const ImageBuffer& frame = frames[f];
    // frame-k pixel -> frame-0 focal -> frame-0 pixel -> poster pixel
    Mat3 to_poster = fit_inv;
    if (f > 0) {
      const ProjectiveMap fwd =
          psi_map(params_from_displacement(chain_displacement(chain, 0, f)));
      to_poster = fit_inv * k * fwd.inverse().matrix() * k_inv;
    }
    const ProjectiveMap m(to_poster);
    ImageBuffer out = frame;
    ValidityMask mask{frame.width(), frame.height(),
                      std::vector<std::uint8_t>(frame.size(), 0)};
    for (int j = 0; j < frame.height(); ++j) {
      for (int i = 0; i < frame.width(); ++i) {
        const Vec2 q = apply_map(m, Vec2(i, j));
        const double qi = snap(q.x()), qj = snap(q.y());
        if (!inside(poster, qi, qj)) continue;
        out.at(i, j) = sample_bilinear(poster, qi, qj);
        mask.valid[static_cast<std::size_t>(j) * frame.width() + i] = 1;
      }
    }
    res.frames.push_back(std::move(out));
    res.poster_masks.push_back(std::move(mask));
  }
  return res;
}

}  // namespace egomotion
