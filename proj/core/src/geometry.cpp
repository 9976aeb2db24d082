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

#include "egomotion/geometry.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "egomotion/errors.hpp"

namespace egomotion {

namespace {

constexpr double kPi = std::numbers::pi;

// Homogeneous division shared by every point map.
Vec2 dehomogenize(const Vec3& h, const char* where) {
  if (std::abs(h.z()) <= kHorizonEps) {
    std::ostringstream os;
    os << where << ": homogeneous denominator " << h.z() << " is within "
       << kHorizonEps << " of zero";
    throw HorizonError(os.str());
  }
  return {h.x() / h.z(), h.y() / h.z()};
}

}  // namespace

double normalize_angle(double a) {
  if (!std::isfinite(a)) return a;
  double r = std::remainder(a, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

bool MotionParams::in_nominal_range() const {
  return theta > -kPi && theta <= kPi && alpha >= 0.0 && alpha <= 0.03 &&
         std::abs(beta) <= 0.05 && std::abs(A) <= 0.09 && std::abs(B) <= 0.09 &&
         std::abs(C) <= 0.03;
}

Rotation3 Rotation3::from_matrix(const Mat3& m) {
  const double orth = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
  const double det = m.determinant();
  if (!m.allFinite() || orth > 1e-9 || std::abs(det - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "matrix is not a rotation (orthogonality defect " << orth << ", det " << det << ")";
    throw DomainError(os.str());
  }
  return Rotation3(m);
}

Rotation3 Rotation3::about_i(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 m;
  m << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return Rotation3(m);
}

Rotation3 Rotation3::about_j(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 m;
  m << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return Rotation3(m);
}

Rotation3 Rotation3::about_k(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat3 m;
  m << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return Rotation3(m);
}

ProjectiveMap::ProjectiveMap(const Mat3& h) : h_(h) {
  const double det = h.determinant();
  if (!(std::abs(det) > kHorizonEps)) {
    std::ostringstream os;
    os << "projective map is degenerate (det " << det << ")";
    throw DegenerateMapError(os.str());
  }
}

ProjectiveMap ProjectiveMap::inverse() const { return ProjectiveMap(Mat3(h_.inverse())); }

ProjectiveMap ProjectiveMap::after(const ProjectiveMap& rhs) const {
  return ProjectiveMap(Mat3(h_ * rhs.h_));
}

Rotation3 rotation_from_params(double theta, double alpha, double beta) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sa = std::sin(alpha), ca = std::cos(alpha);
  const double sb = std::sin(beta), cb = std::cos(beta);
  const double stb = std::sin(theta - beta), ctb = std::cos(theta - beta);
  const double vers = 1.0 - ca;
  Mat3 m;
  m << cb - vers * st * stb, -sb + vers * st * ctb, st * sa,
       sb + vers * ct * stb, cb - vers * ct * ctb, -ct * sa,
       -sa * stb,            sa * ctb,             ca;
  return Rotation3::from_matrix_unchecked(m);
}

RotationAngles params_from_rotation(const Rotation3& r) {
  RotationAngles out;
  out.alpha = std::acos(std::clamp(r(2, 2), -1.0, 1.0));
  if (out.alpha < 1e-9) {
    out.theta = 0.0;
    out.beta = normalize_angle(std::atan2(r(1, 0) - r(0, 1), r(0, 0) + r(1, 1)));
    return out;
  }
  out.theta = normalize_angle(std::atan2(r(0, 2), -r(1, 2)));
  out.beta = normalize_angle(out.theta - std::atan2(-r(2, 0), r(2, 1)));
  return out;
}

Displacement displacement_from_params(const MotionParams& p) {
  Displacement d;
  d.r = rotation_from_params(p.theta, p.alpha, p.beta);
  d.t = -p.A * d.r.a() - p.B * d.r.b() - p.C * d.r.c();
  return d;
}

MotionParams params_from_displacement(const Displacement& d) {
  const RotationAngles ang = params_from_rotation(d.r);
  MotionParams p;
  p.theta = ang.theta;
  p.alpha = ang.alpha;
  p.beta = ang.beta;
  p.A = -d.t.dot(d.r.a());
  p.B = -d.t.dot(d.r.b());
  p.C = -d.t.dot(d.r.c());
  return p;
}

Displacement compose(const Displacement& d1, const Displacement& d2) {
  return {d1.r * d2.r, d1.t + d1.r * d2.t};
}

Displacement inverse(const Displacement& d) {
  const Rotation3 rt = d.r.transpose();
  return {rt, -(rt * d.t)};
}

ProjectiveMap registration_map(const Displacement& d) {
  Mat3 h = d.r.matrix();
  h.col(2) += d.t;
  return ProjectiveMap(h);
}

ProjectiveMap psi_map(const MotionParams& p) {
  const Rotation3 r = rotation_from_params(p.theta, p.alpha, p.beta);
  Mat3 h = r.matrix().transpose();
  h(0, 2) += p.A;
  h(1, 2) += p.B;
  h(2, 2) += p.C;
  return ProjectiveMap(h);
}

ProjectiveMap phi_map(const MotionParams& p) {
  const Displacement d = displacement_from_params(p);
  Mat3 hm = Mat3::Identity();
  hm(0, 2) = d.t.dot(d.r.a());
  hm(1, 2) = d.t.dot(d.r.b());
  hm(2, 2) = 1.0 + d.t.dot(d.r.c());
  return ProjectiveMap(Mat3(d.r.matrix() * hm));
}

Vec2 apply_map(const ProjectiveMap& m, const Vec2& pt) {
  return dehomogenize(m.matrix() * Vec3(pt.x(), pt.y(), 1.0), "apply_map");
}

Vec2 exact_warp_point(const Displacement& d, double z, const Vec2& pt) {
  if (!(z > 0.0)) throw DomainError("exact_warp_point: depth must be positive");
  const Vec3 ray(pt.x(), pt.y(), 1.0);
  const Vec3 tz = d.t / z;
  const Vec3 h(d.r.a().dot(ray) - tz.dot(d.r.a()),
               d.r.b().dot(ray) - tz.dot(d.r.b()),
               d.r.c().dot(ray) - tz.dot(d.r.c()));
  return dehomogenize(h, "exact_warp_point");
}

Vec2 exact_warp_point_inverse(const Displacement& d, double z_prime, const Vec2& pt_prime) {
  if (!(z_prime > 0.0)) throw DomainError("exact_warp_point_inverse: depth must be positive");
  const Vec3 ray(pt_prime.x(), pt_prime.y(), 1.0);
  const Vec3 h = d.r.matrix() * ray + d.t / z_prime;
  return dehomogenize(h, "exact_warp_point_inverse");
}

Vec2 SampleGrid::node(int ix, int iy) const {
  const double step = side / static_cast<double>(n - 1);
  return {-0.5 * side + step * ix, -0.5 * side + step * iy};
}

DepthField DepthField::constant(const SampleGrid& grid, double depth) {
  return {grid, std::vector<double>(static_cast<std::size_t>(grid.size()), depth)};
}

double DepthField::min() const { return *std::min_element(z.begin(), z.end()); }
double DepthField::max() const { return *std::max_element(z.begin(), z.end()); }

HypothesisReport check_hypotheses(const Displacement& d, const DepthField& depths) {
  if (depths.z.size() != static_cast<std::size_t>(depths.grid.size()) || depths.grid.n < 2) {
    throw DomainError("check_hypotheses: depth field does not match its grid");
  }
  HypothesisReport rep;
  rep.hyp2_limit = 0.5 * depths.grid.side;
  const Vec3 rk = d.r.c();
  for (int iy = 0; iy < depths.grid.n; ++iy) {
    for (int ix = 0; ix < depths.grid.n; ++ix) {
      const double z = depths.at(ix, iy);
      if (!(z > 0.0)) throw DomainError("check_hypotheses: depths must be positive");
      const Vec2 p = depths.grid.node(ix, iy);
      const double den = rk.dot(Vec3(p.x(), p.y(), 1.0)) - (d.t / z).dot(rk);
      const Vec2 q = exact_warp_point(d, z, p);
      rep.hyp1_margin = std::max(rep.hyp1_margin, std::abs(1.0 / den));
      rep.hyp2_margin = std::max(rep.hyp2_margin, (q - p).cwiseAbs().maxCoeff());
    }
  }
  rep.hyp1_pass = rep.hyp1_margin <= rep.hyp1_limit;
  rep.hyp2_pass = rep.hyp2_margin <= rep.hyp2_limit;
  return rep;
}

AxisAngle rotation_axis_angle(const Rotation3& r) {
  const Mat3& m = r.matrix();
  AxisAngle out;
  out.angle = std::acos(std::clamp((m.trace() - 1.0) / 2.0, -1.0, 1.0));
  if (out.angle < 1e-9) {
    out.axis = Vec3::UnitZ();
    out.degenerate = true;
    return out;
  }
  if (kPi - out.angle < 1e-6) {
    // Skew part vanishes near pi; read the axis off (R + I) / 2 = n n^T.
    const Mat3 s = 0.5 * (m + Mat3::Identity());
    int k = 0;
    s.diagonal().maxCoeff(&k);
    out.axis = s.col(k).normalized();
    return out;
  }
  const Vec3 v(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
  out.axis = v.normalized();
  return out;
}

Rotation3 rotation_from_axis_angle(const Vec3& axis, double angle) {
  const Vec3 n = axis.normalized();
  Mat3 k;
  k << 0, -n.z(), n.y(),
       n.z(), 0, -n.x(),
       -n.y(), n.x(), 0;
  const Mat3 m = Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * k * k;
  return Rotation3::from_matrix_unchecked(m);
}

}  // namespace egomotion
