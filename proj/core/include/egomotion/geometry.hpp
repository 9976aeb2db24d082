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

#ifndef EGOMOTION_GEOMETRY_HPP_
#define EGOMOTION_GEOMETRY_HPP_

#include <Eigen/Core>
#include <span>
#include <vector>

namespace egomotion {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
/// Row-major 3x3 matrix used for rotations and homogeneous maps.
using Mat3 = Eigen::Matrix<double, 3, 3, Eigen::RowMajor>;

/// Cutoff for homogeneous denominators and map determinants.
inline constexpr double kHorizonEps = 1e-12;

/// Maps an angle to (-pi, pi].
double normalize_angle(double a);

/// Rotation of the camera frame.
///
/// Storage follows the column naming used for camera bases: the columns of
/// the matrix are the images of the camera axes,
///
///     | a1 b1 c1 |        R(i) = (a1, a2, a3)
///     | a2 b2 c2 |        R(j) = (b1, b2, b3)
///     | a3 b3 c3 |        R(k) = (c1, c2, c3)
///
/// so `a(1)` is entry (1,0) and `c(0)` is entry (0,2).
class Rotation3 {
 public:
  Rotation3() : m_(Mat3::Identity()) {}

  /// Throws DomainError unless `m` is orthonormal with det 1 (tolerance 1e-9).
  static Rotation3 from_matrix(const Mat3& m);
  /// No validation; for matrices that are rotations by construction.
  static Rotation3 from_matrix_unchecked(const Mat3& m) { return Rotation3(m); }
  static Rotation3 identity() { return Rotation3(); }
  static Rotation3 about_i(double angle);
  static Rotation3 about_j(double angle);
  static Rotation3 about_k(double angle);

  const Mat3& matrix() const { return m_; }
  double operator()(int row, int col) const { return m_(row, col); }

  Vec3 a() const { return m_.col(0); }
  Vec3 b() const { return m_.col(1); }
  Vec3 c() const { return m_.col(2); }

  Rotation3 operator*(const Rotation3& rhs) const { return Rotation3(m_ * rhs.m_); }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  Rotation3 transpose() const { return Rotation3(m_.transpose()); }

 private:
  explicit Rotation3(const Mat3& m) : m_(m) {}
  Mat3 m_;
};

/// Rigid camera displacement: the camera basis becomes (R(i), R(j), R(k)) and
/// the optical center moves by `t` (focal-length units).
struct Displacement {
  Rotation3 r;
  Vec3 t = Vec3::Zero();

  static Displacement identity() { return {}; }
};

/// The six camera-motion parameters. A, B, C are in focal-length units and
/// (-A, -B, -C) are the coordinates of the translation in the rotated basis.
struct MotionParams {
  double theta = 0.0;  ///< azimuth of the tilt axis, (-pi, pi]
  double alpha = 0.0;  ///< tilt angle of the optical axis, >= 0
  double beta = 0.0;   ///< in-plane rotation about the new optical axis
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;

  /// True when every value lies in the nominal small-motion ranges
  /// (alpha in [0,0.03], |beta| <= 0.05, |A|,|B| <= 0.09, |C| <= 0.03).
  bool in_nominal_range() const;

  friend bool operator==(const MotionParams&, const MotionParams&) = default;
};

/// Homogeneous 3x3 map acting on plane points (x, y, 1) in focal units.
class ProjectiveMap {
 public:
  ProjectiveMap() : h_(Mat3::Identity()) {}
  /// Throws DegenerateMapError when |det h| <= kHorizonEps.
  explicit ProjectiveMap(const Mat3& h);

  static ProjectiveMap identity() { return ProjectiveMap(); }

  const Mat3& matrix() const { return h_; }
  /// Inverse as a point map (projective inverse, not the registration-group one).
  ProjectiveMap inverse() const;
  /// Point-map composition: (*this)(rhs(p)).
  ProjectiveMap after(const ProjectiveMap& rhs) const;

 private:
  Mat3 h_;
};

/// Elementary-rotation angles extracted from a rotation.
struct RotationAngles {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

struct AxisAngle {
  Vec3 axis = Vec3::UnitZ();
  double angle = 0.0;
  bool degenerate = false;  ///< angle below 1e-9: axis is meaningless
};

/// Closed-form R = R_theta^k R_alpha^i R_beta^k R_-theta^k.
Rotation3 rotation_from_params(double theta, double alpha, double beta);

/// Inverse of rotation_from_params. For alpha < 1e-9 theta is unobservable and
/// returned as 0, with beta the in-plane angle.
RotationAngles params_from_rotation(const Rotation3& r);

Displacement displacement_from_params(const MotionParams& p);
MotionParams params_from_displacement(const Displacement& d);

/// Camera performs d1 first, then d2 (expressed in the frame reached by d1).
Displacement compose(const Displacement& d1, const Displacement& d2);
Displacement inverse(const Displacement& d);

/// Frame-f to frame-g point map for a fronto-parallel scene:
/// [[a1, a2, a3 + A], [b1, b2, b3 + B], [c1, c2, c3 + C]].
ProjectiveMap psi_map(const MotionParams& p);

/// Reverse-direction map R * H, with H = [[1,0,<t,R(i)>],[0,1,<t,R(j)>],
/// [0,0,1+<t,R(k)>]]. It is the inverse of psi_map in the registration group;
/// as a point map it inverts psi_map only to first order.
ProjectiveMap phi_map(const MotionParams& p);

/// Registration-group element (6-parameter map) associated with a displacement
/// through its translation scaled to unit depth: matrix R + t e3^T.
ProjectiveMap registration_map(const Displacement& d);

/// Throws HorizonError when the homogeneous coordinate is within kHorizonEps of 0.
Vec2 apply_map(const ProjectiveMap& m, const Vec2& pt);

/// Exact forward warp of a point at depth z (in the first camera) under d.
Vec2 exact_warp_point(const Displacement& d, double z, const Vec2& pt);

/// Exact reverse warp of a point at depth z_prime (in the second camera).
Vec2 exact_warp_point_inverse(const Displacement& d, double z_prime, const Vec2& pt_prime);

/// Square sampling grid over [-L/2, L/2]^2 with n x n nodes (n >= 2).
struct SampleGrid {
  double side = 1.0;
  int n = 64;

  Vec2 node(int ix, int iy) const;
  int size() const { return n * n; }
};

/// Per-node scene depth (focal units) over a SampleGrid, row-major in iy.
struct DepthField {
  SampleGrid grid;
  std::vector<double> z;

  static DepthField constant(const SampleGrid& grid, double depth);
  double at(int ix, int iy) const { return z[static_cast<std::size_t>(iy) * grid.n + ix]; }
  double min() const;
  double max() const;
};

struct HypothesisReport {
  bool hyp1_pass = true;
  bool hyp2_pass = true;
  double hyp1_margin = 0.0;  ///< max |1 / (c1 x + c2 y + c3 - <t/Z, R(k)>)|
  double hyp2_margin = 0.0;  ///< max componentwise point displacement
  double hyp1_limit = 4.0 / 3.0;
  double hyp2_limit = 0.0;   ///< L / 2

  bool pass() const { return hyp1_pass && hyp2_pass; }
};

/// Evaluates the two small-motion hypotheses over the depth field's grid.
HypothesisReport check_hypotheses(const Displacement& d, const DepthField& depths);

AxisAngle rotation_axis_angle(const Rotation3& r);
Rotation3 rotation_from_axis_angle(const Vec3& axis, double angle);

}  // namespace egomotion

#endif  // EGOMOTION_GEOMETRY_HPP_
