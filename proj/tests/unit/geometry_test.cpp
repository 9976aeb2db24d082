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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/LU>

#include "egomotion/errors.hpp"
#include "egomotion/geometry.hpp"
#include "test_support.hpp"

namespace egomotion {
namespace {

using testing::draw_params;
using testing::max_abs_diff;

Mat3 elementary_k(double a) {
  Mat3 m;
  m << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  return m;
}

Mat3 elementary_i(double a) {
  Mat3 m;
  m << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a);
  return m;
}

TEST(RotationFromParams, ZeroTiltAndSpinIsIdentity) {
  EXPECT_LT(max_abs_diff(rotation_from_params(1.3, 0.0, 0.0).matrix(), Mat3::Identity()), 1e-15);
}

TEST(RotationFromParams, PureTiltIsRotationAboutI) {
  EXPECT_LT(max_abs_diff(rotation_from_params(0.0, 0.3, 0.0).matrix(), elementary_i(0.3)), 1e-15);
}

TEST(RotationFromParams, ZeroTiltIsRotationAboutK) {
  const Rotation3 r = rotation_from_params(0.7, 0.0, 0.2);
  EXPECT_NEAR(r(1, 1), std::cos(0.2), 1e-15);
  EXPECT_NEAR(r(1, 2), 0.0, 1e-15);
  EXPECT_NEAR(r(0, 1), -std::sin(0.2), 1e-15);
  EXPECT_LT(max_abs_diff(r.matrix(), elementary_k(0.2)), 1e-15);
}

TEST(RotationFromParams, MatchesFourFactorProduct) {
  const double th = 0.5, al = 0.02, be = 0.01;
  const Mat3 product = elementary_k(th) * elementary_i(al) * elementary_k(be) * elementary_k(-th);
  EXPECT_LT(max_abs_diff(rotation_from_params(th, al, be).matrix(), product), 1e-12);
}

TEST(RotationFromParams, FactorProductOnRandomDraws) {
  Rng rng(11);
  for (int k = 0; k < 1000; ++k) {
    const double th = rng.uniform(-3.14, 3.14), al = rng.uniform(0, 1.0), be = rng.uniform(-1, 1);
    const Mat3 product = elementary_k(th) * elementary_i(al) * elementary_k(be) * elementary_k(-th);
    ASSERT_LT(max_abs_diff(rotation_from_params(th, al, be).matrix(), product), 1e-12);
  }
}

TEST(RotationFromParams, OrthonormalWithUnitDeterminant) {
  Rng rng(12);
  for (int k = 0; k < 10000; ++k) {
    const Rotation3 r = rotation_from_params(rng.uniform(-3.14, 3.14), rng.uniform(0, 0.03),
                                             rng.uniform(-0.05, 0.05));
    ASSERT_LT(max_abs_diff(r.matrix().transpose() * r.matrix(), Mat3::Identity()), 1e-12);
    ASSERT_NEAR(r.matrix().determinant(), 1.0, 1e-12);
  }
}

TEST(RotationFromParams, TaylorCoefficientBounds) {
  Rng rng(13);
  for (int k = 0; k < 10000; ++k) {
    const double th = rng.uniform(-3.14, 3.14), al = rng.uniform(0, 0.03),
                 be = rng.uniform(-0.05, 0.05);
    const Rotation3 r = rotation_from_params(th, al, be);
    const Vec3 a = r.a(), b = r.b(), c = r.c();
    const double ab = std::abs(be), aa = std::abs(al);
    const double rot_lin = al * al / 2 * (1 + ab);
    const double tilt = aa * aa * aa / 6;
    // Rounding slack for entries of order 1.
    const double eps = 4 * std::numeric_limits<double>::epsilon();
    ASSERT_LE(std::abs(a(0) - 1), be * be / 2 + rot_lin + eps);
    ASSERT_LE(std::abs(a(1) - be), ab * ab * ab / 6 + rot_lin + eps);
    ASSERT_LE(std::abs(a(2) + al * std::sin(th)), tilt + aa * (ab + be * be / 2) + eps);
    ASSERT_LE(std::abs(b(0) + be), ab * ab * ab / 6 + rot_lin + eps);
    ASSERT_LE(std::abs(b(1) - 1), be * be / 2 + rot_lin + eps);
    ASSERT_LE(std::abs(b(2) - al * std::cos(th)), tilt + aa * (ab + be * be / 2) + eps);
    ASSERT_LE(std::abs(c(0) - al * std::sin(th)), tilt + eps);
    ASSERT_LE(std::abs(c(1) + al * std::cos(th)), tilt + eps);
    ASSERT_LE(std::abs(c(2) - 1), al * al / 2 + eps);
  }
}

TEST(ParamsFromRotation, IdentityGivesZeros) {
  const RotationAngles a = params_from_rotation(Rotation3::identity());
  EXPECT_EQ(a.theta, 0.0);
  EXPECT_EQ(a.alpha, 0.0);
  EXPECT_EQ(a.beta, 0.0);
}

TEST(ParamsFromRotation, RoundTrip) {
  const RotationAngles a = params_from_rotation(rotation_from_params(0.5, 0.02, 0.01));
  EXPECT_NEAR(a.theta, 0.5, 1e-10);
  EXPECT_NEAR(a.alpha, 0.02, 1e-10);
  EXPECT_NEAR(a.beta, 0.01, 1e-10);
}

TEST(ParamsFromRotation, PureSpinUsesZeroThetaConvention) {
  const RotationAngles a = params_from_rotation(Rotation3::about_k(0.2));
  EXPECT_EQ(a.theta, 0.0);
  EXPECT_NEAR(a.alpha, 0.0, 1e-12);
  EXPECT_NEAR(a.beta, 0.2, 1e-12);
}

TEST(Displacement, ZeroParams) {
  const Displacement d = displacement_from_params({});
  EXPECT_LT(max_abs_diff(d.r.matrix(), Mat3::Identity()), 1e-15);
  EXPECT_EQ(d.t, Vec3::Zero());
}

TEST(Displacement, PureA) {
  const Displacement d = displacement_from_params({0, 0, 0, 0.05, 0, 0});
  EXPECT_LT((d.t - Vec3(-0.05, 0, 0)).norm(), 1e-15);
}

TEST(Displacement, TiltWithC) {
  const Displacement d = displacement_from_params({0, 0.02, 0, 0, 0, 0.01});
  const Vec3 expected(0.0, 0.01 * std::sin(0.02), -0.01 * std::cos(0.02));
  EXPECT_LT((d.t - expected).norm(), 1e-15);
}

TEST(Displacement, ParamsRoundTrip) {
  EXPECT_EQ(params_from_displacement(Displacement::identity()), MotionParams{});
  const Displacement d{Rotation3::identity(), Vec3(-0.05, 0, 0)};
  const MotionParams p = params_from_displacement(d);
  EXPECT_NEAR(p.A, 0.05, 1e-15);
  EXPECT_EQ(p.B, 0.0);
  EXPECT_EQ(p.C, 0.0);
  Rng rng(14);
  for (int k = 0; k < 1000; ++k) {
    const MotionParams q = draw_params(rng);
    const MotionParams r = params_from_displacement(displacement_from_params(q));
    ASSERT_NEAR(r.theta, q.theta, 1e-10);
    ASSERT_NEAR(r.alpha, q.alpha, 1e-10);
    ASSERT_NEAR(r.beta, q.beta, 1e-10);
    ASSERT_NEAR(r.A, q.A, 1e-10);
    ASSERT_NEAR(r.B, q.B, 1e-10);
    ASSERT_NEAR(r.C, q.C, 1e-10);
  }
}

void expect_identity(const Displacement& d, double tol) {
  EXPECT_LE(max_abs_diff(d.r.matrix(), Mat3::Identity()), tol);
  EXPECT_LE(d.t.norm(), tol);
}

TEST(Compose, IdentityIsNeutral) {
  const Displacement d = displacement_from_params({0.4, 0.02, -0.01, 0.03, 0.05, -0.02});
  for (const Displacement& e : {compose(d, Displacement::identity()), compose(Displacement::identity(), d)}) {
    EXPECT_LT(max_abs_diff(e.r.matrix(), d.r.matrix()), 1e-15);
    EXPECT_LT((e.t - d.t).norm(), 1e-15);
  }
}

TEST(Compose, TranslationsAdd) {
  const Displacement d = compose({Rotation3::identity(), Vec3(1, 2, 3)}, {Rotation3::identity(), Vec3(-4, 0.5, 1)});
  EXPECT_LT((d.t - Vec3(-3, 2.5, 4)).norm(), 1e-15);
}

TEST(Compose, QuarterTurnThenTranslation) {
  const Displacement d = compose({Rotation3::about_k(std::numbers::pi / 2), Vec3(1, 0, 0)},
                                 {Rotation3::identity(), Vec3(0, 1, 0)});
  // R1 (0,1,0) = (-1,0,0) for a quarter turn about k.
  EXPECT_LT((d.t - Vec3(0, 0, 0)).norm(), 1e-15);
  EXPECT_NEAR(d.r(0, 1), -1.0, 1e-15);
}

TEST(Compose, InverseIsTwoSided) {
  expect_identity(inverse(Displacement::identity()), 0.0);
  const Displacement t{Rotation3::identity(), Vec3(0.1, -0.2, 0.3)};
  EXPECT_LT((inverse(t).t + t.t).norm(), 1e-15);
  Rng rng(15);
  for (int k = 0; k < 1000; ++k) {
    const Displacement d = displacement_from_params(draw_params(rng));
    expect_identity(compose(d, inverse(d)), 1e-12);
    expect_identity(compose(inverse(d), d), 1e-12);
  }
}

TEST(Compose, Associative) {
  Rng rng(16);
  for (int k = 0; k < 1000; ++k) {
    const Displacement a = displacement_from_params(draw_params(rng));
    const Displacement b = displacement_from_params(draw_params(rng));
    const Displacement c = displacement_from_params(draw_params(rng));
    const Displacement l = compose(compose(a, b), c), r = compose(a, compose(b, c));
    ASSERT_LT(max_abs_diff(l.r.matrix(), r.r.matrix()), 1e-12);
    ASSERT_LT((l.t - r.t).norm(), 1e-12);
  }
}

TEST(PsiMap, Examples) {
  EXPECT_LT(max_abs_diff(psi_map({}).matrix(), Mat3::Identity()), 1e-15);
  const Vec2 q = apply_map(psi_map({0, 0, 0, 0.05, 0, 0}), Vec2(0.3, -0.2));
  EXPECT_LT((q - Vec2(0.35, -0.2)).norm(), 1e-15);
  const Vec2 s = apply_map(psi_map({0, 0, 0, 0, 0, 0.03}), Vec2(0.3, -0.2));
  EXPECT_LT((s - Vec2(0.3 / 1.03, -0.2 / 1.03)).norm(), 1e-15);
}

TEST(PsiMap, EntriesFollowColumnLayout) {
  const MotionParams p{0.9, 0.025, -0.03, 0.04, -0.06, 0.02};
  const Rotation3 r = rotation_from_params(p.theta, p.alpha, p.beta);
  const Mat3 m = psi_map(p).matrix();
  for (int c = 0; c < 3; ++c) {
    EXPECT_NEAR(m(0, c), r.a()(c) + (c == 2 ? p.A : 0.0), 1e-15);
    EXPECT_NEAR(m(1, c), r.b()(c) + (c == 2 ? p.B : 0.0), 1e-15);
    EXPECT_NEAR(m(2, c), r.c()(c) + (c == 2 ? p.C : 0.0), 1e-15);
  }
}

TEST(PhiMap, ZeroParamsIsIdentity) {
  EXPECT_LT(max_abs_diff(phi_map({}).matrix(), Mat3::Identity()), 1e-15);
}

TEST(PhiMap, InvertsPsiExactlyForTiltFreeMotion) {
  // Without tilt and depth change both maps are similarities and invert exactly.
  Rng rng(17);
  for (int k = 0; k < 100; ++k) {
    const MotionParams p{0, 0, rng.uniform(-0.05, 0.05), rng.uniform(-0.09, 0.09),
                         rng.uniform(-0.09, 0.09), 0};
    for (int s = 0; s < 10; ++s) {
      const Vec2 x(rng.uniform(-1, 1), rng.uniform(-1, 1));
      ASSERT_LT((apply_map(phi_map(p), apply_map(psi_map(p), x)) - x).norm(), 1e-12);
    }
  }
  const MotionParams a{0, 0, 0, 0.05, 0, 0};
  for (double x = -1; x <= 1; x += 0.25) {
    for (double y = -1; y <= 1; y += 0.25) {
      const Vec2 pt(x, y);
      EXPECT_LT((apply_map(phi_map(a), apply_map(psi_map(a), pt)) - pt).norm(), 1e-15);
    }
  }
}

TEST(PhiMap, InvertsPsiToFirstOrderInGeneral) {
  // Point-map round trip is second order in the motion for tilt or depth change.
  Rng rng(18);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const MotionParams p = draw_params(rng);
    const Vec2 x(rng.uniform(-1, 1), rng.uniform(-1, 1));
    worst = std::max(worst, (apply_map(phi_map(p), apply_map(psi_map(p), x)) - x).norm());
  }
  EXPECT_GT(worst, 1e-6);
  EXPECT_LT(worst, 2e-2);
}

TEST(PhiMap, IsRegistrationInverseOfPsi) {
  Rng rng(19);
  for (int k = 0; k < 1000; ++k) {
    const MotionParams p = draw_params(rng);
    const Displacement d = displacement_from_params(p);
    ASSERT_LT(max_abs_diff(phi_map(p).matrix(), registration_map(d).matrix()), 1e-12);
    ASSERT_LT(max_abs_diff(psi_map(p).matrix(), registration_map(inverse(d)).matrix()), 1e-12);
  }
}

TEST(PsiMap, RegistrationCompositionMatchesDisplacementComposition) {
  Rng rng(20);
  for (int k = 0; k < 1000; ++k) {
    const MotionParams p1 = draw_params(rng), p2 = draw_params(rng);
    const Displacement d = compose(displacement_from_params(p1), displacement_from_params(p2));
    const MotionParams p = params_from_displacement(d);
    ASSERT_LT(max_abs_diff(psi_map(p).matrix(), registration_map(inverse(d)).matrix()), 1e-12);
  }
}

TEST(PsiMap, PointCompositionExactForPureRotationAndPureShift) {
  Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    MotionParams p1 = draw_params(rng), p2 = draw_params(rng);
    if (k % 2 == 0) {
      p1.A = p1.B = p1.C = p2.A = p2.B = p2.C = 0.0;
    } else {
      p1.theta = p1.alpha = p1.beta = p2.theta = p2.alpha = p2.beta = 0.0;
      p1.C = p2.C = 0.0;
    }
    const MotionParams p =
        params_from_displacement(compose(displacement_from_params(p1), displacement_from_params(p2)));
    const Vec2 x(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Vec2 direct = apply_map(psi_map(p), x);
    const Vec2 chained = apply_map(psi_map(p2), apply_map(psi_map(p1), x));
    ASSERT_LT((direct - chained).norm(), 1e-12);
  }
}

TEST(ApplyMap, Basics) {
  EXPECT_EQ(apply_map(ProjectiveMap::identity(), Vec2(0.3, -0.2)), Vec2(0.3, -0.2));
  EXPECT_LT((apply_map(psi_map({0, 0, 0, 0.05, 0, 0}), Vec2(0, 0)) - Vec2(0.05, 0)).norm(), 1e-15);
  const Mat3 h = psi_map({0.3, 0.02, 0.01, 0.02, -0.03, 0.01}).matrix();
  const Vec2 a = apply_map(ProjectiveMap(h), Vec2(0.4, 0.1));
  const Vec2 b = apply_map(ProjectiveMap(3.5 * h), Vec2(0.4, 0.1));
  EXPECT_LT((a - b).norm(), 1e-15);
}

TEST(ApplyMap, HorizonAndDegeneracy) {
  Mat3 h = Mat3::Identity();
  h(2, 0) = 1.0;
  h(2, 2) = 0.0;
  h(0, 2) = 1.0;
  EXPECT_THROW(apply_map(ProjectiveMap(h), Vec2(0.0, 0.5)), HorizonError);
  EXPECT_THROW(ProjectiveMap(Mat3::Zero()), DegenerateMapError);
}

TEST(ExactWarp, IdentityAndDepthCancellation) {
  const Vec2 x(0.2, -0.4);
  EXPECT_EQ(exact_warp_point(Displacement::identity(), 3.0, x), x);
  const Displacement rot{rotation_from_params(0.3, 0.02, 0.01), Vec3::Zero()};
  EXPECT_LT((exact_warp_point(rot, 1.0, x) - exact_warp_point(rot, 7.0, x)).norm(), 1e-15);
  EXPECT_LT((exact_warp_point_inverse(rot, 1.0, x) - exact_warp_point_inverse(rot, 9.0, x)).norm(), 1e-15);
  EXPECT_EQ(exact_warp_point_inverse(Displacement::identity(), 2.0, x), x);
}

TEST(ExactWarp, HandValue) {
  const Displacement d{Rotation3::identity(), Vec3(0.1, 0, 0)};
  EXPECT_LT((exact_warp_point(d, 2.0, Vec2(0, 0)) - Vec2(-0.05, 0)).norm(), 1e-15);
  EXPECT_THROW(exact_warp_point(d, 0.0, Vec2(0, 0)), DomainError);
  EXPECT_THROW(exact_warp_point(d, -1.0, Vec2(0, 0)), DomainError);
}

TEST(ExactWarp, MatchesProjectionOfThreeDPoint) {
  Rng rng(22);
  for (int k = 0; k < 500; ++k) {
    const Displacement d = displacement_from_params(draw_params(rng));
    const Vec2 x(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double z = rng.uniform(1, 10);
    // Point in camera 1, expressed in camera 2 (basis R(i), R(j), R(k), center t).
    const Vec3 world = z * Vec3(x.x(), x.y(), 1.0);
    const Vec3 cam2 = d.r.matrix().transpose() * (world - d.t);
    const Vec2 expected(cam2.x() / cam2.z(), cam2.y() / cam2.z());
    const Vec2 xp = exact_warp_point(d, z, x);
    ASSERT_LT((xp - expected).norm(), 1e-12);
    ASSERT_LT((exact_warp_point_inverse(d, cam2.z(), xp) - x).norm(), 1e-9);
  }
}

TEST(ExactWarp, ConstantDepthMatchesScaledPsi) {
  Rng rng(23);
  for (int k = 0; k < 500; ++k) {
    const MotionParams p = draw_params(rng);
    const double z0 = rng.uniform(0.5, 5);
    Displacement d = displacement_from_params(p);
    const Vec2 x(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Vec2 exact = exact_warp_point(d, z0, x);
    d.t /= z0;
    ASSERT_LT((exact - apply_map(psi_map(params_from_displacement(d)), x)).norm(), 1e-12);
  }
}

TEST(Hypotheses, Identity) {
  const HypothesisReport r = check_hypotheses(Displacement::identity(), DepthField::constant({1.0, 16}, 2.0));
  EXPECT_TRUE(r.pass());
  EXPECT_NEAR(r.hyp1_margin, 1.0, 1e-15);
  EXPECT_NEAR(r.hyp2_margin, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(r.hyp2_limit, 0.5);
}

TEST(Hypotheses, Denominators) {
  const double z = 3.0;
  const HypothesisReport ok =
      check_hypotheses({Rotation3::identity(), Vec3(0, 0, -0.5 * z)}, DepthField::constant({1.0, 16}, z));
  EXPECT_TRUE(ok.hyp1_pass);
  EXPECT_NEAR(ok.hyp1_margin, 1.0 / 1.5, 1e-12);
  const HypothesisReport bad =
      check_hypotheses({Rotation3::identity(), Vec3(0, 0, 0.5 * z)}, DepthField::constant({1.0, 16}, z));
  EXPECT_FALSE(bad.hyp1_pass);
  EXPECT_NEAR(bad.hyp1_margin, 2.0, 1e-12);
}

TEST(Hypotheses, LargeShiftFailsSecond) {
  const HypothesisReport r =
      check_hypotheses({Rotation3::identity(), Vec3(-0.8, 0, 0)}, DepthField::constant({1.0, 16}, 1.0));
  EXPECT_TRUE(r.hyp1_pass);
  EXPECT_FALSE(r.hyp2_pass);
  EXPECT_NEAR(r.hyp2_margin, 0.8, 1e-12);
}

TEST(AxisAngle, Identity) {
  const AxisAngle a = rotation_axis_angle(Rotation3::identity());
  EXPECT_TRUE(a.degenerate);
  EXPECT_EQ(a.angle, 0.0);
  EXPECT_EQ(a.axis, Vec3::UnitZ());
}

TEST(AxisAngle, AboutK) {
  const AxisAngle a = rotation_axis_angle(Rotation3::about_k(0.2));
  EXPECT_FALSE(a.degenerate);
  EXPECT_NEAR(a.angle, 0.2, 1e-14);
  EXPECT_LT((a.axis - Vec3::UnitZ()).norm(), 1e-14);
}

TEST(AxisAngle, RodriguesRoundTrip) {
  const Rotation3 r = rotation_from_params(0.5, 0.02, 0.01);
  const AxisAngle a = rotation_axis_angle(r);
  EXPECT_NEAR(a.axis.norm(), 1.0, 1e-14);
  EXPECT_LT(max_abs_diff(rotation_from_axis_angle(a.axis, a.angle).matrix(), r.matrix()), 1e-9);
  Rng rng(24);
  for (int k = 0; k < 1000; ++k) {
    const Vec3 axis = Vec3(rng.normal(), rng.normal(), rng.normal()).normalized();
    const double angle = rng.uniform(1e-6, std::numbers::pi - 1e-3);
    const Rotation3 q = rotation_from_axis_angle(axis, angle);
    const AxisAngle b = rotation_axis_angle(q);
    ASSERT_LT(max_abs_diff(rotation_from_axis_angle(b.axis, b.angle).matrix(), q.matrix()), 1e-9);
  }
}

TEST(AxisAngle, NearHalfTurn) {
  const Vec3 axis = Vec3(1, 2, -2).normalized();
  const Rotation3 q = rotation_from_axis_angle(axis, std::numbers::pi - 1e-9);
  const AxisAngle b = rotation_axis_angle(q);
  EXPECT_NEAR(b.angle, std::numbers::pi - 1e-9, 1e-7);
  EXPECT_LT(max_abs_diff(rotation_from_axis_angle(b.axis, b.angle).matrix(), q.matrix()), 1e-7);
}

TEST(Rotation3, FromMatrixValidates) {
  EXPECT_NO_THROW(Rotation3::from_matrix(elementary_k(0.3)));
  Mat3 bad = elementary_k(0.3);
  bad(0, 0) += 1e-3;
  EXPECT_THROW(Rotation3::from_matrix(bad), DomainError);
  EXPECT_THROW(Rotation3::from_matrix(-Mat3::Identity()), DomainError);
}

TEST(MotionParams, NominalRange) {
  EXPECT_TRUE((MotionParams{3.0, 0.03, -0.05, 0.09, -0.09, 0.03}).in_nominal_range());
  EXPECT_FALSE((MotionParams{0, 0.031, 0, 0, 0, 0}).in_nominal_range());
  EXPECT_FALSE((MotionParams{0, 0, 0, 0, 0, -0.031}).in_nominal_range());
}

TEST(NormalizeAngle, HalfOpenInterval) {
  EXPECT_DOUBLE_EQ(normalize_angle(std::numbers::pi), std::numbers::pi);
  EXPECT_DOUBLE_EQ(normalize_angle(-std::numbers::pi), std::numbers::pi);
  EXPECT_NEAR(normalize_angle(3 * std::numbers::pi / 2), -std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(normalize_angle(0.25 + 6 * std::numbers::pi), 0.25, 1e-12);
}

}  // namespace
}  // namespace egomotion
