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

#ifndef EGOMOTION_FLOWMODEL_HPP_
#define EGOMOTION_FLOWMODEL_HPP_

#include <string>

#include "egomotion/geometry.hpp"

namespace egomotion {

/// Coefficients of the 6-parameter quadratic flow model
///
///     u = (c1, c2) + [[a1, a2], [-a2, a1]] (x, y) + [[q1, q2, 0], [0, q1, q2]] (x^2, xy, y^2)
///
/// plus the global intensity shift `xi` (gray levels).
struct QuadraticFlowCoeffs {
  double c1 = 0.0;
  double c2 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double xi = 0.0;

  /// Model flow at `pt` (focal units).
  Vec2 flow(const Vec2& pt) const {
    const double x = pt.x(), y = pt.y();
    return {c1 + a1 * x + a2 * y + q1 * x * x + q2 * x * y,
            c2 - a2 * x + a1 * y + q1 * x * y + q2 * y * y};
  }

  friend bool operator==(const QuadraticFlowCoeffs&, const QuadraticFlowCoeffs&) = default;
};

struct DepthBounds {
  double z_inf = 1.0;
  double z_sup = 1.0;
};

/// Default approximation error for the validity checks.
inline constexpr double kDefaultEpsilon = 1e-2;
inline constexpr int kDefaultGrid = 64;

/// Quadratic approximation of the flow induced by `p` at `pt`.
Vec2 quadratic_flow(const MotionParams& p, const Vec2& pt);

/// Closed-form bound on the quadratic approximation error over a domain of
/// side L. Pass A for the x component and B for the y component.
double flow_bound_T(double L, double alpha, double beta, double a_or_b, double c);

struct BoundReport {
  double max_du = 0.0;
  double bound_u = 0.0;
  double max_dv = 0.0;
  double bound_v = 0.0;
  int grid = kDefaultGrid;
  bool pass = true;
};

/// Measures |exact - quadratic| over an n x n grid on [-L/2, L/2]^2.
/// Throws PreconditionError when the constant-depth map violates the
/// 4/3 denominator hypothesis on the grid, or |alpha|, |beta| >= 1.
BoundReport verify_quadratic_bound(const MotionParams& p, double L, int n = kDefaultGrid);

/// Harmonic-mean depth 2 Zsup Zinf / (Zsup + Zinf).
double optimal_Z0(const DepthBounds& b);

/// (1/Zinf - 1/Zsup) |t| 2 (L + 1) / 3.
double cond1_margin(const DepthBounds& b, double t_norm, double L);

/// 4 |t| (L + 1) / (9 Zinf).
double cond2_margin(double z_inf, double t_norm, double L);

struct SubstitutionReport {
  double z0 = 0.0;
  double cond1 = 0.0;
  double max_error = 0.0;
  double epsilon = kDefaultEpsilon;
  HypothesisReport hypotheses;
  bool pass = true;
};

/// Replaces the per-point depth by the optimal constant and measures the
/// largest componentwise point error over the depth field's grid.
/// Throws PreconditionError naming the failed hypothesis or condition.
SubstitutionReport verify_depth_substitution(const Displacement& d, const DepthField& depths,
                                             double epsilon = kDefaultEpsilon);

QuadraticFlowCoeffs coeffs_from_params(const MotionParams& p);

/// Conversion by identification with the quadratic flow. theta follows the
/// four-branch arctan table and is then normalized to (-pi, pi].
MotionParams params_from_coeffs(const QuadraticFlowCoeffs& c);

}  // namespace egomotion

#endif  // EGOMOTION_FLOWMODEL_HPP_
