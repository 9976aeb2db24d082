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

#include "egomotion/flowmodel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "egomotion/errors.hpp"

namespace egomotion {

Vec2 quadratic_flow(const MotionParams& p, const Vec2& pt) {
  const double x = pt.x(), y = pt.y();
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  const double tilt = y * ct - x * st;
  return {-p.C * x + p.A + p.beta * y + p.alpha * x * tilt - p.alpha * st,
          -p.C * y + p.B - p.beta * x + p.alpha * y * tilt + p.alpha * ct};
}

double flow_bound_T(double L, double alpha, double beta, double a_or_b, double c) {
  const double al = std::abs(alpha), be = std::abs(beta), ab = std::abs(a_or_b);
  const double a2 = alpha * alpha, b2 = beta * beta;
  const double cubic = L * L * L * (2.0 * a2 / 3.0);
  const double quad = L * L * (4.0 * std::abs(c * alpha) / 3.0 + 2.0 * be * al / 3.0 +
                               4.0 * al * al * al / 9.0);
  const double lin = L * (a2 * (2.0 + be + std::abs(c - 1.0) / 3.0) + 4.0 * ab * al / 3.0 +
                          2.0 * std::abs(beta * c) / 3.0 + b2 / 3.0 + 2.0 * c * c / 3.0 +
                          be * be * be / 9.0);
  const double cst = al * (2.0 * b2 / 3.0 + 4.0 * be / 3.0 + 4.0 * std::abs(c) / 3.0 +
                           2.0 * al * ab / 3.0 + 8.0 * a2 / 9.0) +
                     4.0 * std::abs(a_or_b * c) / 3.0;
  return cubic + quad + lin + cst;
}

BoundReport verify_quadratic_bound(const MotionParams& p, double L, int n) {
  if (!(L > 0.0) || n < 2) throw DomainError("verify_quadratic_bound: need L > 0 and n >= 2");
  if (std::abs(p.alpha) >= 1.0 || std::abs(p.beta) >= 1.0) {
    throw PreconditionError("verify_quadratic_bound: requires |alpha| < 1 and |beta| < 1");
  }
  const ProjectiveMap psi = psi_map(p);
  const Mat3& h = psi.matrix();
  const SampleGrid grid{L, n};
  BoundReport rep;
  rep.grid = n;
  rep.bound_u = flow_bound_T(L, p.alpha, p.beta, p.A, p.C);
  rep.bound_v = flow_bound_T(L, p.alpha, p.beta, p.B, p.C);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const Vec2 q = grid.node(ix, iy);
      const double den = h(2, 0) * q.x() + h(2, 1) * q.y() + h(2, 2);
      if (std::abs(1.0 / den) > 4.0 / 3.0) {
        std::ostringstream os;
        os << "verify_quadratic_bound: denominator hypothesis fails at (" << q.x() << ", "
           << q.y() << "): |1/w| = " << std::abs(1.0 / den);
        throw PreconditionError(os.str());
      }
      const Vec2 exact = apply_map(psi, q) - q;
      const Vec2 err = (exact - quadratic_flow(p, q)).cwiseAbs();
      rep.max_du = std::max(rep.max_du, err.x());
      rep.max_dv = std::max(rep.max_dv, err.y());
    }
  }
  rep.pass = rep.max_du <= rep.bound_u && rep.max_dv <= rep.bound_v;
  return rep;
}

double optimal_Z0(const DepthBounds& b) {
  if (!(b.z_inf > 0.0) || b.z_sup < b.z_inf) {
    throw DomainError("optimal_Z0: requires 0 < z_inf <= z_sup");
  }
  return 2.0 * b.z_sup * b.z_inf / (b.z_sup + b.z_inf);
}

double cond1_margin(const DepthBounds& b, double t_norm, double L) {
  return (1.0 / b.z_inf - 1.0 / b.z_sup) * t_norm * 2.0 * (L + 1.0) / 3.0;
}

double cond2_margin(double z_inf, double t_norm, double L) {
  if (!(z_inf > 0.0)) throw DomainError("cond2_margin: z_inf must be positive");
  return 4.0 * t_norm * (L + 1.0) / (9.0 * z_inf);
}

SubstitutionReport verify_depth_substitution(const Displacement& d, const DepthField& depths,
                                             double epsilon) {
  SubstitutionReport rep;
  rep.epsilon = epsilon;
  rep.hypotheses = check_hypotheses(d, depths);
  if (!rep.hypotheses.hyp1_pass) {
    std::ostringstream os;
    os << "verify_depth_substitution: hypothesis 1 fails (max |1/w| = "
       << rep.hypotheses.hyp1_margin << " > 4/3)";
    throw PreconditionError(os.str());
  }
  if (!rep.hypotheses.hyp2_pass) {
    std::ostringstream os;
    os << "verify_depth_substitution: hypothesis 2 fails (max displacement "
       << rep.hypotheses.hyp2_margin << " > L/2 = " << rep.hypotheses.hyp2_limit << ")";
    throw PreconditionError(os.str());
  }
  const DepthBounds bounds{depths.min(), depths.max()};
  const double side = depths.grid.side;
  rep.cond1 = cond1_margin(bounds, d.t.norm(), side);
  if (rep.cond1 > epsilon) {
    std::ostringstream os;
    os << "verify_depth_substitution: condition 1 fails (margin " << rep.cond1
       << " > epsilon " << epsilon << ")";
    throw PreconditionError(os.str());
  }
  rep.z0 = optimal_Z0(bounds);
  for (int iy = 0; iy < depths.grid.n; ++iy) {
    for (int ix = 0; ix < depths.grid.n; ++ix) {
      const Vec2 p = depths.grid.node(ix, iy);
      const Vec2 exact = exact_warp_point(d, depths.at(ix, iy), p);
      const Vec2 approx = exact_warp_point(d, rep.z0, p);
      rep.max_error = std::max(rep.max_error, (exact - approx).cwiseAbs().maxCoeff());
    }
  }
  rep.pass = rep.max_error <= epsilon;
  return rep;
}

QuadraticFlowCoeffs coeffs_from_params(const MotionParams& p) {
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  QuadraticFlowCoeffs c;
  c.c1 = p.A - p.alpha * st;
  c.c2 = p.B + p.alpha * ct;
  c.a1 = -p.C;
  c.a2 = p.beta;
  c.q1 = -p.alpha * st;
  c.q2 = p.alpha * ct;
  return c;
}

MotionParams params_from_coeffs(const QuadraticFlowCoeffs& c) {
  constexpr double kPi = std::numbers::pi;
  double theta = 0.0;
  if (c.q2 > 0.0) {
    theta = -std::atan(c.q1 / c.q2);
  } else if (c.q2 < 0.0) {
    theta = -std::atan(c.q1 / c.q2) + kPi;
  } else if (c.q1 > 0.0) {
    // The q2 == 0 rows are not the limit of the q2 != 0 rows (theta flips
    // sign); they are kept so the conversion table is reproduced exactly.
    theta = kPi / 2.0;
  } else {
    theta = -kPi / 2.0;
  }
  MotionParams p;
  p.theta = normalize_angle(theta);
  p.alpha = std::hypot(c.q1, c.q2);
  p.beta = c.a2;
  p.A = c.c1 + p.alpha * std::sin(p.theta);
  p.B = c.c2 - p.alpha * std::cos(p.theta);
  p.C = -c.a1;
  return p;
}

}  // namespace egomotion
