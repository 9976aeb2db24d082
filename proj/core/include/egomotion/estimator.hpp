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

#ifndef EGOMOTION_ESTIMATOR_HPP_
#define EGOMOTION_ESTIMATOR_HPP_

#include <array>
#include <vector>

#include "egomotion/flowmodel.hpp"
#include "egomotion/imaging.hpp"

namespace egomotion {

/// How the Tukey threshold is chosen each iteration.
struct GammaPolicy {
  enum class Kind { kFixed, kMadScaled };

  Kind kind = Kind::kMadScaled;
  /// Threshold in gray levels for kFixed; multiplier c for kMadScaled, where
  /// gamma = max(1, c * 1.4826 * MAD(residuals)).
  double value = 4.685;

  static GammaPolicy fixed(double gamma) { return {Kind::kFixed, gamma}; }
  static GammaPolicy mad_scaled(double c = 4.685) { return {Kind::kMadScaled, c}; }
};

struct EstimatorConfig {
  int min_pyramid_dim = 32;
  int max_iters_per_level = 50;
  double step_tolerance = 1e-8;  ///< focal units
  GammaPolicy gamma_policy;
  bool estimate_xi = true;

  /// Throws ConfigError on non-positive settings.
  void validate() const;
};

struct LevelStats {
  int width = 0;
  int height = 0;
  int iterations = 0;
  bool converged = false;
  double gamma = 0.0;             ///< final Tukey threshold on this level
  double support_fraction = 0.0;  ///< pixels with nonzero weight at exit
  /// Robust objective at the start of each iteration plus the accepted end
  /// value; non-increasing.
  std::vector<double> objective;
};

struct EstimateResult {
  QuadraticFlowCoeffs coeffs;
  MotionParams params;
  double xi = 0.0;
  double support_fraction = 0.0;
  std::vector<int> iterations;  ///< per pyramid level, coarsest first
  double final_residual_scale = 0.0;
  std::vector<LevelStats> levels;  ///< coarsest first
};

/// Tukey biweight loss.
double tukey_rho(double t, double gamma);
/// IRLS weight rho'(t) / t = (gamma^2 - t^2)^2 inside the threshold, else 0.
double tukey_weight(double t, double gamma);

struct DfdSample {
  double residual = 0.0;
  bool valid = false;
};

/// g(p + u(p)) - f(p) + xi at pixel `pt_pixel` of f.
DfdSample dfd(const ImageBuffer& f, const ImageBuffer& g, const QuadraticFlowCoeffs& coeffs,
              const Vec2& pt_pixel, const Intrinsics& intr);

struct DfdLinearization {
  double residual = 0.0;
  bool valid = false;
  /// d(DFD) / d(c1, c2, a1, a2, q1, q2, xi).
  std::array<double, 7> jacobian{};
};

/// Residual and analytic Jacobian using the sampled gradient of g at the
/// warped location.
DfdLinearization dfd_linearize(const ImageBuffer& f, const ImageBuffer& g, const Gradients& g_grad,
                               const QuadraticFlowCoeffs& coeffs, const Vec2& pt_pixel,
                               const Intrinsics& intr);

struct LevelSolution {
  QuadraticFlowCoeffs coeffs;
  LevelStats stats;
};

/// Robust Gauss-Newton (IRLS) on one pyramid level with step halving.
/// Throws SingularSystemError or EmptySupportError.
LevelSolution irls_level_solve(const ImageBuffer& f, const ImageBuffer& g,
                               const QuadraticFlowCoeffs& init, const Intrinsics& intr,
                               const EstimatorConfig& config);

/// Coarse-to-fine estimate of the motion that takes frame f to frame g.
EstimateResult estimate_motion(const ImageBuffer& f, const ImageBuffer& g, const Intrinsics& intr,
                               const EstimatorConfig& config = {});

}  // namespace egomotion

#endif  // EGOMOTION_ESTIMATOR_HPP_
