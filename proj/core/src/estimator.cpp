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

#include "egomotion/estimator.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "egomotion/errors.hpp"

namespace egomotion {

namespace {

using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

constexpr double kMadToSigma = 1.4826;
constexpr double kGammaFloor = 1.0;
constexpr int kMaxHalvings = 12;

struct Bilinear {
  int i0, j0, i1, j1;
  double fx, fy;
};

// Same cell selection as sample_bilinear, for a point already known inside.
inline Bilinear bilinear_at(int w, int h, double i, double j) {
  int i0 = static_cast<int>(i), j0 = static_cast<int>(j);
  if (i0 > w - 2) i0 = w - 2;
  if (j0 > h - 2) j0 = h - 2;
  return {i0, j0, i0 + 1, j0 + 1, i - i0, j - j0};
}

inline double sample(const ImageBuffer& img, const Bilinear& b) {
  const double top = img.at(b.i0, b.j0) + b.fx * (img.at(b.i1, b.j0) - img.at(b.i0, b.j0));
  const double bot = img.at(b.i0, b.j1) + b.fx * (img.at(b.i1, b.j1) - img.at(b.i0, b.j1));
  return top + b.fy * (bot - top);
}

Vec7 to_vec(const QuadraticFlowCoeffs& c) {
  Vec7 v;
  v << c.c1, c.c2, c.a1, c.a2, c.q1, c.q2, c.xi;
  return v;
}

QuadraticFlowCoeffs from_vec(const Vec7& v) {
  return {v(0), v(1), v(2), v(3), v(4), v(5), v(6)};
}

// Model Jacobian rows d(u_x)/dTheta and d(u_y)/dTheta at (x, y).
inline void model_jacobian(double x, double y, double jx[6], double jy[6]) {
  jx[0] = 1.0; jx[1] = 0.0; jx[2] = x; jx[3] = y;  jx[4] = x * x; jx[5] = x * y;
  jy[0] = 0.0; jy[1] = 1.0; jy[2] = y; jy[3] = -x; jy[4] = x * y; jy[5] = y * y;
}

// Precomputed per-level data shared by every iteration.
struct Level {
  const ImageBuffer& f;
  const ImageBuffer& g;
  Gradients g_grad;
  Intrinsics intr;
  std::vector<double> xs;  // focal x of each column
  std::vector<double> ys;  // focal y of each row

  Level(const ImageBuffer& f_in, const ImageBuffer& g_in, const Intrinsics& in)
      : f(f_in), g(g_in), g_grad(gradients(g_in)), intr(in) {
    xs.resize(static_cast<std::size_t>(f.width()));
    ys.resize(static_cast<std::size_t>(f.height()));
    for (int i = 0; i < f.width(); ++i) xs[i] = (i - intr.cx) / intr.focal_px;
    for (int j = 0; j < f.height(); ++j) ys[j] = (j - intr.cy) / intr.focal_px;
  }

  std::size_t pixels() const { return f.size(); }
};

// Residuals at `theta`; invalid pixels get valid = 0.
void compute_residuals(const Level& lv, const Vec7& theta, std::vector<double>& r,
                       std::vector<std::uint8_t>& valid) {
  const int w = lv.f.width(), h = lv.f.height();
  const int gw = lv.g.width(), gh = lv.g.height();
  const QuadraticFlowCoeffs c = from_vec(theta);
  r.resize(lv.pixels());
  valid.resize(lv.pixels());
  std::size_t k = 0;
  for (int j = 0; j < h; ++j) {
    const double y = lv.ys[j];
    for (int i = 0; i < w; ++i, ++k) {
      const Vec2 u = c.flow(Vec2(lv.xs[i], y));
      const double wi = i + u.x() * lv.intr.focal_px;
      const double wj = j + u.y() * lv.intr.focal_px;
      if (!(wi >= 0.0 && wj >= 0.0 && wi <= gw - 1 && wj <= gh - 1)) {
        valid[k] = 0;
        r[k] = 0.0;
        continue;
      }
      valid[k] = 1;
      r[k] = sample(lv.g, bilinear_at(gw, gh, wi, wj)) - lv.f.at(i, j) + c.xi;
    }
  }
}

double median_inplace(std::vector<double>& v) {
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  double m = v[mid];
  if (n % 2 == 0) {
    m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  return m;
}

// 1.4826 * max(MAD, |median|) over valid pixels. The median term keeps a
// global intensity offset, whose MAD is zero, inside the threshold.
double robust_scale(const std::vector<double>& r, const std::vector<std::uint8_t>& valid) {
  std::vector<double> v;
  v.reserve(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (valid[k]) v.push_back(r[k]);
  }
  if (v.empty()) return 0.0;
  const double med = median_inplace(v);
  for (double& x : v) x = std::abs(x - med);
  return kMadToSigma * std::max(median_inplace(v), std::abs(med));
}

double objective(const std::vector<double>& r, const std::vector<std::uint8_t>& valid,
                 double gamma) {
  const double saturated = std::pow(gamma, 6) / 6.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < r.size(); ++k) acc += valid[k] ? tukey_rho(r[k], gamma) : saturated;
  return acc;
}

// Largest flow change over the level's corners and center (focal units).
double flow_step(const Level& lv, const Vec7& delta) {
  QuadraticFlowCoeffs d = from_vec(delta);
  d.xi = 0.0;
  const double x0 = lv.xs.front(), x1 = lv.xs.back();
  const double y0 = lv.ys.front(), y1 = lv.ys.back();
  const Vec2 probes[5] = {{x0, y0}, {x1, y0}, {x0, y1}, {x1, y1}, {0.0, 0.0}};
  double m = 0.0;
  for (const Vec2& p : probes) m = std::max(m, d.flow(p).cwiseAbs().maxCoeff());
  return m;
}

template <int N>
Eigen::Matrix<double, N, 1> solve_normal_equations(const Eigen::Matrix<double, N, N>& H,
                                                   const Eigen::Matrix<double, N, 1>& b) {
  const Eigen::Matrix<double, N, 1> diag = H.diagonal();
  const double dmax = diag.maxCoeff();
  if (!(dmax > 0.0) || !H.allFinite()) {
    throw SingularSystemError("normal equations are zero or non-finite (no usable gradient)");
  }
  for (int k = 0; k < N; ++k) {
    if (!(diag(k) > dmax * 1e-18)) {
      std::ostringstream os;
      os << "normal equations are singular: parameter " << k << " is unconstrained";
      throw SingularSystemError(os.str());
    }
  }
  const Eigen::Matrix<double, N, 1> s = diag.cwiseSqrt().cwiseInverse();
  const Eigen::Matrix<double, N, N> Hs = s.asDiagonal() * H * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, N, N>> eig(Hs, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues()(0) < 1e-12 * eig.eigenvalues()(N - 1)) {
    std::ostringstream os;
    os << "normal equations are singular (scaled condition "
       << eig.eigenvalues()(N - 1) / std::max(eig.eigenvalues()(0), 1e-300) << ")";
    throw SingularSystemError(os.str());
  }
  const Eigen::Matrix<double, N, 1> ys = Hs.ldlt().solve(s.cwiseProduct(b));
  return s.cwiseProduct(ys);
}

}  // namespace

void EstimatorConfig::validate() const {
  if (min_pyramid_dim < 8) throw ConfigError("min_pyramid_dim must be at least 8");
  if (max_iters_per_level <= 0) throw ConfigError("max_iters_per_level must be positive");
  if (!(step_tolerance > 0.0)) throw ConfigError("step_tolerance must be positive");
  if (!(gamma_policy.value > 0.0)) throw ConfigError("gamma policy value must be positive");
}

double tukey_rho(double t, double gamma) {
  if (std::abs(t) < gamma) {
    const double g2 = gamma * gamma, t2 = t * t;
    return 0.5 * t2 * (g2 * g2 - g2 * t2 + t2 * t2 / 3.0);
  }
  return std::pow(gamma, 6) / 6.0;
}

double tukey_weight(double t, double gamma) {
  if (std::abs(t) < gamma) {
    const double d = gamma * gamma - t * t;
    return d * d;
  }
  return 0.0;
}

DfdSample dfd(const ImageBuffer& f, const ImageBuffer& g, const QuadraticFlowCoeffs& coeffs,
              const Vec2& pt_pixel, const Intrinsics& intr) {
  const Vec2 u = coeffs.flow(intr.pixel_to_focal(pt_pixel));
  const Vec2 w = pt_pixel + u * intr.focal_px;
  DfdSample out;
  out.valid = inside(g, w.x(), w.y());
  const double fv = sample_bilinear(f, pt_pixel.x(), pt_pixel.y());
  out.residual = sample_bilinear(g, w.x(), w.y()) - fv + coeffs.xi;
  return out;
}

DfdLinearization dfd_linearize(const ImageBuffer& f, const ImageBuffer& g, const Gradients& g_grad,
                               const QuadraticFlowCoeffs& coeffs, const Vec2& pt_pixel,
                               const Intrinsics& intr) {
  const Vec2 p = intr.pixel_to_focal(pt_pixel);
  const Vec2 u = coeffs.flow(p);
  const Vec2 w = pt_pixel + u * intr.focal_px;
  DfdLinearization out;
  out.valid = inside(g, w.x(), w.y());
  out.residual = sample_bilinear(g, w.x(), w.y()) - sample_bilinear(f, pt_pixel.x(), pt_pixel.y()) +
                 coeffs.xi;
  const double gx = sample_bilinear(g_grad.gx, w.x(), w.y()) * intr.focal_px;
  const double gy = sample_bilinear(g_grad.gy, w.x(), w.y()) * intr.focal_px;
  double jx[6], jy[6];
  model_jacobian(p.x(), p.y(), jx, jy);
  for (int k = 0; k < 6; ++k) out.jacobian[k] = gx * jx[k] + gy * jy[k];
  out.jacobian[6] = 1.0;
  return out;
}

LevelSolution irls_level_solve(const ImageBuffer& f, const ImageBuffer& g,
                               const QuadraticFlowCoeffs& init, const Intrinsics& intr,
                               const EstimatorConfig& config) {
  config.validate();
  if (f.width() != g.width() || f.height() != g.height()) {
    throw DomainError("irls_level_solve: images differ in size");
  }
  const Level lv(f, g, intr);
  const int w = f.width(), h = f.height();
  const int gw = g.width(), gh = g.height();
  const double fpx = intr.focal_px;

  Vec7 theta = to_vec(init);
  if (!config.estimate_xi) theta(6) = 0.0;

  LevelSolution sol;
  sol.stats.width = w;
  sol.stats.height = h;

  std::vector<double> r, r_cand;
  std::vector<std::uint8_t> valid, valid_cand;
  double gamma_prev = std::numeric_limits<double>::infinity();
  double gamma = 0.0;

  compute_residuals(lv, theta, r, valid);
  for (int iter = 0; iter < config.max_iters_per_level; ++iter) {
    sol.stats.iterations = iter + 1;
    if (std::none_of(valid.begin(), valid.end(), [](std::uint8_t v) { return v != 0; })) {
      throw EmptySupportError("no pixel of f warps inside g");
    }
    if (config.gamma_policy.kind == GammaPolicy::Kind::kFixed) {
      gamma = config.gamma_policy.value;
    } else {
      // Non-increasing within a level so that the objective sequence is too.
      gamma = std::min(gamma_prev,
                       std::max(kGammaFloor, config.gamma_policy.value * robust_scale(r, valid)));
    }
    gamma_prev = gamma;
    const double obj = objective(r, valid, gamma);
    sol.stats.objective.push_back(obj);

    Mat7 H = Mat7::Zero();
    Vec7 b = Vec7::Zero();
    std::size_t support = 0;
    const QuadraticFlowCoeffs c = from_vec(theta);
    std::size_t k = 0;
    for (int j = 0; j < h; ++j) {
      const double y = lv.ys[j];
      Mat7 Hrow = Mat7::Zero();
      Vec7 brow = Vec7::Zero();
      for (int i = 0; i < w; ++i, ++k) {
        if (!valid[k]) continue;
        const double wt = tukey_weight(r[k], gamma);
        if (wt == 0.0) continue;
        ++support;
        const double x = lv.xs[i];
        const Vec2 u = c.flow(Vec2(x, y));
        const Bilinear bl = bilinear_at(gw, gh, i + u.x() * fpx, j + u.y() * fpx);
        const double gx = sample(lv.g_grad.gx, bl) * fpx;
        const double gy = sample(lv.g_grad.gy, bl) * fpx;
        double jx[6], jy[6];
        model_jacobian(x, y, jx, jy);
        Vec7 J;
        for (int m = 0; m < 6; ++m) J(m) = gx * jx[m] + gy * jy[m];
        J(6) = 1.0;
        Hrow.selfadjointView<Eigen::Upper>().rankUpdate(J, wt);
        brow.noalias() += (wt * r[k]) * J;
      }
      H += Hrow;
      b += brow;
    }
    if (support == 0) {
      throw EmptySupportError("every robust weight vanished");
    }
    H = H.selfadjointView<Eigen::Upper>();

    Vec7 delta = Vec7::Zero();
    if (config.estimate_xi) {
      delta = -solve_normal_equations<7>(H, b);
    } else {
      const Eigen::Matrix<double, 6, 6> H6 = H.topLeftCorner<6, 6>();
      const Eigen::Matrix<double, 6, 1> b6 = b.head<6>();
      delta.head<6>() = -solve_normal_equations<6>(H6, b6);
    }

    // Step halving until the objective does not increase.
    double scale = 1.0;
    bool accepted = false;
    double obj_cand = obj;
    Vec7 cand = theta;
    for (int halving = 0; halving <= kMaxHalvings; ++halving, scale *= 0.5) {
      cand = theta + scale * delta;
      compute_residuals(lv, cand, r_cand, valid_cand);
      obj_cand = objective(r_cand, valid_cand, gamma);
      if (obj_cand <= obj) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      sol.stats.converged = true;
      break;
    }
    const double step = flow_step(lv, scale * delta);
    theta = cand;
    r.swap(r_cand);
    valid.swap(valid_cand);
    if (step < config.step_tolerance) {
      sol.stats.objective.push_back(obj_cand);
      sol.stats.converged = true;
      break;
    }
  }

  std::size_t support = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (valid[k] && tukey_weight(r[k], gamma) > 0.0) ++support;
  }
  sol.stats.gamma = gamma;
  sol.stats.support_fraction = static_cast<double>(support) / static_cast<double>(r.size());
  sol.coeffs = from_vec(theta);
  return sol;
}

EstimateResult estimate_motion(const ImageBuffer& f, const ImageBuffer& g, const Intrinsics& intr,
                               const EstimatorConfig& config) {
  config.validate();
  if (f.width() != g.width() || f.height() != g.height()) {
    throw DomainError("estimate_motion: frames differ in size");
  }
  intr.validate(f.width(), f.height());

  const std::vector<ImageBuffer> fp = build_pyramid(f, config.min_pyramid_dim);
  const std::vector<ImageBuffer> gp = build_pyramid(g, config.min_pyramid_dim);
  std::vector<Intrinsics> ip{intr};
  for (std::size_t l = 1; l < fp.size(); ++l) ip.push_back(ip.back().halved());

  EstimateResult res;
  QuadraticFlowCoeffs coeffs;
  for (std::size_t l = fp.size(); l-- > 0;) {
    try {
      LevelSolution sol = irls_level_solve(fp[l], gp[l], coeffs, ip[l], config);
      coeffs = sol.coeffs;
      res.iterations.push_back(sol.stats.iterations);
      res.levels.push_back(std::move(sol.stats));
    } catch (const SingularSystemError& e) {
      throw SingularSystemError("pyramid level " + std::to_string(l) + ": " + e.what());
    } catch (const EmptySupportError& e) {
      throw EmptySupportError("pyramid level " + std::to_string(l) + ": " + e.what());
    }
  }

  res.coeffs = coeffs;
  res.params = params_from_coeffs(coeffs);
  res.xi = coeffs.xi;
  res.support_fraction = res.levels.back().support_fraction;

  const Level finest(f, g, intr);
  std::vector<double> r;
  std::vector<std::uint8_t> valid;
  compute_residuals(finest, to_vec(coeffs), r, valid);
  res.final_residual_scale = robust_scale(r, valid);
  return res;
}

}  // namespace egomotion
