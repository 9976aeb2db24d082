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

#include "egomotion/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>

#include "egomotion/errors.hpp"
#include "egomotion/random.hpp"
#include "egomotion/serialization.hpp"

namespace egomotion {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;

ImageBuffer mask_image(const ValidityMask& m) {
  std::vector<double> v(m.valid.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = m.valid[k] ? 1.0 : 0.0;
  return ImageBuffer(m.width, m.height, std::move(v));
}

ValidityMask crop_mask(const ValidityMask& m, int i0, int j0, int w, int h) {
  ValidityMask out{w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h)};
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) out.valid[static_cast<std::size_t>(j) * w + i] = m.at(i0 + i, j0 + j);
  }
  return out;
}

std::string frame_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%03zu.pgm", k);
  return buf;
}

void accumulate(std::optional<double> v, double& sum, int& n) {
  if (v) {
    sum += *v;
    ++n;
  }
}

std::optional<double> mean_of(double sum, int n) {
  if (n == 0) return std::nullopt;
  return sum / n;
}

std::string cell(const std::optional<double>& v, int precision, bool percent = false) {
  if (!v) return "-";
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << (percent ? *v * 100.0 : *v);
  if (percent) os << "%";
  return os.str();
}

std::string csv_field(const std::optional<double>& v) {
  if (!v) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", *v);
  return buf;
}

}  // namespace

std::string to_string(MotionType t) {
  switch (t) {
    case MotionType::kPlain: return "plain";
    case MotionType::kPureTranslation: return "pure_translation";
    case MotionType::kPureRotation: return "pure_rotation";
  }
  return "plain";
}

MotionType motion_type_from_string(const std::string& name) {
  if (name == "plain") return MotionType::kPlain;
  if (name == "pure_translation") return MotionType::kPureTranslation;
  if (name == "pure_rotation") return MotionType::kPureRotation;
  throw ConfigError("unknown motion type '" + name + "'");
}

MotionParams random_params(std::uint64_t seed, MotionType type) {
  Rng rng(seed);
  MotionParams p;
  p.theta = std::numbers::pi - 2.0 * std::numbers::pi * rng.uniform01();
  p.alpha = rng.uniform(0.0, 0.03);
  p.beta = rng.uniform(-0.05, 0.05);
  p.A = rng.uniform(-0.09, 0.09);
  p.B = rng.uniform(-0.09, 0.09);
  p.C = rng.uniform(-0.03, 0.03);
  if (type == MotionType::kPureTranslation) p.theta = p.alpha = p.beta = 0.0;
  if (type == MotionType::kPureRotation) p.A = p.B = p.C = 0.0;
  return p;
}

ImageBuffer textured_image(int width, int height, std::uint64_t seed) {
  if (width < 2 || height < 2) throw DomainError("textured_image: size must be at least 2x2");
  Rng rng(seed);
  std::vector<double> acc(static_cast<std::size_t>(width) * height, 0.0);
  // Equal-weight octaves of smoothstep value noise; nothing finer than 4-pixel
  // cells, as in an optically band-limited capture.
  for (int cell : {64, 32, 16, 8, 4}) {
    const int gw = width / cell + 2, gh = height / cell + 2;
    std::vector<double> lattice(static_cast<std::size_t>(gw) * gh);
    for (double& v : lattice) v = rng.normal();
    auto node = [&](int gx, int gy) { return lattice[static_cast<std::size_t>(gy) * gw + gx]; };
    for (int j = 0; j < height; ++j) {
      const int gy = j / cell;
      double fy = static_cast<double>(j % cell) / cell;
      fy = fy * fy * (3.0 - 2.0 * fy);
      for (int i = 0; i < width; ++i) {
        const int gx = i / cell;
        double fx = static_cast<double>(i % cell) / cell;
        fx = fx * fx * (3.0 - 2.0 * fx);
        const double top = node(gx, gy) + fx * (node(gx + 1, gy) - node(gx, gy));
        const double bot = node(gx, gy + 1) + fx * (node(gx + 1, gy + 1) - node(gx, gy + 1));
        acc[static_cast<std::size_t>(j) * width + i] += top + fy * (bot - top);
      }
    }
  }
  // Histogram equalization onto [16, 240]; ties keep index order.
  std::vector<std::size_t> order(acc.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return acc[a] < acc[b]; });
  std::vector<double> out(acc.size());
  const double last = static_cast<double>(order.size() - 1);
  for (std::size_t r = 0; r < order.size(); ++r) {
    out[order[r]] = std::round(16.0 + 224.0 * static_cast<double>(r) / last);
  }
  return ImageBuffer(width, height, std::move(out));
}

void SequenceManifest::validate() const {
  if (frames.size() < 2) throw ConfigError("manifest: at least two frames required");
  if (truth.size() != frames.size() - 1) {
    throw ConfigError("manifest: truth count " + std::to_string(truth.size()) +
                      " does not match frame count " + std::to_string(frames.size()) + " - 1");
  }
}

GeneratedSequence generate_sequence(const ImageBuffer& base, int n_frames, MotionType type,
                                    std::uint64_t seed, const Intrinsics& intr,
                                    const SequenceOptions& options) {
  if (n_frames < 2) throw ConfigError("generate_sequence: n_frames must be at least 2");
  const int out_w = options.width > 0 ? options.width : base.width();
  const int out_h = options.height > 0 ? options.height : base.height();
  if (out_w > base.width() || out_h > base.height()) {
    throw ConfigError("generate_sequence: output size exceeds the base image");
  }
  const int i0 = (base.width() - out_w) / 2, j0 = (base.height() - out_h) / 2;

  GeneratedSequence seq;
  SequenceManifest& m = seq.manifest;
  m.seed = seed;
  m.motion_type = type;
  m.intrinsics = {intr.focal_px, intr.cx - i0, intr.cy - j0};
  m.intrinsics.validate(out_w, out_h);
  if (options.motions) {
    if (options.motions->size() != static_cast<std::size_t>(n_frames - 1)) {
      throw ConfigError("generate_sequence: motion override must hold n_frames - 1 entries");
    }
    m.truth = *options.motions;
  } else {
    for (int k = 0; k + 1 < n_frames; ++k) {
      m.truth.push_back(random_params(derive_seed(seed, {static_cast<std::uint64_t>(k)}), type));
    }
  }

  ImageBuffer frame = quantize(base);
  ValidityMask mask{base.width(), base.height(), std::vector<std::uint8_t>(base.size(), 1)};
  for (int k = 0; k < n_frames; ++k) {
    if (k > 0) {
      const ProjectiveMap psi = psi_map(m.truth[k - 1]);
      WarpResult w = deform_image(frame, psi, intr);
      const WarpResult wm = deform_image(mask_image(mask), psi, intr);
      for (std::size_t q = 0; q < w.mask.valid.size(); ++q) {
        w.mask.valid[q] = w.mask.valid[q] && wm.image.samples()[q] >= 1.0 - 1e-9;
      }
      frame = quantize(w.image);
      mask = std::move(w.mask);
    }
    ValidityMask cm = crop_mask(mask, i0, j0, out_w, out_h);
    const double frac = cm.fraction();
    if (frac < 0.8) {
      std::ostringstream os;
      os << "frame " << k << ": valid content covers " << std::fixed << std::setprecision(1)
         << frac * 100.0 << "% of the frame (below 80%)";
      seq.warnings.push_back(os.str());
    }
    seq.frames.push_back(crop(frame, i0, j0, out_w, out_h));
    seq.masks.push_back(std::move(cm));
    m.frames.push_back(frame_name(static_cast<std::size_t>(k)));
  }
  return seq;
}

SequenceManifest write_sequence(const GeneratedSequence& seq, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
  for (std::size_t k = 0; k < seq.frames.size(); ++k) {
    save_image(dir / seq.manifest.frames[k], seq.frames[k]);
  }
  const std::filesystem::path path = dir / "manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << nlohmann::json(seq.manifest).dump(2) << "\n";
  if (!out) throw IoError("write failed for '" + path.string() + "'");
  SequenceManifest m = seq.manifest;
  m.root = dir;
  return m;
}

SequenceManifest load_manifest(const std::filesystem::path& path) {
  SequenceManifest m = read_json_file(path).get<SequenceManifest>();
  m.root = path.parent_path();
  m.validate();
  for (const std::string& f : m.frames) {
    if (!std::filesystem::exists(m.root / f)) {
      throw IoError("manifest '" + path.string() + "' references missing frame '" + f + "'");
    }
  }
  return m;
}

std::vector<ImageBuffer> load_frames(const SequenceManifest& manifest) {
  std::vector<ImageBuffer> out;
  for (const std::string& f : manifest.frames) out.push_back(load_image(manifest.root / f));
  return out;
}

FramePair render_pair(const ImageBuffer& base, const Intrinsics& base_intr, const MotionParams& p,
                      int width, int height, const Intrinsics& out_intr) {
  FramePair pair;
  pair.f = quantize(
      warp_image(base, base_intr, ProjectiveMap::identity(), width, height, out_intr).image);
  WarpResult g = warp_image(base, base_intr, psi_map(p).inverse(), width, height, out_intr);
  pair.g = quantize(g.image);
  pair.g_mask = std::move(g.mask);
  return pair;
}

std::optional<double> translation_direction_error(const Vec3& t_est, const Vec3& t_true) {
  const double ne = t_est.norm(), nt = t_true.norm();
  if (ne < 1e-12 || nt < 1e-12) return std::nullopt;
  const double c = std::clamp(t_est.dot(t_true) / (ne * nt), -1.0, 1.0);
  return std::acos(c) * kRadToDeg;
}

RotationErrors rotation_errors(const Rotation3& r_est, const Rotation3& r_true) {
  const AxisAngle e = rotation_axis_angle(r_est);
  const AxisAngle t = rotation_axis_angle(r_true);
  RotationErrors out;
  if (e.angle >= 1e-6 && t.angle >= 1e-6) {
    const double c = std::clamp(e.axis.dot(t.axis), -1.0, 1.0);
    out.axis_deg = std::acos(c) * kRadToDeg;
  }
  const double abs_err = std::abs(e.angle - t.angle);
  out.angle_abs_deg = abs_err * kRadToDeg;
  if (t.angle >= 1e-9) out.angle_rel = abs_err / t.angle;
  return out;
}

PairErrors pair_errors(const MotionParams& estimate, const MotionParams& truth) {
  const Displacement de = displacement_from_params(estimate);
  const Displacement dt = displacement_from_params(truth);
  PairErrors out;
  out.trans_dir_deg = translation_direction_error(de.t, dt.t);
  const RotationErrors r = rotation_errors(de.r, dt.r);
  out.rot_axis_deg = r.axis_deg;
  out.rot_angle_abs_deg = r.angle_abs_deg;
  out.rot_angle_rel = r.angle_rel;
  return out;
}

PairErrors average(const std::vector<PairErrors>& pairs) {
  double s[4] = {0, 0, 0, 0};
  int n[4] = {0, 0, 0, 0};
  for (const PairErrors& p : pairs) {
    accumulate(p.trans_dir_deg, s[0], n[0]);
    accumulate(p.rot_axis_deg, s[1], n[1]);
    accumulate(p.rot_angle_abs_deg, s[2], n[2]);
    accumulate(p.rot_angle_rel, s[3], n[3]);
  }
  PairErrors m;
  m.trans_dir_deg = mean_of(s[0], n[0]);
  m.rot_axis_deg = mean_of(s[1], n[1]);
  m.rot_angle_abs_deg = mean_of(s[2], n[2]);
  m.rot_angle_rel = mean_of(s[3], n[3]);
  return m;
}

ErrorReport evaluate_pairs(MotionType type, const std::vector<MotionParams>& truth,
                           const std::vector<std::optional<MotionParams>>& estimates,
                           const std::vector<std::optional<std::string>>& failures) {
  if (estimates.size() != truth.size()) {
    throw ConfigError("evaluate: " + std::to_string(estimates.size()) + " estimates for " +
                      std::to_string(truth.size()) + " ground-truth pairs");
  }
  ErrorReport rep;
  rep.motion_type = type;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    PairErrors e;
    if (estimates[k]) {
      e = pair_errors(*estimates[k], truth[k]);
    } else {
      e.failure = k < failures.size() && failures[k] ? *failures[k] : "no estimate";
    }
    rep.pairs.push_back(std::move(e));
  }
  rep.mean = average(rep.pairs);
  return rep;
}

ErrorReport evaluate_sequence(const SequenceManifest& manifest,
                              const std::vector<MotionParams>& estimates) {
  std::vector<std::optional<MotionParams>> est(estimates.begin(), estimates.end());
  return evaluate_pairs(manifest.motion_type, manifest.truth, est);
}

std::string render_table(const std::vector<ErrorReport>& reports) {
  std::ostringstream os;
  os << std::left << std::setw(18) << "motion" << std::setw(18) << "trans_dir (deg)"
     << std::setw(18) << "rot_axis (deg)" << std::setw(20) << "rot_angle (deg)"
     << "rot_angle (rel)\n";
  for (const ErrorReport& r : reports) {
    os << std::left << std::setw(18) << to_string(r.motion_type) << std::setw(18)
       << cell(r.mean.trans_dir_deg, 3) << std::setw(18) << cell(r.mean.rot_axis_deg, 3)
       << std::setw(20) << cell(r.mean.rot_angle_abs_deg, 4) << cell(r.mean.rot_angle_rel, 2, true)
       << "\n";
  }
  return os.str();
}

std::string ErrorReport::table() const { return render_table({*this}); }

SequenceEstimates estimate_sequence(const std::vector<ImageBuffer>& frames, const Intrinsics& intr,
                                    const EstimatorConfig& config) {
  SequenceEstimates out;
  for (std::size_t k = 0; k + 1 < frames.size(); ++k) {
    try {
      out.params.push_back(estimate_motion(frames[k], frames[k + 1], intr, config).params);
      out.failures.push_back(std::nullopt);
    } catch (const Error& e) {
      out.params.push_back(std::nullopt);
      out.failures.push_back(std::string(e.kind()) + ": " + e.what());
    }
  }
  return out;
}

std::string to_string(NoiseKind k) { return k == NoiseKind::kImpulse ? "impulse" : "gaussian"; }

NoiseKind noise_kind_from_string(const std::string& name) {
  if (name == "impulse") return NoiseKind::kImpulse;
  if (name == "gaussian") return NoiseKind::kGaussian;
  throw ConfigError("unknown noise kind '" + name + "'");
}

std::vector<SweepRow> noise_sweep(const SequenceManifest& manifest,
                                  const std::vector<ImageBuffer>& frames, NoiseKind kind,
                                  const std::vector<double>& levels, std::uint64_t seed,
                                  const EstimatorConfig& config) {
  manifest.validate();
  if (frames.size() != manifest.frames.size()) {
    throw ConfigError("noise_sweep: frame count does not match the manifest");
  }
  for (double level : levels) {
    if (!(level >= 0.0)) throw ConfigError("noise_sweep: noise levels must be non-negative");
  }
  auto corrupt = [&](const ImageBuffer& img, double level, std::uint64_t s) {
    if (level == 0.0) return img;
    return kind == NoiseKind::kImpulse ? add_impulse_noise(img, level, s)
                                       : add_gaussian_noise(img, level, s);
  };
  std::vector<SweepRow> rows;
  for (std::size_t li = 0; li < levels.size(); ++li) {
    std::vector<std::optional<MotionParams>> est;
    std::vector<std::optional<std::string>> fail;
    for (std::size_t k = 0; k + 1 < frames.size(); ++k) {
      const ImageBuffer f = corrupt(frames[k], levels[li], derive_seed(seed, {li, k, 0}));
      const ImageBuffer g = corrupt(frames[k + 1], levels[li], derive_seed(seed, {li, k, 1}));
      try {
        est.push_back(estimate_motion(f, g, manifest.intrinsics, config).params);
        fail.push_back(std::nullopt);
      } catch (const Error& e) {
        est.push_back(std::nullopt);
        fail.push_back(std::string(e.kind()) + ": " + e.what());
      }
    }
    rows.push_back({levels[li], evaluate_pairs(manifest.motion_type, manifest.truth, est, fail)});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepCsvHeader << "\n";
  for (const SweepRow& r : rows) {
    char lvl[40];
    std::snprintf(lvl, sizeof lvl, "%.9g", r.level);
    os << lvl << "," << csv_field(r.report.mean.trans_dir_deg) << ","
       << csv_field(r.report.mean.rot_axis_deg) << "," << csv_field(r.report.mean.rot_angle_abs_deg)
       << "," << csv_field(r.report.mean.rot_angle_rel) << "\n";
  }
  return os.str();
}

}  // namespace egomotion
