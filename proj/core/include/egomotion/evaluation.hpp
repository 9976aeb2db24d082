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

#ifndef EGOMOTION_EVALUATION_HPP_
#define EGOMOTION_EVALUATION_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "egomotion/estimator.hpp"
#include "egomotion/geometry.hpp"
#include "egomotion/imaging.hpp"

namespace egomotion {

enum class MotionType { kPlain, kPureTranslation, kPureRotation };

/// "plain", "pure_translation", "pure_rotation".
std::string to_string(MotionType t);
/// Throws ConfigError on an unknown name.
MotionType motion_type_from_string(const std::string& name);

/// Uniform draw in the nominal ranges, with the translation or rotation part
/// zeroed for the pure motion types.
MotionParams random_params(std::uint64_t seed, MotionType type);

/// Deterministic multi-octave texture in [16, 240] used as the synthetic base.
ImageBuffer textured_image(int width, int height, std::uint64_t seed);

inline constexpr const char* kGeneratorVersion = "egomotion-synth/1";

struct SequenceManifest {
  std::vector<std::string> frames;  ///< relative to `root`
  Intrinsics intrinsics;
  std::vector<MotionParams> truth;  ///< truth[k] takes frame k to frame k+1
  std::uint64_t seed = 0;
  MotionType motion_type = MotionType::kPlain;
  std::string generator = kGeneratorVersion;
  std::filesystem::path root;  ///< directory of the manifest; not serialized

  /// Throws ConfigError when truth.size() != frames.size() - 1.
  void validate() const;
};

struct SequenceOptions {
  /// Output frame size; 0 keeps the base size. Frames are center crops.
  int width = 0;
  int height = 0;
  /// Replaces the random draws when set (must hold n_frames - 1 entries).
  std::optional<std::vector<MotionParams>> motions;
};

struct GeneratedSequence {
  std::vector<ImageBuffer> frames;
  std::vector<ValidityMask> masks;  ///< content validity of each frame
  SequenceManifest manifest;        ///< frame names set, root empty
  std::vector<std::string> warnings;
};

/// Frame 0 is the base; frame k+1 is frame k deformed by psi_map(truth[k]) so
/// that frame_{k+1}(psi(x)) = frame_k(x). `intr` describes the base image.
GeneratedSequence generate_sequence(const ImageBuffer& base, int n_frames, MotionType type,
                                    std::uint64_t seed, const Intrinsics& intr,
                                    const SequenceOptions& options = {});

/// Writes frame_NNN.pgm files and manifest.json into `dir` (created).
/// Returns the manifest with `root` set.
SequenceManifest write_sequence(const GeneratedSequence& seq, const std::filesystem::path& dir);
/// Throws IoError for missing files.
SequenceManifest load_manifest(const std::filesystem::path& path);
std::vector<ImageBuffer> load_frames(const SequenceManifest& manifest);

/// f and g rendered from a base with one interpolation pass each.
struct FramePair {
  ImageBuffer f;
  ImageBuffer g;
  ValidityMask g_mask;
};

/// f is the base resampled on the output grid; g satisfies g(psi(x)) = f(x).
FramePair render_pair(const ImageBuffer& base, const Intrinsics& base_intr, const MotionParams& p,
                      int width, int height, const Intrinsics& out_intr);

/// Degrees; empty when either vector is shorter than 1e-12.
std::optional<double> translation_direction_error(const Vec3& t_est, const Vec3& t_true);

struct RotationErrors {
  std::optional<double> axis_deg;
  std::optional<double> angle_abs_deg;
  std::optional<double> angle_rel;
};

RotationErrors rotation_errors(const Rotation3& r_est, const Rotation3& r_true);

struct PairErrors {
  std::optional<double> trans_dir_deg;
  std::optional<double> rot_axis_deg;
  std::optional<double> rot_angle_abs_deg;
  std::optional<double> rot_angle_rel;
  std::optional<std::string> failure;  ///< estimator error for this pair
};

PairErrors pair_errors(const MotionParams& estimate, const MotionParams& truth);

struct ErrorReport {
  MotionType motion_type = MotionType::kPlain;
  std::vector<PairErrors> pairs;
  PairErrors mean;  ///< averages over present entries

  /// Table layout with one row for this motion type; "-" marks absent cells.
  std::string table() const;
};

/// Averages of each metric over the pairs where it is present.
PairErrors average(const std::vector<PairErrors>& pairs);

/// Throws ConfigError when the counts differ.
ErrorReport evaluate_sequence(const SequenceManifest& manifest,
                              const std::vector<MotionParams>& estimates);
ErrorReport evaluate_pairs(MotionType type, const std::vector<MotionParams>& truth,
                           const std::vector<std::optional<MotionParams>>& estimates,
                           const std::vector<std::optional<std::string>>& failures = {});

/// Table with one row per report.
std::string render_table(const std::vector<ErrorReport>& reports);

/// Estimates every adjacent pair; failures are recorded, not thrown.
struct SequenceEstimates {
  std::vector<std::optional<MotionParams>> params;
  std::vector<std::optional<std::string>> failures;
};
SequenceEstimates estimate_sequence(const std::vector<ImageBuffer>& frames, const Intrinsics& intr,
                                    const EstimatorConfig& config = {});

enum class NoiseKind { kImpulse, kGaussian };
std::string to_string(NoiseKind k);
NoiseKind noise_kind_from_string(const std::string& name);

struct SweepRow {
  double level = 0.0;
  ErrorReport report;
};

/// Re-estimates every pair with both frames independently corrupted at each
/// level (percent for impulse, sigma for gaussian). Level 0 leaves frames
/// untouched. Per-frame seeds are derive_seed(seed, {level_index, pair, which}).
std::vector<SweepRow> noise_sweep(const SequenceManifest& manifest,
                                  const std::vector<ImageBuffer>& frames, NoiseKind kind,
                                  const std::vector<double>& levels, std::uint64_t seed,
                                  const EstimatorConfig& config = {});

inline constexpr const char* kSweepCsvHeader =
    "level,trans_dir_err,rot_axis_err,rot_angle_abs,rot_angle_rel";

/// CSV with kSweepCsvHeader; absent means are empty fields.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace egomotion

#endif  // EGOMOTION_EVALUATION_HPP_
