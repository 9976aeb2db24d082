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

#ifndef EGOMOTION_SERIALIZATION_HPP_
#define EGOMOTION_SERIALIZATION_HPP_

#include <filesystem>
#include <nlohmann/json.hpp>

#include "egomotion/estimator.hpp"
#include "egomotion/evaluation.hpp"
#include "egomotion/flowmodel.hpp"
#include "egomotion/geometry.hpp"
#include "egomotion/imaging.hpp"
#include "egomotion/pipeline.hpp"

namespace egomotion {

using json = nlohmann::json;

// Readers throw ConfigError on missing, mistyped or unknown keys.

/// {"theta", "alpha", "beta", "A", "B", "C"}
void to_json(json& j, const MotionParams& p);
void from_json(const json& j, MotionParams& p);

/// {"focal_px", "cx", "cy"}
void to_json(json& j, const Intrinsics& in);
void from_json(const json& j, Intrinsics& in);

/// {"c1", "c2", "a1", "a2", "q1", "q2", "xi"}
void to_json(json& j, const QuadraticFlowCoeffs& c);
void from_json(const json& j, QuadraticFlowCoeffs& c);

/// {"kind": "mad_scaled", "c": ...} or {"kind": "fixed", "gamma": ...}
void to_json(json& j, const GammaPolicy& g);
void from_json(const json& j, GammaPolicy& g);

/// Every key optional; absent keys keep their defaults.
void to_json(json& j, const EstimatorConfig& c);
void from_json(const json& j, EstimatorConfig& c);

void to_json(json& j, const LevelStats& s);
/// Motion parameters plus "xi" and a "diagnostics" object.
void to_json(json& j, const EstimateResult& r);

void to_json(json& j, const SequenceManifest& m);
void from_json(const json& j, SequenceManifest& m);

/// {"reference": k, "motions": [...]}; a bare array reads as reference 0.
void to_json(json& j, const ChainEstimate& c);
void from_json(const json& j, ChainEstimate& c);

void to_json(json& j, const HypothesisReport& r);
void to_json(json& j, const SubstitutionReport& r);
void to_json(json& j, const PairErrors& e);
void to_json(json& j, const ErrorReport& r);

/// {"check": "quadratic_bound", "pass", "measured", "bound", "grid",
///  "components": {"u": {...}, "v": {...}}}; measured/bound come from the
/// component closest to its bound.
json bound_report_json(const BoundReport& r, double L);

/// Throws IoError when unreadable, ConfigError when not valid JSON.
json read_json_file(const std::filesystem::path& path);

}  // namespace egomotion

#endif  // EGOMOTION_SERIALIZATION_HPP_
