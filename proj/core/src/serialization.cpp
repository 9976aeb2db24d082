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

#include "egomotion/serialization.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "egomotion/errors.hpp"

namespace egomotion {

namespace {

void require_object(const json& j, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + ": expected a JSON object");
}

void reject_unknown(const json& j, const char* what, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw ConfigError(std::string(what) + ": unknown key '" + k + "'");
  }
}

double get_number(const json& j, const char* what, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string(what) + ": missing key '" + key + "'");
  if (!it->is_number()) throw ConfigError(std::string(what) + ": '" + key + "' must be a number");
  return it->get<double>();
}

template <typename T>
void get_optional(const json& j, const char* what, const char* key, T& out) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  if constexpr (std::is_same_v<T, bool>) {
    if (!it->is_boolean()) throw ConfigError(std::string(what) + ": '" + key + "' must be a boolean");
  } else if constexpr (std::is_integral_v<T>) {
    if (!it->is_number_integer()) {
      throw ConfigError(std::string(what) + ": '" + key + "' must be an integer");
    }
  } else {
    if (!it->is_number()) throw ConfigError(std::string(what) + ": '" + key + "' must be a number");
  }
  out = it->get<T>();
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

void to_json(json& j, const MotionParams& p) {
  j = json{{"theta", p.theta}, {"alpha", p.alpha}, {"beta", p.beta},
           {"A", p.A},         {"B", p.B},         {"C", p.C}};
}

void from_json(const json& j, MotionParams& p) {
  constexpr const char* w = "motion parameters";
  require_object(j, w);
  p.theta = get_number(j, w, "theta");
  p.alpha = get_number(j, w, "alpha");
  p.beta = get_number(j, w, "beta");
  p.A = get_number(j, w, "A");
  p.B = get_number(j, w, "B");
  p.C = get_number(j, w, "C");
}

void to_json(json& j, const Intrinsics& in) {
  j = json{{"focal_px", in.focal_px}, {"cx", in.cx}, {"cy", in.cy}};
}

void from_json(const json& j, Intrinsics& in) {
  constexpr const char* w = "intrinsics";
  require_object(j, w);
  reject_unknown(j, w, {"focal_px", "cx", "cy"});
  in.focal_px = get_number(j, w, "focal_px");
  in.cx = get_number(j, w, "cx");
  in.cy = get_number(j, w, "cy");
  if (!(in.focal_px > 0.0)) throw ConfigError("intrinsics: focal_px must be positive");
}

void to_json(json& j, const QuadraticFlowCoeffs& c) {
  j = json{{"c1", c.c1}, {"c2", c.c2}, {"a1", c.a1}, {"a2", c.a2},
           {"q1", c.q1}, {"q2", c.q2}, {"xi", c.xi}};
}

void from_json(const json& j, QuadraticFlowCoeffs& c) {
  constexpr const char* w = "flow coefficients";
  require_object(j, w);
  c.c1 = get_number(j, w, "c1");
  c.c2 = get_number(j, w, "c2");
  c.a1 = get_number(j, w, "a1");
  c.a2 = get_number(j, w, "a2");
  c.q1 = get_number(j, w, "q1");
  c.q2 = get_number(j, w, "q2");
  c.xi = 0.0;
  get_optional(j, w, "xi", c.xi);
}

void to_json(json& j, const GammaPolicy& g) {
  if (g.kind == GammaPolicy::Kind::kFixed) {
    j = json{{"kind", "fixed"}, {"gamma", g.value}};
  } else {
    j = json{{"kind", "mad_scaled"}, {"c", g.value}};
  }
}

void from_json(const json& j, GammaPolicy& g) {
  constexpr const char* w = "gamma_policy";
  require_object(j, w);
  const auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) throw ConfigError("gamma_policy: missing 'kind'");
  if (*kind == "fixed") {
    reject_unknown(j, w, {"kind", "gamma"});
    g = GammaPolicy::fixed(get_number(j, w, "gamma"));
  } else if (*kind == "mad_scaled") {
    reject_unknown(j, w, {"kind", "c"});
    g = GammaPolicy::mad_scaled();
    get_optional(j, w, "c", g.value);
  } else {
    throw ConfigError("gamma_policy: unknown kind '" + kind->get<std::string>() + "'");
  }
}

void to_json(json& j, const EstimatorConfig& c) {
  j = json{{"min_pyramid_dim", c.min_pyramid_dim},
           {"max_iters_per_level", c.max_iters_per_level},
           {"step_tolerance", c.step_tolerance},
           {"gamma_policy", c.gamma_policy},
           {"estimate_xi", c.estimate_xi}};
}

void from_json(const json& j, EstimatorConfig& c) {
  constexpr const char* w = "estimator config";
  require_object(j, w);
  reject_unknown(j, w,
                 {"min_pyramid_dim", "max_iters_per_level", "step_tolerance", "gamma_policy",
                  "estimate_xi"});
  get_optional(j, w, "min_pyramid_dim", c.min_pyramid_dim);
  get_optional(j, w, "max_iters_per_level", c.max_iters_per_level);
  get_optional(j, w, "step_tolerance", c.step_tolerance);
  get_optional(j, w, "estimate_xi", c.estimate_xi);
  if (const auto it = j.find("gamma_policy"); it != j.end()) c.gamma_policy = it->get<GammaPolicy>();
  c.validate();
}

void to_json(json& j, const LevelStats& s) {
  j = json{{"width", s.width},     {"height", s.height},
           {"iterations", s.iterations}, {"converged", s.converged},
           {"gamma", s.gamma},     {"support_fraction", s.support_fraction},
           {"objective", s.objective}};
}

void to_json(json& j, const EstimateResult& r) {
  j = json(r.params);
  j["xi"] = r.xi;
  j["diagnostics"] = json{{"coeffs", r.coeffs},
                          {"support_fraction", r.support_fraction},
                          {"iterations", r.iterations},
                          {"final_residual_scale", r.final_residual_scale},
                          {"in_nominal_range", r.params.in_nominal_range()},
                          {"levels", r.levels}};
}

void to_json(json& j, const SequenceManifest& m) {
  j = json{{"generator", m.generator},
           {"seed", m.seed},
           {"motion_type", to_string(m.motion_type)},
           {"intrinsics", m.intrinsics},
           {"frames", m.frames},
           {"truth", m.truth}};
}

void from_json(const json& j, SequenceManifest& m) {
  constexpr const char* w = "manifest";
  require_object(j, w);
  reject_unknown(j, w, {"generator", "seed", "motion_type", "intrinsics", "frames", "truth"});
  try {
    m.generator = j.at("generator").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.motion_type = motion_type_from_string(j.at("motion_type").get<std::string>());
    m.intrinsics = j.at("intrinsics").get<Intrinsics>();
    m.frames = j.at("frames").get<std::vector<std::string>>();
    m.truth = j.at("truth").get<std::vector<MotionParams>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("manifest: ") + e.what());
  }
}

void to_json(json& j, const ChainEstimate& c) {
  j = json{{"reference", c.reference}, {"motions", c.motions}};
}

void from_json(const json& j, ChainEstimate& c) {
  try {
    if (j.is_array()) {
      c.reference = 0;
      c.motions = j.get<std::vector<MotionParams>>();
    } else {
      require_object(j, "chain");
      reject_unknown(j, "chain", {"reference", "motions"});
      c.reference = j.at("reference").get<int>();
      c.motions = j.at("motions").get<std::vector<MotionParams>>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("chain: ") + e.what());
  }
  c.validate();
}

void to_json(json& j, const HypothesisReport& r) {
  j = json{{"check", "hypotheses"},
           {"pass", r.pass()},
           {"hyp1", {{"pass", r.hyp1_pass}, {"measured", r.hyp1_margin}, {"limit", r.hyp1_limit}}},
           {"hyp2", {{"pass", r.hyp2_pass}, {"measured", r.hyp2_margin}, {"limit", r.hyp2_limit}}}};
}

void to_json(json& j, const SubstitutionReport& r) {
  j = json{{"check", "depth_substitution"},
           {"pass", r.pass},
           {"measured", r.max_error},
           {"bound", r.epsilon},
           {"z0", r.z0},
           {"cond1", r.cond1},
           {"hypotheses", r.hypotheses}};
}

void to_json(json& j, const PairErrors& e) {
  j = json{{"trans_dir_err", optional_number(e.trans_dir_deg)},
           {"rot_axis_err", optional_number(e.rot_axis_deg)},
           {"rot_angle_abs", optional_number(e.rot_angle_abs_deg)},
           {"rot_angle_rel", optional_number(e.rot_angle_rel)}};
  if (e.failure) j["failure"] = *e.failure;
}

void to_json(json& j, const ErrorReport& r) {
  j = json{{"motion_type", to_string(r.motion_type)}, {"mean", r.mean}, {"pairs", r.pairs}};
}

json bound_report_json(const BoundReport& r, double L) {
  const double ru = r.bound_u > 0.0 ? r.max_du / r.bound_u : 0.0;
  const double rv = r.bound_v > 0.0 ? r.max_dv / r.bound_v : 0.0;
  const bool use_u = ru >= rv;
  return json{{"check", "quadratic_bound"},
              {"pass", r.pass},
              {"measured", use_u ? r.max_du : r.max_dv},
              {"bound", use_u ? r.bound_u : r.bound_v},
              {"grid", r.grid},
              {"L", L},
              {"components",
               {{"u", {{"measured", r.max_du}, {"bound", r.bound_u}}},
                {"v", {{"measured", r.max_dv}, {"bound", r.bound_v}}}}}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

}  // namespace egomotion
