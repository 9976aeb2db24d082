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

#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "egomotion/errors.hpp"
#include "egomotion/estimator.hpp"
#include "egomotion/evaluation.hpp"
#include "egomotion/flowmodel.hpp"
#include "egomotion/pipeline.hpp"
#include "egomotion/random.hpp"
#include "egomotion/serialization.hpp"

namespace egomotion::cli {

namespace {

// Translation above which mosaics are flagged as approximate.
constexpr double kMosaicTranslationCaveat = 1e-2;

struct ParamFlags {
  MotionParams p;

  void add(CLI::App* app) {
    app->add_option("--theta", p.theta, "tilt-axis azimuth (rad)");
    app->add_option("--alpha", p.alpha, "tilt angle (rad)");
    app->add_option("--beta", p.beta, "in-plane rotation (rad)");
    app->add_option("--A", p.A, "translation parameter A (focal units)");
    app->add_option("--B", p.B, "translation parameter B (focal units)");
    app->add_option("--C", p.C, "translation parameter C (focal units)");
  }
};

struct IntrinsicsFlags {
  std::string file;
  double view_angle = 90.0;

  void add(CLI::App* app) {
    app->add_option("--intrinsics", file, "intrinsics JSON {focal_px, cx, cy}");
    app->add_option("--view-angle", view_angle,
                    "horizontal view angle in degrees when no intrinsics file is given");
  }

  Intrinsics resolve(int w, int h) const {
    if (!file.empty()) return read_json_file(file).get<Intrinsics>();
    return Intrinsics::for_view_angle(w, h, view_angle);
  }
};

struct ConfigFlags {
  std::string file;
  std::optional<int> min_pyramid_dim;
  std::optional<int> max_iters;
  std::optional<double> step_tolerance;
  std::optional<std::string> gamma_kind;
  std::optional<double> gamma_value;
  bool no_xi = false;

  void add(CLI::App* app) {
    app->add_option("--config", file, "estimator config JSON");
    app->add_option("--min-pyramid-dim", min_pyramid_dim, "smallest pyramid level side");
    app->add_option("--max-iters", max_iters, "iteration cap per pyramid level");
    app->add_option("--step-tolerance", step_tolerance, "flow-step stop threshold (focal units)");
    app->add_option("--gamma-kind", gamma_kind, "mad_scaled or fixed")
        ->check(CLI::IsMember({"mad_scaled", "fixed"}));
    app->add_option("--gamma-value", gamma_value, "MAD multiplier or fixed threshold");
    app->add_flag("--no-xi", no_xi, "do not estimate the intensity shift");
  }

  EstimatorConfig resolve() const {
    EstimatorConfig c;
    if (!file.empty()) c = read_json_file(file).get<EstimatorConfig>();
    if (min_pyramid_dim) c.min_pyramid_dim = *min_pyramid_dim;
    if (max_iters) c.max_iters_per_level = *max_iters;
    if (step_tolerance) c.step_tolerance = *step_tolerance;
    if (gamma_kind) {
      c.gamma_policy = *gamma_kind == "fixed" ? GammaPolicy::fixed(c.gamma_policy.value)
                                              : GammaPolicy::mad_scaled(c.gamma_policy.value);
    }
    if (gamma_value) c.gamma_policy.value = *gamma_value;
    if (no_xi) c.estimate_xi = false;
    c.validate();
    return c;
  }
};

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << text;
  if (!f) throw IoError("write failed for '" + path + "'");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("'" + item + "' is not a number");
    }
  }
  return v;
}

struct FrameSource {
  std::string manifest;
  std::vector<std::string> frames;

  void add(CLI::App* app) {
    auto* m = app->add_option("--manifest", manifest, "sequence manifest JSON");
    auto* f = app->add_option("--frames", frames, "frame images in order");
    m->excludes(f);
  }

  std::vector<ImageBuffer> load(std::optional<Intrinsics>& manifest_intr) const {
    if (!manifest.empty()) {
      const SequenceManifest m = load_manifest(manifest);
      manifest_intr = m.intrinsics;
      return load_frames(m);
    }
    if (frames.empty()) throw ConfigError("give --manifest or --frames");
    std::vector<ImageBuffer> out;
    for (const std::string& f : frames) out.push_back(load_image(f));
    return out;
  }
};

// Estimates file: chain object, bare array, or `estimate --manifest` output.
// Null entries stand for failed pairs.
std::vector<std::optional<MotionParams>> read_estimates(const std::string& path) {
  const json j = read_json_file(path);
  const json* motions = &j;
  if (j.is_object()) {
    const auto it = j.find("motions");
    if (it == j.end()) throw ConfigError("estimates file has no 'motions' array");
    motions = &*it;
  }
  if (!motions->is_array()) throw ConfigError("estimates must be an array of motion objects");
  std::vector<std::optional<MotionParams>> out;
  for (const json& m : *motions) {
    if (m.is_null()) {
      out.push_back(std::nullopt);
    } else {
      out.push_back(m.get<MotionParams>());
    }
  }
  return out;
}

ChainEstimate read_chain(const std::string& path) {
  json j = read_json_file(path);
  if (j.is_object()) j.erase("pairs");
  return j.get<ChainEstimate>();
}

DepthField random_depth_field(const SampleGrid& grid, double z_inf, double z_sup,
                              std::uint64_t seed) {
  if (!(z_inf > 0.0 && z_sup >= z_inf)) throw DomainError("depth bounds need 0 < zinf <= zsup");
  DepthField d = DepthField::constant(grid, z_inf);
  Rng rng(seed);
  for (double& z : d.z) z = rng.uniform(z_inf, z_sup);
  return d;
}

// --- subcommands ------------------------------------------------------------

struct SynthCmd {
  int frames = 5;
  std::uint64_t seed = 0;
  std::string motion = "plain";
  std::string base;
  std::uint64_t texture_seed = 1;
  int width = 256;
  int height = 256;
  int base_size = 512;
  double view_angle = 90.0;
  std::string out_dir = "sequence";

  void add(CLI::App* app) {
    app->add_option("--frames", frames, "number of frames (>= 2)");
    app->add_option("--seed", seed, "motion seed");
    app->add_option("--motion", motion, "plain, pure_translation or pure_rotation")
        ->check(CLI::IsMember({"plain", "pure_translation", "pure_rotation"}));
    app->add_option("--base", base, "base image (PGM); default is a generated texture");
    app->add_option("--texture-seed", texture_seed, "seed of the generated texture");
    app->add_option("--base-size", base_size, "side of the generated texture");
    app->add_option("--width", width, "output frame width");
    app->add_option("--height", height, "output frame height");
    app->add_option("--view-angle", view_angle, "view angle of the output frames (degrees)");
    app->add_option("--out", out_dir, "output directory");
  }

  int run(std::ostream& out, std::ostream& err) const {
    const ImageBuffer img =
        base.empty() ? textured_image(base_size, base_size, texture_seed) : load_image(base);
    const Intrinsics frame_intr = Intrinsics::for_view_angle(width, height, view_angle);
    const Intrinsics base_intr{frame_intr.focal_px, (img.width() - 1) / 2.0,
                               (img.height() - 1) / 2.0};
    SequenceOptions opts;
    opts.width = width;
    opts.height = height;
    const GeneratedSequence seq = generate_sequence(img, frames, motion_type_from_string(motion),
                                                    seed, base_intr, opts);
    for (const std::string& w : seq.warnings) err << "warning: " << w << "\n";
    const SequenceManifest m = write_sequence(seq, out_dir);
    out << json{{"manifest", (m.root / "manifest.json").string()},
                {"frames", m.frames.size()},
                {"warnings", seq.warnings}}
               .dump(2)
        << "\n";
    return 0;
  }
};

struct EstimateCmd {
  std::vector<std::string> pair;
  std::string manifest;
  IntrinsicsFlags intr;
  ConfigFlags config;
  std::string out_path;

  void add(CLI::App* app) {
    auto* p = app->add_option("--pair", pair, "two frames f g")->expected(2);
    auto* m = app->add_option("--manifest", manifest, "estimate every pair of a sequence");
    p->excludes(m);
    intr.add(app);
    config.add(app);
    app->add_option("--out", out_path, "output JSON (default stdout)");
  }

  int run(std::ostream& out, std::ostream& err) const {
    const EstimatorConfig cfg = config.resolve();
    if (!pair.empty()) {
      const ImageBuffer f = load_image(pair[0]);
      const ImageBuffer g = load_image(pair[1]);
      const EstimateResult r = estimate_motion(f, g, intr.resolve(f.width(), f.height()), cfg);
      if (r.support_fraction < 0.5) {
        err << "warning: support fraction " << r.support_fraction << " is below 0.5\n";
      }
      write_text(out_path, json(r).dump(2) + "\n", out);
      return 0;
    }
    if (manifest.empty()) throw ConfigError("give --pair f g or --manifest m.json");
    const SequenceManifest m = load_manifest(manifest);
    const std::vector<ImageBuffer> frames = load_frames(m);
    json motions = json::array(), pairs = json::array();
    int failed = 0;
    for (std::size_t k = 0; k + 1 < frames.size(); ++k) {
      try {
        const EstimateResult r = estimate_motion(frames[k], frames[k + 1], m.intrinsics, cfg);
        motions.push_back(r.params);
        pairs.push_back(r);
      } catch (const Error& e) {
        ++failed;
        motions.push_back(nullptr);
        pairs.push_back({{"error", {{"kind", e.kind()}, {"message", e.what()}}}});
        err << "warning: pair " << k << ": " << e.kind() << ": " << e.what() << "\n";
      }
    }
    const json doc{{"reference", 0}, {"motions", motions}, {"pairs", pairs}};
    write_text(out_path, doc.dump(2) + "\n", out);
    return failed == 0 ? 0 : 1;
  }
};

struct EvalCmd {
  std::string manifest;
  std::string estimates;
  std::string json_out;

  void add(CLI::App* app) {
    app->add_option("--manifest", manifest, "sequence manifest JSON")->required();
    app->add_option("--estimates", estimates, "estimates JSON (chain file or estimate output)")
        ->required();
    app->add_option("--json-out", json_out, "also write the report as JSON");
  }

  int run(std::ostream& out, std::ostream&) const {
    const SequenceManifest m = load_manifest(manifest);
    const ErrorReport rep = evaluate_pairs(m.motion_type, m.truth, read_estimates(estimates));
    out << rep.table();
    if (!json_out.empty()) write_text(json_out, json(rep).dump(2) + "\n", out);
    return 0;
  }
};

struct NoiseCmd {
  std::string kind = "impulse";
  std::uint64_t seed = 0;
  std::string in, out_path;
  double level = 0.0;
  std::string manifest;
  std::string levels;
  ConfigFlags config;

  void add(CLI::App* app) {
    app->add_option("--kind", kind, "impulse (level in percent) or gaussian (sigma)")
        ->check(CLI::IsMember({"impulse", "gaussian"}));
    app->add_option("--seed", seed, "noise seed");
    app->add_option("--in", in, "image to corrupt");
    app->add_option("--level", level, "noise level for --in");
    app->add_option("--out", out_path, "corrupted image, or CSV for a sweep (default stdout)");
    app->add_option("--manifest", manifest, "run a sweep over this sequence");
    app->add_option("--levels", levels, "comma-separated sweep levels");
    config.add(app);
  }

  int run(std::ostream& out, std::ostream&) const {
    const NoiseKind k = noise_kind_from_string(kind);
    if (!manifest.empty()) {
      if (levels.empty()) throw ConfigError("a sweep needs --levels");
      const SequenceManifest m = load_manifest(manifest);
      const std::vector<SweepRow> rows =
          noise_sweep(m, load_frames(m), k, parse_list(levels), seed, config.resolve());
      write_text(out_path, sweep_csv(rows), out);
      return 0;
    }
    if (in.empty() || out_path.empty()) throw ConfigError("give --in and --out, or --manifest");
    const ImageBuffer img = load_image(in);
    save_image(out_path, k == NoiseKind::kImpulse ? add_impulse_noise(img, level, seed)
                                                  : add_gaussian_noise(img, level, seed));
    return 0;
  }
};

struct VerifyBoundsCmd {
  ParamFlags params;
  double L = 1.0;
  int grid = kDefaultGrid;

  void add(CLI::App* app) {
    params.add(app);
    app->add_option("--L", L, "domain side (focal units)");
    app->add_option("--grid", grid, "grid nodes per side");
  }

  int run(std::ostream& out, std::ostream&) const {
    out << bound_report_json(verify_quadratic_bound(params.p, L, grid), L).dump(2) << "\n";
    return 0;
  }
};

struct VerifyDepthCmd {
  ParamFlags params;
  double L = 1.0;
  int grid = kDefaultGrid;
  double z_inf = 4.0, z_sup = 6.0;
  std::uint64_t depth_seed = 0;
  double epsilon = kDefaultEpsilon;

  void add(CLI::App* app) {
    params.add(app);
    app->add_option("--L", L, "domain side (focal units)");
    app->add_option("--grid", grid, "grid nodes per side");
    app->add_option("--zinf", z_inf, "smallest depth");
    app->add_option("--zsup", z_sup, "largest depth");
    app->add_option("--depth-seed", depth_seed, "seed of the random depth field");
    app->add_option("--epsilon", epsilon, "allowed point error");
  }

  int run(std::ostream& out, std::ostream&) const {
    const DepthField d = random_depth_field({L, grid}, z_inf, z_sup, depth_seed);
    const SubstitutionReport r =
        verify_depth_substitution(displacement_from_params(params.p), d, epsilon);
    out << json(r).dump(2) << "\n";
    return 0;
  }
};

struct VerifyHypothesesCmd {
  ParamFlags params;
  double L = 1.0;
  int grid = kDefaultGrid;
  double depth = 1.0;

  void add(CLI::App* app) {
    params.add(app);
    app->add_option("--L", L, "domain side (focal units)");
    app->add_option("--grid", grid, "grid nodes per side");
    app->add_option("--depth", depth, "constant scene depth (focal units)");
  }

  int run(std::ostream& out, std::ostream&) const {
    const HypothesisReport r = check_hypotheses(displacement_from_params(params.p),
                                                DepthField::constant({L, grid}, depth));
    out << json(r).dump(2) << "\n";
    return 0;
  }
};

struct MosaicCmd {
  FrameSource source;
  IntrinsicsFlags intr;
  std::string chain;
  std::optional<int> reference;
  int margin = 64;
  std::string out_path = "mosaic.pgm";

  void add(CLI::App* app) {
    source.add(app);
    intr.add(app);
    app->add_option("--chain", chain, "chain JSON")->required();
    app->add_option("--reference", reference, "override the chain's reference frame");
    app->add_option("--margin", margin, "canvas margin in pixels");
    app->add_option("--out", out_path, "output image");
  }

  int run(std::ostream& out, std::ostream& err) const {
    std::optional<Intrinsics> mi;
    const std::vector<ImageBuffer> frames = source.load(mi);
    ChainEstimate c = read_chain(chain);
    if (reference) c.reference = *reference;
    const Intrinsics in = mi ? *mi : intr.resolve(frames[0].width(), frames[0].height());
    const double t = chain_translation_magnitude(c);
    if (t > kMosaicTranslationCaveat) {
      err << "warning: chain translation reaches " << t
          << " focal units; the mosaic is exact only for pure rotation or a planar scene\n";
    }
    const MosaicResult r = build_mosaic(frames, c, in, margin);
    for (const std::string& w : r.warnings) err << "warning: " << w << "\n";
    save_image(out_path, r.canvas);
    out << json{{"mosaic", out_path},
                {"width", r.canvas.width()},
                {"height", r.canvas.height()},
                {"coverage", r.coverage.fraction()}}
               .dump(2)
        << "\n";
    return 0;
  }
};

struct AugmentCmd {
  FrameSource source;
  IntrinsicsFlags intr;
  std::string chain;
  std::string poster;
  std::vector<double> rect;
  std::vector<double> quad;
  std::string out_dir = "augmented";

  void add(CLI::App* app) {
    source.add(app);
    intr.add(app);
    app->add_option("--chain", chain, "chain JSON")->required();
    app->add_option("--poster", poster, "poster image (PGM)")->required();
    auto* r = app->add_option("--rect", rect, "x0 y0 x1 y1 in frame-0 pixels")->expected(4);
    auto* q = app->add_option("--quad", quad, "four corners x y (TL TR BR BL)")->expected(8);
    r->excludes(q);
    app->add_option("--out", out_dir, "output directory");
  }

  int run(std::ostream& out, std::ostream&) const {
    std::optional<Intrinsics> mi;
    const std::vector<ImageBuffer> frames = source.load(mi);
    const ChainEstimate c = read_chain(chain);
    const Intrinsics in = mi ? *mi : intr.resolve(frames[0].width(), frames[0].height());
    PlacementRect place;
    if (rect.size() == 4) {
      place = PlacementRect::axis_aligned(rect[0], rect[1], rect[2], rect[3]);
    } else if (quad.size() == 8) {
      for (int i = 0; i < 4; ++i) place.corners[i] = Vec2(quad[2 * i], quad[2 * i + 1]);
    } else {
      throw ConfigError("give --rect or --quad");
    }
    const AugmentResult r = augment_sequence(frames, c, in, load_image(poster), place);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create '" + out_dir + "': " + ec.message());
    json names = json::array();
    for (std::size_t k = 0; k < r.frames.size(); ++k) {
      char name[32];
      std::snprintf(name, sizeof name, "frame_%03zu.pgm", k);
      save_image(std::filesystem::path(out_dir) / name, r.frames[k]);
      names.push_back(name);
    }
    out << json{{"directory", out_dir}, {"frames", names}}.dump(2) << "\n";
    return 0;
  }
};

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Camera egomotion estimation from a quadratic flow model", "egomotion"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  SynthCmd synth;
  EstimateCmd estimate;
  EvalCmd eval;
  NoiseCmd noise;
  VerifyBoundsCmd vbounds;
  VerifyDepthCmd vdepth;
  VerifyHypothesesCmd vhyp;
  MosaicCmd mosaic;
  AugmentCmd augment;

  auto* s_synth = app.add_subcommand("synth", "generate a synthetic sequence");
  synth.add(s_synth);
  auto* s_est = app.add_subcommand("estimate", "estimate motion for a pair or a sequence");
  estimate.add(s_est);
  auto* s_eval = app.add_subcommand("eval", "compare estimates with a manifest's truth");
  eval.add(s_eval);
  auto* s_noise = app.add_subcommand("noise", "inject noise or run a noise sweep");
  noise.add(s_noise);
  auto* s_verify = app.add_subcommand("verify", "numerical checks of the flow model");
  s_verify->require_subcommand(1);
  auto* s_vb = s_verify->add_subcommand("bounds", "quadratic approximation error vs bound");
  vbounds.add(s_vb);
  auto* s_vd = s_verify->add_subcommand("depth", "constant-depth substitution error");
  vdepth.add(s_vd);
  auto* s_vh = s_verify->add_subcommand("hypotheses", "small-motion hypotheses");
  vhyp.add(s_vh);
  auto* s_mosaic = app.add_subcommand("mosaic", "register frames onto a reference canvas");
  mosaic.add(s_mosaic);
  auto* s_aug = app.add_subcommand("augment", "insert a planar poster into a sequence");
  augment.add(s_aug);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (s_synth->parsed()) return synth.run(out, err);
    if (s_est->parsed()) return estimate.run(out, err);
    if (s_eval->parsed()) return eval.run(out, err);
    if (s_noise->parsed()) return noise.run(out, err);
    if (s_vb->parsed()) return vbounds.run(out, err);
    if (s_vd->parsed()) return vdepth.run(out, err);
    if (s_vh->parsed()) return vhyp.run(out, err);
    if (s_mosaic->parsed()) return mosaic.run(out, err);
    if (s_aug->parsed()) return augment.run(out, err);
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace egomotion::cli
