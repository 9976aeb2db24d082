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

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "egomotion/serialization.hpp"
#include "test_support.hpp"

namespace egomotion {
namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "egomotion");
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::cli_main(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Cli, EstimateIdenticalPair) {
  const auto dir = testing::scratch_dir("cli_pair");
  const ImageBuffer img = crop(textured_image(256, 256, 3), 0, 0, 128, 128);
  save_image(dir / "a.pgm", img);
  std::ofstream(dir / "intr.json") << R"({"focal_px": 64, "cx": 63.5, "cy": 63.5})";
  const CliRun r = invoke({"estimate", "--pair", (dir / "a.pgm").string(), (dir / "a.pgm").string(),
                     "--intrinsics", (dir / "intr.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  for (const char* k : {"alpha", "beta", "A", "B", "C"}) EXPECT_LT(std::abs(j.at(k).get<double>()), 1e-6);
  EXPECT_TRUE(j.contains("diagnostics"));
}

TEST(Cli, VerifyBounds) {
  const CliRun r = invoke({"verify", "bounds", "--L", "1", "--A", "0.09", "--B", "0.09", "--C", "0.03"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j.at("bound").get<double>(), 4.2e-3, 1e-4);
  EXPECT_TRUE(j.at("pass").get<bool>());
}

TEST(Cli, VerifyDepthAndHypotheses) {
  const CliRun d = invoke({"verify", "depth", "--A", "0.03", "--B", "0.02", "--C", "0.01"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(json::parse(d.out).at("check"), "depth_substitution");
  const CliRun h = invoke({"verify", "hypotheses", "--alpha", "0.02", "--A", "0.05"});
  ASSERT_EQ(h.code, 0) << h.err;
  EXPECT_TRUE(json::parse(h.out).at("pass").get<bool>());
}

TEST(Cli, SynthIsDeterministicAndEvaluates) {
  const auto dir = testing::scratch_dir("cli_synth");
  const std::vector<std::string> common{"--frames", "5", "--seed", "7", "--width", "128", "--height", "128",
                                        "--base-size", "256"};
  std::vector<std::string> a{"synth", "--out", (dir / "a").string()}, b{"synth", "--out", (dir / "b").string()};
  a.insert(a.end(), common.begin(), common.end());
  b.insert(b.end(), common.begin(), common.end());
  ASSERT_EQ(invoke(a).code, 0);
  ASSERT_EQ(invoke(b).code, 0);
  EXPECT_EQ(slurp(dir / "a" / "manifest.json"), slurp(dir / "b" / "manifest.json"));
  EXPECT_EQ(slurp(dir / "a" / "frame_004.pgm"), slurp(dir / "b" / "frame_004.pgm"));

  const std::string manifest = (dir / "a" / "manifest.json").string();
  const CliRun e = invoke({"estimate", "--manifest", manifest, "--out", (dir / "est.json").string()});
  ASSERT_EQ(e.code, 0) << e.err;
  const json est = read_json_file(dir / "est.json");
  EXPECT_EQ(est.at("motions").size(), 4u);
  const CliRun v = invoke({"eval", "--manifest", manifest, "--estimates", (dir / "est.json").string()});
  ASSERT_EQ(v.code, 0) << v.err;
  EXPECT_NE(v.out.find("plain"), std::string::npos);
}

TEST(Cli, Errors) {
  const CliRun missing = invoke({"estimate", "--pair", "/nonexistent/a.pgm", "/nonexistent/b.pgm"});
  EXPECT_EQ(missing.code, 1);
  EXPECT_EQ(missing.err.rfind("error: io: ", 0), 0u) << missing.err;
  const CliRun unknown = invoke({"frobnicate"});
  EXPECT_EQ(unknown.code, 2);
  const CliRun none = invoke({});
  EXPECT_EQ(none.code, 2);
  const CliRun bad = invoke({"verify", "bounds", "--L", "0"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.err.rfind("error: domain: ", 0), 0u) << bad.err;
}

}  // namespace
}  // namespace egomotion
