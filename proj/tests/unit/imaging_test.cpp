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

#include <cmath>
#include <numbers>

#include "egomotion/errors.hpp"
#include "egomotion/imaging.hpp"
#include "test_support.hpp"

namespace egomotion {
namespace {

using testing::smooth_image;

ImageBuffer ramp(int w, int h) {
  ImageBuffer img(w, h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) img.at(i, j) = (3 * i + 7 * j) % 256;
  }
  return img;
}

TEST(ImageBuffer, ValidatesSamples) {
  EXPECT_THROW(ImageBuffer(2, 2, std::vector<double>(3, 0.0)), DomainError);
  EXPECT_THROW(ImageBuffer(1, 1, std::vector<double>{std::nan("")}), DomainError);
  EXPECT_THROW(ImageBuffer(-1, 2), DomainError);
  const ImageBuffer img(3, 2, std::vector<double>{0, 1, 2, 3, 4, 5});
  EXPECT_EQ(img.at(2, 0), 2.0);
  EXPECT_EQ(img.at(0, 1), 3.0);
  EXPECT_DOUBLE_EQ(img.mean(), 2.5);
}

TEST(Intrinsics, PixelFocalConversion) {
  const Intrinsics in{256, 128, 128};
  EXPECT_EQ(in.pixel_to_focal(Vec2(128, 128)), Vec2(0, 0));
  EXPECT_EQ(pixel_to_focal(in, Vec2(256, 128)), Vec2(0.5, 0));
  const Intrinsics odd{123.4, 57.25, 31.5};
  for (int j = 0; j < 64; ++j) {
    for (int i = 0; i < 128; ++i) {
      const Vec2 px(i, j);
      ASSERT_LT((focal_to_pixel(odd, pixel_to_focal(odd, px)) - px).norm(), 1e-12);
    }
  }
}

TEST(Intrinsics, ViewAngleAndExtent) {
  const Intrinsics in = Intrinsics::for_view_angle(256, 256, 90.0);
  EXPECT_NEAR(in.focal_px, 128.0, 1e-12);
  EXPECT_DOUBLE_EQ(in.cx, 127.5);
  EXPECT_NEAR(in.extent(256, 256), 2.0, 1e-12);
  EXPECT_NO_THROW(in.validate(256, 256));
  EXPECT_THROW((Intrinsics{10, 0, 0}).validate(100, 50), ConfigError);
  EXPECT_THROW((Intrinsics{0, 0, 0}).validate(10, 10), ConfigError);
  EXPECT_THROW(Intrinsics::for_view_angle(10, 10, 180.0), ConfigError);
}

TEST(SampleBilinear, Basics) {
  const ImageBuffer img = ramp(8, 6);
  for (int j = 0; j < 6; ++j) {
    for (int i = 0; i < 8; ++i) EXPECT_EQ(sample_bilinear(img, i, j), img.at(i, j));
  }
  const ImageBuffer two(2, 1, std::vector<double>{0, 255});
  EXPECT_DOUBLE_EQ(sample_bilinear(two, 0.5, 0), 127.5);
  const ImageBuffer flat(5, 5, 42.0);
  EXPECT_EQ(sample_bilinear(flat, 1.37, 3.91), 42.0);
  EXPECT_EQ(sample_bilinear(flat, -10, 99), 42.0);
  EXPECT_EQ(sample_bilinear(img, -3, -3), img.at(0, 0));
  EXPECT_EQ(sample_bilinear(img, 50, 50), img.at(7, 5));
}

TEST(SampleBilinear, Lipschitz) {
  const ImageBuffer img = testing::SyntheticRig().base;
  Rng rng(41);
  for (int k = 0; k < 10000; ++k) {
    const double x = rng.uniform(0, 510), y = rng.uniform(0, 511), d = rng.uniform01();
    ASSERT_LE(std::abs(sample_bilinear(img, x + d, y) - sample_bilinear(img, x, y)), 255 * d + 1e-9);
  }
}

TEST(WarpImage, IdentityIsLossless) {
  const ImageBuffer img = smooth_image(40, 30);
  const Intrinsics in{20, 19.5, 14.5};
  const WarpResult w = warp_image(img, ProjectiveMap::identity(), in);
  EXPECT_EQ(w.image, img);
  EXPECT_DOUBLE_EQ(w.mask.fraction(), 1.0);
}

TEST(WarpImage, IntegerShift) {
  const ImageBuffer img = ramp(32, 20);
  const Intrinsics in{16, 15.5, 9.5};
  const WarpResult w = warp_image(img, psi_map({0, 0, 0, 3.0 / 16, 0, 0}), in);
  for (int j = 0; j < 20; ++j) {
    for (int i = 0; i < 32; ++i) {
      if (i + 3 <= 31) {
        ASSERT_TRUE(w.mask.at(i, j));
        ASSERT_EQ(w.image.at(i, j), img.at(i + 3, j));
      } else {
        ASSERT_FALSE(w.mask.at(i, j));
        ASSERT_EQ(w.image.at(i, j), 0.0);
      }
    }
  }
}

TEST(WarpImage, RoundTripWithinOneGrayLevel) {
  const ImageBuffer img = smooth_image(96, 96);
  const Intrinsics in{48, 47.5, 47.5};
  const ProjectiveMap m = psi_map({0.4, 0.02, 0.03, 0.05, -0.04, 0.02});
  const WarpResult a = warp_image(img, m, in);
  const WarpResult b = warp_image(a.image, m.inverse(), in);
  for (int j = 16; j < 80; ++j) {
    for (int i = 16; i < 80; ++i) ASSERT_NEAR(b.image.at(i, j), img.at(i, j), 1.0);
  }
}

TEST(WarpImage, DeformIsInverseWarp) {
  const ImageBuffer img = smooth_image(64, 64);
  const Intrinsics in{32, 31.5, 31.5};
  const ProjectiveMap m = psi_map({0, 0, 0.02, 0.05, 0.02, 0.01});
  const WarpResult g = deform_image(img, m, in);
  // g(m(x)) = img(x) at interior pixel centers x.
  for (int j = 16; j < 48; ++j) {
    for (int i = 16; i < 48; ++i) {
      const Vec2 q = in.focal_to_pixel(apply_map(m, in.pixel_to_focal(Vec2(i, j))));
      ASSERT_NEAR(sample_bilinear(g.image, q.x(), q.y()), img.at(i, j), 2.0);
    }
  }
}

TEST(WarpImage, HorizonError) {
  Mat3 h = Mat3::Identity();
  h(2, 0) = 1.0;
  h(2, 2) = 0.0;
  h(0, 2) = 1.0;
  EXPECT_THROW(warp_image(ImageBuffer(8, 8), ProjectiveMap(h), Intrinsics{4, 4, 3.5}), HorizonError);
}

TEST(Pyramid, Sizes) {
  const std::vector<ImageBuffer> p = build_pyramid(ImageBuffer(64, 64, 1.0), 32);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[1].width(), 32);
  const std::vector<ImageBuffer> q = build_pyramid(ImageBuffer(284, 188), 32);
  ASSERT_EQ(q.size(), 3u);
  EXPECT_EQ(q[2].width(), 71);
  EXPECT_EQ(q[2].height(), 47);
  EXPECT_THROW(build_pyramid(ImageBuffer(64, 64), 4), ConfigError);
}

TEST(Pyramid, ConstantStaysConstant) {
  for (const ImageBuffer& l : build_pyramid(ImageBuffer(100, 70, 77.0), 8)) {
    for (double v : l.samples()) ASSERT_NEAR(v, 77.0, 1e-12);
  }
}

TEST(Pyramid, ImpulseResponse) {
  ImageBuffer img(32, 32, 0.0);
  img.at(16, 16) = 256.0;
  const ImageBuffer d = pyramid_down(img);
  // Level-1 pixel (8,8) sits on the impulse: weight (6/16)^2.
  EXPECT_DOUBLE_EQ(d.at(8, 8), 256.0 * 36.0 / 256.0);
  EXPECT_DOUBLE_EQ(d.at(9, 8), 256.0 * 6.0 / 256.0);
  EXPECT_DOUBLE_EQ(d.at(9, 9), 256.0 * 1.0 / 256.0);
  EXPECT_DOUBLE_EQ(d.at(10, 8), 0.0);
}

TEST(Pyramid, MeanPreserved) {
  const ImageBuffer base = testing::SyntheticRig().base;
  const std::vector<ImageBuffer> p = build_pyramid(base, 32);
  for (const ImageBuffer& l : p) {
    if (l.width() >= 64) EXPECT_NEAR(l.mean(), base.mean(), 1.0);
  }
}

TEST(Gradients, Analytic) {
  const Gradients z = gradients(ImageBuffer(5, 4, 9.0));
  for (double v : z.gx.samples()) EXPECT_EQ(v, 0.0);
  for (double v : z.gy.samples()) EXPECT_EQ(v, 0.0);
  ImageBuffer r(10, 6), q(10, 6);
  for (int j = 0; j < 6; ++j) {
    for (int i = 0; i < 10; ++i) {
      r.at(i, j) = i;
      q.at(i, j) = i * i;
    }
  }
  const Gradients gr = gradients(r), gq = gradients(q);
  for (int j = 0; j < 6; ++j) {
    for (int i = 1; i < 9; ++i) {
      EXPECT_EQ(gr.gx.at(i, j), 1.0);
      EXPECT_EQ(gq.gx.at(i, j), 2.0 * i);
      EXPECT_EQ(gr.gy.at(i, j), 0.0);
    }
    EXPECT_EQ(gq.gx.at(0, j), 1.0);
    EXPECT_EQ(gq.gx.at(9, j), 17.0);
  }
  EXPECT_THROW(gradients(ImageBuffer(2, 5)), DomainError);
}

TEST(ImpulseNoise, CountsAndDeterminism) {
  const ImageBuffer img(100, 100, 128.0);
  EXPECT_EQ(add_impulse_noise(img, 0.0, 1), img);
  const ImageBuffer all = add_impulse_noise(img, 100.0, 1);
  int changed_all = 0;
  for (std::size_t k = 0; k < img.size(); ++k) changed_all += all.samples()[k] != 128.0;
  EXPECT_EQ(changed_all, 10000);
  const ImageBuffer ten = add_impulse_noise(img, 10.0, 2);
  int changed = 0;
  for (std::size_t k = 0; k < img.size(); ++k) {
    changed += ten.samples()[k] != 128.0;
    const double v = ten.samples()[k];
    ASSERT_EQ(v, std::round(v));
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 255.0);
  }
  EXPECT_EQ(changed, 1000);
  EXPECT_EQ(add_impulse_noise(img, 10.0, 2), ten);
  EXPECT_NE(add_impulse_noise(img, 10.0, 3), ten);
  EXPECT_THROW(add_impulse_noise(img, 101.0, 0), DomainError);
}

TEST(GaussianNoise, StatisticsAndDeterminism) {
  const ImageBuffer img(400, 250, 128.0);
  EXPECT_EQ(add_gaussian_noise(img, 0.0, 1), img);
  const ImageBuffer n = add_gaussian_noise(img, 10.0, 5);
  double s = 0, s2 = 0;
  for (double v : n.samples()) {
    s += v - 128.0;
    s2 += (v - 128.0) * (v - 128.0);
  }
  const double m = s / n.size();
  const double sd = std::sqrt(s2 / n.size() - m * m);
  EXPECT_NEAR(sd, 10.0, 0.5);
  EXPECT_NEAR(m, 0.0, 0.2);
  EXPECT_EQ(add_gaussian_noise(img, 10.0, 5), n);
  const ImageBuffer clamp = add_gaussian_noise(ImageBuffer(50, 50, 250.0), 30.0, 6);
  for (double v : clamp.samples()) ASSERT_LE(v, 255.0);
  EXPECT_THROW(add_gaussian_noise(img, -1.0, 0), DomainError);
}

TEST(Crop, Window) {
  const ImageBuffer img = ramp(10, 8);
  const ImageBuffer c = crop(img, 2, 3, 4, 2);
  EXPECT_EQ(c.width(), 4);
  EXPECT_EQ(c.at(0, 0), img.at(2, 3));
  EXPECT_EQ(c.at(3, 1), img.at(5, 4));
  EXPECT_THROW(crop(img, 8, 0, 4, 2), DomainError);
}

TEST(Quantize, RoundsAndClamps) {
  const ImageBuffer q = quantize(ImageBuffer(4, 1, std::vector<double>{-3.0, 1.49, 1.5, 300.0}));
  EXPECT_EQ(q.samples(), (std::vector<double>{0.0, 1.0, 2.0, 255.0}));
}

TEST(PgmIo, RoundTrip) {
  const ImageBuffer img = ramp(13, 7);
  const std::filesystem::path dir = testing::scratch_dir("pgm");
  save_image(dir / "a.pgm", img);
  EXPECT_EQ(load_image(dir / "a.pgm"), img);
  EXPECT_EQ(decode_pgm(encode_pgm(img)), img);
}

TEST(PgmIo, MinimalHeader) {
  std::string s = "P5\n2 2\n255\n";
  std::vector<std::uint8_t> bytes(s.begin(), s.end());
  for (std::uint8_t b : {1, 2, 3, 250}) bytes.push_back(b);
  const ImageBuffer img = decode_pgm(bytes);
  EXPECT_EQ(img.width(), 2);
  EXPECT_EQ(img.samples(), (std::vector<double>{1, 2, 3, 250}));
}

TEST(PgmIo, CommentsInHeader) {
  std::string s = "P5 # comment\n# more\n1 1\n255\n";
  std::vector<std::uint8_t> bytes(s.begin(), s.end());
  bytes.push_back(9);
  EXPECT_EQ(decode_pgm(bytes).samples(), std::vector<double>{9});
}

std::string error_of(const std::string& data) {
  try {
    decode_pgm(std::vector<std::uint8_t>(data.begin(), data.end()), "t.pgm");
  } catch (const ImageFormatError& e) {
    return e.what();
  }
  return "";
}

TEST(PgmIo, Errors) {
  EXPECT_NE(error_of("P5\n2 2\n65535\n").find("unsupported format"), std::string::npos);
  EXPECT_NE(error_of("P2\n2 2\n255\n").find("unsupported format"), std::string::npos);
  EXPECT_NE(error_of("\x89PNG\r\n").find("unsupported format"), std::string::npos);
  EXPECT_NE(error_of("P5\nx 2\n255\n").find("malformed header"), std::string::npos);
  EXPECT_NE(error_of("Q5\n").find("malformed header"), std::string::npos);
  const std::string t = error_of(std::string("P5\n2 2\n255\n") + "ab");
  EXPECT_NE(t.find("truncated data"), std::string::npos);
  EXPECT_NE(t.find("offset 11"), std::string::npos);
  EXPECT_NE(error_of("P5\n2").find("truncated"), std::string::npos);
  EXPECT_THROW(load_image("/nonexistent/file.pgm"), IoError);
}

}  // namespace
}  // namespace egomotion
