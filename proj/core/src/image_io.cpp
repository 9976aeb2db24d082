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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "egomotion/errors.hpp"
#include "egomotion/imaging.hpp"

namespace egomotion {

namespace {

class HeaderReader {
 public:
  HeaderReader(const std::vector<std::uint8_t>& bytes, const std::string& origin)
      : bytes_(bytes), origin_(origin) {}

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << origin_ << ": " << what << " at offset " << pos_;
    throw ImageFormatError(os.str());
  }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  long read_int(const char* field) {
    skip_space_and_comments();
    if (pos_ >= bytes_.size()) fail(std::string("truncated header while reading ") + field);
    if (!std::isdigit(bytes_[pos_])) fail(std::string("malformed header: expected ") + field);
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      if (v > 1'000'000'000L) fail(std::string("malformed header: ") + field + " too large");
      ++pos_;
    }
    return v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  const std::string& origin_;
  std::size_t pos_ = 0;
};

}  // namespace

ImageBuffer decode_pgm(const std::vector<std::uint8_t>& bytes, const std::string& origin) {
  HeaderReader rd(bytes, origin);
  static constexpr std::uint8_t kPng[4] = {0x89, 'P', 'N', 'G'};
  if (bytes.size() >= 4 && std::equal(kPng, kPng + 4, bytes.begin())) {
    rd.fail("unsupported format: PNG input is not supported, convert to binary PGM (P5)");
  }
  if (bytes.size() < 2) rd.fail("truncated header");
  if (bytes[0] != 'P' || bytes[1] != '5') {
    if (bytes[0] == 'P' && bytes[1] >= '1' && bytes[1] <= '7') {
      rd.fail(std::string("unsupported format: P") + static_cast<char>(bytes[1]) +
              " (only binary P5 is supported)");
    }
    rd.fail("malformed header: missing P5 magic");
  }
  rd.advance(2);
  const long width = rd.read_int("width");
  const long height = rd.read_int("height");
  const long maxval = rd.read_int("maxval");
  if (width <= 0 || height <= 0) rd.fail("malformed header: non-positive dimensions");
  if (maxval != 255) rd.fail("unsupported format: maxval " + std::to_string(maxval) + " (expected 255)");
  if (rd.pos() >= bytes.size() || !std::isspace(bytes[rd.pos()])) {
    rd.fail("malformed header: missing whitespace after maxval");
  }
  rd.advance(1);
  const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() - rd.pos() < need) {
    rd.fail("truncated data: expected " + std::to_string(need) + " bytes, found " +
            std::to_string(bytes.size() - rd.pos()));
  }
  std::vector<double> samples(need);
  for (std::size_t k = 0; k < need; ++k) samples[k] = bytes[rd.pos() + k];
  return ImageBuffer(static_cast<int>(width), static_cast<int>(height), std::move(samples));
}

std::vector<std::uint8_t> encode_pgm(const ImageBuffer& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + img.size());
  for (double v : img.samples()) {
    out.push_back(static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0))));
  }
  return out;
}

ImageBuffer load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_pgm(bytes, path.string());
}

void save_image(const std::filesystem::path& path, const ImageBuffer& img) {
  if (img.empty()) throw ImageFormatError("save_image: refusing to write an empty image");
  const std::vector<std::uint8_t> bytes = encode_pgm(img);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write image " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace egomotion
