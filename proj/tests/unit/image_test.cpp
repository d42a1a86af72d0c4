// Copyright 2026 The invsynth Authors
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

#include "invsynth/image.hpp"

#include <gtest/gtest.h>

#include <random>

#include "invsynth/error.hpp"
#include "test_support.hpp"

namespace invsynth {
namespace {

TEST(RasterImage, ConstructionChecks) {
  EXPECT_THROW(RasterImage(0, 4), ImageError);
  EXPECT_THROW(RasterImage(3, 3, std::vector<std::uint8_t>(26)), ImageError);
  const RasterImage img(3, 2, Rgb{1, 2, 3});
  EXPECT_EQ(img.pixels().size(), 18u);
  EXPECT_EQ(img.at(2, 1), (Rgb{1, 2, 3}));
}

TEST(Png, RoundTripIsLossless) {
  testing::ScratchDir dir("png_round_trip");
  std::mt19937 rng(1);
  RasterImage img(37, 23);
  for (auto& v : img.pixels()) v = static_cast<std::uint8_t>(rng());
  write_png(dir / "a.png", img);
  EXPECT_EQ(read_png(dir / "a.png"), img);
  EXPECT_FALSE(std::filesystem::exists(dir / "a.png.tmp"));
}

TEST(Png, EncodingIsByteStable) {
  testing::ScratchDir dir("png_stable");
  const auto img = read_png(testing::sample_image_path());
  write_png(dir / "a.png", img);
  write_png(dir / "b.png", img);
  const auto a = testing::read_bytes(dir / "a.png");
  EXPECT_EQ(a, testing::read_bytes(dir / "b.png"));
  EXPECT_EQ(a.find("tIME"), std::string::npos);
}

TEST(Png, MaskIsGrayscale) {
  testing::ScratchDir dir("png_mask");
  Mask m(20, 10);
  m.set(3, 4);
  write_mask_png(dir / "m.png", m);
  const auto back = read_png(dir / "m.png");
  EXPECT_EQ(back.at(3, 4), (Rgb{255, 255, 255}));
  EXPECT_EQ(back.at(0, 0), (Rgb{0, 0, 0}));
}

TEST(Png, UnreadableFileIsImageError) {
  testing::ScratchDir dir("png_bad");
  testing::write_bytes(dir / "bad.png", "not a png");
  EXPECT_THROW(read_png(dir / "bad.png"), ImageError);
  EXPECT_THROW(read_png(dir / "missing.png"), ImageError);
}

}  // namespace
}  // namespace invsynth
