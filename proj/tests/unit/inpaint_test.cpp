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

#include "invsynth/inpaint.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "invsynth/error.hpp"

namespace invsynth {
namespace {

RasterImage ramp_image(int w, int h) {
  RasterImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto v = static_cast<std::uint8_t>(std::lround(x * 255.0 / (w - 1)));
      img.set(x, y, {v, v, v});
    }
  }
  return img;
}

Mask rect_mask(int w, int h, int x0, int y0, int x1, int y1) {
  Mask m(w, h);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) m.set(x, y);
  }
  return m;
}

TEST(BuildMask, InclusiveIntegerCover) {
  const auto m = build_mask(100, 100, {{10, 10, 20, 20}}, 0);
  EXPECT_EQ(m.count(), 121u);
  EXPECT_TRUE(m.is_set(10, 10));
  EXPECT_TRUE(m.is_set(20, 20));
  EXPECT_FALSE(m.is_set(21, 20));
  EXPECT_FALSE(m.is_set(9, 10));
}

TEST(BuildMask, NoBoxesIsAllZero) {
  const auto m = build_mask(30, 20, {}, 2);
  EXPECT_EQ(m.count(), 0u);
  for (const auto v : m.values()) EXPECT_EQ(v, Mask::kKeep);
}

TEST(BuildMask, OverlapsUnionAgainstBruteForce) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> coord(-5.0, 70.0);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<BBox> boxes;
    for (int i = 0; i < 3; ++i) {
      const double x = coord(rng), y = coord(rng);
      boxes.push_back({x, y, x + 1 + coord(rng) / 3, y + 1 + coord(rng) / 3});
    }
    const int pad = trial % 4;
    const auto m = build_mask(64, 48, boxes, pad);
    std::size_t expected = 0;
    for (int py = 0; py < 48; ++py) {
      for (int px = 0; px < 64; ++px) {
        bool inside = false;
        for (const auto& b : boxes) {
          inside = inside || (px >= std::floor(b.x_min) - pad && px <= std::ceil(b.x_max) + pad &&
                              py >= std::floor(b.y_min) - pad && py <= std::ceil(b.y_max) + pad);
        }
        expected += inside;
        ASSERT_EQ(m.is_set(px, py), inside) << trial << " " << px << "," << py;
      }
    }
    EXPECT_EQ(m.count(), expected);
  }
}

TEST(BuildMask, ValuesAreBinary) {
  const auto m = build_mask(40, 40, {{3.5, 4.2, 17.9, 8.1}, {10, 6, 30, 30}}, 2);
  for (const auto v : m.values()) EXPECT_TRUE(v == Mask::kKeep || v == Mask::kFill);
}

TEST(BuildMask, ZeroPageIsError) { EXPECT_THROW(build_mask(0, 10, {}, 0), ImageError); }

// First-order upwind update with both axis neighbours known.
double solve2(double a, double b) { return (a + b + std::sqrt(2.0 - (a - b) * (a - b))) / 2.0; }

TEST(DistanceField, KnownValues) {
  const auto single = compute_distance_field(rect_mask(5, 5, 2, 2, 2, 2));
  EXPECT_DOUBLE_EQ(single.at(2, 2), solve2(0, 0));
  EXPECT_DOUBLE_EQ(single.at(0, 0), 0.0);

  const auto block = compute_distance_field(rect_mask(7, 7, 2, 2, 4, 4));
  const double corner = solve2(0, 0);
  const double edge = solve2(0, corner);
  EXPECT_DOUBLE_EQ(block.at(2, 2), corner);
  EXPECT_DOUBLE_EQ(block.at(2, 3), edge);
  EXPECT_DOUBLE_EQ(block.at(3, 3), solve2(edge, edge));
  EXPECT_EQ(block.order.size(), 9u);
  EXPECT_EQ(block.order.back(), 3 * 7 + 3);
}

TEST(DistanceField, OrderIsNonDecreasingWithRowMajorTies) {
  const auto f = compute_distance_field(rect_mask(40, 30, 5, 4, 31, 20));
  for (std::size_t i = 1; i < f.order.size(); ++i) {
    const double a = f.values[static_cast<std::size_t>(f.order[i - 1])];
    const double b = f.values[static_cast<std::size_t>(f.order[i])];
    ASSERT_LE(a, b);
    if (a == b) {
      ASSERT_LT(f.order[i - 1], f.order[i]);
    }
  }
}

TEST(DistanceField, FullMaskIsError) {
  EXPECT_THROW(compute_distance_field(rect_mask(4, 4, 0, 0, 3, 3)), ImageError);
}

TEST(Inpaint, ConstantImageUnchanged) {
  const RasterImage img(50, 40, Rgb{128, 128, 128});
  for (const auto& m : {rect_mask(50, 40, 10, 10, 30, 25), rect_mask(50, 40, 0, 0, 49, 5),
                        build_mask(50, 40, {{1, 1, 48, 38}}, 0)}) {
    EXPECT_EQ(inpaint(img, m, {}), img);
  }
}

TEST(Inpaint, SinglePixelTakesUniformNeighbourhood) {
  RasterImage img(9, 9, Rgb{10, 20, 30});
  for (int y = 3; y <= 5; ++y) {
    for (int x = 3; x <= 5; ++x) img.set(x, y, {77, 140, 201});
  }
  img.set(4, 4, {0, 0, 0});
  const auto out = inpaint(img, rect_mask(9, 9, 4, 4, 4, 4), {1, 0});
  EXPECT_EQ(out.at(4, 4), (Rgb{77, 140, 201}));
}

TEST(Inpaint, RampReconstruction) {
  const auto img = ramp_image(64, 64);
  const auto mask = rect_mask(64, 64, 28, 28, 35, 35);
  RasterImage damaged = img;
  for (int y = 28; y <= 35; ++y) {
    for (int x = 28; x <= 35; ++x) damaged.set(x, y, {255, 0, 0});
  }
  const auto out = inpaint(damaged, mask, {});
  double total = 0.0;
  for (int y = 28; y <= 35; ++y) {
    for (int x = 28; x <= 35; ++x) {
      for (int c = 0; c < 3; ++c) total += std::abs(out.channel(x, y, c) - img.channel(x, y, c));
    }
  }
  const double mae = total / (64.0 * 3.0);
  EXPECT_LE(mae, 8.0);
}

TEST(Inpaint, IdentityOutsideMaskAndRangeSafe) {
  std::mt19937 rng(3);
  RasterImage img(60, 45);
  for (auto& v : img.pixels()) v = static_cast<std::uint8_t>(rng());
  const auto mask = build_mask(60, 45, {{5, 5, 20, 12}, {30, 20, 55, 40}}, 2);
  const auto out = inpaint(img, mask, {4, 2});
  for (int y = 0; y < 45; ++y) {
    for (int x = 0; x < 60; ++x) {
      if (!mask.is_set(x, y)) {
        ASSERT_EQ(out.at(x, y), img.at(x, y)) << x << "," << y;
      }
    }
  }
}

TEST(Inpaint, FillOrderRespectsDistance) {
  const int w = 48, h = 36;
  const auto mask = build_mask(w, h, {{6, 5, 40, 14}, {10, 18, 22, 30}}, 1);
  const auto field = compute_distance_field(mask);
  std::vector<char> filled(static_cast<std::size_t>(w * h), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) filled[static_cast<std::size_t>(y * w + x)] = !mask.is_set(x, y);
  }
  const int radius = 3;
  double last = 0.0;
  std::size_t visits = 0;
  inpaint(RasterImage(w, h, Rgb{200, 200, 200}), mask, {radius, 0},
          [&](int x, int y, double t) {
            ++visits;
            EXPECT_GE(t, last);
            last = t;
            EXPECT_DOUBLE_EQ(t, field.at(x, y));
            for (int dy = -radius; dy <= radius; ++dy) {
              for (int dx = -radius; dx <= radius; ++dx) {
                const int qx = x + dx, qy = y + dy;
                if (qx < 0 || qy < 0 || qx >= w || qy >= h) continue;
                if (dx * dx + dy * dy > radius * radius) continue;
                if (field.at(qx, qy) < t) {
                  EXPECT_TRUE(filled[static_cast<std::size_t>(qy * w + qx)])
                      << qx << "," << qy << " not ready for " << x << "," << y;
                }
              }
            }
            filled[static_cast<std::size_t>(y * w + x)] = 1;
          });
  EXPECT_EQ(visits, mask.count());
}

TEST(Inpaint, SymmetricInputGivesSymmetricOutput) {
  const int w = 41, h = 30;
  RasterImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int d = std::abs(x - w / 2);
      img.set(x, y, {static_cast<std::uint8_t>(10 + 11 * d), static_cast<std::uint8_t>(7 * y),
                     static_cast<std::uint8_t>((d * y) % 256)});
    }
  }
  for (const auto& mask : {rect_mask(w, h, 8, 6, 32, 20), rect_mask(w, h, 14, 2, 26, 27),
                           build_mask(w, h, {{5, 5, 15, 10}, {25, 5, 35, 10}}, 1)}) {
    const auto out = inpaint(img, mask, {});
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        for (int c = 0; c < 3; ++c) {
          ASSERT_LE(std::abs(out.channel(x, y, c) - out.channel(w - 1 - x, y, c)), 1)
              << x << "," << y << " c" << c;
        }
      }
    }
  }
}

TEST(Inpaint, Errors) {
  const RasterImage img(10, 10, Rgb{1, 2, 3});
  EXPECT_THROW(inpaint(img, Mask(10, 9), {}), ImageError);
  EXPECT_THROW(inpaint(img, rect_mask(10, 10, 0, 0, 9, 9), {}), ImageError);
  EXPECT_THROW(inpaint(img, rect_mask(10, 10, 2, 2, 3, 3), {0, 0}), ImageError);
  EXPECT_EQ(inpaint(img, Mask(10, 10), {}), img);
}

TEST(Inpaint, Deterministic) {
  std::mt19937 rng(5);
  RasterImage img(80, 50);
  for (auto& v : img.pixels()) v = static_cast<std::uint8_t>(rng() % 64 + 180);
  const auto mask = build_mask(80, 50, {{10, 10, 70, 22}}, 2);
  EXPECT_EQ(inpaint(img, mask, {}), inpaint(img, mask, {}));
}

}  // namespace
}  // namespace invsynth
