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

// Text removal: box masks and fast-marching inpainting.
//
// Masked pixels are visited in order of increasing distance T from the mask
// boundary. T solves the eikonal equation |grad T| = 1 on the 4-neighbour
// grid with T = 0 on every unmasked pixel; it is computed in one pass with a
// binary-heap narrow band. Each visited pixel becomes the weighted mean of
// pixels within `radius` whose T is strictly smaller, weighted by
//
//   direction  |cos| of the angle between the offset and grad T
//   distance   1 / |offset|^2
//   level      1 / (1 + |T(p) - T(q)|)
//
// Only strictly smaller T feeds a pixel, so pixels at equal distance never
// see each other and the result does not depend on tie order.

#pragma once

#include <functional>
#include <vector>

#include "invsynth/image.hpp"
#include "invsynth/layout.hpp"

namespace invsynth {

struct InpaintParams {
  int radius = 3;
  int mask_pad = 2;
};

/// 255 at every pixel (px, py) with floor(x_min) - pad <= px <=
/// ceil(x_max) + pad (same in y), clipped to the page; 0 elsewhere.
Mask build_mask(int width, int height, const std::vector<BBox>& boxes, int pad);

/// Boundary distance per pixel, row-major; 0 on unmasked pixels.
struct DistanceField {
  int width = 0;
  int height = 0;
  std::vector<double> values;
  /// Masked pixel indices in the order the narrow band finalised them:
  /// non-decreasing distance, ties in row-major order.
  std::vector<int> order;

  double at(int x, int y) const { return values[static_cast<std::size_t>(y * width + x)]; }
};

/// Throws ImageError if every pixel is masked.
DistanceField compute_distance_field(const Mask& mask);

/// Called once per filled pixel, in fill order, with its distance.
using FillObserver = std::function<void(int x, int y, double distance)>;

/// Pixels where mask = 0 are copied unchanged. Throws ImageError on a
/// dimension mismatch, a mask that covers the whole image, or radius < 1.
RasterImage inpaint(const RasterImage& image, const Mask& mask,
                    const InpaintParams& params,
                    const FillObserver& observer = {});

}  // namespace invsynth
