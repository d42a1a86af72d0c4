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

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "invsynth/error.hpp"

namespace invsynth {

namespace {

constexpr double kFar = std::numeric_limits<double>::infinity();
// Offsets nearly orthogonal to the front still contribute, just barely.
constexpr double kMinDirection = 0.01;
constexpr double kDirectionFloor = 1e-6;

enum class Cell : unsigned char { kFrozen, kBand, kFar };

struct BandEntry {
  double t;
  int index;
};

struct LaterFirst {
  bool operator()(const BandEntry& a, const BandEntry& b) const noexcept {
    if (a.t != b.t) return a.t > b.t;
    return a.index > b.index;
  }
};

/// Upwind update from the frozen 4-neighbours.
double solve_eikonal(const std::vector<double>& t, const std::vector<Cell>& cell,
                     int width, int height, int x, int y) {
  const auto frozen_value = [&](int nx, int ny) {
    if (nx < 0 || ny < 0 || nx >= width || ny >= height) return kFar;
    const auto i = static_cast<std::size_t>(ny * width + nx);
    return cell[i] == Cell::kFrozen ? t[i] : kFar;
  };
  const double a = std::min(frozen_value(x - 1, y), frozen_value(x + 1, y));
  const double b = std::min(frozen_value(x, y - 1), frozen_value(x, y + 1));
  if (a == kFar && b == kFar) return kFar;
  if (a == kFar || b == kFar || std::abs(a - b) >= 1.0) return std::min(a, b) + 1.0;
  const double d = a - b;
  return 0.5 * (a + b + std::sqrt(2.0 - d * d));
}

}  // namespace

Mask build_mask(int width, int height, const std::vector<BBox>& boxes, int pad) {
  Mask mask(width, height);  // throws on zero dimensions
  for (const auto& box : boxes) {
    const double x0 = std::floor(box.x_min) - pad;
    const double y0 = std::floor(box.y_min) - pad;
    const double x1 = std::ceil(box.x_max) + pad;
    const double y1 = std::ceil(box.y_max) + pad;
    const int px0 = static_cast<int>(std::max(0.0, x0));
    const int py0 = static_cast<int>(std::max(0.0, y0));
    const int px1 = static_cast<int>(std::min<double>(width - 1, x1));
    const int py1 = static_cast<int>(std::min<double>(height - 1, y1));
    for (int y = py0; y <= py1; ++y) {
      for (int x = px0; x <= px1; ++x) mask.set(x, y);
    }
  }
  return mask;
}

DistanceField compute_distance_field(const Mask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (mask.count() == n) {
    throw ImageError("mask covers the entire image; nothing to inpaint from");
  }

  DistanceField field;
  field.width = w;
  field.height = h;
  field.values.assign(n, 0.0);
  std::vector<Cell> cell(n, Cell::kFrozen);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (mask.is_set(x, y)) {
        const auto i = static_cast<std::size_t>(y * w + x);
        cell[i] = Cell::kFar;
        field.values[i] = kFar;
      }
    }
  }

  std::priority_queue<BandEntry, std::vector<BandEntry>, LaterFirst> band;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto i = static_cast<std::size_t>(y * w + x);
      if (cell[i] != Cell::kFar) continue;
      const double t = solve_eikonal(field.values, cell, w, h, x, y);
      if (t != kFar) {
        field.values[i] = t;
        cell[i] = Cell::kBand;
        band.push({t, static_cast<int>(i)});
      }
    }
  }

  field.order.reserve(mask.count());
  constexpr int kDx[4] = {-1, 1, 0, 0};
  constexpr int kDy[4] = {0, 0, -1, 1};
  while (!band.empty()) {
    const auto [t, index] = band.top();
    band.pop();
    const auto i = static_cast<std::size_t>(index);
    if (cell[i] == Cell::kFrozen || t != field.values[i]) continue;  // stale
    cell[i] = Cell::kFrozen;
    field.order.push_back(index);

    const int x = index % w;
    const int y = index / w;
    for (int k = 0; k < 4; ++k) {
      const int nx = x + kDx[k];
      const int ny = y + kDy[k];
      if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
      const auto j = static_cast<std::size_t>(ny * w + nx);
      if (cell[j] == Cell::kFrozen) continue;
      const double candidate = solve_eikonal(field.values, cell, w, h, nx, ny);
      if (candidate < field.values[j]) {
        field.values[j] = candidate;
        cell[j] = Cell::kBand;
        band.push({candidate, static_cast<int>(j)});
      }
    }
  }
  return field;
}

RasterImage inpaint(const RasterImage& image, const Mask& mask,
                    const InpaintParams& params, const FillObserver& observer) {
  if (image.width() != mask.width() || image.height() != mask.height()) {
    throw ImageError("mask is " + std::to_string(mask.width()) + "x" +
                     std::to_string(mask.height()) + " but image is " +
                     std::to_string(image.width()) + "x" +
                     std::to_string(image.height()));
  }
  if (params.radius < 1) throw ImageError("inpaint radius must be >= 1");
  RasterImage out = image;
  if (mask.count() == 0) return out;

  const auto field = compute_distance_field(mask);
  const int w = image.width();
  const int h = image.height();
  const int r = params.radius;
  const auto dist = [&](int x, int y) { return field.values[static_cast<std::size_t>(y * w + x)]; };

  for (const int index : field.order) {
    const int x = index % w;
    const int y = index / w;
    const double tp = dist(x, y);

    double gx = 0.0;
    double gy = 0.0;
    if (w > 1) {
      if (x == 0) gx = dist(1, y) - dist(0, y);
      else if (x == w - 1) gx = dist(x, y) - dist(x - 1, y);
      else gx = 0.5 * (dist(x + 1, y) - dist(x - 1, y));
    }
    if (h > 1) {
      if (y == 0) gy = dist(x, 1) - dist(x, 0);
      else if (y == h - 1) gy = dist(x, y) - dist(x, y - 1);
      else gy = 0.5 * (dist(x, y + 1) - dist(x, y - 1));
    }
    const double grad_len = std::sqrt(gx * gx + gy * gy);

    double sum[3] = {0.0, 0.0, 0.0};
    double weight_sum = 0.0;
    for (int dy = -r; dy <= r; ++dy) {
      const int qy = y + dy;
      if (qy < 0 || qy >= h) continue;
      for (int dx = -r; dx <= r; ++dx) {
        const int qx = x + dx;
        if (qx < 0 || qx >= w) continue;
        const int len2 = dx * dx + dy * dy;
        if (len2 == 0 || len2 > r * r) continue;
        const double tq = dist(qx, qy);
        if (!(tq < tp)) continue;

        double direction = 1.0;
        if (grad_len > 0.0) {
          direction = std::abs(dx * gx + dy * gy) /
                      (std::sqrt(static_cast<double>(len2)) * grad_len);
          if (direction <= kMinDirection) direction = kDirectionFloor;
        }
        const double geometric = 1.0 / static_cast<double>(len2);
        const double level = 1.0 / (1.0 + std::abs(tp - tq));
        const double weight = direction * geometric * level;

        weight_sum += weight;
        for (int c = 0; c < 3; ++c) sum[c] += weight * out.channel(qx, qy, c);
      }
    }
    // A 4-neighbour with smaller T always exists, so weight_sum > 0.
    for (int c = 0; c < 3; ++c) {
      const double v = std::round(sum[c] / weight_sum);
      out.set_channel(x, y, c, static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0)));
    }
    if (observer) observer(x, y, tp);
  }
  return out;
}

}  // namespace invsynth
