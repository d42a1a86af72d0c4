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

#include <algorithm>
#include <cmath>
#include <limits>

#include "invsynth/font.hpp"

namespace invsynth {

namespace {

struct Point {
  double x;
  double y;
};

Point midpoint(Point a, Point b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

/// Signed-area accumulation buffer. Each row sums to zero once all closed
/// contours are drawn; a running sum along the row gives winding coverage.
class Accumulator {
 public:
  Accumulator(int width, int height)
      : width_(width), height_(height),
        cells_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0.0) {}

  void line(Point p0, Point p1) {
    if (p0.y == p1.y) return;
    double dir = 1.0;
    if (p0.y > p1.y) {
      std::swap(p0, p1);
      dir = -1.0;
    }
    const double dxdy = (p1.x - p0.x) / (p1.y - p0.y);
    double x = p0.x;
    int y0 = static_cast<int>(std::floor(p0.y));
    if (p0.y < 0.0) {
      x -= p0.y * dxdy;
      y0 = 0;
    }
    const int y1 = std::min(height_, static_cast<int>(std::ceil(p1.y)));
    for (int y = y0; y < y1; ++y) {
      const double dy = std::min<double>(y + 1, p1.y) - std::max<double>(y, p0.y);
      const double xnext = x + dxdy * dy;
      const double d = dy * dir;
      const double x0 = std::min(x, xnext);
      const double x1 = std::max(x, xnext);
      const double x0floor = std::floor(x0);
      const int x0i = static_cast<int>(x0floor);
      const double x1ceil = std::ceil(x1);
      const int x1i = static_cast<int>(x1ceil);
      if (x1i <= x0i + 1) {
        const double xmf = 0.5 * (x + xnext) - x0floor;
        add(x0i, y, d - d * xmf);
        add(x0i + 1, y, d * xmf);
      } else {
        const double s = 1.0 / (x1 - x0);
        const double x0f = x0 - x0floor;
        const double a0 = 0.5 * s * (1.0 - x0f) * (1.0 - x0f);
        const double x1f = x1 - x1ceil + 1.0;
        const double am = 0.5 * s * x1f * x1f;
        add(x0i, y, d * a0);
        if (x1i == x0i + 2) {
          add(x0i + 1, y, d * (1.0 - a0 - am));
        } else {
          const double a1 = s * (1.5 - x0f);
          add(x0i + 1, y, d * (a1 - a0));
          for (int xi = x0i + 2; xi < x1i - 1; ++xi) add(xi, y, d * s);
          const double a2 = a1 + (x1i - x0i - 3) * s;
          add(x1i - 1, y, d * (1.0 - a2 - am));
        }
        add(x1i, y, d * am);
      }
      x = xnext;
    }
  }

  void quad(Point p0, Point p1, Point p2) {
    const double devx = p0.x - 2.0 * p1.x + p2.x;
    const double devy = p0.y - 2.0 * p1.y + p2.y;
    const double devsq = devx * devx + devy * devy;
    if (devsq < 0.333) {
      line(p0, p2);
      return;
    }
    const int n = 1 + static_cast<int>(std::floor(std::sqrt(std::sqrt(3.0 * devsq))));
    Point prev = p0;
    for (int i = 1; i < n; ++i) {
      const double t = static_cast<double>(i) / n;
      const double u = 1.0 - t;
      const Point next{u * u * p0.x + 2.0 * u * t * p1.x + t * t * p2.x,
                       u * u * p0.y + 2.0 * u * t * p1.y + t * t * p2.y};
      line(prev, next);
      prev = next;
    }
    line(prev, p2);
  }

  std::vector<float> coverage() const {
    std::vector<float> out(cells_.size());
    for (int y = 0; y < height_; ++y) {
      double acc = 0.0;
      for (int x = 0; x < width_; ++x) {
        const auto i = static_cast<std::size_t>(y * width_ + x);
        acc += cells_[i];
        out[i] = static_cast<float>(std::min(1.0, std::abs(acc)));
      }
    }
    return out;
  }

 private:
  void add(int x, int y, double v) {
    if (x < 0 || x >= width_ || y < 0 || y >= height_) return;
    cells_[static_cast<std::size_t>(y * width_ + x)] += v;
  }

  int width_;
  int height_;
  std::vector<double> cells_;
};

/// Walks one closed TrueType contour, inserting the implied on-curve
/// midpoints between consecutive off-curve points.
template <typename Line, typename Quad>
void walk_contour(const std::vector<Point>& pts, const std::vector<bool>& on,
                  Line&& emit_line, Quad&& emit_quad) {
  const std::size_t n = pts.size();
  std::size_t first = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (on[i]) {
      first = i;
      break;
    }
  }
  Point start;
  std::size_t begin;
  std::size_t steps;
  if (first == n) {
    start = midpoint(pts[n - 1], pts[0]);
    begin = 0;
    steps = n;
  } else {
    start = pts[first];
    begin = first + 1;
    steps = n - 1;
  }
  Point cur = start;
  Point ctrl{};
  bool pending = false;
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t i = (begin + k) % n;
    const Point p = pts[i];
    if (on[i]) {
      if (pending) emit_quad(cur, ctrl, p);
      else emit_line(cur, p);
      cur = p;
      pending = false;
    } else {
      if (pending) {
        const Point mid = midpoint(ctrl, p);
        emit_quad(cur, ctrl, mid);
        cur = mid;
      }
      ctrl = p;
      pending = true;
    }
  }
  if (pending) emit_quad(cur, ctrl, start);
  else emit_line(cur, start);
}

}  // namespace

CoverageMap rasterize_outline(const GlyphOutline& outline, double scale,
                              double origin_x, double baseline_y) {
  CoverageMap map;
  if (outline.empty()) return map;

  std::vector<std::vector<Point>> contours;
  std::vector<std::vector<bool>> on_curve;
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = min_x;
  double max_x = -min_x;
  double max_y = -min_x;
  for (const auto& contour : outline.contours) {
    auto& pts = contours.emplace_back();
    auto& on = on_curve.emplace_back();
    for (const auto& p : contour) {
      const Point q{origin_x + p.x * scale, baseline_y - p.y * scale};
      pts.push_back(q);
      on.push_back(p.on_curve);
      // Control points bound the curve, so this box is conservative.
      min_x = std::min(min_x, q.x);
      max_x = std::max(max_x, q.x);
      min_y = std::min(min_y, q.y);
      max_y = std::max(max_y, q.y);
    }
  }

  map.left = static_cast<int>(std::floor(min_x));
  map.top = static_cast<int>(std::floor(min_y));
  map.width = static_cast<int>(std::ceil(max_x)) - map.left + 2;
  map.height = std::max(1, static_cast<int>(std::ceil(max_y)) - map.top);
  Accumulator acc(map.width, map.height);
  const double ox = map.left;
  const double oy = map.top;
  const auto local = [&](Point p) { return Point{p.x - ox, p.y - oy}; };

  for (std::size_t c = 0; c < contours.size(); ++c) {
    walk_contour(
        contours[c], on_curve[c],
        [&](Point a, Point b) { acc.line(local(a), local(b)); },
        [&](Point a, Point b, Point e) { acc.quad(local(a), local(b), local(e)); });
  }
  map.coverage = acc.coverage();
  return map;
}

}  // namespace invsynth
