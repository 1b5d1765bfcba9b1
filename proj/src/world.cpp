/*
 * Copyright 2026 The Gridsafe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gridsafe/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gridsafe {

namespace {

double point_segment_distance(const Eigen::Vector2d& p,
                              const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

// Orientation of the triple (a, b, c): >0 counter-clockwise, <0 clockwise.
double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
              const Eigen::Vector2d& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

bool on_segment(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                const Eigen::Vector2d& p) {
  return std::min(a.x(), b.x()) - 1e-12 <= p.x() &&
         p.x() <= std::max(a.x(), b.x()) + 1e-12 &&
         std::min(a.y(), b.y()) - 1e-12 <= p.y() &&
         p.y() <= std::max(a.y(), b.y()) + 1e-12;
}

bool segments_intersect(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                        const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
  const double d1 = cross2(c, d, a);
  const double d2 = cross2(c, d, b);
  const double d3 = cross2(a, b, c);
  const double d4 = cross2(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && on_segment(c, d, a)) return true;
  if (d2 == 0 && on_segment(c, d, b)) return true;
  if (d3 == 0 && on_segment(a, b, c)) return true;
  if (d4 == 0 && on_segment(a, b, d)) return true;
  return false;
}

}  // namespace

bool point_in_polygon(const std::vector<Eigen::Vector2d>& vertices,
                      const Eigen::Vector2d& p) {
  const std::size_t n = vertices.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Eigen::Vector2d& vi = vertices[i];
    const Eigen::Vector2d& vj = vertices[j];
    if (point_segment_distance(p, vi, vj) == 0.0) return true;
    if ((vi.y() > p.y()) != (vj.y() > p.y())) {
      const double x_cross =
          vj.x() + (p.y() - vj.y()) / (vi.y() - vj.y()) * (vi.x() - vj.x());
      if (p.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool polygon_is_simple(const std::vector<Eigen::Vector2d>& vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = vertices[i];
    const Eigen::Vector2d& b = vertices[(i + 1) % n];
    if ((b - a).squaredNorm() == 0.0) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      // Skip edges sharing a vertex.
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      const Eigen::Vector2d& c = vertices[j];
      const Eigen::Vector2d& d = vertices[(j + 1) % n];
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

double signed_distance(const Obstacle& obstacle, const Eigen::Vector2d& p) {
  if (const auto* circle = std::get_if<CircleObstacle>(&obstacle)) {
    return (p - circle->center).norm() - circle->radius;
  }
  const auto& poly = std::get<PolygonObstacle>(obstacle);
  double boundary = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.vertices.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    boundary = std::min(
        boundary, point_segment_distance(p, poly.vertices[j], poly.vertices[i]));
  }
  return point_in_polygon(poly.vertices, p) ? -boundary : boundary;
}

double clearance(const World& world, const Eigen::Vector2d& p) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& obstacle : world.obstacles) {
    d = std::min(d, signed_distance(obstacle, p));
  }
  return d;
}

std::optional<double> ray_hit(const Obstacle& obstacle,
                              const Eigen::Vector2d& origin,
                              const Eigen::Vector2d& dir) {
  if (const auto* circle = std::get_if<CircleObstacle>(&obstacle)) {
    const Eigen::Vector2d oc = origin - circle->center;
    const double b = oc.dot(dir);
    const double c = oc.squaredNorm() - circle->radius * circle->radius;
    const double disc = b * b - c;
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double t0 = -b - sq;
    const double t1 = -b + sq;
    if (t0 >= 0.0) return t0;
    if (t1 >= 0.0) return t1;  // origin inside the circle
    return std::nullopt;
  }
  const auto& poly = std::get<PolygonObstacle>(obstacle);
  const std::size_t n = poly.vertices.size();
  std::optional<double> best;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Eigen::Vector2d& a = poly.vertices[j];
    const Eigen::Vector2d seg = poly.vertices[i] - a;
    const double denom = dir.x() * seg.y() - dir.y() * seg.x();
    if (denom == 0.0) continue;  // parallel
    const Eigen::Vector2d ao = a - origin;
    const double t = (ao.x() * seg.y() - ao.y() * seg.x()) / denom;
    const double s = (ao.x() * dir.y() - ao.y() * dir.x()) / denom;
    if (t >= 0.0 && s >= 0.0 && s <= 1.0) {
      if (!best || t < *best) best = t;
    }
  }
  return best;
}

}  // namespace gridsafe
