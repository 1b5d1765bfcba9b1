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

#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <optional>
#include <variant>
#include <vector>

namespace gridsafe {

struct CircleObstacle {
  Eigen::Vector2d center;
  double radius;
};

struct PolygonObstacle {
  // Vertices in order (either winding); the polygon must be simple.
  std::vector<Eigen::Vector2d> vertices;
};

using Obstacle = std::variant<CircleObstacle, PolygonObstacle>;

/// Ground-truth 2D environment: an axis-aligned workspace populated with
/// circular and simple-polygon obstacles.
struct World {
  Eigen::AlignedBox2d bounds;
  std::vector<Obstacle> obstacles;
};

/// True iff p is inside the polygon (boundary counts as inside).
bool point_in_polygon(const std::vector<Eigen::Vector2d>& vertices,
                      const Eigen::Vector2d& p);

/// True iff no two non-adjacent edges intersect and no vertices repeat.
bool polygon_is_simple(const std::vector<Eigen::Vector2d>& vertices);

/// Signed distance from p to the obstacle boundary: positive outside,
/// negative inside.
double signed_distance(const Obstacle& obstacle, const Eigen::Vector2d& p);

/// Minimum signed distance over all obstacles. Returns +infinity for an
/// empty world.
double clearance(const World& world, const Eigen::Vector2d& p);

/// Smallest t >= 0 with origin + t*dir on the obstacle boundary, if any.
/// dir must be a unit vector.
std::optional<double> ray_hit(const Obstacle& obstacle,
                              const Eigen::Vector2d& origin,
                              const Eigen::Vector2d& dir);

}  // namespace gridsafe
