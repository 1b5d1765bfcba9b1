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

#include <cmath>

#include <Eigen/Core>

namespace gridsafe {

// Placement of a regular 2D grid in the world frame. Cell (ix, iy) is the
// square of side `resolution` whose center sits at origin + (ix, iy) * resolution.
struct GridFrame {
  int width = 0;
  int height = 0;
  double resolution = 1.0;
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();

  Eigen::Vector2d cell_center(int ix, int iy) const {
    return origin + resolution * Eigen::Vector2d(ix, iy);
  }

  // Continuous grid coordinates; cell centers land on integers.
  Eigen::Vector2d world_to_grid(const Eigen::Vector2d& p) const {
    return (p - origin) / resolution;
  }

  // Index of the cell containing p.
  Eigen::Vector2i world_to_cell(const Eigen::Vector2d& p) const {
    const Eigen::Vector2d g = world_to_grid(p);
    return {static_cast<int>(std::floor(g.x() + 0.5)),
            static_cast<int>(std::floor(g.y() + 0.5))};
  }

  bool contains_cell(int ix, int iy) const {
    return ix >= 0 && ix < width && iy >= 0 && iy < height;
  }

  bool contains_cell(const Eigen::Vector2i& c) const {
    return contains_cell(c.x(), c.y());
  }

  friend bool operator==(const GridFrame&, const GridFrame&) = default;
};

}  // namespace gridsafe

