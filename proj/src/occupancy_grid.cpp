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

#include "gridsafe/occupancy_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gridsafe/distance_transform.hpp"

namespace gridsafe {

std::vector<Eigen::Vector2i> grid_ray_cells(const GridFrame& frame,
                                            const Eigen::Vector2d& start,
                                            const Eigen::Vector2d& end) {
  // Work in coordinates where cell (i, j) covers [i, i+1) x [j, j+1).
  const Eigen::Vector2d u0 =
      frame.world_to_grid(start) + Eigen::Vector2d(0.5, 0.5);
  const Eigen::Vector2d u1 =
      frame.world_to_grid(end) + Eigen::Vector2d(0.5, 0.5);
  Eigen::Vector2i cell(static_cast<int>(std::floor(u0.x())),
                       static_cast<int>(std::floor(u0.y())));
  const Eigen::Vector2i target(static_cast<int>(std::floor(u1.x())),
                               static_cast<int>(std::floor(u1.y())));
  const Eigen::Vector2d d = u1 - u0;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const int step_x = d.x() > 0 ? 1 : -1;
  const int step_y = d.y() > 0 ? 1 : -1;
  const double t_delta_x = d.x() == 0 ? kInf : std::abs(1.0 / d.x());
  const double t_delta_y = d.y() == 0 ? kInf : std::abs(1.0 / d.y());
  double t_max_x = kInf;
  double t_max_y = kInf;
  if (d.x() > 0) {
    t_max_x = (std::floor(u0.x()) + 1.0 - u0.x()) / d.x();
  } else if (d.x() < 0) {
    t_max_x = (std::floor(u0.x()) - u0.x()) / d.x();
  }
  if (d.y() > 0) {
    t_max_y = (std::floor(u0.y()) + 1.0 - u0.y()) / d.y();
  } else if (d.y() < 0) {
    t_max_y = (std::floor(u0.y()) - u0.y()) / d.y();
  }

  std::vector<Eigen::Vector2i> cells;
  bool was_inside = false;
  const int max_steps =
      std::abs(target.x() - cell.x()) + std::abs(target.y() - cell.y());
  for (int i = 0; i <= max_steps; ++i) {
    const bool inside = frame.contains_cell(cell);
    if (inside) {
      cells.push_back(cell);
      was_inside = true;
    } else if (was_inside) {
      break;  // the grid is convex, the ray cannot re-enter
    }
    if (cell == target) break;
    if (t_max_x < t_max_y) {
      cell.x() += step_x;
      t_max_x += t_delta_x;
    } else {
      cell.y() += step_y;
      t_max_y += t_delta_y;
    }
  }
  return cells;
}

OccupancyGrid update_from_scan(OccupancyGrid map, const RangeScan& scan,
                               const SensorModel& model) {
  const Eigen::Vector2d sensor = scan.pose_at_capture.position;
  if (!map.frame.contains_cell(map.frame.world_to_cell(sensor))) {
    throw std::invalid_argument("scan pose outside map extent");
  }
  const auto clampl = [&](double l) {
    return std::clamp(l, model.l_min, model.l_max);
  };
  for (int i = 0; i < scan.ranges.size(); ++i) {
    const double range = scan.ranges[i];
    const bool hit = range < scan.max_range;
    const double angle = scan.pose_at_capture.heading + scan.beam_angles[i];
    const Eigen::Vector2d endpoint =
        sensor + range * Eigen::Vector2d(std::cos(angle), std::sin(angle));
    const Eigen::Vector2i end_cell = map.frame.world_to_cell(endpoint);
    for (const Eigen::Vector2i& c : grid_ray_cells(map.frame, sensor, endpoint)) {
      double& l = map.log_odds(c.x(), c.y());
      if (c == end_cell) {
        if (hit) l = clampl(l + model.l_occ);
      } else {
        l = clampl(l + model.l_free);
      }
    }
  }
  return map;
}

BinaryGrid binarize(const OccupancyGrid& map, double threshold,
                    bool unknown_as_occupied) {
  BinaryGrid grid;
  grid.frame = map.frame;
  grid.occupied = unknown_as_occupied ? (map.log_odds >= threshold).eval()
                                      : (map.log_odds > threshold).eval();
  return grid;
}

BinaryGrid inflate(const BinaryGrid& grid, double radius) {
  if (radius < 0.0) throw std::invalid_argument("inflation radius must be >= 0");
  if (radius == 0.0) return grid;
  const double r_cells = radius / grid.frame.resolution;
  const double d_max = grid.frame.width + grid.frame.height + r_cells + 1.0;
  const SiteDistanceMap dt = site_distance_map(grid.occupied, 1.0, d_max);
  BinaryGrid out;
  out.frame = grid.frame;
  // Tolerant comparison: the distance is an exact sqrt of an integer but
  // radius/resolution may round, e.g. 0.3/0.1 = 2.9999999999999996.
  out.occupied = dt.distance <= r_cells * (1.0 + 1e-12) + 1e-12;
  return out;
}

OccupancyGrid recenter(OccupancyGrid map, const Eigen::Vector2d& desired_center,
                       double l_prior) {
  const Eigen::Vector2i center_cell(map.frame.width / 2, map.frame.height / 2);
  const Eigen::Vector2i shift =
      map.frame.world_to_cell(desired_center) - center_cell;
  if (shift == Eigen::Vector2i::Zero()) return map;

  OccupancyGrid out;
  out.frame = map.frame;
  out.frame.origin += map.frame.resolution * shift.cast<double>();
  out.log_odds = Eigen::ArrayXXd::Constant(map.frame.width, map.frame.height,
                                           l_prior);
  const int x0 = std::max(0, -shift.x());
  const int x1 = std::min(map.frame.width, map.frame.width - shift.x());
  const int y0 = std::max(0, -shift.y());
  const int y1 = std::min(map.frame.height, map.frame.height - shift.y());
  for (int ix = x0; ix < x1; ++ix) {
    for (int iy = y0; iy < y1; ++iy) {
      out.log_odds(ix, iy) = map.log_odds(ix + shift.x(), iy + shift.y());
    }
  }
  return out;
}

}  // namespace gridsafe
