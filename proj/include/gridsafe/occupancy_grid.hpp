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

#include <vector>

#include <Eigen/Core>

#include "gridsafe/grid_frame.hpp"
#include "gridsafe/lidar.hpp"

namespace gridsafe {

// Additive log-odds inverse sensor model. Traversed cells accumulate l_free,
// hit cells accumulate l_occ, everything clamped to [l_min, l_max].
struct SensorModel {
  double l_occ = 0.85;
  double l_free = -0.4;
  double l_prior = 0.0;
  double l_min = -5.0;
  double l_max = 5.0;
};

// Log-odds occupancy belief. log_odds(ix, iy) is the belief for grid cell
// (ix, iy); the array therefore has `width` rows and `height` columns.
struct OccupancyGrid {
  GridFrame frame;
  Eigen::ArrayXXd log_odds;

  static OccupancyGrid create(const GridFrame& frame, double l_prior = 0.0) {
    return {frame,
            Eigen::ArrayXXd::Constant(frame.width, frame.height, l_prior)};
  }
};

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Hard occupied/free classification of an OccupancyGrid.
struct BinaryGrid {
  GridFrame frame;
  BoolArray occupied;

  static BinaryGrid create(const GridFrame& frame, bool value = false) {
    return {frame, BoolArray::Constant(frame.width, frame.height, value)};
  }
};

// Cells visited by the segment from `start` to `end`, in order, clipped to the
// grid. Includes the cell containing `start` and the cell containing `end`.
std::vector<Eigen::Vector2i> grid_ray_cells(const GridFrame& frame,
                                            const Eigen::Vector2d& start,
                                            const Eigen::Vector2d& end);

// Folds one scan into the map. Beam endpoints strictly inside max_range mark
// their cell occupied; every cell crossed on the way is marked free.
// Throws std::invalid_argument when the scan pose is outside the map extent.
OccupancyGrid update_from_scan(OccupancyGrid map, const RangeScan& scan,
                               const SensorModel& model);

// Occupied iff log-odds exceeds `threshold` (strictly; cells still at the
// prior stay free). With unknown_as_occupied the comparison becomes >=, the
// conservative reading where unexplored space counts as an obstacle.
BinaryGrid binarize(const OccupancyGrid& map, double threshold = 0.0,
                    bool unknown_as_occupied = false);

// Grows the occupied set by `radius` meters: a cell turns occupied when its
// center is within `radius` of some input occupied cell's center.
BinaryGrid inflate(const BinaryGrid& grid, double radius);

// Translates the map so its center cell lands on the cell containing
// `desired_center`, scrolling contents by whole cells and filling revealed
// area with l_prior. The origin stays on the original resolution lattice.
OccupancyGrid recenter(OccupancyGrid map, const Eigen::Vector2d& desired_center,
                       double l_prior = 0.0);

}  // namespace gridsafe

