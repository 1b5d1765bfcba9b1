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

#include <Eigen/Core>

#include "gridsafe/occupancy_grid.hpp"

namespace gridsafe {

// Distance to the nearest site cell plus that site's index, per cell.
// site_x/site_y are -1 where the grid holds no site at all; there the
// distance is the caller's d_max sentinel.
struct SiteDistanceMap {
  Eigen::ArrayXXd distance;
  Eigen::ArrayXXi site_x;
  Eigen::ArrayXXi site_y;
};

// Exact Euclidean distance from every cell center to the nearest center of a
// cell where `sites` is true, in meters. Two separable lower-envelope passes;
// the result is exact because squared center distances are small integers in
// cell units.
SiteDistanceMap site_distance_map(const BoolArray& sites, double resolution,
                                  double d_max);

// Distance to the nearest occupied cell. Fully-free grids yield the sentinel
// resolution * (width + height) everywhere.
Eigen::ArrayXXd distance_transform(const BinaryGrid& grid);

}  // namespace gridsafe

