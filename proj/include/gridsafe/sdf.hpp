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

#include "gridsafe/grid_frame.hpp"
#include "gridsafe/occupancy_grid.hpp"

namespace gridsafe {

// Signed center-to-center Euclidean distance field: positive on free cells
// (distance to the nearest occupied cell), negative on occupied cells
// (distance to the nearest free cell). site_x/site_y record the nearest
// opposite-occupancy cell per cell (-1 when the grid is uniform), which lets
// tests locate the cut locus where that assignment jumps.
struct SdfField {
  GridFrame frame;
  Eigen::ArrayXXd values;
  Eigen::ArrayXXi site_x;
  Eigen::ArrayXXi site_y;
  double d_max = 0.0;
};

// Per-cell spatial derivative of an SdfField, in meters per meter. Central
// differences in the interior, one-sided at the borders.
struct GradientField {
  GridFrame frame;
  Eigen::ArrayXXd grad_x;
  Eigen::ArrayXXd grad_y;
};

SdfField signed_distance_field(const BinaryGrid& grid);

GradientField gradient_field(const SdfField& sdf);

}  // namespace gridsafe

