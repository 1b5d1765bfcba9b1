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

#include <string>

#include <Eigen/Core>

#include "gridsafe/grid_frame.hpp"
#include "gridsafe/occupancy_grid.hpp"

namespace gridsafe {

// Binary P5 images with a JSON sidecar at <path>.json carrying the grid
// placement. Rasters are written y-flipped so north is up in image viewers.
// Occupancy uses the trinary gray convention 255 = free, 0 = occupied,
// 128 = unknown, classified by the sign of the log-odds; import maps those
// classes back to -5 / +5 / 0 so a re-export is bit-exact.

void write_occupancy_pgm(const std::string& path, const OccupancyGrid& map);
OccupancyGrid read_occupancy_pgm(const std::string& path);

void write_binary_pgm(const std::string& path, const BinaryGrid& grid);
BinaryGrid read_binary_pgm(const std::string& path);

// 16-bit P5 (big-endian samples) for real-valued fields; the affine scale
// mapping gray back to field units is recorded in the sidecar.
void write_field_pgm16(const std::string& path, const GridFrame& frame,
                       const Eigen::ArrayXXd& values);
Eigen::ArrayXXd read_field_pgm16(const std::string& path,
                                 GridFrame* frame = nullptr);

// CSV with a two-line preamble (names, then values) of width, height,
// resolution, followed by `height` rows of `width` values.
void write_field_csv(const std::string& path, const GridFrame& frame,
                     const Eigen::ArrayXXd& values);
Eigen::ArrayXXd read_field_csv(const std::string& path,
                               GridFrame* frame = nullptr);

}  // namespace gridsafe

