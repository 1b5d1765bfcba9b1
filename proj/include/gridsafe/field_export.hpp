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
#include <vector>

#include <Eigen/Core>

#include "gridsafe/shaped_field.hpp"

namespace gridsafe {

struct QuiverOptions {
  int subsample = 4;  // one arrow every `subsample` cells
  double px_per_meter = 40.0;
};

// SVG quiver of the field gradient sampled on a subgrid of cell centers,
// value heatmap underneath, trajectory drawn on top as an orange polyline.
void write_quiver_svg(const std::string& path, const ShapedField& field,
                      const std::vector<Eigen::Vector2d>& trajectory,
                      const QuiverOptions& options = {});

}  // namespace gridsafe

