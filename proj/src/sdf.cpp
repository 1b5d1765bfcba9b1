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

#include "gridsafe/sdf.hpp"

#include <stdexcept>

#include "gridsafe/distance_transform.hpp"

namespace gridsafe {

SdfField signed_distance_field(const BinaryGrid& grid) {
  SdfField out;
  out.frame = grid.frame;
  out.d_max = grid.frame.resolution * (grid.frame.width + grid.frame.height);
  const SiteDistanceMap to_occupied =
      site_distance_map(grid.occupied, grid.frame.resolution, out.d_max);
  const SiteDistanceMap to_free =
      site_distance_map(!grid.occupied, grid.frame.resolution, out.d_max);
  out.values = grid.occupied.select(-to_free.distance, to_occupied.distance);
  out.site_x = grid.occupied.select(to_free.site_x, to_occupied.site_x);
  out.site_y = grid.occupied.select(to_free.site_y, to_occupied.site_y);
  return out;
}

GradientField gradient_field(const SdfField& sdf) {
  const int w = sdf.frame.width;
  const int h = sdf.frame.height;
  if (w < 2 || h < 2) {
    throw std::invalid_argument("gradient_field needs at least a 2x2 grid");
  }
  GradientField out;
  out.frame = sdf.frame;
  out.grad_x.resize(w, h);
  out.grad_y.resize(w, h);
  const double inv_res = 1.0 / sdf.frame.resolution;
  const auto& v = sdf.values;
  for (int iy = 0; iy < h; ++iy) {
    for (int ix = 0; ix < w; ++ix) {
      if (ix == 0) {
        out.grad_x(ix, iy) = (v(1, iy) - v(0, iy)) * inv_res;
      } else if (ix == w - 1) {
        out.grad_x(ix, iy) = (v(w - 1, iy) - v(w - 2, iy)) * inv_res;
      } else {
        out.grad_x(ix, iy) = (v(ix + 1, iy) - v(ix - 1, iy)) * 0.5 * inv_res;
      }
      if (iy == 0) {
        out.grad_y(ix, iy) = (v(ix, 1) - v(ix, 0)) * inv_res;
      } else if (iy == h - 1) {
        out.grad_y(ix, iy) = (v(ix, h - 1) - v(ix, h - 2)) * inv_res;
      } else {
        out.grad_y(ix, iy) = (v(ix, iy + 1) - v(ix, iy - 1)) * 0.5 * inv_res;
      }
    }
  }
  return out;
}

}  // namespace gridsafe
