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

#include "gridsafe/distance_transform.hpp"

#include <cmath>
#include <vector>

namespace gridsafe {

namespace {

// Large but finite: infinities would produce NaN in envelope arithmetic.
constexpr double kFar = 1e15;
// Sentinel for envelope breakpoints; must exceed any reachable intersection
// abscissa, which can grow to about kFar^2 / 2 for site-free lines.
constexpr double kZFar = 1e300;

}  // namespace

SiteDistanceMap site_distance_map(const BoolArray& sites, double resolution,
                                  double d_max) {
  const int w = static_cast<int>(sites.rows());
  const int h = static_cast<int>(sites.cols());
  SiteDistanceMap out;
  out.distance = Eigen::ArrayXXd::Constant(w, h, d_max);
  out.site_x = Eigen::ArrayXXi::Constant(w, h, -1);
  out.site_y = Eigen::ArrayXXi::Constant(w, h, -1);
  if (w == 0 || h == 0 || !sites.any()) return out;

  // Pass 1: per column-line iy, nearest site along x. g holds the absolute
  // cell offset (exact small integer), sx the winning x index.
  Eigen::ArrayXXd g(w, h);
  Eigen::ArrayXXi sx(w, h);
  for (int iy = 0; iy < h; ++iy) {
    int last = -1;
    for (int ix = 0; ix < w; ++ix) {
      if (sites(ix, iy)) last = ix;
      g(ix, iy) = last < 0 ? kFar : ix - last;
      sx(ix, iy) = last;
    }
    int next = -1;
    for (int ix = w - 1; ix >= 0; --ix) {
      if (sites(ix, iy)) next = ix;
      if (next >= 0 && next - ix < g(ix, iy)) {
        g(ix, iy) = next - ix;
        sx(ix, iy) = next;
      }
    }
  }

  // Pass 2: per row-line ix, lower envelope of the parabolas
  // (iy - q)^2 + g(ix, q)^2 over q. The envelope bookkeeping uses floating
  // point, but the reported distance is recomputed from the winning site's
  // integer offsets, so it is exact.
  std::vector<int> v(h);
  std::vector<double> z(h + 1);
  std::vector<double> f(h);
  for (int ix = 0; ix < w; ++ix) {
    for (int q = 0; q < h; ++q) {
      const double gq = g(ix, q);
      f[q] = gq >= kFar ? kFar * kFar : gq * gq;
    }
    int k = 0;
    v[0] = 0;
    z[0] = -kZFar;
    z[1] = kZFar;
    for (int q = 1; q < h; ++q) {
      double s = ((f[q] + static_cast<double>(q) * q) -
                  (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
                 (2.0 * q - 2.0 * v[k]);
      while (s <= z[k]) {
        --k;
        s = ((f[q] + static_cast<double>(q) * q) -
             (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
            (2.0 * q - 2.0 * v[k]);
      }
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = kZFar;
    }
    k = 0;
    for (int iy = 0; iy < h; ++iy) {
      while (z[k + 1] < iy) ++k;
      const int q = v[k];
      if (f[q] >= kFar) continue;  // no site in any line (handled above)
      const int site_x = sx(ix, q);
      const double dx = ix - site_x;
      const double dy = iy - q;
      out.distance(ix, iy) = resolution * std::sqrt(dx * dx + dy * dy);
      out.site_x(ix, iy) = site_x;
      out.site_y(ix, iy) = q;
    }
  }
  return out;
}

Eigen::ArrayXXd distance_transform(const BinaryGrid& grid) {
  const double d_max =
      grid.frame.resolution * (grid.frame.width + grid.frame.height);
  return site_distance_map(grid.occupied, grid.frame.resolution, d_max)
      .distance;
}

}  // namespace gridsafe
