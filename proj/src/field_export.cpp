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

#include "gridsafe/field_export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

namespace gridsafe {

namespace {

struct Rgb {
  int r, g, b;
};

// Blue (low) through white (zero) to red (high), for signed field values.
Rgb diverging_color(double value, double max_abs) {
  const double t = max_abs > 0.0 ? std::clamp(value / max_abs, -1.0, 1.0) : 0.0;
  const auto mix = [](int from, int to, double s) {
    return static_cast<int>(std::lround(from + (to - from) * s));
  };
  if (t < 0.0) {
    return {mix(255, 49, -t), mix(255, 54, -t), mix(255, 149, -t)};
  }
  return {mix(255, 165, t), mix(255, 0, t), mix(255, 38, t)};
}

void append(std::string& out, const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  out += buf;
}

}  // namespace

void write_quiver_svg(const std::string& path, const ShapedField& field,
                      const std::vector<Eigen::Vector2d>& trajectory,
                      const QuiverOptions& options) {
  if (options.subsample < 1) {
    throw std::invalid_argument("quiver subsample must be >= 1");
  }
  const GridFrame& frame = field.frame;
  const double scale = options.px_per_meter;
  const double world_w = frame.width * frame.resolution;
  const double world_h = frame.height * frame.resolution;
  const Eigen::Vector2d low =
      frame.origin - 0.5 * frame.resolution * Eigen::Vector2d::Ones();
  const int px_w = static_cast<int>(std::lround(world_w * scale));
  const int px_h = static_cast<int>(std::lround(world_h * scale));
  // SVG y grows downward; the map's y grows upward.
  const auto to_px = [&](const Eigen::Vector2d& world) {
    return Eigen::Vector2d((world.x() - low.x()) * scale,
                           (world_h - (world.y() - low.y())) * scale);
  };

  std::string svg;
  svg.reserve(1 << 20);
  append(svg,
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" "
         "height=\"%d\" viewBox=\"0 0 %d %d\">\n",
         px_w, px_h, px_w, px_h);

  const double max_abs = field.node_values.abs().maxCoeff();
  const double cell_px = frame.resolution * scale;
  for (int iy = 0; iy < frame.height; ++iy) {
    for (int ix = 0; ix < frame.width; ++ix) {
      const Rgb c = diverging_color(field.node_values(ix, iy), max_abs);
      const Eigen::Vector2d corner =
          to_px(frame.cell_center(ix, iy) +
                0.5 * frame.resolution * Eigen::Vector2d(-1.0, 1.0));
      append(svg,
             "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
             "fill=\"rgb(%d,%d,%d)\"/>\n",
             corner.x(), corner.y(), cell_px + 0.01, cell_px + 0.01, c.r, c.g,
             c.b);
    }
  }

  svg += "<g stroke=\"#222222\" stroke-width=\"1\">\n";
  const double arrow_len = 0.45 * options.subsample * cell_px;
  const int margin = 2;
  for (int iy = margin; iy < frame.height - margin; iy += options.subsample) {
    for (int ix = margin; ix < frame.width - margin; ix += options.subsample) {
      const Eigen::Vector2d center = frame.cell_center(ix, iy);
      if (!in_domain(field, center)) continue;
      const FieldSample sample = eval(field, center);
      const double norm = sample.gradient.norm();
      if (norm < 1e-12) continue;
      const Eigen::Vector2d dir = sample.gradient / norm;
      const Eigen::Vector2d tip_world = center + 0.5 * arrow_len / scale * dir;
      const Eigen::Vector2d tail_world = center - 0.5 * arrow_len / scale * dir;
      const Eigen::Vector2d tip = to_px(tip_world);
      const Eigen::Vector2d tail = to_px(tail_world);
      const Eigen::Vector2d shaft = tip - tail;
      const Eigen::Vector2d left =
          tip - 0.3 * shaft + 0.15 * Eigen::Vector2d(-shaft.y(), shaft.x());
      const Eigen::Vector2d right =
          tip - 0.3 * shaft - 0.15 * Eigen::Vector2d(-shaft.y(), shaft.x());
      append(svg,
             "<path d=\"M %.2f %.2f L %.2f %.2f M %.2f %.2f L %.2f %.2f L "
             "%.2f %.2f\" fill=\"none\"/>\n",
             tail.x(), tail.y(), tip.x(), tip.y(), left.x(), left.y(), tip.x(),
             tip.y(), right.x(), right.y());
    }
  }
  svg += "</g>\n";

  if (trajectory.size() >= 2) {
    svg += "<polyline fill=\"none\" stroke=\"#ff7f0e\" stroke-width=\"2\" "
           "points=\"";
    for (const Eigen::Vector2d& p : trajectory) {
      const Eigen::Vector2d px = to_px(p);
      append(svg, "%.2f,%.2f ", px.x(), px.y());
    }
    svg += "\"/>\n";
  }
  svg += "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(svg.data(), static_cast<std::streamsize>(svg.size()));
  if (!out) throw std::runtime_error("short write on " + path);
}

}  // namespace gridsafe
