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

#include "gridsafe/pgm.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace gridsafe {

namespace {

constexpr std::uint8_t kFreeGray = 255;
constexpr std::uint8_t kOccupiedGray = 0;
constexpr std::uint8_t kUnknownGray = 128;

// Import classes; +-5 saturates belief, matching the default clamp bounds.
constexpr double kImportOccupied = 5.0;
constexpr double kImportFree = -5.0;

void write_sidecar(const std::string& path, const GridFrame& frame,
                   const nlohmann::json& extra = {}) {
  nlohmann::json j;
  j["width"] = frame.width;
  j["height"] = frame.height;
  j["resolution"] = frame.resolution;
  j["origin"] = {frame.origin.x(), frame.origin.y()};
  for (const auto& [key, value] : extra.items()) j[key] = value;
  std::ofstream out(path + ".json");
  if (!out) throw std::runtime_error("cannot write " + path + ".json");
  out << j.dump(2) << "\n";
}

nlohmann::json read_sidecar(const std::string& path, GridFrame& frame) {
  std::ifstream in(path + ".json");
  if (!in) throw std::runtime_error("cannot read " + path + ".json");
  nlohmann::json j;
  in >> j;
  frame.width = j.at("width").get<int>();
  frame.height = j.at("height").get<int>();
  frame.resolution = j.at("resolution").get<double>();
  frame.origin.x() = j.at("origin").at(0).get<double>();
  frame.origin.y() = j.at("origin").at(1).get<double>();
  return j;
}

void write_p5(const std::string& path, int width, int height, int maxval,
              const std::vector<std::uint8_t>& raster) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "P5\n" << width << " " << height << "\n" << maxval << "\n";
  out.write(reinterpret_cast<const char*>(raster.data()),
            static_cast<std::streamsize>(raster.size()));
  if (!out) throw std::runtime_error("short write on " + path);
}

std::vector<std::uint8_t> read_p5(const std::string& path, int& width,
                                  int& height, int& maxval) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw std::runtime_error(path + " is not a P5 PGM");
  in >> width >> height >> maxval;
  in.get();  // single whitespace after the header
  const std::size_t bytes = static_cast<std::size_t>(width) * height *
                            (maxval > 255 ? 2 : 1);
  std::vector<std::uint8_t> raster(bytes);
  in.read(reinterpret_cast<char*>(raster.data()),
          static_cast<std::streamsize>(bytes));
  if (in.gcount() != static_cast<std::streamsize>(bytes)) {
    throw std::runtime_error("truncated raster in " + path);
  }
  return raster;
}

// Raster row 0 is the top of the image, which we map to the highest iy.
std::size_t raster_index(const GridFrame& frame, int ix, int iy) {
  const std::size_t row = static_cast<std::size_t>(frame.height - 1 - iy);
  return row * frame.width + ix;
}

}  // namespace

void write_occupancy_pgm(const std::string& path, const OccupancyGrid& map) {
  std::vector<std::uint8_t> raster(
      static_cast<std::size_t>(map.frame.width) * map.frame.height);
  for (int iy = 0; iy < map.frame.height; ++iy) {
    for (int ix = 0; ix < map.frame.width; ++ix) {
      const double l = map.log_odds(ix, iy);
      raster[raster_index(map.frame, ix, iy)] =
          l > 0.0 ? kOccupiedGray : (l < 0.0 ? kFreeGray : kUnknownGray);
    }
  }
  write_p5(path, map.frame.width, map.frame.height, 255, raster);
  write_sidecar(path, map.frame);
}

OccupancyGrid read_occupancy_pgm(const std::string& path) {
  GridFrame frame;
  read_sidecar(path, frame);
  int width = 0, height = 0, maxval = 0;
  const std::vector<std::uint8_t> raster = read_p5(path, width, height, maxval);
  if (width != frame.width || height != frame.height) {
    throw std::runtime_error("sidecar and raster dimensions disagree for " +
                             path);
  }
  OccupancyGrid map = OccupancyGrid::create(frame, 0.0);
  for (int iy = 0; iy < frame.height; ++iy) {
    for (int ix = 0; ix < frame.width; ++ix) {
      const std::uint8_t gray = raster[raster_index(frame, ix, iy)];
      map.log_odds(ix, iy) = gray == kOccupiedGray
                                 ? kImportOccupied
                                 : (gray == kUnknownGray ? 0.0 : kImportFree);
    }
  }
  return map;
}

void write_binary_pgm(const std::string& path, const BinaryGrid& grid) {
  std::vector<std::uint8_t> raster(
      static_cast<std::size_t>(grid.frame.width) * grid.frame.height);
  for (int iy = 0; iy < grid.frame.height; ++iy) {
    for (int ix = 0; ix < grid.frame.width; ++ix) {
      raster[raster_index(grid.frame, ix, iy)] =
          grid.occupied(ix, iy) ? kOccupiedGray : kFreeGray;
    }
  }
  write_p5(path, grid.frame.width, grid.frame.height, 255, raster);
  write_sidecar(path, grid.frame);
}

BinaryGrid read_binary_pgm(const std::string& path) {
  GridFrame frame;
  read_sidecar(path, frame);
  int width = 0, height = 0, maxval = 0;
  const std::vector<std::uint8_t> raster = read_p5(path, width, height, maxval);
  if (width != frame.width || height != frame.height) {
    throw std::runtime_error("sidecar and raster dimensions disagree for " +
                             path);
  }
  BinaryGrid grid = BinaryGrid::create(frame);
  for (int iy = 0; iy < frame.height; ++iy) {
    for (int ix = 0; ix < frame.width; ++ix) {
      grid.occupied(ix, iy) =
          raster[raster_index(frame, ix, iy)] == kOccupiedGray;
    }
  }
  return grid;
}

void write_field_pgm16(const std::string& path, const GridFrame& frame,
                       const Eigen::ArrayXXd& values) {
  const double v_min = values.minCoeff();
  const double v_max = values.maxCoeff();
  const double scale = v_max > v_min ? 65535.0 / (v_max - v_min) : 0.0;
  std::vector<std::uint8_t> raster(
      static_cast<std::size_t>(frame.width) * frame.height * 2);
  for (int iy = 0; iy < frame.height; ++iy) {
    for (int ix = 0; ix < frame.width; ++ix) {
      const auto gray = static_cast<std::uint16_t>(
          std::lround((values(ix, iy) - v_min) * scale));
      const std::size_t at = raster_index(frame, ix, iy) * 2;
      raster[at] = static_cast<std::uint8_t>(gray >> 8);  // big-endian
      raster[at + 1] = static_cast<std::uint8_t>(gray & 0xff);
    }
  }
  write_p5(path, frame.width, frame.height, 65535, raster);
  write_sidecar(path, frame, {{"value_min", v_min}, {"value_max", v_max}});
}

Eigen::ArrayXXd read_field_pgm16(const std::string& path, GridFrame* frame) {
  GridFrame local;
  const nlohmann::json sidecar = read_sidecar(path, local);
  if (frame) *frame = local;
  int width = 0, height = 0, maxval = 0;
  const std::vector<std::uint8_t> raster = read_p5(path, width, height, maxval);
  if (maxval != 65535) {
    throw std::runtime_error(path + " is not a 16-bit field PGM");
  }
  const double v_min = sidecar.at("value_min").get<double>();
  const double v_max = sidecar.at("value_max").get<double>();
  const double scale = (v_max - v_min) / 65535.0;
  Eigen::ArrayXXd values(width, height);
  for (int iy = 0; iy < height; ++iy) {
    for (int ix = 0; ix < width; ++ix) {
      const std::size_t at = raster_index(local, ix, iy) * 2;
      const int gray = (raster[at] << 8) | raster[at + 1];
      values(ix, iy) = v_min + gray * scale;
    }
  }
  return values;
}

void write_field_csv(const std::string& path, const GridFrame& frame,
                     const Eigen::ArrayXXd& values) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "width,height,resolution\n";
  char line[128];
  std::snprintf(line, sizeof(line), "%d,%d,%.17g\n", frame.width, frame.height,
                frame.resolution);
  out << line;
  char cell[64];
  for (int iy = 0; iy < frame.height; ++iy) {
    for (int ix = 0; ix < frame.width; ++ix) {
      std::snprintf(cell, sizeof(cell), "%.17g", values(ix, iy));
      out << cell << (ix + 1 < frame.width ? "," : "\n");
    }
  }
  if (!out) throw std::runtime_error("short write on " + path);
}

Eigen::ArrayXXd read_field_csv(const std::string& path, GridFrame* frame) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string header;
  std::getline(in, header);
  if (header != "width,height,resolution") {
    throw std::runtime_error("unexpected field CSV header in " + path);
  }
  GridFrame local;
  char comma = 0;
  in >> local.width >> comma >> local.height >> comma >> local.resolution;
  in.ignore(2, '\n');
  Eigen::ArrayXXd values(local.width, local.height);
  std::string line;
  for (int iy = 0; iy < local.height; ++iy) {
    if (!std::getline(in, line)) {
      throw std::runtime_error("truncated field CSV " + path);
    }
    std::istringstream row(line);
    for (int ix = 0; ix < local.width; ++ix) {
      row >> values(ix, iy);
      row >> comma;
    }
  }
  if (frame) *frame = local;
  return values;
}

}  // namespace gridsafe
