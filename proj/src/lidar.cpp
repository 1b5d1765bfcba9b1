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

#include "gridsafe/lidar.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "gridsafe/angles.hpp"
#include "gridsafe/world.hpp"

namespace gridsafe {

namespace {

// Uniform double in [0, 1) with 53 random bits, identical on every platform.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller transform; std::normal_distribution output is
// implementation-defined, which would break cross-platform golden tests.
double standard_normal(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  while (u1 == 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

}  // namespace

Eigen::VectorXd beam_angles(const LidarConfig& config) {
  const int n = config.num_beams;
  Eigen::VectorXd angles(n);
  const bool full_circle = std::abs(config.fov - kTwoPi) < 1e-12;
  if (full_circle) {
    // Evenly spaced without duplicating the wrap-around direction.
    for (int i = 0; i < n; ++i) angles[i] = -kPi + i * kTwoPi / n;
  } else if (n == 1) {
    angles[0] = 0.0;
  } else {
    const double step = config.fov / (n - 1);
    for (int i = 0; i < n; ++i) angles[i] = -0.5 * config.fov + i * step;
  }
  return angles;
}

RangeScan raycast_scan(const World& world, const RobotState& state,
                       const LidarConfig& config, std::uint64_t rng_seed) {
  if (config.num_beams < 1) {
    throw std::invalid_argument("lidar needs at least one beam");
  }
  if (!world.bounds.contains(state.position)) {
    throw std::invalid_argument("sensor pose outside world bounds");
  }

  RangeScan scan;
  scan.beam_angles = beam_angles(config);
  scan.pose_at_capture = state;
  scan.max_range = config.max_range;
  scan.ranges.resize(config.num_beams);

  std::mt19937_64 rng(rng_seed);
  for (int i = 0; i < config.num_beams; ++i) {
    const double angle = state.heading + scan.beam_angles[i];
    const Eigen::Vector2d dir(std::cos(angle), std::sin(angle));
    double range = config.max_range;
    for (const auto& obstacle : world.obstacles) {
      const auto t = ray_hit(obstacle, state.position, dir);
      if (t && *t < range) range = *t;
    }
    if (config.range_noise_sigma > 0.0 && range < config.max_range) {
      range += config.range_noise_sigma * standard_normal(rng);
      range = std::clamp(range, 1e-6, config.max_range);
    }
    scan.ranges[i] = range;
  }
  return scan;
}

}  // namespace gridsafe
