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

#include <Eigen/Dense>
#include <cstdint>

#include "gridsafe/robot.hpp"
#include "gridsafe/world.hpp"

namespace gridsafe {

struct LidarConfig {
  int num_beams = 360;
  double fov = kTwoPi;            // radians, (0, 2*pi]
  double max_range = 10.0;        // meters
  double range_noise_sigma = 0.0; // meters, >= 0
};

/// One sweep of simulated range returns. A range equal to max_range flags
/// "no hit"; all ranges lie in (0, max_range].
struct RangeScan {
  Eigen::VectorXd ranges;          // meters, one per beam
  Eigen::VectorXd beam_angles;     // radians, sensor frame
  RobotState pose_at_capture;
  double max_range = 0.0;
};

/// Beam angles in the sensor frame for a given configuration: a full-circle
/// fov spreads beams uniformly over [-pi, pi); a partial fov spans
/// [-fov/2, fov/2] inclusive.
Eigen::VectorXd beam_angles(const LidarConfig& cfg);

/// Casts one ray per beam against all obstacles (analytic ray/circle and
/// ray/segment intersections), clamps to max_range, and adds clamped
/// zero-mean Gaussian noise. Deterministic for a fixed seed.
///
/// Throws std::invalid_argument when the pose lies outside the world bounds.
RangeScan raycast_scan(const World& world, const RobotState& state,
                       const LidarConfig& cfg, std::uint64_t rng_seed);

}  // namespace gridsafe
