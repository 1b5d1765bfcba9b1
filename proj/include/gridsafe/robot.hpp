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

#include "gridsafe/angles.hpp"
#include "gridsafe/world.hpp"

namespace gridsafe {

/// Planar pose; heading is kept in (-pi, pi].
struct RobotState {
  Eigen::Vector2d position{0.0, 0.0};
  double heading = 0.0;

  Eigen::Vector2d heading_vector() const {
    return {std::cos(heading), std::sin(heading)};
  }
};

/// Commanded linear and angular speed.
struct ControlInput {
  double v = 0.0;      // m/s
  double omega = 0.0;  // rad/s
};

/// Forward-Euler step of the unicycle model. dt must be positive.
RobotState step_unicycle(const RobotState& state, const ControlInput& u,
                         double dt);

/// Steering angle that realizes yaw rate omega at speed v on a rear-axle
/// bicycle with the given wheelbase. Zero when v == 0.
double bicycle_steering_angle(double v, double omega, double wheelbase);

/// Forward-Euler step of the rear-axle kinematic bicycle model, with the
/// steering angle derived from (v, omega). When v == 0 the update degenerates
/// to a pure rotation by omega*dt.
RobotState step_bicycle(const RobotState& state, const ControlInput& u,
                        double dt, double wheelbase);

/// True iff the disc of robot_radius at the robot position overlaps any
/// obstacle. Touching (distance exactly equal) does not count.
bool collision_check(const World& world, const RobotState& state,
                     double robot_radius);

}  // namespace gridsafe
