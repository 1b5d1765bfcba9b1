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

#include "gridsafe/robot.hpp"

#include <cmath>

#include "gridsafe/angles.hpp"
#include "gridsafe/world.hpp"

namespace gridsafe {

RobotState step_unicycle(const RobotState& state, const ControlInput& u,
                         double dt) {
  RobotState next;
  next.position = state.position + dt * u.v * state.heading_vector();
  next.heading = wrap_angle(state.heading + dt * u.omega);
  return next;
}

double bicycle_steering_angle(double v, double omega, double wheelbase) {
  if (v == 0.0) return 0.0;
  return std::atan(omega * wheelbase / v);
}

RobotState step_bicycle(const RobotState& state, const ControlInput& u,
                        double dt, double wheelbase) {
  if (u.v == 0.0) {
    RobotState next = state;
    next.heading = wrap_angle(state.heading + dt * u.omega);
    return next;
  }
  const double steer = bicycle_steering_angle(u.v, u.omega, wheelbase);
  RobotState next;
  next.position = state.position + dt * u.v * state.heading_vector();
  next.heading =
      wrap_angle(state.heading + dt * u.v / wheelbase * std::tan(steer));
  return next;
}

bool collision_check(const World& world, const RobotState& state,
                     double robot_radius) {
  return clearance(world, state.position) < robot_radius;
}

}  // namespace gridsafe
