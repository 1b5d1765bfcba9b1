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

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gridsafe/controller.hpp"
#include "gridsafe/lidar.hpp"
#include "gridsafe/occupancy_grid.hpp"
#include "gridsafe/robot.hpp"
#include "gridsafe/shaped_field.hpp"
#include "gridsafe/world.hpp"

namespace gridsafe {

enum class MapMode {
  kEgoLocal,  // square map re-anchored to the robot every step
  kGlobal,    // fixed map spanning the world bounds
};

struct MapConfig {
  MapMode mode = MapMode::kEgoLocal;
  double resolution = 0.1;
  double extent = 12.0;  // side length of the ego-local square, meters
  SensorModel sensor;
  double binarize_threshold = 0.0;
  bool unknown_as_occupied = false;
  double inflation_radius = 0.0;
  bool half_plane = false;  // mask the field behind the robot
  int map_every_n = 1;      // map update every n-th control step
};

enum class RobotModelKind {
  kUnicycle,
  kBicycle,
};

struct RobotModel {
  RobotModelKind kind = RobotModelKind::kUnicycle;
  double wheelbase = 0.5;  // bicycle only
};

struct Scenario {
  std::string name = "scenario";
  World world;
  RobotModel robot;
  RobotState initial_state;
  double robot_radius = 0.3;
  LidarConfig lidar;
  MapConfig map;
  ShapingParams shaping;
  CbfParams cbf;
  ClfParams clf;
  // Empty: clf.target_heading is fixed. Otherwise the target heading is the
  // bearing to the active waypoint, advancing when within switch_radius.
  std::vector<Eigen::Vector2d> waypoints;
  double waypoint_switch_radius = 0.5;
  QpSettings qp;
  double dt = 0.05;
  double duration = 30.0;
  std::uint64_t seed = 0;
};

// Strict JSON decoding: unknown keys and type mismatches throw
// std::runtime_error naming the offending key.
Scenario scenario_from_json_text(const std::string& text);
Scenario load_scenario(const std::string& path);
std::string scenario_to_json_text(const Scenario& s);

// Every violated invariant as one human-readable line; empty means valid.
std::vector<std::string> validate(const Scenario& s);

// Seeded 40 m x 10 m walled corridor with box and disk clutter sized like
// parked cars and pedestrians, start area kept clear, waypoints down the
// middle. The forward-invariance batch is 20 seeds of this family.
Scenario corridor_clutter_scenario(std::uint64_t seed);

}  // namespace gridsafe

