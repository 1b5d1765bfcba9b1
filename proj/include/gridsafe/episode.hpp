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

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "gridsafe/controller.hpp"
#include "gridsafe/occupancy_grid.hpp"
#include "gridsafe/scenario.hpp"
#include "gridsafe/sdf.hpp"
#include "gridsafe/shaped_field.hpp"

namespace gridsafe {

struct TrajectoryRow {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double v_cmd = 0.0;
  double omega_cmd = 0.0;
  double h = 0.0;
  double hdot_plus_alpha_h = 0.0;
  double delta = 0.0;
  std::string qp_status;
  double phi = 0.0;  // ground-truth clearance from world geometry
  bool collision = false;
};

struct TrajectoryLog {
  std::vector<TrajectoryRow> rows;
};

enum class TerminationReason {
  kDuration,
  kCollision,
  kOutOfExtent,  // left the field's valid evaluation domain
  kWorldExit,    // left the world bounds
};

std::string to_string(TerminationReason reason);

struct EpisodeMetrics {
  double min_phi_over_path = 0.0;
  double min_h = 0.0;
  bool collision = false;
  double mean_step_time = 0.0;  // controller pipeline, seconds
  double max_step_time = 0.0;
  double map_update_rate_hz = 0.0;
  double path_length = 0.0;
  double final_heading_error = 0.0;
  TerminationReason termination = TerminationReason::kDuration;
  int steps = 0;
};

// Wall time spent per pipeline stage across an episode, for `bench`.
struct StageTimings {
  double scan = 0.0;
  double map_update = 0.0;
  double binarize_inflate = 0.0;
  double sdf = 0.0;
  double shaping = 0.0;
  double control = 0.0;
  int steps = 0;
};

// Everything the pipeline derived at one step, for field export.
struct EpisodeSnapshot {
  int step = 0;
  RobotState state;
  OccupancyGrid map;
  BinaryGrid inflated;
  SdfField sdf;
  ShapedField field;
  std::vector<Eigen::Vector2d> path;
};

struct EpisodeHooks {
  // Called as each pipeline stage finishes; stages appear in loop order.
  std::function<void(std::string_view stage, int step)> on_stage;
  int snapshot_step = -1;
  std::function<void(const EpisodeSnapshot&)> on_snapshot;
  StageTimings* timings = nullptr;
};

struct EpisodeResult {
  TrajectoryLog log;
  EpisodeMetrics metrics;
};

// Runs the sense -> map -> field -> control -> integrate loop at period dt
// until the duration elapses, the robot collides, or it leaves the usable
// area. Deterministic for a given scenario and seed.
EpisodeResult run_episode(const Scenario& scenario,
                          const EpisodeHooks& hooks = {});

struct BatchRow {
  std::string scenario;
  bool ok = false;
  std::string error;
  EpisodeMetrics metrics;
};

// Independent episodes, at most `jobs` in flight; per-episode failures are
// captured in the row instead of aborting the batch.
std::vector<BatchRow> run_batch(const std::vector<std::string>& paths,
                                int jobs);

void write_log_csv(const std::string& path, const TrajectoryLog& log);
void write_summary_csv(const std::string& path,
                       const std::vector<BatchRow>& rows);

// Replays the scenario to `at_step` and writes the occupancy PGM, raw and
// shaped field CSVs, a 16-bit field PGM, the inflated binary PGM, and an SVG
// quiver of the field gradient with the path so far overlaid.
void export_fields(const Scenario& scenario, int at_step,
                   const std::string& out_dir);

}  // namespace gridsafe

