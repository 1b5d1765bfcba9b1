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

#include "gridsafe/episode.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "gridsafe/angles.hpp"
#include "gridsafe/field_export.hpp"
#include "gridsafe/lidar.hpp"
#include "gridsafe/pgm.hpp"
#include "gridsafe/world.hpp"

namespace gridsafe {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t step_seed(std::uint64_t scenario_seed, int step) {
  return splitmix64(scenario_seed ^ splitmix64(static_cast<std::uint64_t>(step) + 1));
}

GridFrame initial_frame(const Scenario& s) {
  GridFrame frame;
  frame.resolution = s.map.resolution;
  if (s.map.mode == MapMode::kGlobal) {
    const Eigen::Vector2d size = s.world.bounds.sizes();
    frame.width = static_cast<int>(std::floor(size.x() / frame.resolution)) + 1;
    frame.height = static_cast<int>(std::floor(size.y() / frame.resolution)) + 1;
    frame.origin = s.world.bounds.min();
    return frame;
  }
  const int n = std::max(4, static_cast<int>(std::lround(s.map.extent /
                                                         frame.resolution)));
  frame.width = n;
  frame.height = n;
  // Keep the origin on the resolution lattice so later re-anchoring shifts
  // by whole cells.
  const Eigen::Vector2d snapped =
      (s.initial_state.position / frame.resolution).array().round() *
      frame.resolution;
  frame.origin = snapped - frame.resolution * Eigen::Vector2d(n / 2, n / 2);
  return frame;
}

class StageClock {
 public:
  explicit StageClock(double* sink) : sink_(sink) {
    if (sink_) start_ = std::chrono::steady_clock::now();
  }
  ~StageClock() {
    if (sink_) {
      *sink_ += std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                              start_)
                    .count();
    }
  }
  StageClock(const StageClock&) = delete;
  StageClock& operator=(const StageClock&) = delete;

 private:
  double* sink_;
  std::chrono::steady_clock::time_point start_;
};

const char* bool_text(bool b) { return b ? "1" : "0"; }

}  // namespace

std::string to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::kDuration:
      return "duration";
    case TerminationReason::kCollision:
      return "collision";
    case TerminationReason::kOutOfExtent:
      return "out_of_extent";
    case TerminationReason::kWorldExit:
      return "world_exit";
  }
  return "unknown";
}

EpisodeResult run_episode(const Scenario& scenario, const EpisodeHooks& hooks) {
  {
    const std::vector<std::string> problems = validate(scenario);
    std::string fatal;
    for (const std::string& p : problems) {
      if (p.rfind("warning:", 0) != 0) fatal += (fatal.empty() ? "" : "; ") + p;
    }
    if (!fatal.empty()) {
      throw std::invalid_argument("invalid scenario: " + fatal);
    }
  }

  const auto stage = [&](std::string_view name, int step) {
    if (hooks.on_stage) hooks.on_stage(name, step);
  };
  StageTimings local_timings;
  StageTimings* timings = hooks.timings ? hooks.timings : &local_timings;

  OccupancyGrid map = OccupancyGrid::create(initial_frame(scenario),
                                            scenario.map.sensor.l_prior);
  RobotState state = scenario.initial_state;
  const int total_steps =
      static_cast<int>(std::ceil(scenario.duration / scenario.dt - 1e-9));

  EpisodeResult result;
  result.metrics.min_phi_over_path = std::numeric_limits<double>::infinity();
  result.metrics.min_h = std::numeric_limits<double>::infinity();
  result.metrics.termination = TerminationReason::kDuration;

  std::size_t waypoint_index = 0;
  double target_heading = scenario.clf.target_heading;
  std::vector<Eigen::Vector2d> path;
  path.reserve(total_steps + 1);
  double control_time_total = 0.0;
  double control_time_max = 0.0;
  int map_updates = 0;

  for (int step = 0; step < total_steps; ++step) {
    if (!scenario.world.bounds.contains(state.position)) {
      result.metrics.termination = TerminationReason::kWorldExit;
      break;
    }
    path.push_back(state.position);

    RangeScan scan;
    {
      StageClock clock(&timings->scan);
      scan = raycast_scan(scenario.world, state, scenario.lidar,
                          step_seed(scenario.seed, step));
      stage("scan", step);
    }

    if (step % scenario.map.map_every_n == 0) {
      StageClock clock(&timings->map_update);
      if (scenario.map.mode == MapMode::kEgoLocal) {
        map = recenter(std::move(map), state.position,
                       scenario.map.sensor.l_prior);
      }
      map = update_from_scan(std::move(map), scan, scenario.map.sensor);
      ++map_updates;
      stage("map_update", step);
    }

    BinaryGrid inflated;
    {
      StageClock clock(&timings->binarize_inflate);
      const BinaryGrid binary = binarize(map, scenario.map.binarize_threshold,
                                         scenario.map.unknown_as_occupied);
      inflated = inflate(binary, scenario.map.inflation_radius);
      stage("binarize_inflate", step);
    }

    SdfField sdf;
    {
      StageClock clock(&timings->sdf);
      sdf = signed_distance_field(inflated);
      stage("sdf", step);
    }

    ShapedField field;
    {
      StageClock clock(&timings->shaping);
      field = ShapedField::build(sdf, scenario.shaping);
      if (scenario.map.half_plane) mask_rear_half_plane(field, state);
      stage("shaping", step);
    }

    if (hooks.on_snapshot && step == hooks.snapshot_step) {
      hooks.on_snapshot(
          {step, state, map, inflated, sdf, field, path});
    }

    // Waypoints are expressed as positions; the heading objective tracks the
    // bearing to the active one.
    while (waypoint_index < scenario.waypoints.size() &&
           (scenario.waypoints[waypoint_index] - state.position).norm() <
               scenario.waypoint_switch_radius) {
      ++waypoint_index;
    }
    if (waypoint_index < scenario.waypoints.size()) {
      const Eigen::Vector2d to_wp =
          scenario.waypoints[waypoint_index] - state.position;
      target_heading = std::atan2(to_wp.y(), to_wp.x());
    }
    ClfParams clf = scenario.clf;
    clf.target_heading = target_heading;

    ControlStepResult control;
    {
      StageClock clock(&timings->control);
      const auto t0 = std::chrono::steady_clock::now();
      control = control_step(state, field, scenario.cbf, clf, scenario.qp);
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      control_time_total += elapsed;
      control_time_max = std::max(control_time_max, elapsed);
      stage("control", step);
    }

    const double phi =
        clearance(scenario.world, state.position) - scenario.robot_radius;
    const bool collided = phi < 0.0;

    TrajectoryRow row;
    row.t = step * scenario.dt;
    row.x = state.position.x();
    row.y = state.position.y();
    row.theta = state.heading;
    row.v_cmd = control.u.v;
    row.omega_cmd = control.u.omega;
    row.h = control.h;
    row.hdot_plus_alpha_h = control.hdot_plus_alpha_h;
    row.delta = control.delta;
    row.qp_status = to_string(control.status);
    row.phi = phi;
    row.collision = collided;
    result.log.rows.push_back(std::move(row));

    result.metrics.min_phi_over_path =
        std::min(result.metrics.min_phi_over_path, phi);
    if (control.status != ControlStatus::kOutOfExtent) {
      result.metrics.min_h = std::min(result.metrics.min_h, control.h);
    }

    if (collided) {
      result.metrics.termination = TerminationReason::kCollision;
      break;
    }
    if (control.status == ControlStatus::kOutOfExtent) {
      result.metrics.termination = TerminationReason::kOutOfExtent;
      break;
    }

    {
      StageClock clock(nullptr);
      state = scenario.robot.kind == RobotModelKind::kUnicycle
                  ? step_unicycle(state, control.u, scenario.dt)
                  : step_bicycle(state, control.u, scenario.dt,
                                 scenario.robot.wheelbase);
      stage("integrate", step);
    }
    ++timings->steps;
  }

  const int steps = static_cast<int>(result.log.rows.size());
  result.metrics.steps = steps;
  result.metrics.collision =
      result.metrics.termination == TerminationReason::kCollision;
  result.metrics.mean_step_time = steps > 0 ? control_time_total / steps : 0.0;
  result.metrics.max_step_time = control_time_max;
  const double map_stage_time = timings->map_update + timings->binarize_inflate +
                                timings->sdf + timings->shaping;
  result.metrics.map_update_rate_hz =
      map_stage_time > 0.0 ? map_updates / map_stage_time : 0.0;
  double length = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    length += (path[i] - path[i - 1]).norm();
  }
  result.metrics.path_length = length;
  result.metrics.final_heading_error =
      wrap_angle(state.heading - target_heading);
  if (steps == 0) {
    result.metrics.min_phi_over_path = 0.0;
    result.metrics.min_h = 0.0;
  }
  return result;
}

std::vector<BatchRow> run_batch(const std::vector<std::string>& paths,
                                int jobs) {
  std::vector<BatchRow> rows(paths.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= paths.size()) return;
      BatchRow& row = rows[i];
      row.scenario = paths[i];
      try {
        const Scenario s = load_scenario(paths[i]);
        row.metrics = run_episode(s).metrics;
        row.ok = true;
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
      }
    }
  };
  const int n_threads = std::max(
      1, std::min<int>(jobs, static_cast<int>(paths.size())));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return rows;
}

void write_log_csv(const std::string& path, const TrajectoryLog& log) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "t,x,y,theta,v_cmd,omega_cmd,h,hdot_plus_alpha_h,delta,qp_status,"
         "phi,collision\n";
  char buf[512];
  for (const TrajectoryRow& r : log.rows) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%.17g,%s\n",
                  r.t, r.x, r.y, r.theta, r.v_cmd, r.omega_cmd, r.h,
                  r.hdot_plus_alpha_h, r.delta, r.qp_status.c_str(), r.phi,
                  bool_text(r.collision));
    out << buf;
  }
  if (!out) throw std::runtime_error("short write on " + path);
}

void write_summary_csv(const std::string& path,
                       const std::vector<BatchRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "scenario,ok,error,collision,min_phi,min_h,path_length,"
         "final_heading_error,mean_step_time,max_step_time,"
         "map_update_rate_hz,steps,termination\n";
  char buf[512];
  for (const BatchRow& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%s,%s,%s,%s,%.10g,%.10g,%.10g,%.10g,%.6g,%.6g,%.6g,%d,%s\n",
                  r.scenario.c_str(), bool_text(r.ok), r.error.c_str(),
                  bool_text(r.metrics.collision), r.metrics.min_phi_over_path,
                  r.metrics.min_h, r.metrics.path_length,
                  r.metrics.final_heading_error, r.metrics.mean_step_time,
                  r.metrics.max_step_time, r.metrics.map_update_rate_hz,
                  r.metrics.steps, to_string(r.metrics.termination).c_str());
    out << buf;
  }
  if (!out) throw std::runtime_error("short write on " + path);
}

void export_fields(const Scenario& scenario, int at_step,
                   const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  bool captured = false;
  EpisodeSnapshot snapshot;
  EpisodeHooks hooks;
  hooks.snapshot_step = at_step;
  hooks.on_snapshot = [&](const EpisodeSnapshot& s) {
    snapshot = s;
    captured = true;
  };
  run_episode(scenario, hooks);
  if (!captured) {
    throw std::runtime_error("episode ended before step " +
                             std::to_string(at_step));
  }

  const std::filesystem::path dir(out_dir);
  write_occupancy_pgm((dir / "occupancy.pgm").string(), snapshot.map);
  write_binary_pgm((dir / "inflated.pgm").string(), snapshot.inflated);
  write_field_csv((dir / "phi.csv").string(), snapshot.sdf.frame,
                  snapshot.sdf.values);
  write_field_pgm16((dir / "phi.pgm").string(), snapshot.sdf.frame,
                    snapshot.sdf.values);
  write_field_csv((dir / "phi_shaped.csv").string(), snapshot.field.frame,
                  snapshot.field.node_values);
  write_quiver_svg((dir / "gradient.svg").string(), snapshot.field,
                   snapshot.path);
}

}  // namespace gridsafe
