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

#include <fnmatch.h>

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "gridsafe/episode.hpp"
#include "gridsafe/scenario.hpp"

namespace fs = std::filesystem;

namespace {

std::vector<std::string> expand_scenarios(const std::string& spec) {
  std::vector<std::string> paths;
  if (fs::is_directory(spec)) {
    for (const fs::directory_entry& entry : fs::directory_iterator(spec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        paths.push_back(entry.path().string());
      }
    }
  } else {
    const fs::path pattern(spec);
    const fs::path dir =
        pattern.parent_path().empty() ? fs::path(".") : pattern.parent_path();
    if (fs::is_directory(dir)) {
      for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() &&
            fnmatch(pattern.filename().string().c_str(),
                    entry.path().filename().string().c_str(), 0) == 0) {
          paths.push_back(entry.path().string());
        }
      }
    }
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

void print_metrics(const gridsafe::EpisodeMetrics& m) {
  std::printf("steps               %d\n", m.steps);
  std::printf("termination         %s\n",
              gridsafe::to_string(m.termination).c_str());
  std::printf("collision           %s\n", m.collision ? "yes" : "no");
  std::printf("min clearance       %.4f m\n", m.min_phi_over_path);
  std::printf("min barrier value   %.4f\n", m.min_h);
  std::printf("path length         %.3f m\n", m.path_length);
  std::printf("final heading error %.4f rad\n", m.final_heading_error);
  std::printf("mean control step   %.3f ms\n", m.mean_step_time * 1e3);
  std::printf("max control step    %.3f ms\n", m.max_step_time * 1e3);
  std::printf("map pipeline rate   %.1f Hz\n", m.map_update_rate_hz);
}

int cmd_run(const std::string& scenario_path, const std::string& log_path,
            const std::string& export_dir, int at_step) {
  const gridsafe::Scenario scenario = gridsafe::load_scenario(scenario_path);
  const gridsafe::EpisodeResult result = gridsafe::run_episode(scenario);
  if (!log_path.empty()) gridsafe::write_log_csv(log_path, result.log);
  if (!export_dir.empty()) {
    gridsafe::export_fields(scenario, at_step, export_dir);
  }
  print_metrics(result.metrics);
  return result.metrics.collision ? 1 : 0;
}

int cmd_batch(const std::string& spec, int jobs,
              const std::string& summary_path) {
  const std::vector<std::string> paths = expand_scenarios(spec);
  const std::vector<gridsafe::BatchRow> rows = gridsafe::run_batch(paths, jobs);
  if (!summary_path.empty()) gridsafe::write_summary_csv(summary_path, rows);
  int failures = 0;
  for (const gridsafe::BatchRow& row : rows) {
    const bool bad = !row.ok || row.metrics.collision;
    if (bad) ++failures;
    std::printf("%-7s %s%s%s\n", bad ? "FAIL" : "ok", row.scenario.c_str(),
                row.ok ? "" : ": ", row.error.c_str());
  }
  std::printf("%zu scenario(s), %d failure(s)\n", rows.size(), failures);
  return failures > 0 ? 1 : 0;
}

int cmd_validate(const std::string& scenario_path) {
  const gridsafe::Scenario scenario = gridsafe::load_scenario(scenario_path);
  const std::vector<std::string> problems = gridsafe::validate(scenario);
  int fatal = 0;
  for (const std::string& p : problems) {
    if (p.rfind("warning:", 0) != 0) ++fatal;
    std::printf("%s\n", p.c_str());
  }
  if (problems.empty()) std::printf("ok\n");
  return fatal > 0 ? 1 : 0;
}

int cmd_bench(const std::string& scenario_path, int steps) {
  gridsafe::Scenario scenario = gridsafe::load_scenario(scenario_path);
  scenario.duration = steps * scenario.dt;
  gridsafe::StageTimings timings;
  gridsafe::EpisodeHooks hooks;
  hooks.timings = &timings;
  gridsafe::run_episode(scenario, hooks);
  const double pipeline = timings.scan + timings.map_update +
                          timings.binarize_inflate + timings.sdf +
                          timings.shaping + timings.control;
  const auto line = [&](const char* name, double seconds) {
    std::printf("%-18s %9.3f ms total  %8.4f ms/step\n", name, seconds * 1e3,
                timings.steps > 0 ? seconds * 1e3 / timings.steps : 0.0);
  };
  std::printf("steps executed: %d\n", timings.steps);
  line("scan", timings.scan);
  line("map update", timings.map_update);
  line("binarize+inflate", timings.binarize_inflate);
  line("sdf", timings.sdf);
  line("shaping", timings.shaping);
  line("control (qp)", timings.control);
  line("pipeline", pipeline);
  if (pipeline > 0.0 && timings.steps > 0) {
    std::printf("pipeline rate: %.1f Hz\n", timings.steps / pipeline);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Occupancy-grid safe navigation: barrier-constrained control "
               "on maps built online from range scans"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string log_path;
  std::string export_dir;
  int at_step = 0;
  CLI::App* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("scenario", scenario_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--log", log_path, "Write per-step trajectory CSV");
  CLI::Option* export_opt =
      run->add_option("--export-fields", export_dir,
                      "Directory for map/field/quiver exports");
  run->add_option("--at-step", at_step, "Step index to export fields at")
      ->needs(export_opt);

  std::string batch_spec;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  std::string summary_path;
  CLI::App* batch =
      app.add_subcommand("batch", "Run a directory or glob of scenarios");
  batch->add_option("scenarios", batch_spec, "Directory or glob of JSON files")
      ->required();
  batch->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  batch->add_option("--summary", summary_path, "Write summary CSV");

  std::string validate_path;
  CLI::App* validate =
      app.add_subcommand("validate", "Check a scenario file against schema "
                                     "and parameter constraints");
  validate->add_option("scenario", validate_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);

  std::string bench_path;
  int bench_steps = 500;
  CLI::App* bench =
      app.add_subcommand("bench", "Time the per-step pipeline stages");
  bench->add_option("scenario", bench_path, "Scenario JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  bench->add_option("--steps", bench_steps, "Steps to execute")
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario_path, log_path, export_dir, at_step);
    if (batch->parsed()) return cmd_batch(batch_spec, jobs, summary_path);
    if (validate->parsed()) return cmd_validate(validate_path);
    if (bench->parsed()) return cmd_bench(bench_path, bench_steps);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
