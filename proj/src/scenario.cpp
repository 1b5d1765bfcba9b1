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

#include "gridsafe/scenario.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Geometry>
#include <json.hpp>

#include "gridsafe/angles.hpp"

namespace gridsafe {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::runtime_error("scenario: " + where + ": " + what);
}

// Strict object access: every key must be consumed exactly once.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where)
      : object_(j), where_(std::move(where)) {
    if (!object_.is_object()) fail(where_, "expected an object");
  }

  ~ObjectReader() = default;

  void finish() const {
    for (const auto& [key, value] : object_.items()) {
      if (!seen_.count(key)) fail(where_, "unknown key '" + key + "'");
    }
  }

  bool has(const std::string& key) {
    return object_.contains(key);
  }

  const json* get(const std::string& key) {
    seen_.insert(key);
    if (!object_.contains(key)) return nullptr;
    return &object_.at(key);
  }

  template <typename T>
  void read(const std::string& key, T& into) {
    const json* j = get(key);
    if (!j) return;
    try {
      into = j->get<T>();
    } catch (const json::exception&) {
      fail(where_ + "." + key, "wrong type");
    }
  }

  void read(const std::string& key, Eigen::Vector2d& into) {
    const json* j = get(key);
    if (!j) return;
    into = vec2(*j, where_ + "." + key);
  }

  const std::string& where() const { return where_; }

  static Eigen::Vector2d vec2(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
        !j[1].is_number()) {
      fail(where, "expected [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
  }

 private:
  const json& object_;
  std::string where_;
  std::set<std::string> seen_;
};

World world_from_json(const json& j, const std::string& where) {
  ObjectReader r(j, where);
  World world;
  if (const json* b = r.get("bounds")) {
    if (!b->is_array() || b->size() != 2) fail(where + ".bounds", "expected [[x0,y0],[x1,y1]]");
    world.bounds.min() = ObjectReader::vec2((*b)[0], where + ".bounds[0]");
    world.bounds.max() = ObjectReader::vec2((*b)[1], where + ".bounds[1]");
  }
  if (const json* obs = r.get("obstacles")) {
    if (!obs->is_array()) fail(where + ".obstacles", "expected an array");
    int index = 0;
    for (const json& o : *obs) {
      const std::string at = where + ".obstacles[" + std::to_string(index++) + "]";
      ObjectReader ro(o, at);
      std::string type;
      ro.read("type", type);
      if (type == "circle") {
        CircleObstacle c;
        ro.read("center", c.center);
        ro.read("radius", c.radius);
        world.obstacles.emplace_back(c);
      } else if (type == "polygon") {
        PolygonObstacle poly;
        if (const json* verts = ro.get("vertices")) {
          if (!verts->is_array()) fail(at + ".vertices", "expected an array");
          int vi = 0;
          for (const json& v : *verts) {
            poly.vertices.push_back(ObjectReader::vec2(
                v, at + ".vertices[" + std::to_string(vi++) + "]"));
          }
        }
        world.obstacles.emplace_back(std::move(poly));
      } else {
        fail(at + ".type", "expected 'circle' or 'polygon'");
      }
      ro.finish();
    }
  }
  r.finish();
  return world;
}

json world_to_json(const World& world) {
  json j;
  j["bounds"] = {{world.bounds.min().x(), world.bounds.min().y()},
                 {world.bounds.max().x(), world.bounds.max().y()}};
  j["obstacles"] = json::array();
  for (const Obstacle& o : world.obstacles) {
    if (const auto* c = std::get_if<CircleObstacle>(&o)) {
      j["obstacles"].push_back({{"type", "circle"},
                                {"center", {c->center.x(), c->center.y()}},
                                {"radius", c->radius}});
    } else {
      const auto& poly = std::get<PolygonObstacle>(o);
      json verts = json::array();
      for (const auto& v : poly.vertices) verts.push_back({v.x(), v.y()});
      j["obstacles"].push_back({{"type", "polygon"}, {"vertices", verts}});
    }
  }
  return j;
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("scenario: invalid JSON: ") + e.what());
  }

  Scenario s;
  ObjectReader r(j, "scenario");
  r.read("name", s.name);
  if (const json* w = r.get("world")) s.world = world_from_json(*w, "world");

  if (const json* robot = r.get("robot")) {
    ObjectReader rr(*robot, "robot");
    std::string model = "unicycle";
    rr.read("model", model);
    if (model == "unicycle") {
      s.robot.kind = RobotModelKind::kUnicycle;
    } else if (model == "bicycle") {
      s.robot.kind = RobotModelKind::kBicycle;
    } else {
      fail("robot.model", "expected 'unicycle' or 'bicycle'");
    }
    rr.read("wheelbase", s.robot.wheelbase);
    rr.finish();
  }

  if (const json* init = r.get("initial_state")) {
    ObjectReader ri(*init, "initial_state");
    ri.read("position", s.initial_state.position);
    ri.read("heading", s.initial_state.heading);
    ri.finish();
  }
  r.read("robot_radius", s.robot_radius);

  if (const json* lidar = r.get("lidar")) {
    ObjectReader rl(*lidar, "lidar");
    rl.read("num_beams", s.lidar.num_beams);
    rl.read("fov", s.lidar.fov);
    rl.read("max_range", s.lidar.max_range);
    rl.read("range_noise_sigma", s.lidar.range_noise_sigma);
    rl.finish();
  }

  if (const json* map = r.get("map")) {
    ObjectReader rm(*map, "map");
    std::string mode = "ego_local";
    rm.read("mode", mode);
    if (mode == "ego_local") {
      s.map.mode = MapMode::kEgoLocal;
    } else if (mode == "global") {
      s.map.mode = MapMode::kGlobal;
    } else {
      fail("map.mode", "expected 'ego_local' or 'global'");
    }
    rm.read("resolution", s.map.resolution);
    rm.read("extent", s.map.extent);
    if (const json* sensor = rm.get("sensor")) {
      ObjectReader rs(*sensor, "map.sensor");
      rs.read("l_occ", s.map.sensor.l_occ);
      rs.read("l_free", s.map.sensor.l_free);
      rs.read("l_prior", s.map.sensor.l_prior);
      rs.read("l_min", s.map.sensor.l_min);
      rs.read("l_max", s.map.sensor.l_max);
      rs.finish();
    }
    rm.read("binarize_threshold", s.map.binarize_threshold);
    rm.read("unknown_as_occupied", s.map.unknown_as_occupied);
    rm.read("inflation_radius", s.map.inflation_radius);
    rm.read("half_plane", s.map.half_plane);
    rm.read("map_every_n", s.map.map_every_n);
    rm.finish();
  }

  if (const json* shaping = r.get("shaping")) {
    ObjectReader rs(*shaping, "shaping");
    rs.read("a", s.shaping.a);
    rs.read("b", s.shaping.b);
    rs.finish();
  }

  if (const json* cbf = r.get("cbf")) {
    ObjectReader rc(*cbf, "cbf");
    rc.read("l_s", s.cbf.l_s);
    rc.read("l_a", s.cbf.l_a);
    rc.read("k_alpha", s.cbf.k_alpha);
    rc.finish();
  }

  if (const json* clf = r.get("clf")) {
    ObjectReader rc(*clf, "clf");
    rc.read("target_heading", s.clf.target_heading);
    rc.read("k_gamma", s.clf.k_gamma);
    rc.finish();
  }

  if (const json* waypoints = r.get("waypoints")) {
    if (!waypoints->is_array()) fail("waypoints", "expected an array");
    int wi = 0;
    for (const json& w : *waypoints) {
      s.waypoints.push_back(
          ObjectReader::vec2(w, "waypoints[" + std::to_string(wi++) + "]"));
    }
  }
  r.read("waypoint_switch_radius", s.waypoint_switch_radius);

  if (const json* qp = r.get("qp")) {
    ObjectReader rq(*qp, "qp");
    rq.read("w_v", s.qp.weights.w_v);
    rq.read("w_omega", s.qp.weights.w_omega);
    rq.read("w_delta", s.qp.weights.w_delta);
    rq.read("v_d", s.qp.v_d);
    rq.read("u_lb", s.qp.u_lb);
    rq.read("u_ub", s.qp.u_ub);
    rq.finish();
  }

  r.read("dt", s.dt);
  r.read("duration", s.duration);
  std::uint64_t seed = s.seed;
  r.read("seed", seed);
  s.seed = seed;
  r.finish();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scenario file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return scenario_from_json_text(text.str());
}

std::string scenario_to_json_text(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["world"] = world_to_json(s.world);
  j["robot"]["model"] =
      s.robot.kind == RobotModelKind::kUnicycle ? "unicycle" : "bicycle";
  if (s.robot.kind == RobotModelKind::kBicycle) {
    j["robot"]["wheelbase"] = s.robot.wheelbase;
  }
  j["initial_state"]["position"] = {s.initial_state.position.x(),
                                    s.initial_state.position.y()};
  j["initial_state"]["heading"] = s.initial_state.heading;
  j["robot_radius"] = s.robot_radius;
  j["lidar"] = {{"num_beams", s.lidar.num_beams},
                {"fov", s.lidar.fov},
                {"max_range", s.lidar.max_range},
                {"range_noise_sigma", s.lidar.range_noise_sigma}};
  j["map"] = {{"mode", s.map.mode == MapMode::kEgoLocal ? "ego_local" : "global"},
              {"resolution", s.map.resolution},
              {"extent", s.map.extent},
              {"sensor",
               {{"l_occ", s.map.sensor.l_occ},
                {"l_free", s.map.sensor.l_free},
                {"l_prior", s.map.sensor.l_prior},
                {"l_min", s.map.sensor.l_min},
                {"l_max", s.map.sensor.l_max}}},
              {"binarize_threshold", s.map.binarize_threshold},
              {"unknown_as_occupied", s.map.unknown_as_occupied},
              {"inflation_radius", s.map.inflation_radius},
              {"half_plane", s.map.half_plane},
              {"map_every_n", s.map.map_every_n}};
  j["shaping"] = {{"a", s.shaping.a}, {"b", s.shaping.b}};
  j["cbf"] = {{"l_s", s.cbf.l_s}, {"l_a", s.cbf.l_a}, {"k_alpha", s.cbf.k_alpha}};
  j["clf"] = {{"target_heading", s.clf.target_heading},
              {"k_gamma", s.clf.k_gamma}};
  j["waypoints"] = json::array();
  for (const auto& w : s.waypoints) j["waypoints"].push_back({w.x(), w.y()});
  j["waypoint_switch_radius"] = s.waypoint_switch_radius;
  j["qp"] = {{"w_v", s.qp.weights.w_v},
             {"w_omega", s.qp.weights.w_omega},
             {"w_delta", s.qp.weights.w_delta},
             {"v_d", s.qp.v_d},
             {"u_lb", {s.qp.u_lb.x(), s.qp.u_lb.y()}},
             {"u_ub", {s.qp.u_ub.x(), s.qp.u_ub.y()}}};
  j["dt"] = s.dt;
  j["duration"] = s.duration;
  j["seed"] = s.seed;
  return j.dump(2) + "\n";
}

std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> bad;
  const auto require = [&](bool ok, const std::string& message) {
    if (!ok) bad.push_back(message);
  };

  require(s.duration > 0.0, "duration must be > 0");
  require(s.dt > 0.0, "dt must be > 0");
  require(s.robot_radius > 0.0, "robot_radius must be > 0");
  require(s.robot.kind != RobotModelKind::kBicycle || s.robot.wheelbase > 0.0,
          "bicycle wheelbase must be > 0");

  require(!s.world.bounds.isEmpty(), "world bounds must be a nonempty box");
  require(s.world.bounds.contains(s.initial_state.position),
          "initial position must lie inside world bounds");
  int index = 0;
  for (const Obstacle& o : s.world.obstacles) {
    const std::string at = "obstacle " + std::to_string(index++);
    if (const auto* c = std::get_if<CircleObstacle>(&o)) {
      require(c->radius > 0.0, at + ": circle radius must be > 0");
    } else {
      const auto& poly = std::get<PolygonObstacle>(o);
      require(poly.vertices.size() >= 3, at + ": polygon needs >= 3 vertices");
      if (poly.vertices.size() >= 3) {
        require(polygon_is_simple(poly.vertices),
                at + ": polygon must be simple");
      }
    }
  }

  require(s.lidar.num_beams >= 1, "lidar.num_beams must be >= 1");
  require(s.lidar.max_range > 0.0, "lidar.max_range must be > 0");
  require(s.lidar.fov > 0.0 && s.lidar.fov <= kTwoPi + 1e-12,
          "lidar.fov must be in (0, 2*pi]");
  require(s.lidar.range_noise_sigma >= 0.0,
          "lidar.range_noise_sigma must be >= 0");

  require(s.map.resolution > 0.0, "map.resolution must be > 0");
  require(s.map.mode != MapMode::kEgoLocal ||
              s.map.extent >= 4.0 * s.map.resolution,
          "map.extent must cover at least 4 cells");
  require(s.map.sensor.l_occ > 0.0 && s.map.sensor.l_free < 0.0,
          "sensor model needs l_occ > 0 > l_free");
  require(s.map.sensor.l_min < s.map.sensor.l_max,
          "sensor model needs l_min < l_max");
  require(s.map.sensor.l_prior >= s.map.sensor.l_min &&
              s.map.sensor.l_prior <= s.map.sensor.l_max,
          "sensor model needs l_min <= l_prior <= l_max");
  require(s.map.inflation_radius >= 0.0, "map.inflation_radius must be >= 0");
  require(s.map.map_every_n >= 1, "map.map_every_n must be >= 1");

  require(s.shaping.a > 0.0 && s.shaping.b > 0.0,
          "shaping needs a > 0 and b > 0");
  require(s.cbf.l_a > 0.0 && s.cbf.l_a <= -s.cbf.l_s,
          "cbf params require 0 < l_a <= -l_s");
  require(s.cbf.k_alpha > 0.0, "cbf.k_alpha must be > 0");
  require(s.clf.k_gamma > 0.0, "clf.k_gamma must be > 0");
  require(s.waypoint_switch_radius > 0.0,
          "waypoint_switch_radius must be > 0");

  require(s.qp.weights.w_v > 0.0 && s.qp.weights.w_omega > 0.0 &&
              s.qp.weights.w_delta > 0.0,
          "qp weights must be positive");
  require(s.qp.u_lb.x() <= s.qp.u_ub.x() && s.qp.u_lb.y() <= s.qp.u_ub.y(),
          "qp bounds need u_lb <= u_ub");

  if (-s.cbf.l_s - s.cbf.l_a < s.map.resolution) {
    bad.push_back(
        "warning: safety margin -l_s - l_a is below one cell; the "
        "interpolated zero level can cross into occupied cells");
  }
  return bad;
}

Scenario corridor_clutter_scenario(std::uint64_t seed) {
  Scenario s;
  s.name = "corridor_clutter_" + std::to_string(seed);
  s.seed = seed;

  const double length = 40.0;
  const double width = 10.0;
  s.world.bounds = Eigen::AlignedBox2d(Eigen::Vector2d(0.0, 0.0),
                                       Eigen::Vector2d(length, width));
  const auto wall = [&](double y0, double y1) {
    PolygonObstacle p;
    p.vertices = {{0.0, y0}, {length, y0}, {length, y1}, {0.0, y1}};
    return p;
  };
  s.world.obstacles.emplace_back(wall(0.0, 0.2));
  s.world.obstacles.emplace_back(wall(width - 0.2, width));
  // End caps so the robot parks instead of leaving the corridor.
  PolygonObstacle east;
  east.vertices = {{length - 0.2, 0.0}, {length, 0.0}, {length, width},
                   {length - 0.2, width}};
  s.world.obstacles.emplace_back(std::move(east));
  PolygonObstacle west;
  west.vertices = {{0.0, 0.0}, {0.2, 0.0}, {0.2, width}, {0.0, width}};
  s.world.obstacles.emplace_back(std::move(west));

  // Clutter sized like parked cars and pedestrians. The heading objective
  // tracks the bearing to the next waypoint and yields to the barrier only
  // through the relaxation, so obstacles are kept off the waypoint line:
  // anything straddling it becomes a head-on parking spot rather than a
  // pass-through. Edges stay 1.1 to 1.9 m from the centerline, close enough
  // that the barrier constraint shapes every pass.
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 1);
  const auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  const double mid = width / 2.0;
  std::vector<Eigen::Vector2d> centers;
  std::vector<double> extents;
  const auto placeable = [&](const Eigen::Vector2d& c, double extent) {
    for (std::size_t i = 0; i < centers.size(); ++i) {
      if ((centers[i] - c).norm() < extents[i] + extent + 2.4) return false;
    }
    return true;
  };
  int cars = 0;
  int people = 0;
  for (int attempt = 0; attempt < 600 && (cars < 4 || people < 5); ++attempt) {
    const bool car = cars < 4 && (people >= 5 || attempt % 2 == 0);
    const double x = uniform(8.0, 34.0);
    const bool above = (rng() & 1) != 0;
    const double channel_edge = uniform(1.1, 1.9);
    if (car) {
      const double half_len = uniform(1.6, 2.2);
      const double half_wid = uniform(0.7, 0.95);
      const double yaw = uniform(-0.25, 0.25);
      const double y_extent =
          half_len * std::abs(std::sin(yaw)) + half_wid * std::cos(yaw);
      const double offset = channel_edge + y_extent;
      const Eigen::Vector2d c(x, above ? mid + offset : mid - offset);
      if (c.y() - y_extent < 0.3 || c.y() + y_extent > width - 0.3) continue;
      const double extent = std::hypot(half_len, half_wid);
      if (!placeable(c, extent)) continue;
      PolygonObstacle box;
      const Eigen::Rotation2Dd rot(yaw);
      for (const auto& corner :
           {Eigen::Vector2d(half_len, half_wid),
            Eigen::Vector2d(-half_len, half_wid),
            Eigen::Vector2d(-half_len, -half_wid),
            Eigen::Vector2d(half_len, -half_wid)}) {
        box.vertices.push_back(c + rot * corner);
      }
      s.world.obstacles.emplace_back(std::move(box));
      centers.push_back(c);
      extents.push_back(extent);
      ++cars;
    } else {
      const double radius = uniform(0.25, 0.35);
      const double offset = channel_edge + radius;
      const Eigen::Vector2d c(x, above ? mid + offset : mid - offset);
      if (!placeable(c, radius)) continue;
      s.world.obstacles.emplace_back(CircleObstacle{c, radius});
      centers.push_back(c);
      extents.push_back(radius);
      ++people;
    }
  }

  s.robot.kind = RobotModelKind::kUnicycle;
  s.initial_state.position = {2.5, width / 2.0};
  s.initial_state.heading = 0.0;
  s.robot_radius = 0.3;

  s.lidar.num_beams = 360;
  s.lidar.fov = kTwoPi;
  s.lidar.max_range = 8.0;
  s.lidar.range_noise_sigma = 0.0;

  s.map.mode = MapMode::kEgoLocal;
  s.map.resolution = 0.1;
  s.map.extent = 12.0;
  s.map.inflation_radius = s.robot_radius;

  s.shaping = {2.0, 0.5};
  s.cbf = {-0.5, 0.3, 1.0};
  s.clf.k_gamma = 2.0;
  s.waypoints = {{12.0, width / 2.0}, {24.0, width / 2.0}, {36.0, width / 2.0}};
  s.waypoint_switch_radius = 1.5;

  s.qp.weights = {1.0, 0.5, 100.0};
  s.qp.v_d = 2.0;
  s.qp.u_lb = {0.0, -1.8};
  s.qp.u_ub = {3.0, 1.8};

  s.dt = 0.05;
  s.duration = 40.0;
  return s;
}

}  // namespace gridsafe
