// Copyright 2026 The sparse_mot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sparse_mot/simulator.hpp"

#include "sparse_mot/error.hpp"
#include "sparse_mot/key_value.hpp"
#include "sparse_mot/text_format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace sparse_mot
{

namespace
{
constexpr double kHitEpsilon = 1e-9;

[[noreturn]] void invalid(const std::string & msg)
{
  throw Error(ErrorCode::kInvalidArgument, msg);
}
}  // namespace

void Scene::validate() const
{
  if (!(area.x() > 0.0) || !(area.y() > 0.0)) {
    invalid("scene area must be positive");
  }
  if (!(max_range > 0.0) || !(range_noise_std >= 0.0)) {
    invalid("max_range must be positive and range_noise_std non-negative");
  }
  if (sensor_motion == SensorMotion::kFigureEight && !(figure8_period > 0.0)) {
    invalid("figure8_period must be positive");
  }
  std::set<int> ids;
  for (const auto & t : targets) {
    if (t.id <= 0 || !ids.insert(t.id).second) {
      invalid("target ids must be unique and positive (id " + std::to_string(t.id) + ")");
    }
    if (!(t.radius > 0.0) || !(t.height > 0.0)) {
      invalid("target " + std::to_string(t.id) + " needs positive radius and height");
    }
    if (t.waypoints.empty()) {
      invalid("target " + std::to_string(t.id) + " has no waypoints");
    }
    if (!t.speeds.empty() && t.speeds.size() != t.waypoints.size()) {
      invalid("target " + std::to_string(t.id) + " needs one speed per leg");
    }
    if (!t.pauses.empty() && t.pauses.size() != t.waypoints.size()) {
      invalid("target " + std::to_string(t.id) + " needs one pause per waypoint");
    }
    for (const double s : t.speeds) {
      if (!(s > 0.0)) {
        invalid("target " + std::to_string(t.id) + " has a non-positive speed");
      }
    }
    for (const double p : t.pauses) {
      if (!(p >= 0.0)) {
        invalid("target " + std::to_string(t.id) + " has a negative pause");
      }
    }
  }
  for (const auto & c : cylinders) {
    if (!(c.radius > 0.0) || !(c.height > 0.0)) {
      invalid("static cylinders need positive radius and height");
    }
  }
}

SceneModel::SceneModel(Scene scene) : scene_(std::move(scene))
{
  scene_.validate();
  for (const auto & target : scene_.targets) {
    std::seed_seq seq{
      static_cast<std::uint32_t>(scene_.seed), static_cast<std::uint32_t>(scene_.seed >> 32),
      static_cast<std::uint32_t>(target.id)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> speed_dist(kMinTargetSpeed, kMaxTargetSpeed);

    Trajectory traj;
    const auto n = target.waypoints.size();
    double t = 0.0;
    for (std::size_t i = 0; i < n && n > 1; ++i) {
      const Vec2 & from = target.waypoints[i];
      const Vec2 & to = target.waypoints[(i + 1) % n];
      const double pause = target.pauses.empty() ? 0.0 : target.pauses[i];
      if (pause > 0.0) {
        traj.legs.push_back({t, t + pause, from, from});
        t += pause;
      }
      const double speed = target.speeds.empty() ? speed_dist(rng) : target.speeds[i];
      const double length = (to - from).norm();
      if (length > 0.0) {
        traj.legs.push_back({t, t + length / speed, from, to});
        t += length / speed;
      }
    }
    traj.period = t;
    trajectories_.push_back(std::move(traj));
  }
}

Vec2 SceneModel::target_position(std::size_t target, double time) const
{
  const auto & traj = trajectories_[target];
  if (traj.legs.empty() || !(traj.period > 0.0)) {
    return scene_.targets[target].waypoints.front();
  }
  double local = std::fmod(time, traj.period);
  if (local < 0.0) {
    local += traj.period;
  }
  const auto it = std::upper_bound(
    traj.legs.begin(), traj.legs.end(), local,
    [](double value, const Leg & leg) { return value < leg.end; });
  const Leg & leg = it == traj.legs.end() ? traj.legs.back() : *it;
  const double span = leg.end - leg.start;
  const double alpha = span > 0.0 ? std::clamp((local - leg.start) / span, 0.0, 1.0) : 0.0;
  return leg.from + alpha * (leg.to - leg.from);
}

Pose SceneModel::sensor_pose(double time) const
{
  Pose pose = Pose::Identity();
  Vec3 position = scene_.sensor_center;
  if (scene_.sensor_motion == SensorMotion::kFigureEight) {
    // lemniscate of Gerono: x spans +-radius, y spans +-radius/2
    const double phase = 2.0 * std::numbers::pi * time / scene_.figure8_period;
    position.x() += scene_.figure8_radius * std::sin(phase);
    position.y() += scene_.figure8_radius * std::sin(phase) * std::cos(phase);
  }
  pose.translation() = position;
  return pose;
}

namespace
{

std::optional<double> ray_box(const Vec3 & o, const Vec3 & d, const Box3 & box)
{
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 3; ++axis) {
    if (std::abs(d[axis]) < 1e-15) {
      if (o[axis] < box.min[axis] || o[axis] > box.max[axis]) {
        return std::nullopt;
      }
      continue;
    }
    double t0 = (box.min[axis] - o[axis]) / d[axis];
    double t1 = (box.max[axis] - o[axis]) / d[axis];
    if (t0 > t1) {
      std::swap(t0, t1);
    }
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
    if (t_near > t_far) {
      return std::nullopt;
    }
  }
  if (t_near > kHitEpsilon) {
    return t_near;
  }
  return std::nullopt;
}

// Vertical cylinder standing on the ground plane.
std::optional<double> ray_cylinder(
  const Vec3 & o, const Vec3 & d, const Vec2 & center, double radius, double height)
{
  std::optional<double> best;
  const double ox = o.x() - center.x();
  const double oy = o.y() - center.y();
  const double a = d.x() * d.x() + d.y() * d.y();
  if (a > 1e-15) {
    const double b = 2.0 * (ox * d.x() + oy * d.y());
    const double c = ox * ox + oy * oy - radius * radius;
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double t = (-b - std::sqrt(disc)) / (2.0 * a);
      const double z = o.z() + t * d.z();
      if (t > kHitEpsilon && z >= 0.0 && z <= height) {
        best = t;
      }
    }
  }
  if (std::abs(d.z()) > 1e-15) {
    const double t = (height - o.z()) / d.z();
    if (t > kHitEpsilon) {
      const double px = ox + t * d.x();
      const double py = oy + t * d.y();
      if (px * px + py * py <= radius * radius && (!best || t < *best)) {
        best = t;
      }
    }
  }
  return best;
}

}  // namespace

std::optional<RayHit> raycast(
  const SceneModel & model, const Vec3 & origin, const Vec3 & direction, double time)
{
  const auto & scene = model.scene();
  std::optional<RayHit> best;
  auto consider = [&](std::optional<double> t, int id) {
    if (t && *t <= scene.max_range && (!best || *t < best->range)) {
      best = RayHit{*t, id};
    }
  };

  if (direction.z() < -1e-15) {
    const double t = -origin.z() / direction.z();
    const Vec3 p = origin + t * direction;
    if (t > kHitEpsilon && std::abs(p.x()) <= 0.5 * scene.area.x() &&
        std::abs(p.y()) <= 0.5 * scene.area.y()) {
      consider(t, 0);
    }
  }
  for (const auto & box : scene.boxes) {
    consider(ray_box(origin, direction, box), 0);
  }
  for (const auto & c : scene.cylinders) {
    consider(ray_cylinder(origin, direction, c.center, c.radius, c.height), 0);
  }
  for (std::size_t i = 0; i < scene.targets.size(); ++i) {
    const auto & target = scene.targets[i];
    consider(
      ray_cylinder(
        origin, direction, model.target_position(i, time), target.radius, target.height),
      target.id);
  }
  return best;
}

std::vector<double> ring_elevations(int rows)
{
  std::vector<double> out(static_cast<std::size_t>(rows));
  const double lo = -15.0 * std::numbers::pi / 180.0;
  const double hi = 15.0 * std::numbers::pi / 180.0;
  for (int r = 0; r < rows; ++r) {
    out[static_cast<std::size_t>(r)] =
      rows == 1 ? 0.0 : lo + (hi - lo) * static_cast<double>(r) / static_cast<double>(rows - 1);
  }
  return out;
}

SimulatedSequence simulate_sequence(
  const Scene & scene, double duration, double rate, int rows, int cols)
{
  if (!(rate > 0.0) || !(duration >= 0.0)) {
    invalid("simulation needs rate > 0 and duration >= 0");
  }
  if (rows <= 0 || cols <= 0) {
    invalid("simulation grid must be non-empty");
  }
  const SceneModel model(scene);
  const auto count = static_cast<int>(std::llround(duration * rate));

  SimulatedSequence seq;
  seq.header.rows = rows;
  seq.header.cols = cols;
  seq.header.elevations = ring_elevations(rows);
  seq.header.sentinel = kDefaultSentinelRange;

  std::vector<float> azimuths(static_cast<std::size_t>(cols));
  for (int c = 0; c < cols; ++c) {
    azimuths[static_cast<std::size_t>(c)] =
      static_cast<float>(2.0 * std::numbers::pi * static_cast<double>(c) / static_cast<double>(cols));
  }
  std::vector<Vec3> ring_dirs(static_cast<std::size_t>(rows * cols));
  for (int r = 0; r < rows; ++r) {
    const double e = seq.header.elevations[static_cast<std::size_t>(r)];
    for (int c = 0; c < cols; ++c) {
      const double a = azimuths[static_cast<std::size_t>(c)];
      ring_dirs[static_cast<std::size_t>(r * cols + c)] =
        Vec3(std::cos(e) * std::cos(a), std::cos(e) * std::sin(a), std::sin(e));
    }
  }

  std::vector<SensorPoseTrack::Stamped> poses;
  const auto sentinel = static_cast<float>(seq.header.sentinel);
  for (int k = 0; k < count; ++k) {
    const double t_scan = static_cast<double>(k) / rate;
    std::seed_seq noise_seq{
      static_cast<std::uint32_t>(scene.seed), static_cast<std::uint32_t>(scene.seed >> 32),
      0x5ca9u, static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(noise_seq);
    std::normal_distribution<double> noise(0.0, 1.0);

    std::vector<double> col_time(static_cast<std::size_t>(cols), t_scan);
    std::vector<Pose> col_pose(static_cast<std::size_t>(cols));
    for (int c = 0; c < cols; ++c) {
      if (scene.intra_scan_motion) {
        col_time[static_cast<std::size_t>(c)] =
          t_scan + ((static_cast<double>(c) + 0.5) / static_cast<double>(cols) - 0.5) / rate;
      }
      col_pose[static_cast<std::size_t>(c)] = model.sensor_pose(col_time[static_cast<std::size_t>(c)]);
    }

    std::vector<float> ranges(static_cast<std::size_t>(rows * cols), sentinel);
    std::vector<std::uint8_t> valid(static_cast<std::size_t>(rows * cols), 0);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const auto idx = static_cast<std::size_t>(r * cols + c);
        const auto & pose = col_pose[static_cast<std::size_t>(c)];
        const auto hit = raycast(
          model, pose.translation(), pose.linear() * ring_dirs[idx],
          col_time[static_cast<std::size_t>(c)]);
        if (!hit) {
          continue;
        }
        double range = hit->range;
        if (scene.range_noise_std > 0.0) {
          range += scene.range_noise_std * noise(rng);
        }
        ranges[idx] = static_cast<float>(std::max(0.0, range));
        valid[idx] = 1;
        if (hit->object_id > 0) {
          seq.labels.push_back({k, r, c, hit->object_id});
        }
      }
    }
    const Pose scan_pose = model.sensor_pose(t_scan);
    poses.push_back({t_scan, scan_pose});
    seq.scans.emplace_back(
      rows, cols, seq.header.elevations, azimuths, std::move(ranges), std::move(valid), scan_pose,
      t_scan);
  }
  seq.poses = SensorPoseTrack(std::move(poses));
  return seq;
}

void write_sequence(const std::filesystem::path & dir, const SimulatedSequence & sequence)
{
  std::filesystem::create_directories(dir);
  write_scans(dir / "scans.oscn", sequence.header, sequence.scans);
  write_poses(dir / "poses.txt", sequence.poses);
  write_labels(dir / "labels.txt", sequence.labels);
}

// ---------------------------------------------------------------------------
// scene text format

namespace
{

std::vector<double> numbers(const KeyValueEntry & e, const std::string & source)
{
  std::vector<double> out;
  try {
    for (const auto & f : split_fields(e.value)) {
      out.push_back(parse_double(f));
    }
  } catch (const Error &) {
    throw Error(
      ErrorCode::kConfig, source + ":" + std::to_string(e.line) + ": '" + e.key +
                            "' expects numbers, got '" + e.value + "'");
  }
  return out;
}

std::vector<double> fixed_numbers(const KeyValueEntry & e, std::size_t n, const std::string & source)
{
  auto v = numbers(e, source);
  if (v.size() != n) {
    throw Error(
      ErrorCode::kConfig, source + ":" + std::to_string(e.line) + ": '" + e.key + "' expects " +
                            std::to_string(n) + " values");
  }
  return v;
}

std::vector<Vec2> point_list(const KeyValueEntry & e, const std::string & source)
{
  std::vector<Vec2> out;
  std::size_t start = 0;
  while (start <= e.value.size()) {
    const auto end = std::min(e.value.find(';', start), e.value.size());
    KeyValueEntry part{e.key, e.value.substr(start, end - start), e.line};
    if (!trim(part.value).empty()) {
      const auto xy = fixed_numbers(part, 2, source);
      out.emplace_back(xy[0], xy[1]);
    }
    start = end + 1;
  }
  return out;
}

[[noreturn]] void unknown_key(const KeyValueEntry & e, const std::string & section, const std::string & source)
{
  throw Error(
    ErrorCode::kConfig, source + ":" + std::to_string(e.line) + ": unknown key '" + e.key +
                          "' in [" + section + "]");
}

std::string join(const std::vector<double> & values)
{
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += (i ? " " : "") + format_double(values[i]);
  }
  return out;
}

}  // namespace

Scene parse_scene(const std::string & text, const std::string & source)
{
  Scene scene;
  for (const auto & section : parse_key_value(text, source)) {
    if (section.name == "scene") {
      for (const auto & e : section.entries) {
        if (e.key == "area") {
          const auto v = fixed_numbers(e, 2, source);
          scene.area = Vec2(v[0], v[1]);
        } else if (e.key == "max_range") {
          scene.max_range = fixed_numbers(e, 1, source)[0];
        } else if (e.key == "range_noise_std") {
          scene.range_noise_std = fixed_numbers(e, 1, source)[0];
        } else if (e.key == "seed") {
          scene.seed = static_cast<std::uint64_t>(fixed_numbers(e, 1, source)[0]);
        } else if (e.key == "sensor") {
          if (e.value == "static") {
            scene.sensor_motion = SensorMotion::kStatic;
          } else if (e.value == "figure8") {
            scene.sensor_motion = SensorMotion::kFigureEight;
          } else {
            throw Error(
              ErrorCode::kConfig, source + ":" + std::to_string(e.line) +
                                    ": sensor must be 'static' or 'figure8'");
          }
        } else if (e.key == "sensor_center") {
          const auto v = fixed_numbers(e, 3, source);
          scene.sensor_center = Vec3(v[0], v[1], v[2]);
        } else if (e.key == "figure8_radius") {
          scene.figure8_radius = fixed_numbers(e, 1, source)[0];
        } else if (e.key == "figure8_period") {
          scene.figure8_period = fixed_numbers(e, 1, source)[0];
        } else if (e.key == "intra_scan_motion") {
          scene.intra_scan_motion = fixed_numbers(e, 1, source)[0] != 0.0;
        } else {
          unknown_key(e, section.name, source);
        }
      }
    } else if (section.name == "box") {
      Box3 box;
      for (const auto & e : section.entries) {
        if (e.key == "min" || e.key == "max") {
          const auto v = fixed_numbers(e, 3, source);
          (e.key == "min" ? box.min : box.max) = Vec3(v[0], v[1], v[2]);
        } else {
          unknown_key(e, section.name, source);
        }
      }
      scene.boxes.push_back(box);
    } else if (section.name == "cylinder") {
      StaticCylinder c;
      for (const auto & e : section.entries) {
        if (e.key == "center") {
          const auto v = fixed_numbers(e, 2, source);
          c.center = Vec2(v[0], v[1]);
        } else if (e.key == "radius") {
          c.radius = fixed_numbers(e, 1, source)[0];
        } else if (e.key == "height") {
          c.height = fixed_numbers(e, 1, source)[0];
        } else {
          unknown_key(e, section.name, source);
        }
      }
      scene.cylinders.push_back(c);
    } else if (section.name == "target") {
      Target t;
      for (const auto & e : section.entries) {
        if (e.key == "id") {
          t.id = static_cast<int>(fixed_numbers(e, 1, source)[0]);
        } else if (e.key == "radius") {
          t.radius = fixed_numbers(e, 1, source)[0];
        } else if (e.key == "height") {
          t.height = fixed_numbers(e, 1, source)[0];
        } else if (e.key == "waypoints") {
          t.waypoints = point_list(e, source);
        } else if (e.key == "speeds") {
          t.speeds = numbers(e, source);
        } else if (e.key == "pauses") {
          t.pauses = numbers(e, source);
        } else {
          unknown_key(e, section.name, source);
        }
      }
      scene.targets.push_back(std::move(t));
    } else {
      throw Error(
        ErrorCode::kConfig,
        source + ":" + std::to_string(section.line) + ": unknown section [" + section.name + "]");
    }
  }
  try {
    scene.validate();
  } catch (const Error & e) {
    throw Error(ErrorCode::kConfig, source + ": " + e.what());
  }
  return scene;
}

Scene read_scene(const std::filesystem::path & path)
{
  return parse_scene(read_text_file(path), path.string());
}

std::string format_scene(const Scene & scene)
{
  std::string out = "[scene]\n";
  out += "area = " + join({scene.area.x(), scene.area.y()}) + "\n";
  out += "max_range = " + format_double(scene.max_range) + "\n";
  out += "range_noise_std = " + format_double(scene.range_noise_std) + "\n";
  out += "seed = " + std::to_string(scene.seed) + "\n";
  out += std::string("sensor = ") +
         (scene.sensor_motion == SensorMotion::kStatic ? "static" : "figure8") + "\n";
  out += "sensor_center = " +
         join({scene.sensor_center.x(), scene.sensor_center.y(), scene.sensor_center.z()}) + "\n";
  out += "figure8_radius = " + format_double(scene.figure8_radius) + "\n";
  out += "figure8_period = " + format_double(scene.figure8_period) + "\n";
  out += std::string("intra_scan_motion = ") + (scene.intra_scan_motion ? "1" : "0") + "\n";
  for (const auto & b : scene.boxes) {
    out += "\n[box]\nmin = " + join({b.min.x(), b.min.y(), b.min.z()}) +
           "\nmax = " + join({b.max.x(), b.max.y(), b.max.z()}) + "\n";
  }
  for (const auto & c : scene.cylinders) {
    out += "\n[cylinder]\ncenter = " + join({c.center.x(), c.center.y()}) +
           "\nradius = " + format_double(c.radius) + "\nheight = " + format_double(c.height) + "\n";
  }
  for (const auto & t : scene.targets) {
    out += "\n[target]\nid = " + std::to_string(t.id) + "\nradius = " + format_double(t.radius) +
           "\nheight = " + format_double(t.height) + "\nwaypoints =";
    for (std::size_t i = 0; i < t.waypoints.size(); ++i) {
      out += (i ? "; " : " ") + join({t.waypoints[i].x(), t.waypoints[i].y()});
    }
    out += "\n";
    if (!t.speeds.empty()) {
      out += "speeds = " + join(t.speeds) + "\n";
    }
    if (!t.pauses.empty()) {
      out += "pauses = " + join(t.pauses) + "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// presets

namespace
{

Scene baseline_scene()
{
  Scene scene;
  scene.seed = 7;
  scene.intra_scan_motion = false;
  // three persons walking loops in separate sectors 6-15 m from the sensor
  Target a;
  a.id = 1;
  a.waypoints = {{8.0, -5.0}, {13.0, -2.0}, {13.0, 5.0}, {8.0, 6.0}};
  a.pauses = {0.0, 0.0, 1.5, 0.0};
  Target b;
  b.id = 2;
  b.waypoints = {{-3.0, 9.0}, {-9.0, 11.0}, {-12.0, 4.0}, {-7.0, 6.0}};
  b.pauses = {0.0, 1.0, 0.0, 0.0};
  Target c;
  c.id = 3;
  c.waypoints = {{-6.0, -8.0}, {2.0, -12.0}, {5.0, -8.0}, {-2.0, -7.0}};
  c.pauses = {0.0, 0.0, 0.0, 2.0};
  scene.targets = {a, b, c};
  return scene;
}

Scene crowd_scene(int count)
{
  Scene scene;
  scene.seed = 50;
  std::mt19937_64 rng(2019);
  std::uniform_real_distribution<double> radius_dist(6.0, 22.0);
  std::uniform_real_distribution<double> angle_dist(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> offset_dist(-4.0, 4.0);
  for (int i = 0; i < count; ++i) {
    const double rho = radius_dist(rng);
    const double phi = angle_dist(rng);
    const Vec2 center(rho * std::cos(phi), rho * std::sin(phi));
    Target t;
    t.id = i + 1;
    for (int w = 0; w < 4; ++w) {
      t.waypoints.push_back(center + Vec2(offset_dist(rng), offset_dist(rng)));
    }
    scene.targets.push_back(std::move(t));
  }
  return scene;
}

}  // namespace

Scene preset_scene(const std::string & name)
{
  if (name == "empty_field") {
    return Scene{};
  }
  if (name == "baseline") {
    return baseline_scene();
  }
  if (name == "baseline_moving") {
    Scene scene = baseline_scene();
    scene.sensor_motion = SensorMotion::kFigureEight;
    scene.intra_scan_motion = true;
    return scene;
  }
  if (name == "near_wall") {
    // closed 3 m x 3 m room around the sensor
    Scene scene;
    scene.boxes = {
      {{1.5, -1.7, 0.0}, {1.7, 1.7, 5.0}},
      {{-1.7, -1.7, 0.0}, {-1.5, 1.7, 5.0}},
      {{-1.5, 1.5, 0.0}, {1.5, 1.7, 5.0}},
      {{-1.5, -1.7, 0.0}, {1.5, -1.5, 5.0}},
    };
    return scene;
  }
  if (name == "crowd50") {
    return crowd_scene(50);
  }
  throw Error(ErrorCode::kConfig, "unknown scene preset '" + name + "'");
}

std::vector<std::string> preset_names()
{
  return {"empty_field", "baseline", "baseline_moving", "near_wall", "crowd50"};
}

}  // namespace sparse_mot
