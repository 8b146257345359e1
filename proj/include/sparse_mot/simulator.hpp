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

#ifndef SPARSE_MOT__SIMULATOR_HPP_
#define SPARSE_MOT__SIMULATOR_HPP_

#include "sparse_mot/geometry.hpp"
#include "sparse_mot/scan_io.hpp"
#include "sparse_mot/scan_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sparse_mot
{

using Vec2 = Eigen::Vector2d;

/// Walking speed band of simulated persons: 3.5 to 12.5 km/h.
inline constexpr double kMinTargetSpeed = 3.5 / 3.6;
inline constexpr double kMaxTargetSpeed = 12.5 / 3.6;

struct StaticCylinder
{
  Vec2 center{Vec2::Zero()};
  double radius{0.5};
  double height{3.0};
};

/// Vertical cylinder walking a closed waypoint loop.
struct Target
{
  int id{1};
  double radius{0.25};
  double height{1.8};
  std::vector<Vec2> waypoints;
  std::vector<double> speeds;  // per leg [m/s]; empty = sampled from the seed
  std::vector<double> pauses;  // dwell at each waypoint [s]; empty = none
};

enum class SensorMotion { kStatic, kFigureEight };

struct Scene
{
  Vec2 area{100.0, 100.0};  // ground extent centred on the origin [m]
  std::vector<Box3> boxes;
  std::vector<StaticCylinder> cylinders;
  std::vector<Target> targets;
  SensorMotion sensor_motion{SensorMotion::kStatic};
  Vec3 sensor_center{0.0, 0.0, 2.5};
  double figure8_radius{4.0};
  double figure8_period{30.0};
  bool intra_scan_motion{true};  // cast each column at its own time
  double range_noise_std{0.03};
  double max_range{100.0};
  std::uint64_t seed{1};

  /// Throws ErrorCode::kInvalidArgument for duplicate/non-positive ids,
  /// negative speeds or pauses, or inconsistent schedules.
  void validate() const;
};

struct RayHit
{
  double range{0.0};
  int object_id{0};
};

/// Scene with target trajectories resolved into timed legs.
class SceneModel
{
public:
  explicit SceneModel(Scene scene);

  const Scene & scene() const { return scene_; }
  Vec2 target_position(std::size_t target, double time) const;
  Pose sensor_pose(double time) const;

private:
  struct Leg
  {
    double start;
    double end;
    Vec2 from;
    Vec2 to;
  };
  struct Trajectory
  {
    std::vector<Leg> legs;  // one loop
    double period{0.0};
  };

  Scene scene_;
  std::vector<Trajectory> trajectories_;
};

/// Nearest intersection with ground, static primitives and targets at `time`.
std::optional<RayHit> raycast(
  const SceneModel & model, const Vec3 & origin, const Vec3 & direction, double time);

struct SimulatedSequence
{
  ScanFileHeader header;
  std::vector<OrganizedScan> scans;  // sanitized, poses attached
  SensorPoseTrack poses;
  std::vector<PointLabel> labels;
};

/// Evenly spaced ring elevations from -15 to +15 degrees.
std::vector<double> ring_elevations(int rows);

SimulatedSequence simulate_sequence(
  const Scene & scene, double duration, double rate, int rows = 16, int cols = 900);

/// Writes scans.oscn, poses.txt and labels.txt into `dir`.
void write_sequence(const std::filesystem::path & dir, const SimulatedSequence & sequence);

Scene parse_scene(const std::string & text, const std::string & source = "<scene>");
Scene read_scene(const std::filesystem::path & path);
std::string format_scene(const Scene & scene);

/// Built-in scenes: "empty_field", "baseline", "baseline_moving", "near_wall", "crowd50".
Scene preset_scene(const std::string & name);
std::vector<std::string> preset_names();

}  // namespace sparse_mot

#endif  // SPARSE_MOT__SIMULATOR_HPP_
