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

#ifndef SPARSE_MOT__SCAN_MODEL_HPP_
#define SPARSE_MOT__SCAN_MODEL_HPP_

#include "sparse_mot/geometry.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sparse_mot
{

/// Range substituted for invalid measurements; exceeds the ~100 m sensor range.
inline constexpr double kDefaultSentinelRange = 200.0;

/// One full rotation of a multi-ring spinning LiDAR stored as a rows x cols grid.
///
/// Row 0 is the lowest elevation ring. Azimuths are shared across rows and
/// strictly increasing modulo 2*pi over at most one revolution. Ranges are kept
/// in single precision to match the on-disk container bit for bit.
class OrganizedScan
{
public:
  OrganizedScan() = default;

  /// Validates grid sizes and azimuth monotonicity; throws sparse_mot::Error.
  OrganizedScan(
    int rows, int cols, std::vector<double> elevations, std::vector<float> azimuths,
    std::vector<float> ranges, std::vector<std::uint8_t> valid, Pose sensor_pose = Pose::Identity(),
    double timestamp = 0.0);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return ranges_.size(); }
  std::size_t index(int row, int col) const
  {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(col);
  }

  float range(int row, int col) const { return ranges_[index(row, col)]; }
  bool valid(int row, int col) const { return valid_[index(row, col)] != 0; }
  double elevation(int row) const { return elevations_[static_cast<std::size_t>(row)]; }
  float azimuth(int col) const { return azimuths_[static_cast<std::size_t>(col)]; }

  std::span<const float> ranges() const { return ranges_; }
  std::span<const float> ring(int row) const
  {
    return std::span<const float>(ranges_).subspan(index(row, 0), static_cast<std::size_t>(cols_));
  }
  std::span<const std::uint8_t> valid_flags() const { return valid_; }
  std::span<const std::uint8_t> ring_valid(int row) const
  {
    return std::span<const std::uint8_t>(valid_).subspan(
      index(row, 0), static_cast<std::size_t>(cols_));
  }
  std::span<const double> elevations() const { return elevations_; }
  std::span<const float> azimuths() const { return azimuths_; }

  const Pose & sensor_pose() const { return sensor_pose_; }
  double timestamp() const { return timestamp_; }

  /// Mean azimuth increment between consecutive columns [rad].
  double angular_step() const;

  /// Azimuth of `col` unwrapped so that the sequence is strictly increasing from azimuth(0).
  double unwrapped_azimuth(int col) const;

  OrganizedScan with_pose(const Pose & pose) const;
  OrganizedScan with_ranges(std::vector<float> ranges) const;

private:
  int rows_{0};
  int cols_{0};
  std::vector<double> elevations_;
  std::vector<float> azimuths_;
  std::vector<float> ranges_;
  std::vector<std::uint8_t> valid_;
  std::vector<double> unwrapped_;
  Pose sensor_pose_{Pose::Identity()};
  double timestamp_{0.0};
};

struct GridCell
{
  int row{0};
  int col{0};
  bool operator==(const GridCell &) const = default;
  auto operator<=>(const GridCell &) const = default;
};

/// Point-level ground truth; object_id 0 is background.
struct PointLabel
{
  int scan_index{0};
  int row{0};
  int col{0};
  int object_id{0};
  bool operator==(const PointLabel &) const = default;
};

/// Time-ordered sensor->world poses consumed from an external estimator.
class SensorPoseTrack
{
public:
  struct Stamped
  {
    double timestamp;
    Pose pose;
  };

  SensorPoseTrack() = default;
  /// Throws when timestamps are not strictly increasing.
  explicit SensorPoseTrack(std::vector<Stamped> poses);

  bool empty() const { return poses_.empty(); }
  std::size_t size() const { return poses_.size(); }
  const std::vector<Stamped> & poses() const { return poses_; }

  /// Pose with the nearest timestamp; identity when the track is empty.
  Pose lookup(double timestamp) const;

private:
  std::vector<Stamped> poses_;
};

/// Replaces the range of every invalid cell with `sentinel`.
OrganizedScan sanitize_invalid(const OrganizedScan & scan, double sentinel = kDefaultSentinelRange);

/// Sensor-frame Cartesian point of a cell.
Vec3 sensor_point(const OrganizedScan & scan, int row, int col);

/// World-frame position of a valid cell; throws ErrorCode::kInvalidCell for invalid cells.
Vec3 point_position(const OrganizedScan & scan, int row, int col);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__SCAN_MODEL_HPP_
