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

#include "sparse_mot/scan_model.hpp"

#include "sparse_mot/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sparse_mot
{

namespace
{
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// float azimuths carry ~1e-7 relative error
constexpr double kSpanTolerance = 1e-5;
}  // namespace

OrganizedScan::OrganizedScan(
  int rows, int cols, std::vector<double> elevations, std::vector<float> azimuths,
  std::vector<float> ranges, std::vector<std::uint8_t> valid, Pose sensor_pose, double timestamp)
: rows_(rows),
  cols_(cols),
  elevations_(std::move(elevations)),
  azimuths_(std::move(azimuths)),
  ranges_(std::move(ranges)),
  valid_(std::move(valid)),
  sensor_pose_(sensor_pose),
  timestamp_(timestamp)
{
  if (rows_ <= 0 || cols_ <= 0) {
    throw Error(
      ErrorCode::kDimensionMismatch,
      "grid must be non-empty, got " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  const auto cells = static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
  if (elevations_.size() != static_cast<std::size_t>(rows_)) {
    throw Error(ErrorCode::kDimensionMismatch, "elevation count differs from rows");
  }
  if (azimuths_.size() != static_cast<std::size_t>(cols_)) {
    throw Error(ErrorCode::kDimensionMismatch, "azimuth count differs from cols");
  }
  if (ranges_.size() != cells || valid_.size() != cells) {
    throw Error(ErrorCode::kDimensionMismatch, "range/valid grids must have rows*cols cells");
  }

  unwrapped_.resize(azimuths_.size());
  unwrapped_[0] = azimuths_[0];
  for (std::size_t j = 1; j < azimuths_.size(); ++j) {
    double step = static_cast<double>(azimuths_[j]) - static_cast<double>(azimuths_[j - 1]);
    if (step <= 0.0) {
      step += kTwoPi;
    }
    if (!(step > 0.0) || step >= kTwoPi) {
      throw Error(
        ErrorCode::kNonMonotoneAzimuth, "azimuth does not advance at column " + std::to_string(j));
    }
    unwrapped_[j] = unwrapped_[j - 1] + step;
  }
  if (unwrapped_.back() - unwrapped_.front() > kTwoPi + kSpanTolerance) {
    throw Error(ErrorCode::kNonMonotoneAzimuth, "azimuths span more than one revolution");
  }
}

double OrganizedScan::angular_step() const
{
  if (cols_ < 2) {
    return kTwoPi;
  }
  return (unwrapped_.back() - unwrapped_.front()) / static_cast<double>(cols_ - 1);
}

double OrganizedScan::unwrapped_azimuth(int col) const
{
  return unwrapped_[static_cast<std::size_t>(col)];
}

OrganizedScan OrganizedScan::with_pose(const Pose & pose) const
{
  OrganizedScan copy = *this;
  copy.sensor_pose_ = pose;
  return copy;
}

OrganizedScan OrganizedScan::with_ranges(std::vector<float> ranges) const
{
  return OrganizedScan(
    rows_, cols_, elevations_, azimuths_, std::move(ranges), valid_, sensor_pose_, timestamp_);
}

SensorPoseTrack::SensorPoseTrack(std::vector<Stamped> poses) : poses_(std::move(poses))
{
  for (std::size_t i = 1; i < poses_.size(); ++i) {
    if (!(poses_[i].timestamp > poses_[i - 1].timestamp)) {
      throw Error(
        ErrorCode::kMalformedRecord,
        "pose timestamps must be strictly increasing (entry " + std::to_string(i) + ")");
    }
  }
}

Pose SensorPoseTrack::lookup(double timestamp) const
{
  if (poses_.empty()) {
    return Pose::Identity();
  }
  const auto it = std::lower_bound(
    poses_.begin(), poses_.end(), timestamp,
    [](const Stamped & s, double t) { return s.timestamp < t; });
  if (it == poses_.begin()) {
    return it->pose;
  }
  if (it == poses_.end()) {
    return poses_.back().pose;
  }
  const auto prev = std::prev(it);
  // ties go to the earlier pose
  return (it->timestamp - timestamp) < (timestamp - prev->timestamp) ? it->pose : prev->pose;
}

OrganizedScan sanitize_invalid(const OrganizedScan & scan, double sentinel)
{
  std::vector<float> ranges(scan.ranges().begin(), scan.ranges().end());
  const auto valid = scan.valid_flags();
  const auto sentinel_f = static_cast<float>(sentinel);
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (valid[i] == 0) {
      ranges[i] = sentinel_f;
    }
  }
  return scan.with_ranges(std::move(ranges));
}

Vec3 sensor_point(const OrganizedScan & scan, int row, int col)
{
  const double r = scan.range(row, col);
  const double elevation = scan.elevation(row);
  const double azimuth = scan.azimuth(col);
  const double horizontal = r * std::cos(elevation);
  return {horizontal * std::cos(azimuth), horizontal * std::sin(azimuth), r * std::sin(elevation)};
}

Vec3 point_position(const OrganizedScan & scan, int row, int col)
{
  if (row < 0 || row >= scan.rows() || col < 0 || col >= scan.cols()) {
    throw Error(ErrorCode::kInvalidCell, "cell out of bounds");
  }
  if (!scan.valid(row, col)) {
    throw Error(
      ErrorCode::kInvalidCell,
      "cell (" + std::to_string(row) + "," + std::to_string(col) + ") has no valid return");
  }
  return scan.sensor_pose() * sensor_point(scan, row, col);
}

}  // namespace sparse_mot
