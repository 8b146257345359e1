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

#ifndef SPARSE_MOT__GEOMETRY_HPP_
#define SPARSE_MOT__GEOMETRY_HPP_

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <limits>
#include <span>

namespace sparse_mot
{

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Pose = Eigen::Isometry3d;

/// Axis-aligned box in world coordinates [m].
struct Box3
{
  Vec3 min{Vec3::Constant(std::numeric_limits<double>::infinity())};
  Vec3 max{Vec3::Constant(-std::numeric_limits<double>::infinity())};

  static Box3 around(std::span<const Vec3> points)
  {
    Box3 box;
    for (const auto & p : points) {
      box.extend(p);
    }
    return box;
  }

  void extend(const Vec3 & p)
  {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }

  bool empty() const { return (min.array() > max.array()).any(); }

  Vec3 center() const { return 0.5 * (min + max); }
  Vec3 size() const { return max - min; }
  double height() const { return max.z() - min.z(); }

  // footprint diagonal in the x-y plane
  double diagonal_xy() const { return (max - min).head<2>().norm(); }

  bool contains(const Vec3 & p) const
  {
    return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
  }

  // closed boxes: touching faces count as intersecting
  bool intersects(const Box3 & other) const
  {
    return (min.array() <= other.max.array()).all() && (other.min.array() <= max.array()).all();
  }

  Box3 translated(const Vec3 & offset) const { return {min + offset, max + offset}; }
  Box3 inflated(double margin) const
  {
    return {min - Vec3::Constant(margin), max + Vec3::Constant(margin)};
  }

  bool operator==(const Box3 & other) const { return min == other.min && max == other.max; }
};

inline Vec3 mean_of(std::span<const Vec3> points)
{
  Vec3 sum = Vec3::Zero();
  for (const auto & p : points) {
    sum += p;
  }
  return points.empty() ? sum : Vec3(sum / static_cast<double>(points.size()));
}

}  // namespace sparse_mot

#endif  // SPARSE_MOT__GEOMETRY_HPP_
