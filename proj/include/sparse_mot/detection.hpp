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

#ifndef SPARSE_MOT__DETECTION_HPP_
#define SPARSE_MOT__DETECTION_HPP_

#include "sparse_mot/geometry.hpp"
#include "sparse_mot/scan_model.hpp"
#include "sparse_mot/segmentation.hpp"

#include <optional>
#include <span>
#include <vector>

namespace sparse_mot
{

struct ClusterConfig
{
  int search_radius{2};             // grid L1 radius [cells]
  double distance_threshold{0.5};   // [m] Euclidean gate between grown neighbours
  int min_cluster_size{3};

  void validate() const;
};

/// Simple size model of a target plus the relaxation applied near tracks.
struct ObjectModel
{
  double min_height{0.4};            // [m]
  double max_height{2.2};            // [m]
  double max_diagonal{1.2};          // [m] horizontal bbox diagonal
  double relaxed_max_diagonal{2.4};  // [m]
  double vicinity_radius{1.0};       // [m] centroid distance to a tracked box

  void validate() const;
};

struct Cluster
{
  std::vector<GridCell> cells;
  std::vector<Vec3> points;  // world frame, parallel to cells
  Vec3 centroid{Vec3::Zero()};
  Box3 bbox;
  bool touches_top{false};
  bool touches_bottom{false};

  /// Builds centroid, bbox and ring flags from cells/points.
  static Cluster from_cells(std::vector<GridCell> cells, std::vector<Vec3> points, int rows);
};

struct Detection
{
  Cluster cluster;
  bool relaxed{false};
  std::optional<int> relaxed_by;  // track id whose vicinity relaxed the model
};

/// Box of an active track fed back to the detector.
struct TrackBox
{
  int id{0};
  Box3 box;
};

/// Breadth-first region growing over foreground cells. Columns wrap around.
std::vector<Cluster> region_grow(
  const OrganizedScan & scan, const SegmentMask & mask, const ClusterConfig & config);

/// Merges clusters near the start/end seam of the rotation that contain a
/// point pair closer than the distance threshold.
std::vector<Cluster> fuse_wraparound(
  std::vector<Cluster> clusters, const OrganizedScan & scan, const ClusterConfig & config);

std::vector<Detection> filter_clusters(
  const std::vector<Cluster> & clusters, const ObjectModel & model,
  std::span<const TrackBox> active_tracks);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__DETECTION_HPP_
