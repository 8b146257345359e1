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

#ifndef SPARSE_MOT__TRACKING_HPP_
#define SPARSE_MOT__TRACKING_HPP_

#include "sparse_mot/detection.hpp"
#include "sparse_mot/hungarian.hpp"
#include "sparse_mot/kalman.hpp"

#include <optional>
#include <vector>

namespace sparse_mot
{

struct TrackerConfig
{
  double process_noise_accel{2.0};    // [m/s^2] white acceleration std
  double measurement_noise{0.05};     // [m] floor of the measurement std
  double assign_gate{4.0};            // Bhattacharyya distance above which pairs are forbidden
  double cov_eigen_max{1.0};          // [m^2] position covariance eigenvalue for deletion
  double prune_radius{0.5};           // [m]
  double v_zero{1.0 / 3.6};           // [m/s] 1 km/h
  double v_max{10.0 / 3.6};           // [m/s] 10 km/h
  double default_dt{0.1};             // [s] used when timestamps do not advance
  double initial_velocity_std{10.0 / 3.6};  // [m/s] velocity std of a new hypothesis

  void validate() const;
};

struct BoxRecord
{
  int scan_index{0};
  Box3 box;
  bool was_predicted{false};
};

struct Hypothesis
{
  int id{0};
  ConstantVelocityKalman filter;
  Box3 current_bbox;
  Box3 initial_bbox;
  std::vector<BoxRecord> history;
  int born_at{0};
  int last_assigned{0};
  bool dynamic{false};

  Vec3 position() const { return filter.position(); }
  Vec3 velocity() const { return filter.velocity(); }
};

/// Zeroes speeds up to v_zero and caps the magnitude at v_max, keeping the heading.
Vec3 truncate_velocity(const Vec3 & v, const TrackerConfig & config);

/// Empirical covariance of the cluster points with eigenvalues floored at
/// measurement_noise^2.
Mat3 measurement_covariance(const Cluster & cluster, double measurement_noise);

void predict(std::vector<Hypothesis> & hypotheses, double dt, const TrackerConfig & config);

struct Association
{
  Eigen::MatrixXd cost;        // hypotheses x detections, kForbidden above the gate
  Assignment assignment;       // rows are hypotheses, columns detections
  std::vector<int> unmatched_hypotheses;  // indices
  std::vector<int> unmatched_detections;  // indices
};

Association associate(
  const std::vector<Hypothesis> & hypotheses, const std::vector<Detection> & detections,
  const TrackerConfig & config);

struct UpdateResult
{
  std::vector<std::optional<int>> detection_track;  // track id that consumed each detection
  std::vector<bool> detection_assigned;             // true when matched to an existing track
  std::vector<int> spawned;
  std::vector<int> deleted;
  std::vector<int> became_dynamic;
  std::vector<int> recovered;  // assigned again after predicted-only scans
};

/// Correction, spawning, deletion, pruning and static/dynamic classification
/// for one scan. `next_id` is advanced for every spawned hypothesis.
UpdateResult update_tracks(
  std::vector<Hypothesis> & hypotheses, const std::vector<Detection> & detections,
  const Association & association, int scan_index, const TrackerConfig & config, int & next_id);

/// Owns the hypothesis set and runs predict/associate/update once per scan.
class Tracker
{
public:
  explicit Tracker(TrackerConfig config);

  UpdateResult step(const std::vector<Detection> & detections, int scan_index, double timestamp);

  const std::vector<Hypothesis> & hypotheses() const { return hypotheses_; }
  std::vector<TrackBox> active_boxes() const;
  const TrackerConfig & config() const { return config_; }

private:
  TrackerConfig config_;
  std::vector<Hypothesis> hypotheses_;
  std::optional<double> last_timestamp_;
  int next_id_{1};
};

}  // namespace sparse_mot

#endif  // SPARSE_MOT__TRACKING_HPP_
