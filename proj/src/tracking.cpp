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

#include "sparse_mot/tracking.hpp"

#include "sparse_mot/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>

namespace sparse_mot
{

void TrackerConfig::validate() const
{
  const bool positive = process_noise_accel > 0.0 && measurement_noise > 0.0 &&
                        assign_gate > 0.0 && cov_eigen_max > 0.0 && prune_radius > 0.0 &&
                        v_zero > 0.0 && v_max > 0.0 && default_dt > 0.0 &&
                        initial_velocity_std > 0.0;
  if (!positive) {
    throw Error(ErrorCode::kConfig, "tracker parameters must be positive");
  }
  if (!(v_zero < v_max)) {
    throw Error(ErrorCode::kConfig, "tracker needs v_zero < v_max");
  }
}

Vec3 truncate_velocity(const Vec3 & v, const TrackerConfig & config)
{
  const double speed = v.norm();
  if (speed <= config.v_zero) {
    return Vec3::Zero();
  }
  if (speed > config.v_max) {
    return v * (config.v_max / speed);
  }
  return v;
}

Mat3 measurement_covariance(const Cluster & cluster, double measurement_noise)
{
  const double floor = measurement_noise * measurement_noise;
  if (cluster.points.size() < 2) {
    return floor * Mat3::Identity();
  }
  Mat3 cov = Mat3::Zero();
  for (const auto & p : cluster.points) {
    const Vec3 d = p - cluster.centroid;
    cov += d * d.transpose();
  }
  cov /= static_cast<double>(cluster.points.size());
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  const Vec3 clamped = eig.eigenvalues().cwiseMax(floor);
  Mat3 out = eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

void predict(std::vector<Hypothesis> & hypotheses, double dt, const TrackerConfig & config)
{
  for (auto & h : hypotheses) {
    const Vec3 shift = h.velocity() * dt;
    h.filter.predict(dt, config.process_noise_accel);
    h.current_bbox = h.current_bbox.translated(shift);
  }
}

Association associate(
  const std::vector<Hypothesis> & hypotheses, const std::vector<Detection> & detections,
  const TrackerConfig & config)
{
  Association out;
  const auto n = static_cast<Eigen::Index>(hypotheses.size());
  const auto m = static_cast<Eigen::Index>(detections.size());
  out.cost = Eigen::MatrixXd::Constant(n, m, kForbidden);

  const Mat3 sensor_noise =
    config.measurement_noise * config.measurement_noise * Mat3::Identity();
  std::vector<Mat3> det_cov;
  det_cov.reserve(detections.size());
  for (const auto & d : detections) {
    det_cov.push_back(measurement_covariance(d.cluster, config.measurement_noise));
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    const auto & h = hypotheses[static_cast<std::size_t>(i)];
    const Mat3 h_cov = h.filter.position_covariance() + sensor_noise;
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto & d = detections[static_cast<std::size_t>(j)];
      const double c =
        bhattacharyya(h.position(), h_cov, d.cluster.centroid, det_cov[static_cast<std::size_t>(j)]);
      if (c <= config.assign_gate) {
        out.cost(i, j) = c;
      }
    }
  }
  out.assignment = hungarian(out.cost);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (out.assignment.row_to_col[static_cast<std::size_t>(i)] < 0) {
      out.unmatched_hypotheses.push_back(static_cast<int>(i));
    }
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    if (out.assignment.col_to_row[static_cast<std::size_t>(j)] < 0) {
      out.unmatched_detections.push_back(static_cast<int>(j));
    }
  }
  return out;
}

UpdateResult update_tracks(
  std::vector<Hypothesis> & hypotheses, const std::vector<Detection> & detections,
  const Association & association, int scan_index, const TrackerConfig & config, int & next_id)
{
  UpdateResult result;
  result.detection_track.assign(detections.size(), std::nullopt);
  result.detection_assigned.assign(detections.size(), false);

  // (a) corrections, (c) unassigned hypotheses coast on their prediction
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    auto & h = hypotheses[i];
    const int j = association.assignment.row_to_col[i];
    if (j < 0) {
      h.history.push_back({scan_index, h.current_bbox, true});
      continue;
    }
    const auto & det = detections[static_cast<std::size_t>(j)];
    h.filter.correct(
      det.cluster.centroid, measurement_covariance(det.cluster, config.measurement_noise));
    h.filter.set_velocity(truncate_velocity(h.filter.velocity(), config));
    h.current_bbox = det.cluster.bbox;
    if (!h.history.empty() && h.history.back().was_predicted) {
      result.recovered.push_back(h.id);
    }
    h.history.push_back({scan_index, det.cluster.bbox, false});
    h.last_assigned = scan_index;
    result.detection_track[static_cast<std::size_t>(j)] = h.id;
    result.detection_assigned[static_cast<std::size_t>(j)] = true;
  }

  // (b) new hypotheses from unmatched detections under the standard model
  for (const int j : association.unmatched_detections) {
    const auto & det = detections[static_cast<std::size_t>(j)];
    if (det.relaxed) {
      continue;
    }
    Hypothesis h;
    h.id = next_id++;
    Vec6 state = Vec6::Zero();
    state.head<3>() = det.cluster.centroid;
    Mat6 cov = Mat6::Zero();
    cov.topLeftCorner<3, 3>() = measurement_covariance(det.cluster, config.measurement_noise);
    cov.bottomRightCorner<3, 3>() =
      config.initial_velocity_std * config.initial_velocity_std * Mat3::Identity();
    h.filter = ConstantVelocityKalman(state, cov);
    h.current_bbox = det.cluster.bbox;
    h.initial_bbox = det.cluster.bbox;
    h.history.push_back({scan_index, det.cluster.bbox, false});
    h.born_at = scan_index;
    h.last_assigned = scan_index;
    result.detection_track[static_cast<std::size_t>(j)] = h.id;
    result.spawned.push_back(h.id);
    hypotheses.push_back(std::move(h));
  }

  // (d) covariance based deletion
  std::erase_if(hypotheses, [&](const Hypothesis & h) {
    const Eigen::SelfAdjointEigenSolver<Mat3> eig(h.filter.position_covariance());
    const bool drop = eig.eigenvalues().maxCoeff() > config.cov_eigen_max;
    if (drop) {
      result.deleted.push_back(h.id);
    }
    return drop;
  });

  // (e) the older hypothesis survives; equal age keeps the lower id
  std::vector<std::size_t> order(hypotheses.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (hypotheses[a].born_at != hypotheses[b].born_at) {
      return hypotheses[a].born_at < hypotheses[b].born_at;
    }
    return hypotheses[a].id < hypotheses[b].id;
  });
  std::vector<char> pruned(hypotheses.size(), 0);
  const double r2 = config.prune_radius * config.prune_radius;
  for (std::size_t a = 0; a < order.size(); ++a) {
    if (pruned[order[a]]) {
      continue;
    }
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      if (pruned[order[b]]) {
        continue;
      }
      const Vec3 d = hypotheses[order[a]].position() - hypotheses[order[b]].position();
      if (d.squaredNorm() <= r2) {
        pruned[order[b]] = 1;
      }
    }
  }
  std::vector<Hypothesis> survivors;
  survivors.reserve(hypotheses.size());
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    if (pruned[i]) {
      result.deleted.push_back(hypotheses[i].id);
    } else {
      survivors.push_back(std::move(hypotheses[i]));
    }
  }
  hypotheses = std::move(survivors);

  // detections consumed by a track that no longer exists are unowned
  for (auto & owner : result.detection_track) {
    if (owner && std::find(result.deleted.begin(), result.deleted.end(), *owner) !=
                   result.deleted.end()) {
      owner.reset();
    }
  }

  // (f) static -> dynamic once the box left its initial footprint
  for (auto & h : hypotheses) {
    if (!h.dynamic && !h.current_bbox.intersects(h.initial_bbox)) {
      h.dynamic = true;
      result.became_dynamic.push_back(h.id);
    }
  }
  return result;
}

Tracker::Tracker(TrackerConfig config) : config_(config)
{
  config_.validate();
}

UpdateResult Tracker::step(
  const std::vector<Detection> & detections, int scan_index, double timestamp)
{
  double dt = config_.default_dt;
  if (last_timestamp_ && timestamp > *last_timestamp_) {
    dt = timestamp - *last_timestamp_;
  }
  last_timestamp_ = timestamp;

  predict(hypotheses_, dt, config_);
  const auto association = associate(hypotheses_, detections, config_);
  return update_tracks(hypotheses_, detections, association, scan_index, config_, next_id_);
}

std::vector<TrackBox> Tracker::active_boxes() const
{
  std::vector<TrackBox> boxes;
  boxes.reserve(hypotheses_.size());
  for (const auto & h : hypotheses_) {
    boxes.push_back({h.id, h.current_bbox});
  }
  return boxes;
}

}  // namespace sparse_mot
