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

#include "sparse_mot/error.hpp"
#include "sparse_mot/tracking.hpp"
#include "support/test_support.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <set>

namespace sparse_mot
{
namespace
{

Detection detection_at(const Vec3 & foot)
{
  return {test::cluster_of(test::person_points(foot)), false, std::nullopt};
}

Detection point_detection(const Vec3 & p)
{
  return {Cluster::from_cells({{0, 0}}, {p}, 16), false, std::nullopt};
}

TEST(TruncateVelocity, Band)
{
  const TrackerConfig cfg;
  EXPECT_EQ(truncate_velocity(Vec3(0.25, 0, 0), cfg), Vec3::Zero());
  const Vec3 fast = truncate_velocity(Vec3(0, 3.33, 0), cfg);
  EXPECT_NEAR(fast.norm(), 2.7778, 1e-4);
  EXPECT_NEAR(fast.normalized().y(), 1.0, 1e-12);
  EXPECT_EQ(truncate_velocity(Vec3(1.5, 0, 0), cfg), Vec3(1.5, 0, 0));
}

TEST(MeasurementCovariance, FloorAndShape)
{
  const auto single = measurement_covariance(Cluster::from_cells({{0, 0}}, {Vec3::Zero()}, 16), 0.05);
  EXPECT_NEAR((single - 0.0025 * Mat3::Identity()).norm(), 0.0, 1e-15);
  const auto person = measurement_covariance(test::cluster_of(test::person_points(Vec3::Zero())), 0.05);
  EXPECT_GT(person(2, 2), person(0, 0));
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<Mat3>(person).eigenvalues().minCoeff(), 0.0025 - 1e-12);
}

TEST(Associate, OnTopMatches)
{
  Tracker tracker{TrackerConfig{}};
  tracker.step({detection_at(Vec3(5, 0, 0))}, 0, 0.0);
  auto hyps = tracker.hypotheses();
  predict(hyps, 0.1, tracker.config());
  const auto assoc = associate(hyps, {detection_at(Vec3(5, 0, 0))}, tracker.config());
  EXPECT_EQ(assoc.assignment.row_to_col, std::vector<int>({0}));
  EXPECT_TRUE(assoc.unmatched_detections.empty());
}

TEST(Associate, GateForbidsEverything)
{
  Tracker tracker{TrackerConfig{}};
  tracker.step({detection_at(Vec3(5, 0, 0)), detection_at(Vec3(-5, 0, 0))}, 0, 0.0);
  auto hyps = tracker.hypotheses();
  const auto assoc = associate(hyps, {detection_at(Vec3(0, 20, 0)), detection_at(Vec3(0, -20, 0))}, tracker.config());
  EXPECT_EQ(assoc.assignment.size(), 0u);
  EXPECT_EQ(assoc.unmatched_hypotheses.size(), 2u);
  EXPECT_EQ(assoc.unmatched_detections.size(), 2u);
}

TEST(Associate, CrossingPathsKeepIdentities)
{
  // Detection order is swapped; greedy row-by-row nearest would also pick
  // correctly here, the point is that the global optimum does.
  TrackerConfig cfg;
  Tracker tracker{cfg};
  for (int k = 0; k < 6; ++k) {
    const double x = 0.12 * k;
    tracker.step({detection_at(Vec3(x, 0.0, 0)), detection_at(Vec3(-x, 1.0, 0))}, k, 0.1 * k);
  }
  ASSERT_EQ(tracker.hypotheses().size(), 2u);
  auto hyps = tracker.hypotheses();
  predict(hyps, 0.1, cfg);
  const std::vector<Detection> dets{detection_at(Vec3(-0.72, 1.0, 0)), detection_at(Vec3(0.72, 0.0, 0))};
  const auto assoc = associate(hyps, dets, cfg);
  EXPECT_EQ(assoc.assignment.row_to_col, std::vector<int>({1, 0}));
  // brute-force check of the 2x2 optimum
  const double straight = assoc.cost(0, 0) + assoc.cost(1, 1);
  const double swapped = assoc.cost(0, 1) + assoc.cost(1, 0);
  EXPECT_LT(swapped, straight);
}

TEST(UpdateTracks, StationaryStaysStatic)
{
  Tracker tracker{TrackerConfig{}};
  for (int k = 0; k < 30; ++k) {
    tracker.step({detection_at(Vec3(4, 4, 0))}, k, 0.1 * k);
  }
  ASSERT_EQ(tracker.hypotheses().size(), 1u);
  EXPECT_FALSE(tracker.hypotheses()[0].dynamic);
  EXPECT_EQ(tracker.hypotheses()[0].velocity(), Vec3::Zero());
}

TEST(UpdateTracks, WalkerBecomesDynamicAndStaysDynamic)
{
  Tracker tracker{TrackerConfig{}};
  bool was_dynamic = false;
  for (int k = 0; k < 60; ++k) {
    const double x = k < 40 ? 0.15 * k : 0.15 * 40;
    tracker.step({detection_at(Vec3(x, 2, 0))}, k, 0.1 * k);
    ASSERT_EQ(tracker.hypotheses().size(), 1u) << "scan " << k;
    const auto & h = tracker.hypotheses()[0];
    if (was_dynamic) {
      EXPECT_TRUE(h.dynamic);
    }
    was_dynamic = h.dynamic;
    EXPECT_LE(h.velocity().norm(), tracker.config().v_max + 1e-12);
    EXPECT_TRUE(h.velocity().norm() == 0.0 || h.velocity().norm() > tracker.config().v_zero);
  }
  EXPECT_TRUE(was_dynamic);
  EXPECT_FALSE(tracker.hypotheses()[0].current_bbox.intersects(tracker.hypotheses()[0].initial_bbox));
}

TEST(UpdateTracks, DeletedWhenCovarianceExceedsBound)
{
  const TrackerConfig cfg;
  // closed form per axis: p0 + v0 t^2 + q t^3 / 3 with zero cross term at birth
  const double p0 = cfg.measurement_noise * cfg.measurement_noise;
  const double v0 = cfg.initial_velocity_std * cfg.initial_velocity_std;
  const double q = cfg.process_noise_accel * cfg.process_noise_accel;
  int expected = 0;
  for (int k = 1; k < 100; ++k) {
    const double t = 0.1 * k;
    if (p0 + v0 * t * t + q * t * t * t / 3.0 > cfg.cov_eigen_max) {
      expected = k;
      break;
    }
  }
  ASSERT_GT(expected, 1);

  Tracker tracker{cfg};
  tracker.step({point_detection(Vec3(3, 3, 1))}, 0, 0.0);
  for (int k = 1; k <= expected; ++k) {
    const auto result = tracker.step({}, k, 0.1 * k);
    if (k < expected) {
      ASSERT_EQ(tracker.hypotheses().size(), 1u) << "scan " << k;
      EXPECT_TRUE(tracker.hypotheses()[0].history.back().was_predicted);
    } else {
      EXPECT_TRUE(tracker.hypotheses().empty());
      EXPECT_EQ(result.deleted, std::vector<int>({1}));
    }
  }
}

TEST(UpdateTracks, YoungerNeighbourIsPruned)
{
  Tracker tracker{TrackerConfig{}};
  for (int k = 0; k < 20; ++k) {
    tracker.step({detection_at(Vec3(6, 0, 0))}, k, 0.1 * k);
  }
  const auto result =
    tracker.step({detection_at(Vec3(6, 0, 0)), detection_at(Vec3(6.3, 0, 0))}, 20, 2.0);
  EXPECT_EQ(result.spawned, std::vector<int>({2}));
  EXPECT_EQ(result.deleted, std::vector<int>({2}));
  ASSERT_EQ(tracker.hypotheses().size(), 1u);
  EXPECT_EQ(tracker.hypotheses()[0].id, 1);
}

TEST(UpdateTracks, RelaxedDetectionsDoNotSpawn)
{
  Tracker tracker{TrackerConfig{}};
  Detection relaxed = detection_at(Vec3(1, 1, 0));
  relaxed.relaxed = true;
  const auto result = tracker.step({relaxed}, 0, 0.0);
  EXPECT_TRUE(tracker.hypotheses().empty());
  EXPECT_FALSE(result.detection_track[0].has_value());
}

TEST(Tracker, IdsAreNeverReused)
{
  Tracker tracker{TrackerConfig{}};
  std::set<int> seen;
  for (int k = 0; k < 50; ++k) {
    std::vector<Detection> dets;
    if (k % 10 < 3) {
      dets.push_back(detection_at(Vec3(10.0 * (k / 10), 0, 0)));
    }
    const auto r = tracker.step(dets, k, 0.1 * k);
    for (const int id : r.spawned) {
      EXPECT_TRUE(seen.insert(id).second) << "id " << id << " reused";
    }
  }
  EXPECT_GE(seen.size(), 5u);
}

TEST(Tracker, ConfigValidation)
{
  TrackerConfig cfg;
  cfg.v_zero = 5.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.measurement_noise = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
}

}  // namespace
}  // namespace sparse_mot
