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
#include "sparse_mot/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace sparse_mot
{
namespace
{

GtTrack straight_track(int id, int scans, const Vec3 & at = Vec3::Zero())
{
  GtTrack t{id, {}};
  for (int k = 0; k < scans; ++k) {
    t.centroids[k] = at + Vec3(0.1 * k, 0, 0);
  }
  return t;
}

TEST(ClearMot, PerfectTracking)
{
  const auto gt = straight_track(1, 20);
  HypothesisFrames frames;
  for (const auto & [k, c] : gt.centroids) {
    frames[k].push_back({7, c});
  }
  const auto r = clear_mot({gt}, frames, 0.5);
  EXPECT_EQ(r.mota, 1.0);
  EXPECT_EQ(r.motp, 0.0);
  EXPECT_EQ(r.mismatches, 0);
  EXPECT_EQ(cost(r.mota), 0.0);
}

TEST(ClearMot, NoTrackerIsZero)
{
  const auto r = clear_mot({straight_track(1, 20), straight_track(2, 5)}, {}, 0.5);
  EXPECT_EQ(r.mota, 0.0);
  EXPECT_EQ(r.misses, 25);
  EXPECT_EQ(r.ml, 1.0);
}

TEST(ClearMot, HandCountedMota)
{
  // 50 labels; 5 misses, 3 false positives, 2 identity switches
  const auto gt = straight_track(1, 50);
  HypothesisFrames frames;
  for (int k = 0; k < 45; ++k) {
    const int id = (k >= 20 && k < 30) ? 11 : 10;
    frames[k].push_back({id, gt.centroids.at(k)});
  }
  for (int k = 0; k < 3; ++k) {
    frames[k].push_back({99, Vec3(100, 0, 0)});
  }
  const auto r = clear_mot({gt}, frames, 0.5);
  EXPECT_EQ(r.total_labels, 50);
  EXPECT_EQ(r.misses, 5);
  EXPECT_EQ(r.false_positives, 3);
  EXPECT_EQ(r.mismatches, 2);
  EXPECT_DOUBLE_EQ(r.mota, 0.8);
  EXPECT_EQ(r.matches + r.misses, r.total_labels);
}

TEST(ClearMot, ConstantOffsetMotp)
{
  const auto gt = straight_track(1, 10);
  HypothesisFrames frames;
  for (const auto & [k, c] : gt.centroids) {
    frames[k].push_back({3, c + Vec3(0, 0.3, 0)});
  }
  const auto r = clear_mot({gt}, frames, 0.5);
  EXPECT_NEAR(r.motp, 0.3, 1e-12);
  EXPECT_EQ(r.mota, 1.0);
}

TEST(ClearMot, PersistentMatchSurvivesCloserRival)
{
  const auto gt = straight_track(1, 3);
  HypothesisFrames frames;
  frames[0].push_back({1, gt.centroids.at(0) + Vec3(0.4, 0, 0)});
  frames[1].push_back({1, gt.centroids.at(1) + Vec3(0.4, 0, 0)});
  frames[1].push_back({2, gt.centroids.at(1)});
  const auto r = clear_mot({gt}, frames, 0.5);
  EXPECT_EQ(r.mismatches, 0);
  EXPECT_EQ(r.false_positives, 1);
}

TEST(ClearMot, NoLabelsIsUndefined)
{
  try {
    clear_mot({}, {}, 0.5);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefinedMetric);
  }
}

CoverageRatios coverage_for(int hits)
{
  const auto gt = straight_track(1, 10);
  HypothesisFrames frames;
  for (int k = 0; k < hits; ++k) {
    frames[k].push_back({1, gt.centroids.at(k)});
  }
  return coverage({gt}, frames, 0.5);
}

TEST(Coverage, Boundaries)
{
  EXPECT_EQ(coverage_for(10).mt, 1.0);
  EXPECT_EQ(coverage_for(8).mt, 1.0);
  EXPECT_EQ(coverage_for(7).pt, 1.0);
  EXPECT_EQ(coverage_for(2).pt, 1.0);
  EXPECT_EQ(coverage_for(1).ml, 1.0);
  EXPECT_EQ(coverage_for(0).ml, 1.0);
}

TEST(Pearson, Examples)
{
  const std::vector<double> xs{1, 2, 3, 4};
  const std::vector<double> neg{-1, -2, -3, -4};
  EXPECT_NEAR(pearson(xs, xs), 1.0, 1e-15);
  EXPECT_NEAR(pearson(xs, neg), -1.0, 1e-15);
  const std::vector<double> a{1, 2, 3};
  const std::vector<double> b{1, 2, 4};
  EXPECT_NEAR(pearson(a, b), 3.0 / std::sqrt(2.0 * 14.0 / 3.0), 1e-15);
  EXPECT_NEAR(pearson(a, b), 0.9820, 1e-4);
}

TEST(Pearson, Errors)
{
  const std::vector<double> one{1};
  const std::vector<double> flat{2, 2, 2};
  const std::vector<double> xs{1, 2, 3};
  EXPECT_THROW(pearson(one, one), Error);
  EXPECT_THROW(pearson(xs, flat), Error);
}

TEST(Cost, Values)
{
  EXPECT_EQ(cost(1.0), 0.0);
  EXPECT_EQ(cost(0.0), 1.0);
  EXPECT_NEAR(cost(-0.213), 1.213, 1e-15);
}

TEST(FramesFromTracks, DynamicOnlyKeepsEverDynamicIds)
{
  std::vector<TrackRecord> records;
  for (int k = 0; k < 4; ++k) {
    records.push_back({k, 1, k >= 2, Vec3(k, 0, 0), Vec3::Zero(), Box3{}, false});
    records.push_back({k, 2, false, Vec3(0, k, 0), Vec3::Zero(), Box3{}, false});
  }
  const auto dyn = frames_from_tracks(records, true);
  ASSERT_EQ(dyn.size(), 4u);
  EXPECT_EQ(dyn.at(0).size(), 1u);
  EXPECT_EQ(dyn.at(0)[0].id, 1);
  EXPECT_EQ(frames_from_tracks(records, false).at(0).size(), 2u);
}

}  // namespace
}  // namespace sparse_mot
