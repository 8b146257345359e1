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

#include "sparse_mot/dynamic_filter.hpp"
#include "sparse_mot/error.hpp"
#include "support/test_support.hpp"

#include <gtest/gtest.h>

namespace sparse_mot
{
namespace
{

Hypothesis hypothesis(int id, bool dynamic)
{
  Hypothesis h;
  h.id = id;
  h.dynamic = dynamic;
  return h;
}

Detection detection_of_cells(const OrganizedScan & scan, int col_begin, int col_end)
{
  std::vector<GridCell> cells;
  std::vector<Vec3> points;
  for (int r = 0; r < scan.rows(); ++r) {
    for (int c = col_begin; c < col_end; ++c) {
      cells.push_back({r, c});
      points.push_back(point_position(scan, r, c));
    }
  }
  return {Cluster::from_cells(cells, points, scan.rows()), false, std::nullopt};
}

std::size_t valid_count(const OrganizedScan & scan)
{
  return static_cast<std::size_t>(std::count(scan.valid_flags().begin(), scan.valid_flags().end(), 1));
}

TEST(DynamicFilter, RemovalRegionReachesTowardsTheFloor)
{
  const DynamicObjectFilter filter(0.1, 0.5);
  const Box3 box{Vec3(0, 0, 0.4), Vec3(1, 1, 1.7)};
  const Box3 region = filter.removal_region(box);
  EXPECT_NEAR(region.min.x(), -0.1, 1e-15);
  EXPECT_NEAR(region.max.z(), 1.8, 1e-15);
  EXPECT_NEAR(region.min.z(), -0.2, 1e-15);
  EXPECT_TRUE(region.contains(Vec3(0.5, 0.5, 0.02)));
  EXPECT_FALSE(DynamicObjectFilter(0.1, 0.0).removal_region(box).contains(Vec3(0.5, 0.5, 0.02)));
  EXPECT_THROW(DynamicObjectFilter(0.1, -0.1), Error);
}

TEST(FilterCurrent, NoDynamicKeepsEverything)
{
  const auto scan = test::uniform_scan(16, 90, 5.0f);
  DynamicObjectFilter filter;
  const auto det = detection_of_cells(scan, 0, 3);
  const auto & entry = filter.filter_current(0, scan, {det}, {hypothesis(1, false)}, {1});
  EXPECT_EQ(entry.points.size(), valid_count(scan));
  EXPECT_EQ(entry.points.size(), entry.cells.size());
}

TEST(FilterCurrent, DynamicDetectionIsRemoved)
{
  const auto scan = test::uniform_scan(12, 100, 5.0f);
  DynamicObjectFilter filter;
  const auto det = detection_of_cells(scan, 20, 30);  // 120 cells
  ASSERT_EQ(det.cluster.points.size(), 120u);
  const auto & entry = filter.filter_current(0, scan, {det}, {hypothesis(4, true)}, {4});
  EXPECT_EQ(entry.points.size(), valid_count(scan) - 120);
  for (const auto & cell : entry.cells) {
    EXPECT_FALSE(cell.col >= 20 && cell.col < 30);
  }
}

TEST(FilterCurrent, IndicesMustIncrease)
{
  const auto scan = test::uniform_scan(2, 8, 5.0f);
  DynamicObjectFilter filter;
  filter.filter_current(3, scan, {}, {}, {});
  try {
    filter.filter_current(3, scan, {}, {}, {});
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kConsistency);
  }
}

struct RetroFixture : ::testing::Test
{
  OrganizedScan scan = test::uniform_scan(16, 90, 5.0f);
  DynamicObjectFilter filter;
  Box3 box;

  void SetUp() override
  {
    for (int k = 0; k < 70; ++k) {
      filter.filter_current(k, scan, {}, {}, {});
    }
    std::vector<Vec3> pts;
    for (int r = 0; r < 16; ++r) {
      for (int c = 0; c < 3; ++c) {
        pts.push_back(point_position(scan, r, c));
      }
    }
    box = Box3::around(pts);
  }

  std::size_t inside(int scan_index) const
  {
    const auto * e = filter.log().find(scan_index);
    const auto region = filter.removal_region(box);
    return static_cast<std::size_t>(std::count_if(
      e->points.begin(), e->points.end(), [&](const Vec3 & p) { return region.contains(p); }));
  }
};

TEST_F(RetroFixture, HistoricalBoxesAreRemoved)
{
  const std::size_t per_scan = inside(0);
  ASSERT_GE(per_scan, 48u);
  Hypothesis h = hypothesis(9, true);
  for (int k = 10; k <= 50; ++k) {
    h.history.push_back({k, box, false});
  }
  const auto removed = filter.retro_filter(h);
  EXPECT_EQ(removed, per_scan * 41);
  for (int k = 0; k < 70; ++k) {
    EXPECT_EQ(inside(k), (k >= 10 && k <= 50) ? 0u : per_scan) << "scan " << k;
  }
}

TEST_F(RetroFixture, PredictedBoxesWaitForRecovery)
{
  const std::size_t per_scan = inside(0);
  Hypothesis h = hypothesis(9, true);
  for (int k = 55; k <= 59; ++k) {
    h.history.push_back({k, box, false});
  }
  for (int k = 60; k <= 63; ++k) {
    h.history.push_back({k, box, true});
  }
  filter.retro_filter(h);
  EXPECT_EQ(inside(59), 0u);
  EXPECT_EQ(inside(60), per_scan);

  h.history.push_back({64, box, false});
  EXPECT_EQ(filter.retro_filter(h), per_scan * 5);
  for (int k = 55; k <= 64; ++k) {
    EXPECT_EQ(inside(k), 0u);
  }
}

TEST_F(RetroFixture, SecondCallIsANoOp)
{
  Hypothesis h = hypothesis(9, true);
  for (int k = 10; k <= 20; ++k) {
    h.history.push_back({k, box, false});
  }
  filter.retro_filter(h);
  const auto before = filter.log().entries();
  EXPECT_EQ(filter.retro_filter(h), 0u);
  const auto & after = filter.log().entries();
  ASSERT_EQ(before.size(), after.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    EXPECT_EQ(before[i].cells, after[i].cells);
  }
}

TEST_F(RetroFixture, UnloggedScanIsAnError)
{
  Hypothesis h = hypothesis(9, true);
  h.history.push_back({500, box, false});
  try {
    filter.retro_filter(h);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kConsistency);
  }
}

TEST(StaticLog, WritesFilesAndManifest)
{
  const auto scan = test::uniform_scan(2, 8, 5.0f);
  DynamicObjectFilter filter;
  filter.filter_current(0, scan, {}, {}, {});
  filter.filter_current(1, scan, {}, {}, {});
  const auto dir = test::temp_dir("static_log") / "static";
  write_static_log(dir, filter.log());
  EXPECT_TRUE(std::filesystem::exists(dir / "static_0.xyz"));
  EXPECT_TRUE(std::filesystem::exists(dir / "static_1.xyz"));
  EXPECT_TRUE(std::filesystem::exists(dir / "manifest.txt"));
}

}  // namespace
}  // namespace sparse_mot
