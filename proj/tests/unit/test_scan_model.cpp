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
#include "sparse_mot/scan_io.hpp"
#include "sparse_mot/scan_model.hpp"
#include "support/test_support.hpp"

#include <gtest/gtest.h>

#include <numbers>

namespace sparse_mot
{
namespace
{

using test::even_azimuths;
using test::even_elevations;

TEST(SanitizeInvalid, AllValidIsIdentity)
{
  const auto scan = test::uniform_scan(4, 16, 7.5f);
  const auto out = sanitize_invalid(scan);
  EXPECT_TRUE(std::equal(scan.ranges().begin(), scan.ranges().end(), out.ranges().begin()));
}

TEST(SanitizeInvalid, InvalidCellGetsSentinel)
{
  std::vector<float> ranges(16 * 10, 5.0f);
  std::vector<std::uint8_t> valid(16 * 10, 1);
  ranges[3 * 10 + 7] = std::numeric_limits<float>::max();
  valid[3 * 10 + 7] = 0;
  const OrganizedScan scan(16, 10, even_elevations(16), even_azimuths(10), ranges, valid);
  const auto out = sanitize_invalid(scan, 200.0);
  EXPECT_EQ(out.range(3, 7), 200.0f);
  EXPECT_FALSE(out.valid(3, 7));
  EXPECT_EQ(out.range(3, 6), 5.0f);
}

TEST(SanitizeInvalid, CountsAndIdempotence)
{
  std::vector<float> ranges(100);
  std::vector<std::uint8_t> valid(100, 1);
  for (int i = 0; i < 100; ++i) {
    ranges[i] = 1.0f + 0.1f * static_cast<float>(i);
    if (i % 5 < 2) {
      valid[i] = 0;
    }
  }
  const OrganizedScan scan(1, 100, {0.0}, even_azimuths(100), ranges, valid);
  const auto once = sanitize_invalid(scan);
  int sentinel = 0;
  int unchanged = 0;
  for (int c = 0; c < 100; ++c) {
    if (once.range(0, c) == 200.0f && !once.valid(0, c)) {
      ++sentinel;
    } else if (once.range(0, c) == ranges[c]) {
      ++unchanged;
    }
  }
  EXPECT_EQ(sentinel, 40);
  EXPECT_EQ(unchanged, 60);
  const auto twice = sanitize_invalid(once);
  EXPECT_TRUE(std::equal(once.ranges().begin(), once.ranges().end(), twice.ranges().begin()));
}

OrganizedScan single_cell(float range, double elevation, float azimuth, const Pose & pose)
{
  return OrganizedScan(1, 2, {elevation}, {azimuth, azimuth + 0.1f}, {range, range}, {1, 1}, pose);
}

TEST(PointPosition, AxisAligned)
{
  const auto p = point_position(single_cell(10.0f, 0.0, 0.0f, Pose::Identity()), 0, 0);
  EXPECT_NEAR((p - Vec3(10, 0, 0)).norm(), 0.0, 1e-12);
}

TEST(PointPosition, Pole)
{
  const auto p = point_position(single_cell(10.0f, std::numbers::pi / 2, 1.0f, Pose::Identity()), 0, 0);
  EXPECT_NEAR((p - Vec3(0, 0, 10)).norm(), 0.0, 1e-12);
}

TEST(PointPosition, Translated)
{
  Pose pose = Pose::Identity();
  pose.translation() = Vec3(1, 0, 0);
  const auto p = point_position(single_cell(5.0f, 0.0, static_cast<float>(std::numbers::pi / 2), pose), 0, 0);
  EXPECT_NEAR((p - Vec3(1, 5, 0)).norm(), 0.0, 1e-6);  // float azimuth
}

TEST(PointPosition, PoseComposition)
{
  Pose t1 = Pose::Identity();
  t1.rotate(Eigen::AngleAxisd(0.7, Vec3(0.2, 0.3, 1.0).normalized()));
  t1.translation() = Vec3(3, -2, 1);
  Pose t2 = Pose::Identity();
  t2.rotate(Eigen::AngleAxisd(-0.4, Vec3::UnitZ()));
  t2.translation() = Vec3(0.5, 0.5, 2);
  const auto scan = single_cell(8.0f, 0.1, 0.3f, t2);
  const Vec3 composed = point_position(scan.with_pose(t1 * t2), 0, 0);
  EXPECT_NEAR((composed - t1 * point_position(scan, 0, 0)).norm(), 0.0, 1e-12);
}

TEST(PointPosition, InvalidCellIsAnError)
{
  const OrganizedScan scan(1, 2, {0.0}, {0.0f, 0.1f}, {200.0f, 5.0f}, {0, 1});
  try {
    point_position(scan, 0, 0);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidCell);
  }
  EXPECT_THROW(point_position(scan, 0, 5), Error);
}

TEST(OrganizedScan, RejectsBadAzimuths)
{
  try {
    OrganizedScan(1, 3, {0.0}, {0.0f, 0.2f, 0.1f}, {1, 1, 1}, {1, 1, 1});
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonMonotoneAzimuth);
  }
}

TEST(OrganizedScan, WrappedAzimuthsAreMonotone)
{
  const OrganizedScan scan(1, 3, {0.0}, {6.0f, 0.1f, 0.4f}, {1, 1, 1}, {1, 1, 1});
  EXPECT_GT(scan.unwrapped_azimuth(1), scan.unwrapped_azimuth(0));
  EXPECT_GT(scan.unwrapped_azimuth(2), scan.unwrapped_azimuth(1));
}

TEST(OrganizedScan, RejectsSizeMismatch)
{
  try {
    OrganizedScan(2, 3, {0.0, 0.1}, {0.0f, 0.1f, 0.2f}, {1, 1, 1}, {1, 1, 1});
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(ScanFile, RoundTripIsByteIdentical)
{
  std::mt19937 rng(3);
  std::uniform_real_distribution<float> dist(0.5f, 90.0f);
  std::vector<OrganizedScan> scans;
  ScanFileHeader header{16, 900, even_elevations(16), 200.0};
  for (int k = 0; k < 2; ++k) {
    std::vector<float> ranges(16 * 900);
    std::vector<std::uint8_t> valid(16 * 900, 1);
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      ranges[i] = dist(rng);
      if (i % 17 == 0) {
        valid[i] = 0;
        ranges[i] = 200.0f;
      }
    }
    scans.emplace_back(16, 900, header.elevations, even_azimuths(900), ranges, valid, Pose::Identity(), 0.1 * k);
  }
  const auto bytes = serialize_scans(header, scans);
  const auto back = parse_scans(bytes);
  ASSERT_EQ(back.scans.size(), 2u);
  EXPECT_EQ(serialize_scans(back.header, back.scans), bytes);
  EXPECT_EQ(back.header.elevations, header.elevations);
  EXPECT_TRUE(std::equal(scans[1].ranges().begin(), scans[1].ranges().end(), back.scans[1].ranges().begin()));
  EXPECT_EQ(back.scans[1].timestamp(), 0.1);
}

TEST(ScanFile, ZeroColumnsIsADimensionError)
{
  try {
    parse_scans("OSCN1\nrows 16\ncols 0\nelevations " + std::string(16 * 2, ' ') + "\nsentinel 200\n");
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(ScanFile, MissingMagicIsAHeaderError)
{
  try {
    parse_scans("OSCN0\nrows 1\n");
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedHeader);
  }
}

TEST(ScanFile, TruncationNamesCellCounts)
{
  const auto scan = test::uniform_scan(2, 4, 3.0f);
  ScanFileHeader header{2, 4, even_elevations(2), 200.0};
  auto bytes = serialize_scans(header, {scan});
  // keep timestamp, azimuths and 3 of 8 ranges
  bytes.resize(bytes.size() - 8 - 5 * sizeof(float));
  try {
    parse_scans(bytes, "cut.oscn");
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kTruncated);
    EXPECT_NE(std::string(e.what()).find("expected 8 cells, found 3"), std::string::npos) << e.what();
  }
}

TEST(ScanFile, BadValidFlagIsRejected)
{
  const auto scan = test::uniform_scan(1, 4, 3.0f);
  auto bytes = serialize_scans({1, 4, {0.0}, 200.0}, {scan});
  bytes.back() = 7;
  try {
    parse_scans(bytes);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedRecord);
  }
}

TEST(ScanFile, MissingFileIsAnIoError)
{
  try {
    read_scans("/nonexistent/scans.oscn");
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(PoseTrack, NearestLookupAndRoundTrip)
{
  Pose a = Pose::Identity();
  Pose b = Pose::Identity();
  b.translation() = Vec3(1, 2, 3);
  b.rotate(Eigen::AngleAxisd(0.5, Vec3::UnitZ()));
  const SensorPoseTrack track({{0.0, a}, {1.0, b}});
  EXPECT_TRUE(track.lookup(0.4).isApprox(a));
  EXPECT_TRUE(track.lookup(0.6).isApprox(b));
  EXPECT_TRUE(track.lookup(0.5).isApprox(a));
  EXPECT_TRUE(SensorPoseTrack().lookup(3.0).isApprox(Pose::Identity()));

  const auto dir = test::temp_dir("poses");
  write_poses(dir / "poses.txt", track);
  const auto back = read_poses(dir / "poses.txt");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_TRUE(back.poses()[1].pose.isApprox(b, 1e-12));
}

TEST(PoseTrack, RejectsNonIncreasingTimestamps)
{
  EXPECT_THROW(SensorPoseTrack({{1.0, Pose::Identity()}, {1.0, Pose::Identity()}}), Error);
}

TEST(Labels, RoundTrip)
{
  const std::vector<PointLabel> labels{{0, 1, 2, 3}, {4, 15, 899, 1}};
  const auto dir = test::temp_dir("labels");
  write_labels(dir / "labels.txt", labels);
  EXPECT_EQ(read_labels(dir / "labels.txt"), labels);
}

}  // namespace
}  // namespace sparse_mot
