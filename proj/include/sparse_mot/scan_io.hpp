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

#ifndef SPARSE_MOT__SCAN_IO_HPP_
#define SPARSE_MOT__SCAN_IO_HPP_

#include "sparse_mot/scan_model.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace sparse_mot
{

// Scan container layout (little endian):
//
//   OSCN1\n
//   rows <int>\n
//   cols <int>\n
//   elevations <rows decimal doubles>\n
//   sentinel <decimal double>\n
//   then per scan: float64 timestamp, float32 azimuths[cols],
//                  float32 ranges[rows*cols] (row-major), uint8 valid[rows*cols]

inline constexpr const char * kScanMagic = "OSCN1";

struct ScanFileHeader
{
  int rows{16};
  int cols{0};
  std::vector<double> elevations;
  double sentinel{kDefaultSentinelRange};
};

struct ScanSequence
{
  ScanFileHeader header;
  std::vector<OrganizedScan> scans;
};

/// Appends scans to a container; the header is written on construction.
class ScanWriter
{
public:
  ScanWriter(const std::filesystem::path & path, ScanFileHeader header);
  void write(const OrganizedScan & scan);
  std::size_t count() const { return count_; }

private:
  std::ofstream out_;
  ScanFileHeader header_;
  std::size_t count_{0};
};

void write_scans(
  const std::filesystem::path & path, const ScanFileHeader & header,
  const std::vector<OrganizedScan> & scans);

/// Reads a whole container. Scans carry identity poses; attach poses with
/// SensorPoseTrack::lookup.
ScanSequence read_scans(const std::filesystem::path & path);

/// Parses a container held in memory; `source` names it in error messages.
ScanSequence parse_scans(const std::string & bytes, const std::string & source = "<memory>");

std::string serialize_scans(const ScanFileHeader & header, const std::vector<OrganizedScan> & scans);

// Pose file: "timestamp tx ty tz qx qy qz qw" per line.
void write_poses(const std::filesystem::path & path, const SensorPoseTrack & track);
SensorPoseTrack read_poses(const std::filesystem::path & path);

// Label file: "scan_index row col object_id" per line.
void write_labels(const std::filesystem::path & path, const std::vector<PointLabel> & labels);
std::vector<PointLabel> read_labels(const std::filesystem::path & path);

/// Attaches the nearest-timestamp pose to each scan.
void attach_poses(std::vector<OrganizedScan> & scans, const SensorPoseTrack & track);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__SCAN_IO_HPP_
