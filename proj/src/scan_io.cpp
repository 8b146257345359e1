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

#include "sparse_mot/scan_io.hpp"

#include "sparse_mot/error.hpp"
#include "sparse_mot/text_format.hpp"

#include <bit>
#include <cstring>
#include <iterator>
#include <sstream>

namespace sparse_mot
{

static_assert(std::endian::native == std::endian::little, "scan container is little endian");

namespace
{

template <typename T>
void append_raw(std::string & out, const T * data, std::size_t count)
{
  out.append(reinterpret_cast<const char *>(data), count * sizeof(T));
}

std::string header_text(const ScanFileHeader & header)
{
  std::string text = std::string(kScanMagic) + "\n";
  text += "rows " + std::to_string(header.rows) + "\n";
  text += "cols " + std::to_string(header.cols) + "\n";
  text += "elevations";
  for (const double e : header.elevations) {
    text += " " + format_double(e);
  }
  text += "\nsentinel " + format_double(header.sentinel) + "\n";
  return text;
}

void check_header(const ScanFileHeader & header)
{
  if (header.rows <= 0 || header.cols <= 0) {
    throw Error(
      ErrorCode::kDimensionMismatch, "header declares " + std::to_string(header.rows) + "x" +
                                       std::to_string(header.cols) + " grid");
  }
  if (header.elevations.size() != static_cast<std::size_t>(header.rows)) {
    throw Error(
      ErrorCode::kDimensionMismatch, "header lists " + std::to_string(header.elevations.size()) +
                                       " elevations for " + std::to_string(header.rows) + " rows");
  }
}

std::string scan_record(const ScanFileHeader & header, const OrganizedScan & scan)
{
  if (scan.rows() != header.rows || scan.cols() != header.cols) {
    throw Error(ErrorCode::kDimensionMismatch, "scan grid differs from container header");
  }
  std::string out;
  const double t = scan.timestamp();
  append_raw(out, &t, 1);
  append_raw(out, scan.azimuths().data(), scan.azimuths().size());
  append_raw(out, scan.ranges().data(), scan.ranges().size());
  append_raw(out, scan.valid_flags().data(), scan.valid_flags().size());
  return out;
}

// Reads one "key values..." header line.
std::vector<std::string> header_line(std::istringstream & in, const char * key)
{
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kMalformedHeader, std::string("missing header line '") + key + "'");
  }
  auto fields = split_fields(line);
  if (fields.empty() || fields.front() != key) {
    throw Error(
      ErrorCode::kMalformedHeader, std::string("expected '") + key + "', got '" + line + "'");
  }
  fields.erase(fields.begin());
  return fields;
}

}  // namespace

ScanWriter::ScanWriter(const std::filesystem::path & path, ScanFileHeader header)
: out_(path, std::ios::binary | std::ios::trunc), header_(std::move(header))
{
  check_header(header_);
  if (!out_) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  }
  out_ << header_text(header_);
}

void ScanWriter::write(const OrganizedScan & scan)
{
  const auto record = scan_record(header_, scan);
  out_.write(record.data(), static_cast<std::streamsize>(record.size()));
  if (!out_) {
    throw Error(ErrorCode::kIo, "write failed");
  }
  ++count_;
}

std::string serialize_scans(const ScanFileHeader & header, const std::vector<OrganizedScan> & scans)
{
  check_header(header);
  std::string out = header_text(header);
  for (const auto & scan : scans) {
    out += scan_record(header, scan);
  }
  return out;
}

void write_scans(
  const std::filesystem::path & path, const ScanFileHeader & header,
  const std::vector<OrganizedScan> & scans)
{
  write_text_file(path, serialize_scans(header, scans));
}

ScanSequence parse_scans(const std::string & bytes, const std::string & source)
{
  std::istringstream in(bytes);
  std::string magic;
  if (!std::getline(in, magic) || magic != kScanMagic) {
    throw Error(ErrorCode::kMalformedHeader, source + ": missing OSCN1 magic");
  }

  ScanSequence seq;
  auto & header = seq.header;
  try {
    const auto rows = header_line(in, "rows");
    const auto cols = header_line(in, "cols");
    if (rows.size() != 1 || cols.size() != 1) {
      throw Error(ErrorCode::kMalformedHeader, "rows/cols take one value");
    }
    header.rows = parse_int(rows[0]);
    header.cols = parse_int(cols[0]);
    for (const auto & e : header_line(in, "elevations")) {
      header.elevations.push_back(parse_double(e));
    }
    const auto sentinel = header_line(in, "sentinel");
    if (sentinel.size() != 1) {
      throw Error(ErrorCode::kMalformedHeader, "sentinel takes one value");
    }
    header.sentinel = parse_double(sentinel[0]);
  } catch (const Error & e) {
    if (e.code() == ErrorCode::kMalformedRecord) {
      throw Error(ErrorCode::kMalformedHeader, source + ": " + e.what());
    }
    throw;
  }
  check_header(header);

  const auto cells = static_cast<std::size_t>(header.rows) * static_cast<std::size_t>(header.cols);
  const std::size_t cols = static_cast<std::size_t>(header.cols);
  const std::size_t record_size = sizeof(double) + cols * sizeof(float) + cells * sizeof(float) + cells;

  std::size_t offset = static_cast<std::size_t>(in.tellg());
  const char * data = bytes.data();
  while (offset < bytes.size()) {
    const std::size_t remaining = bytes.size() - offset;
    const auto scan_no = seq.scans.size();
    if (remaining < record_size) {
      const std::size_t prefix = sizeof(double) + cols * sizeof(float);
      std::size_t found = 0;
      if (remaining > prefix) {
        const std::size_t body = remaining - prefix;
        found = body < cells * sizeof(float) ? body / sizeof(float) : body - cells * sizeof(float);
      }
      throw Error(
        ErrorCode::kTruncated, source + ": scan " + std::to_string(scan_no) + " expected " +
                                 std::to_string(cells) + " cells, found " + std::to_string(found));
    }
    double timestamp = 0.0;
    std::memcpy(&timestamp, data + offset, sizeof(double));
    offset += sizeof(double);
    std::vector<float> azimuths(cols);
    std::memcpy(azimuths.data(), data + offset, cols * sizeof(float));
    offset += cols * sizeof(float);
    std::vector<float> ranges(cells);
    std::memcpy(ranges.data(), data + offset, cells * sizeof(float));
    offset += cells * sizeof(float);
    std::vector<std::uint8_t> valid(cells);
    std::memcpy(valid.data(), data + offset, cells);
    offset += cells;
    for (const auto v : valid) {
      if (v > 1) {
        throw Error(
          ErrorCode::kMalformedRecord,
          source + ": scan " + std::to_string(scan_no) + " has a valid flag other than 0/1");
      }
    }
    try {
      seq.scans.emplace_back(
        header.rows, header.cols, header.elevations, std::move(azimuths), std::move(ranges),
        std::move(valid), Pose::Identity(), timestamp);
    } catch (const Error & e) {
      throw Error(e.code(), source + ": scan " + std::to_string(scan_no) + ": " + e.what());
    }
  }
  return seq;
}

ScanSequence read_scans(const std::filesystem::path & path)
{
  return parse_scans(read_text_file(path), path.string());
}

void write_poses(const std::filesystem::path & path, const SensorPoseTrack & track)
{
  std::string out;
  for (const auto & [t, pose] : track.poses()) {
    const Eigen::Quaterniond q(pose.rotation());
    const Vec3 p = pose.translation();
    out += format_double(t);
    for (const double v : {p.x(), p.y(), p.z(), q.x(), q.y(), q.z(), q.w()}) {
      out += " " + format_double(v);
    }
    out += "\n";
  }
  write_text_file(path, out);
}

SensorPoseTrack read_poses(const std::filesystem::path & path)
{
  std::vector<SensorPoseTrack::Stamped> poses;
  for_each_record(path, [&](std::size_t line_no, const std::vector<std::string> & f) {
    if (f.size() != 8) {
      throw Error(
        ErrorCode::kMalformedRecord,
        path.string() + ":" + std::to_string(line_no) + ": pose lines have 8 fields");
    }
    double v[8];
    for (std::size_t i = 0; i < 8; ++i) {
      v[i] = parse_double(f[i]);
    }
    Eigen::Quaterniond q(v[7], v[4], v[5], v[6]);
    if (q.norm() < 1e-9) {
      throw Error(
        ErrorCode::kMalformedRecord, path.string() + ":" + std::to_string(line_no) + ": zero quaternion");
    }
    q.normalize();
    Pose pose = Pose::Identity();
    pose.linear() = q.toRotationMatrix();
    pose.translation() = Vec3(v[1], v[2], v[3]);
    poses.push_back({v[0], pose});
  });
  return SensorPoseTrack(std::move(poses));
}

void write_labels(const std::filesystem::path & path, const std::vector<PointLabel> & labels)
{
  std::string out;
  for (const auto & l : labels) {
    out += std::to_string(l.scan_index) + " " + std::to_string(l.row) + " " + std::to_string(l.col) +
           " " + std::to_string(l.object_id) + "\n";
  }
  write_text_file(path, out);
}

std::vector<PointLabel> read_labels(const std::filesystem::path & path)
{
  std::vector<PointLabel> labels;
  for_each_record(path, [&](std::size_t line_no, const std::vector<std::string> & f) {
    if (f.size() != 4) {
      throw Error(
        ErrorCode::kMalformedRecord,
        path.string() + ":" + std::to_string(line_no) + ": label lines have 4 fields");
    }
    PointLabel l{parse_int(f[0]), parse_int(f[1]), parse_int(f[2]), parse_int(f[3])};
    if (l.scan_index < 0 || l.row < 0 || l.col < 0 || l.object_id < 0) {
      throw Error(
        ErrorCode::kMalformedRecord,
        path.string() + ":" + std::to_string(line_no) + ": negative label field");
    }
    labels.push_back(l);
  });
  return labels;
}

void attach_poses(std::vector<OrganizedScan> & scans, const SensorPoseTrack & track)
{
  for (auto & scan : scans) {
    scan = scan.with_pose(track.lookup(scan.timestamp()));
  }
}

}  // namespace sparse_mot
