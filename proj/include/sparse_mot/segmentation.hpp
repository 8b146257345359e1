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

#ifndef SPARSE_MOT__SEGMENTATION_HPP_
#define SPARSE_MOT__SEGMENTATION_HPP_

#include "sparse_mot/scan_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace sparse_mot
{

/// Width band of the groups to segment and the dual median filter limits.
struct SegmentationConfig
{
  double min_width{0.2};   // [m] groups narrower than this are treated as noise
  double max_width{1.0};   // [m] groups wider than this are treated as background
  double delta_seg{0.2};   // [m] background must be this much farther than the noise median
  int min_kernel{3};
  int max_kernel{201};

  /// Throws ErrorCode::kConfig when an invariant is violated.
  void validate() const;
};

/// Per-cell foreground flags aligned with a scan grid.
class SegmentMask
{
public:
  SegmentMask() = default;
  SegmentMask(int rows, int cols)
  : rows_(rows), cols_(cols), foreground_(static_cast<std::size_t>(rows * cols), 0)
  {
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool foreground(int row, int col) const
  {
    return foreground_[static_cast<std::size_t>(row * cols_ + col)] != 0;
  }
  void set(int row, int col, bool value)
  {
    foreground_[static_cast<std::size_t>(row * cols_ + col)] = value ? 1 : 0;
  }
  std::span<const std::uint8_t> flags() const { return foreground_; }
  std::size_t count() const;

  bool operator==(const SegmentMask &) const = default;

private:
  int rows_{0};
  int cols_{0};
  std::vector<std::uint8_t> foreground_;
};

/// Smallest odd kernel spanning `width` at `range` given the column spacing,
/// clamped to [min_kernel, max_kernel].
int kernel_size_for(
  double width, double range, double angular_step, const SegmentationConfig & config);

/// Median of a circular window of size kernels[i] centred on each element.
/// Kernels are odd; kernels longer than the ring are shrunk to the largest odd
/// size that fits.
std::vector<float> sliding_median(std::span<const float> ring, std::span<const int> kernels);

/// Dual-median classification with explicit per-point kernels.
std::vector<std::uint8_t> segment_ring_with_kernels(
  std::span<const float> ring, std::span<const std::uint8_t> valid,
  std::span<const int> noise_kernels, std::span<const int> background_kernels, double delta_seg);

/// Dual-median classification of one sanitized ring. The noise kernel follows
/// min_width at the raw range; the background kernel follows max_width (plus
/// two) at the noise-filtered range.
std::vector<std::uint8_t> segment_ring(
  std::span<const float> ring, std::span<const std::uint8_t> valid,
  const SegmentationConfig & config, double angular_step);

SegmentMask segment_scan(const OrganizedScan & scan, const SegmentationConfig & config);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__SEGMENTATION_HPP_
