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

#include "sparse_mot/segmentation.hpp"

#include "sparse_mot/error.hpp"

#include <algorithm>
#include <cmath>

namespace sparse_mot
{

void SegmentationConfig::validate() const
{
  if (!(min_width > 0.0) || !(max_width > min_width)) {
    throw Error(ErrorCode::kConfig, "segmentation widths must satisfy 0 < min_width < max_width");
  }
  if (!(delta_seg > 0.0)) {
    throw Error(ErrorCode::kConfig, "segmentation delta_seg must be positive");
  }
  if (min_kernel < 3 || min_kernel % 2 == 0 || max_kernel % 2 == 0 || max_kernel < min_kernel) {
    throw Error(ErrorCode::kConfig, "kernel limits must be odd with 3 <= min_kernel <= max_kernel");
  }
}

std::size_t SegmentMask::count() const
{
  return static_cast<std::size_t>(std::count(foreground_.begin(), foreground_.end(), 1));
}

int kernel_size_for(
  double width, double range, double angular_step, const SegmentationConfig & config)
{
  // arc length of k columns at distance r is about r * k * step
  const double raw = std::ceil(width / (range * angular_step));
  if (!(raw < static_cast<double>(config.max_kernel))) {
    return config.max_kernel;
  }
  int k = std::max(1, static_cast<int>(raw));
  if (k % 2 == 0) {
    ++k;
  }
  return std::clamp(k, config.min_kernel, config.max_kernel);
}

std::vector<float> sliding_median(std::span<const float> ring, std::span<const int> kernels)
{
  const auto n = static_cast<long>(ring.size());
  const long longest_odd = n % 2 == 1 ? n : n - 1;
  std::vector<float> out(ring.size());
  std::vector<float> window;
  window.reserve(static_cast<std::size_t>(std::max(1L, longest_odd)));

  for (long i = 0; i < n; ++i) {
    const long k = std::clamp(static_cast<long>(kernels[static_cast<std::size_t>(i)]), 1L, longest_odd);
    const long half = k / 2;
    window.clear();
    for (long j = i - half; j <= i + half; ++j) {
      window.push_back(ring[static_cast<std::size_t>(((j % n) + n) % n)]);
    }
    const auto mid = window.begin() + half;
    std::nth_element(window.begin(), mid, window.end());
    out[static_cast<std::size_t>(i)] = *mid;
  }
  return out;
}

std::vector<std::uint8_t> segment_ring_with_kernels(
  std::span<const float> ring, std::span<const std::uint8_t> valid,
  std::span<const int> noise_kernels, std::span<const int> background_kernels, double delta_seg)
{
  const auto noise = sliding_median(ring, noise_kernels);
  const auto background = sliding_median(ring, background_kernels);
  std::vector<std::uint8_t> foreground(ring.size(), 0);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const double gap = static_cast<double>(background[i]) - static_cast<double>(noise[i]);
    foreground[i] = (valid[i] != 0 && gap > delta_seg) ? 1 : 0;
  }
  return foreground;
}

std::vector<std::uint8_t> segment_ring(
  std::span<const float> ring, std::span<const std::uint8_t> valid,
  const SegmentationConfig & config, double angular_step)
{
  std::vector<int> noise_kernels(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) {
    noise_kernels[i] = kernel_size_for(config.min_width, ring[i], angular_step, config);
  }
  const auto noise = sliding_median(ring, noise_kernels);

  std::vector<int> background_kernels(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) {
    background_kernels[i] = std::min(
      kernel_size_for(config.max_width, noise[i], angular_step, config) + 2, config.max_kernel);
  }
  const auto background = sliding_median(ring, background_kernels);

  std::vector<std::uint8_t> foreground(ring.size(), 0);
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const double gap = static_cast<double>(background[i]) - static_cast<double>(noise[i]);
    foreground[i] = (valid[i] != 0 && gap > config.delta_seg) ? 1 : 0;
  }
  return foreground;
}

SegmentMask segment_scan(const OrganizedScan & scan, const SegmentationConfig & config)
{
  SegmentMask mask(scan.rows(), scan.cols());
  const double step = scan.angular_step();
  for (int row = 0; row < scan.rows(); ++row) {
    const auto fg = segment_ring(scan.ring(row), scan.ring_valid(row), config, step);
    for (int col = 0; col < scan.cols(); ++col) {
      mask.set(row, col, fg[static_cast<std::size_t>(col)] != 0);
    }
  }
  return mask;
}

}  // namespace sparse_mot
