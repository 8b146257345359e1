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

#ifndef SPARSE_MOT__KALMAN_HPP_
#define SPARSE_MOT__KALMAN_HPP_

#include "sparse_mot/geometry.hpp"

#include <Eigen/Core>

namespace sparse_mot
{

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Constant velocity transition for state [x y z vx vy vz].
Mat6 cv_transition(double dt);

/// Continuous white-noise acceleration process noise. Composes exactly:
/// F(a) Q(b) F(a)^T + Q(a) == Q(a + b).
Mat6 cv_process_noise(double dt, double accel_noise_std);

/// Linear Kalman filter with a 3D constant velocity model observing position.
class ConstantVelocityKalman
{
public:
  ConstantVelocityKalman() = default;
  ConstantVelocityKalman(const Vec6 & state, const Mat6 & covariance);

  void predict(double dt, double accel_noise_std);

  /// Position update (Joseph form). Throws ErrorCode::kNumericalDomain when the
  /// innovation covariance is singular.
  void correct(const Vec3 & measurement, const Mat3 & measurement_covariance);

  const Vec6 & state() const { return x_; }
  const Mat6 & covariance() const { return p_; }
  Vec3 position() const { return x_.head<3>(); }
  Vec3 velocity() const { return x_.tail<3>(); }
  Mat3 position_covariance() const { return p_.topLeftCorner<3, 3>(); }

  void set_velocity(const Vec3 & v) { x_.tail<3>() = v; }

private:
  Vec6 x_{Vec6::Zero()};
  Mat6 p_{Mat6::Identity()};
};

/// Bhattacharyya distance between two 3D Gaussians. Throws
/// ErrorCode::kNumericalDomain if a covariance is not positive definite.
double bhattacharyya(const Vec3 & mean1, const Mat3 & cov1, const Vec3 & mean2, const Mat3 & cov2);

}  // namespace sparse_mot

#endif  // SPARSE_MOT__KALMAN_HPP_
