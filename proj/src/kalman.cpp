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

#include "sparse_mot/kalman.hpp"

#include "sparse_mot/error.hpp"

#include <Eigen/Cholesky>

#include <cmath>

namespace sparse_mot
{

Mat6 cv_transition(double dt)
{
  Mat6 f = Mat6::Identity();
  f.topRightCorner<3, 3>() = dt * Mat3::Identity();
  return f;
}

Mat6 cv_process_noise(double dt, double accel_noise_std)
{
  const double q = accel_noise_std * accel_noise_std;
  const double dt2 = dt * dt;
  Mat6 noise = Mat6::Zero();
  noise.topLeftCorner<3, 3>() = (q * dt2 * dt / 3.0) * Mat3::Identity();
  noise.topRightCorner<3, 3>() = (q * dt2 / 2.0) * Mat3::Identity();
  noise.bottomLeftCorner<3, 3>() = (q * dt2 / 2.0) * Mat3::Identity();
  noise.bottomRightCorner<3, 3>() = (q * dt) * Mat3::Identity();
  return noise;
}

ConstantVelocityKalman::ConstantVelocityKalman(const Vec6 & state, const Mat6 & covariance)
: x_(state), p_(covariance)
{
}

void ConstantVelocityKalman::predict(double dt, double accel_noise_std)
{
  const Mat6 f = cv_transition(dt);
  x_ = f * x_;
  p_ = f * p_ * f.transpose() + cv_process_noise(dt, accel_noise_std);
  p_ = (0.5 * (p_ + p_.transpose())).eval();
}

void ConstantVelocityKalman::correct(const Vec3 & measurement, const Mat3 & measurement_covariance)
{
  Eigen::Matrix<double, 3, 6> h = Eigen::Matrix<double, 3, 6>::Zero();
  h.leftCols<3>() = Mat3::Identity();

  const Mat3 s = h * p_ * h.transpose() + measurement_covariance;
  const Eigen::LDLT<Mat3> s_ldlt(s);
  if (s_ldlt.info() != Eigen::Success || !s_ldlt.isPositive() ||
      (s_ldlt.vectorD().array() <= 0.0).any()) {
    throw Error(ErrorCode::kNumericalDomain, "innovation covariance is singular");
  }
  const Eigen::Matrix<double, 6, 3> k = s_ldlt.solve(h * p_).transpose();

  x_ += k * (measurement - h * x_);
  const Mat6 i_kh = Mat6::Identity() - k * h;
  p_ = i_kh * p_ * i_kh.transpose() + k * measurement_covariance * k.transpose();
  p_ = (0.5 * (p_ + p_.transpose())).eval();
}

namespace
{

double log_det_pd(const Mat3 & m)
{
  const Eigen::LLT<Mat3> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalDomain, "covariance is not positive definite");
  }
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

}  // namespace

double bhattacharyya(const Vec3 & mean1, const Mat3 & cov1, const Vec3 & mean2, const Mat3 & cov2)
{
  const Mat3 mixed = 0.5 * (cov1 + cov2);
  const Eigen::LLT<Mat3> llt(mixed);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericalDomain, "covariance is not positive definite");
  }
  const Vec3 diff = mean1 - mean2;
  const double mahalanobis = diff.dot(llt.solve(diff));
  const double log_ratio = log_det_pd(mixed) - 0.5 * (log_det_pd(cov1) + log_det_pd(cov2));
  return std::max(0.0, 0.125 * mahalanobis + 0.5 * log_ratio);
}

}  // namespace sparse_mot
