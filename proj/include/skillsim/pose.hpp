// Copyright 2026 The skillsim Authors
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

#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace skillsim {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Quat = Eigen::Quaterniond;

// Rigid transform. The orientation is kept unit-norm by every constructor.
struct Pose {
  Vec3 position = Vec3::Zero();
  Quat orientation = Quat::Identity();

  Pose() = default;
  Pose(const Vec3& p, const Quat& q);
  explicit Pose(const Eigen::Isometry3d& iso);

  static Pose identity() { return {}; }
  static Pose from_translation(const Vec3& p) { return {p, Quat::Identity()}; }

  Pose operator*(const Pose& rhs) const;
  Pose inverse() const;
  Vec3 transform_point(const Vec3& p) const { return orientation * p + position; }
  Mat3 rotation() const { return orientation.toRotationMatrix(); }
  Eigen::Isometry3d isometry() const;
  Eigen::Matrix4d matrix() const { return isometry().matrix(); }

  // Exact component equality.
  friend bool operator==(const Pose& a, const Pose& b) {
    return a.position == b.position && a.orientation.coeffs() == b.orientation.coeffs();
  }
};

// Normalizes in place; throws std::invalid_argument for a (near) zero quaternion.
Quat normalized_quaternion(const Quat& q);

// Rotation vector (axis * angle) of q, shortest arc, angle in [0, pi].
Vec3 rotation_log(const Quat& q);
Quat rotation_exp(const Vec3& rotvec);

// Angle of the relative rotation between a and b, in [0, pi].
double angle_between(const Quat& a, const Quat& b);

Quat quat_from_rpy(double roll, double pitch, double yaw);

}  // namespace skillsim
