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

#include "skillsim/pose.hpp"

#include <cmath>
#include <stdexcept>

namespace skillsim {

Quat normalized_quaternion(const Quat& q) {
  const double n = q.norm();
  if (!(n > 1e-12) || !std::isfinite(n)) {
    throw std::invalid_argument("quaternion has zero or non-finite norm");
  }
  return Quat(q.coeffs() / n);
}

Pose::Pose(const Vec3& p, const Quat& q) : position(p), orientation(normalized_quaternion(q)) {}

Pose::Pose(const Eigen::Isometry3d& iso)
    : position(iso.translation()), orientation(normalized_quaternion(Quat(iso.rotation()))) {}

Pose Pose::operator*(const Pose& rhs) const {
  return {orientation * rhs.position + position, orientation * rhs.orientation};
}

Pose Pose::inverse() const {
  const Quat inv = orientation.conjugate();
  return {-(inv * position), inv};
}

Eigen::Isometry3d Pose::isometry() const {
  Eigen::Isometry3d iso = Eigen::Isometry3d::Identity();
  iso.linear() = orientation.toRotationMatrix();
  iso.translation() = position;
  return iso;
}

Vec3 rotation_log(const Quat& q_in) {
  Quat q = q_in;
  if (q.w() < 0.0) q.coeffs() *= -1.0;
  const Vec3 v = q.vec();
  const double s = v.norm();
  if (s < 1e-15) return 2.0 * v;  // first-order term near identity
  const double angle = 2.0 * std::atan2(s, q.w());
  return v * (angle / s);
}

Quat rotation_exp(const Vec3& rotvec) {
  const double angle = rotvec.norm();
  if (angle < 1e-15) return Quat(1.0, 0.5 * rotvec.x(), 0.5 * rotvec.y(), 0.5 * rotvec.z()).normalized();
  return Quat(Eigen::AngleAxisd(angle, rotvec / angle));
}

double angle_between(const Quat& a, const Quat& b) {
  return rotation_log(a.conjugate() * b).norm();
}

Quat quat_from_rpy(double roll, double pitch, double yaw) {
  return Quat(Eigen::AngleAxisd(yaw, Vec3::UnitZ()) * Eigen::AngleAxisd(pitch, Vec3::UnitY()) *
              Eigen::AngleAxisd(roll, Vec3::UnitX()));
}

}  // namespace skillsim
