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

#include "skillsim/traj/trajectory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace skillsim::traj {
namespace {

constexpr double kTwoPi = 2.0 * M_PI;

}  // namespace

void TrajConfig::validate() const {
  if (!(v_max > 0.0 && omega_max > 0.0 && a_max > 0.0 && alpha_max > 0.0)) {
    throw std::invalid_argument("trajectory limits must be > 0");
  }
}

Profile Profile::fastest(double distance, double v_max, double a_max) {
  Profile p;
  p.distance_ = distance;
  if (distance <= 0.0) return p;
  p.a_ = a_max;
  if (distance * a_max <= v_max * v_max) {
    // Triangular: cruise speed is never reached.
    p.t_acc_ = std::sqrt(distance / a_max);
    p.v_ = a_max * p.t_acc_;
    p.duration_ = 2.0 * p.t_acc_;
  } else {
    p.v_ = v_max;
    p.t_acc_ = v_max / a_max;
    p.duration_ = distance / v_max + v_max / a_max;
  }
  return p;
}

Profile Profile::with_duration(double distance, double duration, double v_max, double a_max) {
  Profile p = fastest(distance, v_max, a_max);
  if (distance <= 0.0 || duration <= p.duration_) {
    if (distance <= 0.0) p.duration_ = 0.0;
    return p;
  }
  // Solve v^2 - a T v + a L = 0 for the smaller root.
  const double aT = a_max * duration;
  const double disc = std::max(0.0, aT * aT - 4.0 * a_max * distance);
  p.v_ = 0.5 * (aT - std::sqrt(disc));
  p.a_ = a_max;
  p.t_acc_ = p.v_ / a_max;
  p.duration_ = duration;
  return p;
}

double Profile::position(double t) const {
  if (duration_ <= 0.0 || t >= duration_) return distance_;
  if (t <= 0.0) return 0.0;
  if (t < t_acc_) return 0.5 * a_ * t * t;
  const double s_acc = 0.5 * v_ * t_acc_;
  if (t <= duration_ - t_acc_) return s_acc + v_ * (t - t_acc_);
  const double r = duration_ - t;
  return distance_ - 0.5 * a_ * r * r;
}

double Profile::velocity(double t) const {
  if (duration_ <= 0.0 || t <= 0.0 || t >= duration_) return 0.0;
  if (t < t_acc_) return a_ * t;
  if (t <= duration_ - t_acc_) return v_;
  return a_ * (duration_ - t);
}

Trajectory::Trajectory(const Pose& start, const Pose& goal, const TrajConfig& config)
    : start_(start), goal_(goal), config_(config) {
  config_.validate();
  const Vec3 dp = goal.position - start.position;
  const double length = dp.norm();
  if (length > 0.0) direction_ = dp / length;
  const Vec3 rotvec = rotation_log(goal.orientation * start.orientation.conjugate());
  const double angle = rotvec.norm();
  if (angle > 0.0) axis_ = rotvec / angle;

  translation_ = Profile::fastest(length, config_.v_max, config_.a_max);
  rotation_ = Profile::fastest(angle, config_.omega_max, config_.alpha_max);
  if (config_.synchronize) {
    const double T = std::max(translation_.duration(), rotation_.duration());
    if (length > 0.0) translation_ = Profile::with_duration(length, T, config_.v_max, config_.a_max);
    if (angle > 0.0) {
      rotation_ = Profile::with_duration(angle, T, config_.omega_max, config_.alpha_max);
    }
  }
}

PoseRef Trajectory::sample(double t) const {
  PoseRef ref;
  if (t >= duration()) {
    ref.pose = goal_;
    return ref;
  }
  ref.pose.position = start_.position + translation_.position(t) * direction_;
  ref.pose.orientation =
      normalized_quaternion(rotation_exp(rotation_.position(t) * axis_) * start_.orientation);
  ref.linear_velocity = translation_.velocity(t) * direction_;
  ref.angular_velocity = rotation_.velocity(t) * axis_;
  return ref;
}

Trajectory plan_linear(const Pose& start, const Pose& goal, const TrajConfig& config) {
  return Trajectory(start, goal, config);
}

void OverlaySpec::validate() const {
  if (amplitude < 0.0 || pitch < 0.0) throw std::invalid_argument("overlay amplitude and pitch must be >= 0");
  if (kind != OverlayKind::kNone && !(frequency > 0.0)) {
    throw std::invalid_argument("overlay frequency must be > 0");
  }
  if (std::abs(plane_normal.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("overlay plane normal must be a unit vector");
  }
}

const char* to_string(OverlayKind kind) {
  switch (kind) {
    case OverlayKind::kNone: return "none";
    case OverlayKind::kCircle: return "circle";
    case OverlayKind::kSine: return "sine";
    case OverlayKind::kSpiral: return "spiral";
  }
  return "none";
}

std::optional<OverlayKind> overlay_kind_from_string(const std::string& name) {
  for (OverlayKind k : {OverlayKind::kNone, OverlayKind::kCircle, OverlayKind::kSine,
                        OverlayKind::kSpiral}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

std::pair<Vec3, Vec3> plane_basis(const Vec3& normal) {
  const Vec3 n = normal.normalized();
  Vec3 e1 = Vec3::UnitX() - n.x() * n;
  if (e1.norm() < 1e-6) e1 = Vec3::UnitY() - n.y() * n;
  e1.normalize();
  return {e1, n.cross(e1)};
}

Eigen::Vector2d overlay_offset_plane(const OverlaySpec& spec, double t) {
  const double phase = kTwoPi * spec.frequency * t;
  switch (spec.kind) {
    case OverlayKind::kNone:
      return Eigen::Vector2d::Zero();
    case OverlayKind::kCircle:
      return {spec.amplitude * std::cos(phase) - spec.amplitude, spec.amplitude * std::sin(phase)};
    case OverlayKind::kSine:
      return {spec.amplitude * std::sin(phase), 0.0};
    case OverlayKind::kSpiral: {
      const double radius = spec.pitch * spec.frequency * t;
      return {radius * std::cos(phase), radius * std::sin(phase)};
    }
  }
  return Eigen::Vector2d::Zero();
}

Eigen::Vector2d overlay_velocity_plane(const OverlaySpec& spec, double t) {
  const double w = kTwoPi * spec.frequency;
  const double phase = w * t;
  switch (spec.kind) {
    case OverlayKind::kNone:
      return Eigen::Vector2d::Zero();
    case OverlayKind::kCircle:
      return {-spec.amplitude * w * std::sin(phase), spec.amplitude * w * std::cos(phase)};
    case OverlayKind::kSine:
      return {spec.amplitude * w * std::cos(phase), 0.0};
    case OverlayKind::kSpiral: {
      const double rate = spec.pitch * spec.frequency;
      const double radius = rate * t;
      return {rate * std::cos(phase) - radius * w * std::sin(phase),
              rate * std::sin(phase) + radius * w * std::cos(phase)};
    }
  }
  return Eigen::Vector2d::Zero();
}

PoseRef apply_overlay(const PoseRef& ref, const OverlaySpec& spec, double t) {
  if (spec.kind == OverlayKind::kNone) return ref;
  const auto [e1, e2] = plane_basis(spec.plane_normal);
  const Eigen::Vector2d o = overlay_offset_plane(spec, t);
  const Eigen::Vector2d v = overlay_velocity_plane(spec, t);
  PoseRef out = ref;
  out.pose.position += ref.pose.orientation * (o.x() * e1 + o.y() * e2);
  out.linear_velocity += ref.pose.orientation * (v.x() * e1 + v.y() * e2);
  return out;
}

}  // namespace skillsim::traj
