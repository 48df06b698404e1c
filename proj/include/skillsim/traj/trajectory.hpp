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

#include <optional>

#include "skillsim/pose.hpp"

namespace skillsim::traj {

struct TrajConfig {
  double v_max = 0.1;      // m/s
  double omega_max = 0.5;  // rad/s
  double a_max = 0.5;      // m/s^2
  double alpha_max = 1.0;  // rad/s^2
  bool synchronize = true;

  // Throws std::invalid_argument unless every limit is > 0.
  void validate() const;
};

// Scalar rest-to-rest trapezoidal (or triangular) profile s(t) on [0, distance].
class Profile {
 public:
  Profile() = default;
  // Fastest profile within the limits.
  static Profile fastest(double distance, double v_max, double a_max);
  // Profile of a prescribed duration, never slower than fastest(); uses the
  // full acceleration and the lowest cruise speed that still arrives in time.
  static Profile with_duration(double distance, double duration, double v_max, double a_max);

  double distance() const { return distance_; }
  double duration() const { return duration_; }
  double peak_velocity() const { return v_; }
  double acceleration() const { return a_; }
  double accel_end() const { return t_acc_; }
  double cruise_end() const { return duration_ - t_acc_; }

  double position(double t) const;
  double velocity(double t) const;

 private:
  double distance_ = 0.0;
  double v_ = 0.0;
  double a_ = 0.0;
  double t_acc_ = 0.0;
  double duration_ = 0.0;
};

struct PoseRef {
  Pose pose;
  Vec3 linear_velocity = Vec3::Zero();   // world frame
  Vec3 angular_velocity = Vec3::Zero();  // world frame
};

// Straight-line Cartesian trajectory; orientation rotates about a constant axis.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(const Pose& start, const Pose& goal, const TrajConfig& config);

  const Pose& start() const { return start_; }
  const Pose& goal() const { return goal_; }
  const TrajConfig& config() const { return config_; }
  double duration() const { return std::max(translation_.duration(), rotation_.duration()); }
  const Profile& translation() const { return translation_; }
  const Profile& rotation() const { return rotation_; }
  // Phase boundaries of the profile that sets the duration.
  double accel_end() const { return dominant().accel_end(); }
  double cruise_end() const { return dominant().cruise_end(); }

  PoseRef sample(double t) const;

 private:
  const Profile& dominant() const {
    return translation_.duration() >= rotation_.duration() ? translation_ : rotation_;
  }

  Pose start_;
  Pose goal_;
  TrajConfig config_;
  Vec3 direction_ = Vec3::Zero();  // unit translation direction
  Vec3 axis_ = Vec3::UnitZ();      // unit rotation axis, world frame
  Profile translation_;
  Profile rotation_;
};

Trajectory plan_linear(const Pose& start, const Pose& goal, const TrajConfig& config);

enum class OverlayKind { kNone, kCircle, kSine, kSpiral };

struct OverlaySpec {
  OverlayKind kind = OverlayKind::kNone;
  double amplitude = 0.0;             // m (Circle, Sine)
  double frequency = 1.0;             // Hz; turns per second for the spiral
  double pitch = 0.0;                 // m per turn (Spiral)
  Vec3 plane_normal = Vec3::UnitZ();  // in the reference pose frame

  void validate() const;
  friend bool operator==(const OverlaySpec&, const OverlaySpec&) = default;
};

const char* to_string(OverlayKind kind);
std::optional<OverlayKind> overlay_kind_from_string(const std::string& name);

// Orthonormal in-plane axes (e1, e2) with e1 x e2 = n. e1 is the x axis
// projected onto the plane, or the y axis when x is (nearly) normal.
std::pair<Vec3, Vec3> plane_basis(const Vec3& normal);

// Offset in plane coordinates (e1, e2), t measured from overlay activation.
Eigen::Vector2d overlay_offset_plane(const OverlaySpec& spec, double t);
Eigen::Vector2d overlay_velocity_plane(const OverlaySpec& spec, double t);

// Adds the overlay offset, expressed in the reference pose frame, to the reference.
PoseRef apply_overlay(const PoseRef& ref, const OverlaySpec& spec, double t);

}  // namespace skillsim::traj
