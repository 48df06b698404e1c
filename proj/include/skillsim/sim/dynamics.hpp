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

// Kinematics and rigid-body dynamics of serial chains of revolute joints.
// All vectors are expressed in the robot base frame unless noted otherwise.

#include <vector>

#include "skillsim/sim/robot_model.hpp"

namespace skillsim::sim {

struct LinkFrames {
  std::vector<Eigen::Isometry3d> link;  // base -> link i, after the joint rotation
  Pose tcp;                             // base -> tool centre point
};

LinkFrames link_frames(const RobotModel& model, const VecX& q);

// Tool centre point pose in the base frame.
Pose fk(const RobotModel& model, const VecX& q);

// Geometric Jacobian; rows are (linear velocity of the TCP, angular velocity).
Jacobian jacobian_base(const RobotModel& model, const VecX& q);
// Same Jacobian with both blocks expressed in the TCP (task) frame.
Jacobian jacobian(const RobotModel& model, const VecX& q);

// Composite-rigid-body inertia matrix.
MatX mass_matrix(const RobotModel& model, const VecX& q);

// Recursive Newton-Euler inverse dynamics.
VecX inverse_dynamics(const RobotModel& model, const VecX& q, const VecX& qd, const VecX& qdd,
                      bool with_gravity = true);

// Coriolis/centripetal plus gravity torques (inverse dynamics at zero acceleration).
VecX bias(const RobotModel& model, const VecX& q, const VecX& qd, bool with_gravity = true);
// Coriolis matrix from the symmetric bilinear form of the velocity terms, so
// that coriolis_matrix(q, qd) * qd == bias(q, qd) without gravity.
MatX coriolis_matrix(const RobotModel& model, const VecX& q, const VecX& qd);

VecX gravity_torque(const RobotModel& model, const VecX& q);

double kinetic_energy(const RobotModel& model, const VecX& q, const VecX& qd);

}  // namespace skillsim::sim
