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
#include <stdexcept>
#include <string>
#include <vector>

#include "skillsim/sim/dynamics.hpp"

namespace skillsim::sim {

class SimulationFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite rectangular plane reached by the tool centre point. The plane frame
// has its origin at the rectangle centre and +z along the outward normal.
// Contact extends `edge_reach` past the rectangle border (a round tool
// overhanging the edge still rests on it).
struct ContactSurface {
  std::string id;
  Pose pose;                    // world frame
  double width = 1.0;           // m, along plane x
  double height = 1.0;          // m, along plane y
  double stiffness = 1e4;       // N/m
  double damping = 0.0;         // N s/m
  double friction = 0.0;        // viscous tangential coefficient, N s/m
  double wipe_force_hint = 0.0; // N
  double edge_reach = 0.0;      // m

  // True when the point, in the plane frame, lies over the contact region.
  bool over(const Vec3& local) const;

  void validate() const;
};

struct SimState {
  VecX q;
  VecX qd;
  double t = 0.0;
};

struct StepResult {
  // Wrench acting on the robot at the TCP, in the TCP frame (force, torque).
  Vec6 contact_wrench = Vec6::Zero();
  VecX tau_ext;                 // J^T * contact_wrench
  double normal_force = 0.0;    // N, >= 0
  std::string contact_surface;  // empty when not in contact
  bool joint_limit_fault = false;
};

struct SimConfig {
  double max_joint_speed = 50.0;  // rad/s; exceeding it raises SimulationFault
};

// Semi-implicit Euler integration of M(q) qdd + C(q, qd) qd + g(q) = tau + tau_ext:
// the velocity is updated first (linearly implicit in the velocity terms) and
// the position uses the new velocity. Gravity is compensated exactly for both
// command interfaces.
class Simulator {
 public:
  Simulator(RobotModel model, Pose base_pose, VecX q0, SimConfig config = {});

  const RobotModel& model() const { return model_; }
  const Pose& base_pose() const { return base_pose_; }
  const SimState& state() const { return state_; }
  void set_state(const SimState& s) { state_ = s; }

  void add_surface(ContactSurface surface);
  const std::vector<ContactSurface>& surfaces() const { return surfaces_; }

  // TCP pose in the world frame at the current state.
  Pose tcp_world() const;

  // Torque-commanded step; tau excludes gravity compensation.
  StepResult step_torque(const VecX& tau, double dt);
  // Position-commanded step through the inner PD loop.
  StepResult step_position(const VecX& q_cmd, double dt);

  // Wrist force-torque reading from the last step. Throws for models without a wrist sensor.
  Vec6 wrist_ft() const;
  const StepResult& last_step() const { return last_; }
  bool faulted() const { return joint_limit_fault_; }

 private:
  StepResult contact(const VecX& q, const VecX& qd) const;
  void advance(const MatX& lhs, const VecX& rhs, double dt, StepResult& result);
  static void check_dt(double dt);

  RobotModel model_;
  Pose base_pose_;
  SimConfig config_;
  SimState state_;
  std::vector<ContactSurface> surfaces_;
  StepResult last_;
  bool joint_limit_fault_ = false;
};

// Penalty contact force magnitude for a penetration depth d (m) and normal
// approach speed v (m/s, positive into the surface).
double penalty_normal_force(const ContactSurface& s, double depth, double approach_speed);

}  // namespace skillsim::sim
