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

#include <mutex>
#include <optional>
#include <string>

#include "skillsim/control/impedance.hpp"
#include "skillsim/sim/simulator.hpp"

namespace skillsim::control {

// Runtime-adjustable Cartesian parameters shared by both compliant
// controllers. Setters may be called from the skill side; the values are
// queued in a single-slot mailbox and take effect at the next control step.
class CompliantController {
 public:
  explicit CompliantController(ImpedanceGains gains, double ramp_time = 0.2);
  virtual ~CompliantController() = default;

  virtual std::string name() const = 0;

  // Damping is left unchanged. Throws std::invalid_argument (old values kept)
  // when the matrix is not symmetric positive semidefinite.
  void set_stiffness(const Mat6& stiffness);
  void set_damping(const Mat6& damping);
  void set_wrench(const Vec6& wrench);
  void set_reference(const Pose& reference);
  void set_nullspace(const NullspaceGains& nullspace);

  // Values in force at the last applied step.
  const Mat6& stiffness() const { return current_.stiffness; }
  const Mat6& target_stiffness() const { return target_stiffness_; }
  const Mat6& damping() const { return current_.damping; }
  const Vec6& wrench() const { return wrench_; }
  const Pose& reference() const { return reference_; }
  const ImpedanceGains& gains() const { return current_; }
  // True once the last requested stiffness change has fully ramped in.
  bool settled() const;
  double ramp_time() const { return ramp_time_; }

  // Applies queued updates and advances the stiffness ramp to time `now`.
  void apply_pending(double now);

 private:
  struct Mailbox {
    std::optional<Mat6> stiffness;
    std::optional<Mat6> damping;
    std::optional<Vec6> wrench;
    std::optional<Pose> reference;
    std::optional<NullspaceGains> nullspace;
  };

  double ramp_time_;
  mutable std::mutex mutex_;
  Mailbox pending_;
  ImpedanceGains current_;
  Mat6 ramp_from_ = Mat6::Zero();
  Mat6 target_stiffness_ = Mat6::Zero();
  double ramp_start_ = 0.0;
  bool ramp_pending_ = false;
  bool ramping_ = false;
  Vec6 wrench_ = Vec6::Zero();
  Pose reference_;
};

// Torque-level Cartesian impedance control for torque-commanded arms.
class ImpedanceController : public CompliantController {
 public:
  ImpedanceController(const sim::RobotModel& model, ImpedanceGains gains, double ramp_time = 0.2);
  std::string name() const override { return "cartesian_impedance_controller"; }

  VecX step(const VecX& q, const VecX& qd, double now);

 private:
  const sim::RobotModel& model_;
};

struct FdccConfig {
  double link_mass = 1.0;       // kg, every virtual link
  double joint_damping = 0.5;   // Nm s/rad on the virtual joints
  double max_joint_speed = 10;  // rad/s, divergence guard
};

// Forward dynamics compliance control for position-commanded arms: a
// gravity-free virtual copy of the arm is driven by the Cartesian spring,
// damper, commanded wrench and measured wrist wrench; its joint positions are
// the position command.
class FdccController : public CompliantController {
 public:
  FdccController(const sim::RobotModel& model, const VecX& q0, ImpedanceGains gains,
                 FdccConfig config = {}, double ramp_time = 0.2);
  std::string name() const override { return "cartesian_compliance_controller"; }

  // measured: wrist wrench acting on the robot, end-effector frame.
  VecX step(const Vec6& measured, double now, double dt);

  const VecX& virtual_q() const { return q_; }
  const VecX& virtual_qd() const { return qd_; }
  const sim::RobotModel& virtual_model() const { return virtual_; }
  void reset(const VecX& q);

 private:
  sim::RobotModel virtual_;
  FdccConfig config_;
  VecX q_;
  VecX qd_;
};

// Virtual model: same kinematics, uniform link mass, inertia scaled with it,
// no gravity.
sim::RobotModel make_virtual_model(const sim::RobotModel& real, double link_mass);

}  // namespace skillsim::control
