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

#include "skillsim/control/controller.hpp"

#include <algorithm>

#include <Eigen/Dense>

namespace skillsim::control {

CompliantController::CompliantController(ImpedanceGains gains, double ramp_time)
    : ramp_time_(ramp_time), current_(std::move(gains)) {
  current_.validate();
  if (!(ramp_time_ >= 0.0)) throw std::invalid_argument("ramp time must be >= 0");
  target_stiffness_ = current_.stiffness;
}

void CompliantController::set_stiffness(const Mat6& stiffness) {
  if (!is_spsd(stiffness)) throw std::invalid_argument("stiffness must be symmetric PSD");
  std::lock_guard lock(mutex_);
  pending_.stiffness = stiffness;
}

void CompliantController::set_damping(const Mat6& damping) {
  if (!is_spsd(damping)) throw std::invalid_argument("damping must be symmetric PSD");
  std::lock_guard lock(mutex_);
  pending_.damping = damping;
}

void CompliantController::set_wrench(const Vec6& wrench) {
  if (!wrench.allFinite()) throw std::invalid_argument("wrench must be finite");
  std::lock_guard lock(mutex_);
  pending_.wrench = wrench;
}

void CompliantController::set_reference(const Pose& reference) {
  if (!reference.position.allFinite() || !reference.orientation.coeffs().allFinite()) {
    throw std::invalid_argument("reference must be finite");
  }
  std::lock_guard lock(mutex_);
  pending_.reference = reference;
}

void CompliantController::set_nullspace(const NullspaceGains& nullspace) {
  ImpedanceGains probe = current_;
  probe.nullspace = nullspace;
  probe.validate();
  std::lock_guard lock(mutex_);
  pending_.nullspace = nullspace;
}

bool CompliantController::settled() const {
  std::lock_guard lock(mutex_);
  return !ramping_ && !ramp_pending_ && !pending_.stiffness;
}

void CompliantController::apply_pending(double now) {
  {
    std::lock_guard lock(mutex_);
    if (pending_.stiffness) {
      if (*pending_.stiffness != target_stiffness_) {
        ramp_from_ = current_.stiffness;
        target_stiffness_ = *pending_.stiffness;
        ramp_start_ = now;
        ramping_ = true;
      }
      pending_.stiffness.reset();
    }
    if (pending_.damping) current_.damping = *pending_.damping;
    if (pending_.wrench) wrench_ = *pending_.wrench;
    if (pending_.reference) reference_ = *pending_.reference;
    if (pending_.nullspace) current_.nullspace = *pending_.nullspace;
    pending_.damping.reset();
    pending_.wrench.reset();
    pending_.reference.reset();
    pending_.nullspace.reset();
  }
  if (ramping_) {
    const double elapsed = now - ramp_start_;
    const double s = elapsed >= ramp_time_ - 1e-9 ? 1.0 : std::clamp(elapsed / ramp_time_, 0.0, 1.0);
    current_.stiffness = ramp_from_ + s * (target_stiffness_ - ramp_from_);
    if (s >= 1.0) {
      current_.stiffness = target_stiffness_;
      std::lock_guard lock(mutex_);
      ramping_ = false;
    }
  }
}

ImpedanceController::ImpedanceController(const sim::RobotModel& model, ImpedanceGains gains,
                                         double ramp_time)
    : CompliantController(std::move(gains), ramp_time), model_(model) {
  if (model_.dof() < 6) throw std::invalid_argument("impedance control needs at least 6 joints");
}

VecX ImpedanceController::step(const VecX& q, const VecX& qd, double now) {
  apply_pending(now);
  const VecX tau = impedance_torque(model_, q, qd, reference(), gains(), wrench());
  if (!tau.allFinite()) throw ControllerFault("impedance torque is not finite");
  return tau;
}

sim::RobotModel make_virtual_model(const sim::RobotModel& real, double link_mass) {
  if (!(link_mass > 0.0)) throw std::invalid_argument("virtual link mass must be > 0");
  sim::RobotModel v = real;
  v.name = real.name + "_virtual";
  v.gravity = Vec3::Zero();
  for (auto& j : v.joints) {
    j.inertia *= link_mass / j.mass;
    j.mass = link_mass;
  }
  return v;
}

FdccController::FdccController(const sim::RobotModel& model, const VecX& q0, ImpedanceGains gains,
                               FdccConfig config, double ramp_time)
    : CompliantController(std::move(gains), ramp_time),
      virtual_(make_virtual_model(model, config.link_mass)),
      config_(config) {
  if (!(config_.joint_damping >= 0.0 && config_.max_joint_speed > 0.0)) {
    throw std::invalid_argument("invalid FDCC configuration");
  }
  reset(q0);
}

void FdccController::reset(const VecX& q) {
  if (q.size() != virtual_.dof() || !q.allFinite()) {
    throw std::invalid_argument("FDCC state must be finite and of size dof");
  }
  q_ = q;
  qd_ = VecX::Zero(q.size());
}

VecX FdccController::step(const Vec6& measured, double now, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (!measured.allFinite()) throw std::invalid_argument("measured wrench must be finite");
  apply_pending(now);
  const int n = virtual_.dof();
  const Jacobian J = sim::jacobian(virtual_, q_);
  const Mat6& K = gains().stiffness;
  const Mat6& D = gains().damping;
  const Vec6 error = pose_error(sim::fk(virtual_, q_), reference());
  const Vec6 xd = J * qd_;
  // Spring and damper are evaluated at the end of the step (linearly
  // implicit), so stiff gains stay stable on the light virtual model.
  const Vec6 f = -K * error - dt * K * xd - D * xd + wrench() + measured;
  const MatX lhs = sim::mass_matrix(virtual_, q_) + J.transpose() * (dt * D + dt * dt * K) * J +
                   dt * config_.joint_damping * MatX::Identity(n, n);
  const VecX rhs = J.transpose() * f - config_.joint_damping * qd_ -
                   sim::bias(virtual_, q_, qd_, /*with_gravity=*/false);
  const VecX qdd = lhs.ldlt().solve(rhs);
  qd_ += dt * qdd;
  q_ += dt * qd_;
  if (!q_.allFinite() || !qd_.allFinite() || qd_.norm() > config_.max_joint_speed) {
    throw ControllerFault("FDCC virtual model diverged at t=" + std::to_string(now));
  }
  return q_;
}

}  // namespace skillsim::control
