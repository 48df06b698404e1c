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

#include "skillsim/sim/simulator.hpp"

#include <algorithm>
#include <cmath>

namespace skillsim::sim {

void ContactSurface::validate() const {
  if (!(stiffness > 0.0)) throw std::invalid_argument("surface " + id + ": stiffness must be > 0");
  if (!(width >= 0.0 && height >= 0.0 && edge_reach >= 0.0)) {
    throw std::invalid_argument("surface " + id + ": extents must be >= 0");
  }
  if (width + height + edge_reach <= 0.0) throw std::invalid_argument("surface " + id + ": empty contact region");
  if (damping < 0.0 || friction < 0.0) {
    throw std::invalid_argument("surface " + id + ": damping and friction must be >= 0");
  }
}

bool ContactSurface::over(const Vec3& local) const {
  const double dx = std::max(0.0, std::abs(local.x()) - 0.5 * width);
  const double dy = std::max(0.0, std::abs(local.y()) - 0.5 * height);
  return dx * dx + dy * dy <= edge_reach * edge_reach;
}

double penalty_normal_force(const ContactSurface& s, double depth, double approach_speed) {
  if (depth <= 0.0) return 0.0;
  return std::max(0.0, s.stiffness * depth + s.damping * approach_speed);
}

Simulator::Simulator(RobotModel model, Pose base_pose, VecX q0, SimConfig config)
    : model_(std::move(model)), base_pose_(base_pose), config_(config) {
  model_.validate();
  if (q0.size() != model_.dof()) throw std::invalid_argument("initial configuration size mismatch");
  // Gravity acts along world -z.
  model_.gravity = base_pose_.orientation.conjugate() * Vec3(0.0, 0.0, -9.81);
  state_.q = std::move(q0);
  state_.qd = VecX::Zero(model_.dof());
  last_.tau_ext = VecX::Zero(model_.dof());
}

void Simulator::add_surface(ContactSurface surface) {
  surface.validate();
  surfaces_.push_back(std::move(surface));
}

Pose Simulator::tcp_world() const { return base_pose_ * fk(model_, state_.q); }

void Simulator::check_dt(double dt) {
  if (!(dt > 0.0 && dt <= 5e-3)) throw std::invalid_argument("time step must be in (0, 5e-3]");
}

StepResult Simulator::contact(const VecX& q, const VecX& qd) const {
  StepResult r;
  r.tau_ext = VecX::Zero(model_.dof());
  if (surfaces_.empty()) return r;

  const Pose tcp = base_pose_ * fk(model_, q);
  const Jacobian J_base = jacobian_base(model_, q);
  const Vec3 v_world = base_pose_.orientation * (J_base.topRows<3>() * qd);

  Vec3 force_world = Vec3::Zero();
  for (const auto& s : surfaces_) {
    const Vec3 local = s.pose.inverse().transform_point(tcp.position);
    if (!s.over(local)) continue;
    const double depth = -local.z();
    if (depth <= 0.0) continue;
    const Vec3 n = s.pose.orientation * Vec3::UnitZ();
    const double approach = -v_world.dot(n);
    const double fn = penalty_normal_force(s, depth, approach);
    const Vec3 v_tangent = v_world - v_world.dot(n) * n;
    force_world += fn * n - s.friction * v_tangent;
    r.normal_force += fn;
    r.contact_surface = s.id;
  }
  if (r.contact_surface.empty()) return r;

  const Vec3 force_tcp = tcp.orientation.conjugate() * force_world;
  r.contact_wrench.head<3>() = force_tcp;
  r.contact_wrench.tail<3>().setZero();
  r.tau_ext = jacobian(model_, q).transpose() * r.contact_wrench;
  return r;
}

void Simulator::advance(const MatX& lhs, const VecX& rhs, double dt, StepResult& result) {
  state_.qd = lhs.partialPivLu().solve(rhs);
  state_.q += dt * state_.qd;
  state_.t += dt;
  for (int i = 0; i < model_.dof(); ++i) {
    const Joint& j = model_.joints[i];
    if (state_.q[i] < j.lower || state_.q[i] > j.upper) {
      state_.q[i] = std::clamp(state_.q[i], j.lower, j.upper);
      state_.qd[i] = 0.0;
      result.joint_limit_fault = true;
      joint_limit_fault_ = true;
    }
  }
  if (!state_.qd.allFinite() || state_.qd.norm() > config_.max_joint_speed) {
    throw SimulationFault("joint velocity guard tripped at t=" + std::to_string(state_.t));
  }
}

StepResult Simulator::step_torque(const VecX& tau, double dt) {
  check_dt(dt);
  if (model_.interface != CommandInterface::kTorque) {
    throw std::logic_error("robot '" + model_.name + "' does not accept torque commands");
  }
  if (tau.size() != model_.dof() || !tau.allFinite()) {
    throw std::invalid_argument("torque command must be finite and of size dof");
  }
  StepResult r = contact(state_.q, state_.qd);
  // Gravity compensation cancels gravity exactly; the velocity terms are
  // taken at the new velocity.
  const MatX M = mass_matrix(model_, state_.q);
  const MatX lhs = M + dt * coriolis_matrix(model_, state_.q, state_.qd);
  advance(lhs, M * state_.qd + dt * (tau + r.tau_ext), dt, r);
  last_ = r;
  return r;
}

StepResult Simulator::step_position(const VecX& q_cmd, double dt) {
  check_dt(dt);
  if (model_.interface != CommandInterface::kPosition) {
    throw std::logic_error("robot '" + model_.name + "' does not accept position commands");
  }
  if (q_cmd.size() != model_.dof() || !q_cmd.allFinite()) {
    throw std::invalid_argument("position command must be finite and of size dof");
  }
  StepResult r = contact(state_.q, state_.qd);
  const double kp = model_.position_kp;
  const double kd = model_.position_kd;
  const int n = model_.dof();
  // The PD torque is evaluated at the end of the step, which keeps stiff
  // servo gains stable at the simulation rate.
  const MatX M = mass_matrix(model_, state_.q);
  const MatX lhs = M + dt * coriolis_matrix(model_, state_.q, state_.qd) +
                   (dt * kd + dt * dt * kp) * MatX::Identity(n, n);
  advance(lhs, M * state_.qd + dt * (kp * (q_cmd - state_.q) + r.tau_ext), dt, r);
  last_ = r;
  return r;
}

Vec6 Simulator::wrist_ft() const {
  if (!model_.wrist_ft_sensor) {
    throw std::logic_error("robot '" + model_.name + "' has no wrist force-torque sensor");
  }
  return last_.contact_wrench;
}

}  // namespace skillsim::sim
