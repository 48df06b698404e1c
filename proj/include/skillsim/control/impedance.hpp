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

#include <stdexcept>

#include "skillsim/sim/dynamics.hpp"

namespace skillsim::control {

using sim::Jacobian;
using sim::MatX;
using sim::VecX;

class ControllerFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Symmetric positive semidefinite 6x6 matrix check (symmetry 1e-12, eigenvalues >= -1e-9).
bool is_spsd(const Mat6& m);
// 2 * sqrt(K) for symmetric positive semidefinite K.
Mat6 critical_damping(const Mat6& stiffness);

struct NullspaceGains {
  VecX q_desired;        // rad; empty disables the term
  double stiffness = 0;  // Nm/rad
  double damping = 0;    // Nm s/rad
};

struct ImpedanceGains {
  Mat6 stiffness = Mat6::Zero();  // N/m and Nm/rad, end-effector frame
  Mat6 damping = Mat6::Zero();
  NullspaceGains nullspace;

  static ImpedanceGains diagonal(const Vec6& k);  // damping = 2 sqrt(k)
  void validate() const;
};

// Task-frame pose error: position (current - reference) rotated into the
// current end-effector frame, then the rotation vector of the error rotation.
Vec6 pose_error(const Pose& current, const Pose& reference);

constexpr double kNullspaceRegularization = 1e-6;

// N = I - J^T (J J^T + lambda I)^-1 J.
MatX nullspace_projector(const Jacobian& J, double lambda = kNullspaceRegularization);

// tau = J^T (-K dxi - D J qd) + N (k_ns (q_d - q) - d_ns qd) + J^T F.
VecX impedance_torque(const Jacobian& J, const Vec6& error, const VecX& q, const VecX& qd,
                      const ImpedanceGains& gains, const Vec6& wrench);

VecX impedance_torque(const sim::RobotModel& model, const VecX& q, const VecX& qd,
                      const Pose& reference, const ImpedanceGains& gains, const Vec6& wrench);

}  // namespace skillsim::control
