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

#include "skillsim/control/impedance.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace skillsim::control {
namespace {

void require_finite(const VecX& v, const char* what) {
  if (!v.allFinite()) throw std::invalid_argument(std::string("non-finite ") + what);
}

}  // namespace

bool is_spsd(const Mat6& m) {
  if (!m.allFinite() || (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) return false;
  return Eigen::SelfAdjointEigenSolver<Mat6>(m).eigenvalues().minCoeff() >= -1e-9;
}

Mat6 critical_damping(const Mat6& stiffness) {
  if (stiffness.isDiagonal(0.0)) {
    return Mat6(2.0 * stiffness.diagonal().cwiseMax(0.0).cwiseSqrt().asDiagonal());
  }
  Eigen::SelfAdjointEigenSolver<Mat6> es(stiffness);
  const Vec6 s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return 2.0 * es.eigenvectors() * s.asDiagonal() * es.eigenvectors().transpose();
}

ImpedanceGains ImpedanceGains::diagonal(const Vec6& k) {
  ImpedanceGains g;
  g.stiffness = k.asDiagonal();
  g.damping = critical_damping(g.stiffness);
  return g;
}

void ImpedanceGains::validate() const {
  if (!is_spsd(stiffness)) throw std::invalid_argument("stiffness must be symmetric PSD");
  if (!is_spsd(damping)) throw std::invalid_argument("damping must be symmetric PSD");
  if (!std::isfinite(nullspace.stiffness) || !std::isfinite(nullspace.damping) ||
      nullspace.stiffness < 0.0 || nullspace.damping < 0.0 || !nullspace.q_desired.allFinite()) {
    throw std::invalid_argument("null-space gains must be finite and >= 0");
  }
}

Vec6 pose_error(const Pose& current, const Pose& reference) {
  Vec6 e;
  e.head<3>() = current.orientation.conjugate() * (current.position - reference.position);
  // The rotation vector of R_ref^T R_cur is the same in both frames.
  e.tail<3>() = rotation_log(reference.orientation.conjugate() * current.orientation);
  return e;
}

MatX nullspace_projector(const Jacobian& J, double lambda) {
  const int n = static_cast<int>(J.cols());
  const Mat6 JJt = J * J.transpose() + lambda * Mat6::Identity();
  return MatX::Identity(n, n) - J.transpose() * JJt.ldlt().solve(MatX(J));
}

VecX impedance_torque(const Jacobian& J, const Vec6& error, const VecX& q, const VecX& qd,
                      const ImpedanceGains& gains, const Vec6& wrench) {
  if (J.cols() < 6 || q.size() != J.cols() || qd.size() != J.cols()) {
    throw std::invalid_argument("impedance control needs at least 6 joints and matching sizes");
  }
  require_finite(q, "joint position");
  require_finite(qd, "joint velocity");
  if (!error.allFinite() || !wrench.allFinite() || !J.allFinite()) {
    throw std::invalid_argument("non-finite task-space input");
  }
  const Vec6 task = -gains.stiffness * error - gains.damping * (J * qd) + wrench;
  VecX tau = J.transpose() * task;
  const NullspaceGains& ns = gains.nullspace;
  if (ns.q_desired.size() == q.size() && (ns.stiffness > 0.0 || ns.damping > 0.0)) {
    tau += nullspace_projector(J) * (ns.stiffness * (ns.q_desired - q) - ns.damping * qd);
  }
  return tau;
}

VecX impedance_torque(const sim::RobotModel& model, const VecX& q, const VecX& qd,
                      const Pose& reference, const ImpedanceGains& gains, const Vec6& wrench) {
  require_finite(q, "joint position");
  return impedance_torque(sim::jacobian(model, q), pose_error(sim::fk(model, q), reference), q, qd,
                          gains, wrench);
}

}  // namespace skillsim::control
