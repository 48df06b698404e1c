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

#include "skillsim/sim/dynamics.hpp"

#include <cassert>

namespace skillsim::sim {

namespace {

// Per-link quantities shared by the dynamics routines.
struct ChainGeometry {
  std::vector<Vec3> origin;  // joint/link origin
  std::vector<Vec3> axis;    // unit joint axis
  std::vector<Vec3> com;     // link centre of mass
  std::vector<Mat3> inertia; // about the COM, base-frame axes
};

ChainGeometry chain_geometry(const RobotModel& model, const VecX& q) {
  const LinkFrames frames = link_frames(model, q);
  const int n = model.dof();
  ChainGeometry g;
  g.origin.resize(n);
  g.axis.resize(n);
  g.com.resize(n);
  g.inertia.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& T = frames.link[i];
    const Mat3 R = T.linear();
    g.origin[i] = T.translation();
    g.axis[i] = R * model.joints[i].axis;
    g.com[i] = T * model.joints[i].com;
    g.inertia[i] = R * model.joints[i].inertia.asDiagonal() * R.transpose();
  }
  return g;
}

}  // namespace

LinkFrames link_frames(const RobotModel& model, const VecX& q) {
  assert(q.size() == model.dof());
  LinkFrames out;
  out.link.reserve(model.joints.size());
  Eigen::Isometry3d T = Eigen::Isometry3d::Identity();
  for (int i = 0; i < model.dof(); ++i) {
    const Joint& j = model.joints[i];
    T = T * j.origin.isometry() * Eigen::AngleAxisd(q[i], j.axis);
    out.link.push_back(T);
  }
  out.tcp = Pose(T * model.tool.isometry());
  return out;
}

Pose fk(const RobotModel& model, const VecX& q) { return link_frames(model, q).tcp; }

Jacobian jacobian_base(const RobotModel& model, const VecX& q) {
  const LinkFrames frames = link_frames(model, q);
  const int n = model.dof();
  Jacobian J(6, n);
  const Vec3 p = frames.tcp.position;
  for (int i = 0; i < n; ++i) {
    const Vec3 z = frames.link[i].linear() * model.joints[i].axis;
    const Vec3 o = frames.link[i].translation();
    J.block<3, 1>(0, i) = z.cross(p - o);
    J.block<3, 1>(3, i) = z;
  }
  return J;
}

Jacobian jacobian(const RobotModel& model, const VecX& q) {
  Jacobian J = jacobian_base(model, q);
  const Mat3 Rt = fk(model, q).rotation().transpose();
  J.topRows<3>() = Rt * J.topRows<3>();
  J.bottomRows<3>() = Rt * J.bottomRows<3>();
  return J;
}

MatX mass_matrix(const RobotModel& model, const VecX& q) {
  const int n = model.dof();
  const ChainGeometry g = chain_geometry(model, q);
  MatX M = MatX::Zero(n, n);

  // Composite body of links j..n-1: mass, COM and inertia about that COM.
  double mass = 0.0;
  Vec3 com = Vec3::Zero();
  Mat3 inertia = Mat3::Zero();
  for (int j = n - 1; j >= 0; --j) {
    const double mj = model.joints[j].mass;
    const double total = mass + mj;
    const Vec3 c = (mass * com + mj * g.com[j]) / total;
    auto shift = [&](double m, const Vec3& r) {
      return Mat3(m * (r.squaredNorm() * Mat3::Identity() - r * r.transpose()));
    };
    inertia = inertia + shift(mass, com - c) + g.inertia[j] + shift(mj, g.com[j] - c);
    mass = total;
    com = c;

    // Unit acceleration of joint j, all other joints locked.
    const Vec3 force = mass * g.axis[j].cross(com - g.origin[j]);
    const Vec3 moment = inertia * g.axis[j] + (com - g.origin[j]).cross(force);
    for (int i = 0; i <= j; ++i) {
      const Vec3 moment_i = moment + (g.origin[j] - g.origin[i]).cross(force);
      M(i, j) = g.axis[i].dot(moment_i);
      M(j, i) = M(i, j);
    }
  }
  return M;
}

VecX inverse_dynamics(const RobotModel& model, const VecX& q, const VecX& qd, const VecX& qdd,
                      bool with_gravity) {
  const int n = model.dof();
  const ChainGeometry g = chain_geometry(model, q);

  std::vector<Vec3> force(n), moment(n);
  Vec3 w = Vec3::Zero();
  Vec3 wd = Vec3::Zero();
  Vec3 acc = with_gravity ? Vec3(-model.gravity) : Vec3::Zero();  // of the previous origin
  Vec3 prev_origin = Vec3::Zero();
  for (int i = 0; i < n; ++i) {
    const Vec3 d = g.origin[i] - prev_origin;
    acc = acc + wd.cross(d) + w.cross(w.cross(d));
    const Vec3 w_next = w + g.axis[i] * qd[i];
    wd = wd + g.axis[i] * qdd[i] + w.cross(g.axis[i] * qd[i]);
    w = w_next;
    const Vec3 r = g.com[i] - g.origin[i];
    const Vec3 acc_com = acc + wd.cross(r) + w.cross(w.cross(r));
    force[i] = model.joints[i].mass * acc_com;
    moment[i] = g.inertia[i] * wd + w.cross(g.inertia[i] * w);
    prev_origin = g.origin[i];
  }

  VecX tau(n);
  Vec3 f = Vec3::Zero();
  Vec3 m = Vec3::Zero();  // about the origin of the child link
  for (int i = n - 1; i >= 0; --i) {
    Vec3 m_i = moment[i] + (g.com[i] - g.origin[i]).cross(force[i]) + m;
    if (i + 1 < n) m_i += (g.origin[i + 1] - g.origin[i]).cross(f);
    f = force[i] + f;
    m = m_i;
    tau[i] = g.axis[i].dot(m_i);
  }
  return tau;
}

VecX bias(const RobotModel& model, const VecX& q, const VecX& qd, bool with_gravity) {
  return inverse_dynamics(model, q, qd, VecX::Zero(model.dof()), with_gravity);
}

MatX coriolis_matrix(const RobotModel& model, const VecX& q, const VecX& qd) {
  const int n = model.dof();
  const VecX h0 = bias(model, q, qd, false);
  MatX C(n, n);
  for (int j = 0; j < n; ++j) {
    const VecX e = VecX::Unit(n, j);
    C.col(j) = 0.5 * (bias(model, q, qd + e, false) - h0 - bias(model, q, e, false));
  }
  return C;
}

VecX gravity_torque(const RobotModel& model, const VecX& q) {
  const VecX zero = VecX::Zero(model.dof());
  return inverse_dynamics(model, q, zero, zero, true);
}

double kinetic_energy(const RobotModel& model, const VecX& q, const VecX& qd) {
  return 0.5 * qd.dot(mass_matrix(model, q) * qd);
}

}  // namespace skillsim::sim
