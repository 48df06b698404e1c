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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace skillsim::sim {
namespace {

RobotModel shipped(const std::string& name) {
  return load_robot_model_file(std::string(SKILLSIM_DATA_DIR) + "/robots/" + name + ".robot");
}

// Surface whose outward normal points back at the tool, placed `depth` metres
// beyond the current TCP along the tool z axis.
ContactSurface surface_under_tool(const Pose& tcp, double depth, double kn) {
  ContactSurface s;
  s.id = "plate";
  s.pose = Pose(tcp.position + depth * (tcp.orientation * Vec3::UnitZ()),
                tcp.orientation * Quat(Eigen::AngleAxisd(M_PI, Vec3::UnitX())));
  s.width = 0.2;
  s.height = 0.2;
  s.stiffness = kn;
  s.damping = 50.0;
  s.friction = 5.0;
  return s;
}

VecX home7() {
  return (VecX(7) << -0.2447, 0.1932, 0.2799, -1.7339, -0.0564, 1.2224, -1.5213).finished();
}
VecX home6() {
  return (VecX(6) << 0, -2.003, 2.2515, -0.2485, 1.5708, -3.1416).finished();
}

TEST(Simulator, GravityCompensatedTorqueRobotStaysAtRest) {
  Simulator sim(shipped("arm7"), Pose(Vec3(0, 0, 0.6), Quat::Identity()), home7());
  for (int k = 0; k < 2000; ++k) sim.step_torque(VecX::Zero(7), 1e-3);
  EXPECT_EQ(sim.state().qd.norm(), 0.0);
  EXPECT_EQ((sim.state().q - home7()).norm(), 0.0);
}

TEST(Simulator, GravityFollowsBaseMounting) {
  // A base tilted about x sees gravity rotated into its own frame.
  Simulator sim(shipped("arm7"), Pose(Vec3::Zero(), quat_from_rpy(M_PI / 2, 0, 0)), home7());
  EXPECT_NEAR((sim.model().gravity - Vec3(0, -9.81, 0)).norm(), 0.0, 1e-12);
}

TEST(Simulator, PenaltyContactOneMillimetre) {
  Simulator sim(shipped("arm6"), Pose(), home6());
  const Pose tcp = sim.tcp_world();
  sim.add_surface(surface_under_tool(tcp, -0.001, 1e4));
  sim.step_position(home6(), 1e-3);
  const Vec6 ft = sim.wrist_ft();
  // Force on the robot pushes it back along -z of the tool.
  EXPECT_NEAR(ft[2], -10.0, 1e-9);
  EXPECT_NEAR(ft.head<2>().norm(), 0.0, 1e-9);
  EXPECT_NEAR(sim.last_step().normal_force, 10.0, 1e-9);
}

TEST(Simulator, NoContactForceWithoutPenetration) {
  Simulator sim(shipped("arm6"), Pose(), home6());
  const Pose tcp = sim.tcp_world();
  sim.add_surface(surface_under_tool(tcp, 1e-9, 1e4));
  const StepResult r = sim.step_position(home6(), 1e-3);
  EXPECT_EQ(r.normal_force, 0.0);
  EXPECT_TRUE(r.contact_surface.empty());
  EXPECT_EQ(sim.wrist_ft().norm(), 0.0);
  EXPECT_EQ(penalty_normal_force(surface_under_tool(tcp, 0, 1e4), 0.0, 10.0), 0.0);
  EXPECT_EQ(penalty_normal_force(surface_under_tool(tcp, 0, 1e4), -1e-3, 10.0), 0.0);
  // Damping never pulls the tool into the surface.
  EXPECT_EQ(penalty_normal_force(surface_under_tool(tcp, 0, 1e4), 1e-4, -100.0), 0.0);
}

TEST(Simulator, ContactOutsideFootprintIgnored) {
  Simulator sim(shipped("arm6"), Pose(), home6());
  ContactSurface s = surface_under_tool(sim.tcp_world(), -0.001, 1e4);
  s.pose.position += 0.15 * (s.pose.orientation * Vec3::UnitX());
  sim.add_surface(s);
  EXPECT_EQ(sim.step_position(home6(), 1e-3).normal_force, 0.0);
}

TEST(Simulator, ExternalTorqueIsJacobianTransposeOfWrench) {
  Simulator sim(shipped("arm7"), Pose(Vec3(0, 0, 0.6), Quat::Identity()), home7());
  sim.add_surface(surface_under_tool(sim.tcp_world(), -0.002, 8e3));
  std::mt19937 rng(1);
  std::normal_distribution<double> nd(0.0, 2.0);
  for (int k = 0; k < 500; ++k) {
    VecX tau(7);
    for (auto& v : tau) v = nd(rng);
    const StepResult r = sim.step_torque(tau, 1e-3);
    const VecX expected = jacobian(sim.model(), sim.state().q - 1e-3 * sim.state().qd).transpose() *
                          r.contact_wrench;
    ASSERT_LT((expected - r.tau_ext).norm(), 1e-9) << "step " << k;
  }
}

TEST(Simulator, InterfaceAndSensorAvailability) {
  Simulator s6(shipped("arm6"), Pose(), home6());
  Simulator s7(shipped("arm7"), Pose(), home7());
  EXPECT_THROW(s6.step_torque(VecX::Zero(6), 1e-3), std::logic_error);
  EXPECT_THROW(s7.step_position(home7(), 1e-3), std::logic_error);
  EXPECT_THROW(s7.wrist_ft(), std::logic_error);
  EXPECT_NO_THROW(s6.wrist_ft());
  EXPECT_THROW(s7.step_torque(VecX::Zero(7), 0.0), std::invalid_argument);
  EXPECT_THROW(s7.step_torque(VecX::Zero(7), 6e-3), std::invalid_argument);
  EXPECT_THROW(s7.step_torque(VecX::Zero(6), 1e-3), std::invalid_argument);
}

TEST(Simulator, JointLimitClampsAndFlags) {
  RobotModel m = shipped("arm7");
  Simulator sim(m, Pose(), home7());
  VecX tau = VecX::Zero(7);
  tau[3] = -40.0;  // drive a4 into its lower limit
  bool flagged = false;
  for (int k = 0; k < 3000 && !flagged; ++k) flagged = sim.step_torque(tau, 1e-3).joint_limit_fault;
  ASSERT_TRUE(flagged);
  EXPECT_TRUE(sim.faulted());
  EXPECT_GE(sim.state().q[3], m.joints[3].lower);
  EXPECT_EQ(sim.state().qd[3], 0.0);
}

TEST(Simulator, VelocityGuardRaisesFault) {
  Simulator sim(shipped("arm7"), Pose(), home7(), SimConfig{2.0});
  VecX tau = VecX::Zero(7);
  tau[6] = 50.0;
  EXPECT_THROW(
      {
        for (int k = 0; k < 5000; ++k) sim.step_torque(tau, 1e-3);
      },
      SimulationFault);
}

// One revolute joint about the vertical axis: I_eff = Izz + m r^2.
TEST(Simulator, PositionStepOvershootBelowFivePercent) {
  RobotModel m;
  m.name = "pendulum";
  Joint j;
  j.name = "j";
  j.mass = 2.0;
  j.com = Vec3(0.3, 0, 0);
  j.inertia = Vec3(0.01, 0.05, 0.05);
  m.joints = {j};
  m.interface = CommandInterface::kPosition;
  const double i_eff = 0.05 + 2.0 * 0.09;
  m.position_kp = 2000.0;
  m.position_kd = 2.0 * std::sqrt(2000.0 * i_eff);
  Simulator sim(m, Pose(), VecX::Zero(1));
  const VecX cmd = VecX::Constant(1, 0.1);
  double peak = 0.0;
  for (int k = 0; k < 2000; ++k) {
    sim.step_position(cmd, 1e-3);
    peak = std::max(peak, sim.state().q[0]);
  }
  EXPECT_LT((peak - 0.1) / 0.1, 0.05);
  EXPECT_NEAR(sim.state().q[0], 0.1, 1e-4);
}

TEST(Simulator, StiffPositionLoopHoldsShippedArm) {
  Simulator sim(shipped("arm6"), Pose(Vec3(0, 0, 0.45), Quat::Identity()), home6());
  for (int k = 0; k < 2000; ++k) sim.step_position(home6(), 1e-3);
  EXPECT_LT((sim.state().q - home6()).norm(), 1e-9);
}

}  // namespace
}  // namespace skillsim::sim
