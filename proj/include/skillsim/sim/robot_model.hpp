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

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "skillsim/pose.hpp"

namespace skillsim::sim {

using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using Jacobian = Eigen::Matrix<double, 6, Eigen::Dynamic>;

enum class CommandInterface { kTorque, kPosition };

// One revolute joint and the link it carries.
struct Joint {
  std::string name;
  Vec3 axis = Vec3::UnitZ();    // in the joint frame
  Pose origin;                  // parent link frame -> joint frame (at q = 0)
  double mass = 1.0;            // kg
  Vec3 com = Vec3::Zero();      // m, in the link frame
  Vec3 inertia = Vec3::Ones();  // kg m^2, principal moments about the COM
  double lower = -3.14159;
  double upper = 3.14159;
};

struct RobotModel {
  std::string name;
  std::vector<Joint> joints;
  Pose tool;  // last link frame -> tool centre point (task frame)
  CommandInterface interface = CommandInterface::kTorque;
  double position_kp = 0.0;  // inner position loop, Nm/rad
  double position_kd = 0.0;  // Nm s/rad
  bool wrist_ft_sensor = false;
  Vec3 gravity = Vec3(0.0, 0.0, -9.81);  // m/s^2, in the robot base frame

  int dof() const { return static_cast<int>(joints.size()); }
  // Throws std::invalid_argument on non-physical parameters.
  void validate() const;
};

// Text format, one directive per line:
//   name <id>
//   interface torque | interface position <kp> <kd>
//   ft_sensor true|false
//   joint <name> axis ax ay az xyz x y z rpy r p y mass m com cx cy cz
//         inertia ixx iyy izz limits lo hi
//   tool xyz x y z rpy r p y
RobotModel load_robot_model(std::string_view text);
RobotModel load_robot_model_file(const std::string& path);

}  // namespace skillsim::sim
