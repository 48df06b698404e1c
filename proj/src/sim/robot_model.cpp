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

#include "skillsim/sim/robot_model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace skillsim::sim {

void RobotModel::validate() const {
  if (joints.empty()) throw std::invalid_argument("robot model '" + name + "' has no joints");
  for (const auto& j : joints) {
    if (!(j.mass > 0.0)) throw std::invalid_argument("joint " + j.name + ": mass must be > 0");
    if (!(j.inertia.minCoeff() > 0.0)) {
      throw std::invalid_argument("joint " + j.name + ": inertia must be positive definite");
    }
    if (std::abs(j.axis.norm() - 1.0) > 1e-9) {
      throw std::invalid_argument("joint " + j.name + ": axis must be a unit vector");
    }
    if (!(j.lower < j.upper)) throw std::invalid_argument("joint " + j.name + ": empty limits");
  }
  if (interface == CommandInterface::kPosition && !(position_kp > 0.0 && position_kd >= 0.0)) {
    throw std::invalid_argument("position interface needs kp > 0 and kd >= 0");
  }
}

namespace {

Vec3 read_vec3(std::istringstream& in, const std::string& what, int line) {
  Vec3 v;
  if (!(in >> v.x() >> v.y() >> v.z())) {
    throw std::invalid_argument("robot model line " + std::to_string(line) + ": bad " + what);
  }
  return v;
}

Pose read_xyz_rpy(std::istringstream& in, int line) {
  std::string kw;
  Vec3 xyz = Vec3::Zero();
  Vec3 rpy = Vec3::Zero();
  for (int k = 0; k < 2; ++k) {
    if (!(in >> kw)) break;
    if (kw == "xyz") {
      xyz = read_vec3(in, "xyz", line);
    } else if (kw == "rpy") {
      rpy = read_vec3(in, "rpy", line);
    } else {
      throw std::invalid_argument("robot model line " + std::to_string(line) +
                                  ": expected xyz/rpy, got '" + kw + "'");
    }
  }
  return {xyz, quat_from_rpy(rpy.x(), rpy.y(), rpy.z())};
}

}  // namespace

RobotModel load_robot_model(std::string_view text) {
  RobotModel model;
  std::istringstream doc{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(doc, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream in(raw);
    std::string key;
    if (!(in >> key)) continue;
    auto fail = [&](const std::string& msg) {
      throw std::invalid_argument("robot model line " + std::to_string(line) + ": " + msg);
    };
    if (key == "name") {
      in >> model.name;
    } else if (key == "interface") {
      std::string kind;
      in >> kind;
      if (kind == "torque") {
        model.interface = CommandInterface::kTorque;
      } else if (kind == "position") {
        model.interface = CommandInterface::kPosition;
        if (!(in >> model.position_kp >> model.position_kd)) fail("position interface needs kp kd");
      } else {
        fail("unknown interface '" + kind + "'");
      }
    } else if (key == "ft_sensor") {
      std::string flag;
      in >> flag;
      model.wrist_ft_sensor = flag == "true";
    } else if (key == "joint") {
      Joint j;
      if (!(in >> j.name)) fail("joint needs a name");
      std::string kw;
      while (in >> kw) {
        if (kw == "axis") {
          j.axis = read_vec3(in, "axis", line);
        } else if (kw == "xyz") {
          j.origin.position = read_vec3(in, "xyz", line);
        } else if (kw == "rpy") {
          const Vec3 rpy = read_vec3(in, "rpy", line);
          j.origin.orientation = quat_from_rpy(rpy.x(), rpy.y(), rpy.z());
        } else if (kw == "mass") {
          if (!(in >> j.mass)) fail("bad mass");
        } else if (kw == "com") {
          j.com = read_vec3(in, "com", line);
        } else if (kw == "inertia") {
          j.inertia = read_vec3(in, "inertia", line);
        } else if (kw == "limits") {
          if (!(in >> j.lower >> j.upper)) fail("bad limits");
        } else {
          fail("unknown joint field '" + kw + "'");
        }
      }
      model.joints.push_back(j);
    } else if (key == "tool") {
      model.tool = read_xyz_rpy(in, line);
    } else {
      fail("unknown directive '" + key + "'");
    }
  }
  model.validate();
  return model;
}

RobotModel load_robot_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open robot model '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_robot_model(buf.str());
}

}  // namespace skillsim::sim
