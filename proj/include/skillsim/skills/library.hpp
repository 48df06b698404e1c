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

// The shipped skill set: compliant motion primitives, two gripper
// implementations, pick, a relocation stub and the wipe-surface compound.

#include <string>
#include <vector>

#include "skillsim/skill/skill.hpp"
#include "skillsim/skills/runtime.hpp"
#include "skillsim/traj/trajectory.hpp"

namespace skillsim::skills {

void register_skills(skill::SkillRegistry& registry);

inline constexpr double kPositionTolerance = 0.002;      // m
inline constexpr double kOrientationTolerance = 0.0174533;  // rad, 1 degree
inline constexpr double kGotoTimeoutMargin = 5.0;        // s beyond the planned duration
inline constexpr double kApproachDistance = 0.05;        // m off the surface
inline constexpr double kCoverageThreshold = 0.95;
inline constexpr double kEdgeMargin = 0.01;  // m between the overlaid path and the surface edge
inline constexpr double kTwoFingerLatency = 0.3;    // s
inline constexpr double kThreeFingerLatency = 0.8;  // s

// Circle overlay used while wiping: 1 cm radius, one turn per second, in the tool plane.
traj::OverlaySpec wipe_overlay();

// Tool orientation for working on a surface: tool z against the surface normal.
Quat work_orientation(const SurfaceInfo& surface);

// Boustrophedon raster in the surface frame (z = 0): start corner, then
// alternating sweeps across the width joined by steps down by the pitch.
struct WipeRaster {
  std::vector<Vec3> waypoints;
  int lanes = 0;
  double pitch = 0.0;  // nominal lane spacing, m
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
};

// Lanes are inset so that the overlay never leaves the rectangle.
WipeRaster plan_raster(const SurfaceInfo& surface, const traj::OverlaySpec& overlay, const Quat& tool_orientation);

// "x y z qx qy qz qw".
Pose parse_pose(const std::string& text);

}  // namespace skillsim::skills
