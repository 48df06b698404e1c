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

#include "skillsim/traj/generator.hpp"

namespace skillsim::traj {

TrajectoryGenerator::TrajectoryGenerator(const Pose& initial, TrajConfig config)
    : config_(config), active_(initial, initial, config) {}

void TrajectoryGenerator::set_goal(const Pose& goal, double now) {
  active_ = Trajectory(base_sample(now).pose, goal, config_);
  t0_ = now;
}

void TrajectoryGenerator::set_config(const TrajConfig& config) {
  config.validate();
  config_ = config;
}

void TrajectoryGenerator::set_overlay(const OverlaySpec& spec, double now) {
  spec.validate();
  if (spec.kind == OverlayKind::kNone) {
    if (overlay_.kind == OverlayKind::kNone) return;
    const Pose current = sample(now).pose;
    overlay_ = spec;
    active_ = Trajectory(current, active_.goal(), config_);
    t0_ = now;
    return;
  }
  if (spec == overlay_) return;
  if (overlay_.kind != OverlayKind::kNone) set_overlay(OverlaySpec{}, now);
  overlay_ = spec;
  overlay_t0_ = now;
}

PoseRef TrajectoryGenerator::base_sample(double now) const { return active_.sample(now - t0_); }

PoseRef TrajectoryGenerator::sample(double now) const {
  return apply_overlay(base_sample(now), overlay_, now - overlay_t0_);
}

}  // namespace skillsim::traj
