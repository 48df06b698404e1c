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

#include "skillsim/traj/trajectory.hpp"

namespace skillsim::traj {

// Stateful reference source for one arm: an active linear trajectory plus an
// optional overlay. Times are absolute simulation times in seconds.
class TrajectoryGenerator {
 public:
  TrajectoryGenerator(const Pose& initial, TrajConfig config = {});

  // Replaces the active trajectory, planned from the current base reference
  // (without overlay) so the commanded reference stays continuous.
  void set_goal(const Pose& goal, double now);
  void set_config(const TrajConfig& config);
  // Activating anchors the overlay phase at `now`. Deactivating re-plans from
  // the current overlaid reference to the active goal.
  void set_overlay(const OverlaySpec& spec, double now);

  PoseRef sample(double now) const;
  PoseRef base_sample(double now) const;
  bool finished(double now) const { return now >= t0_ + active_.duration(); }
  double finish_time() const { return t0_ + active_.duration(); }

  const Trajectory& active() const { return active_; }
  const OverlaySpec& overlay() const { return overlay_; }
  const TrajConfig& config() const { return config_; }

 private:
  TrajConfig config_;
  Trajectory active_;
  double t0_ = 0.0;
  OverlaySpec overlay_;
  double overlay_t0_ = 0.0;
};

}  // namespace skillsim::traj
