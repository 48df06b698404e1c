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

// A loaded scene with its skill registry, simulated robots and executor.

#include <memory>
#include <string>
#include <vector>

#include "skillsim/bt/tree.hpp"
#include "skillsim/plan/planner.hpp"
#include "skillsim/skill/skill.hpp"
#include "skillsim/skills/runtime.hpp"

namespace skillsim::app {

inline constexpr double kTickRate = 100.0;  // Hz

struct Execution {
  bt::Status status = bt::Status::kFailure;
  bool budget_exhausted = false;
  long ticks = 0;
  double sim_time = 0.0;  // s
  double wall_time = 0.0;  // s
  std::vector<std::string> diagnostics;
};

class Session {
 public:
  // Robot model paths in the scene resolve against the scene file's directory.
  explicit Session(const std::string& scene_path, skills::RuntimeConfig config = {});

  wm::WorldModel& world_model() { return wm_; }
  const skill::SkillRegistry& registry() const { return registry_; }
  skills::System& system() { return *system_; }
  skill::Expander& expander() { return *expander_; }
  const std::vector<skill::SkillEvent>& events() const { return events_; }

  // Arms in the scene, sorted by id.
  std::vector<std::string> arms() const;
  // The requested arm, or the only arm; throws skill::SkillError otherwise.
  std::string select_arm(const std::string& requested) const;

  // Plans over the current world model. A non-empty `only_arm` hides every
  // other arm from the problem.
  plan::PlanResult plan_goal(const std::vector<plan::Literal>& goal, plan::Domain* domain_out = nullptr,
                             plan::Problem* problem_out = nullptr, const std::string& only_arm = "");

  // Ticks the tree at the tick rate until it finishes or `max_time` of simulated time passes.
  Execution execute(bt::Node& root, double max_time);

 private:
  wm::WorldModel wm_;
  skill::SkillRegistry registry_;
  skill::Blackboard blackboard_;
  std::unique_ptr<skills::System> system_;
  std::unique_ptr<skill::Expander> expander_;
  std::vector<skill::SkillEvent> events_;
};

}  // namespace skillsim::app
