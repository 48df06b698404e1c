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

#include "skillsim/app/session.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>

#include "skillsim/skills/library.hpp"

namespace skillsim::app {

Session::Session(const std::string& scene_path, skills::RuntimeConfig config)
    : wm_(wm::load_scene_file(scene_path)) {
  skills::register_skills(registry_);
  registry_.validate(*wm_.snapshot());
  const std::string dir = std::filesystem::absolute(scene_path).parent_path().string();
  system_ = std::make_unique<skills::System>(wm_, dir, std::move(config));
  expander_ = std::make_unique<skill::Expander>(
      registry_, wm_, blackboard_, system_.get(),
      system_->observer([this](const skill::SkillEvent& e) { events_.push_back(e); }));
}

std::vector<std::string> Session::arms() const {
  std::vector<std::string> out;
  for (const wm::Element* e : wm::query_by_concept(*wm_.snapshot(), skills::keys::kArmConcept, true)) {
    out.push_back(e->id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Session::select_arm(const std::string& requested) const {
  const std::vector<std::string> all = arms();
  if (!requested.empty()) {
    if (std::find(all.begin(), all.end(), requested) == all.end()) {
      throw skill::SkillError("no arm '" + requested + "' in the scene");
    }
    return requested;
  }
  if (all.empty()) throw skill::SkillError("the scene has no arm");
  if (all.size() > 1) throw skill::SkillError("the scene has several arms; choose one with --robot");
  return all.front();
}

plan::PlanResult Session::plan_goal(const std::vector<plan::Literal>& goal, plan::Domain* domain_out,
                                    plan::Problem* problem_out, const std::string& only_arm) {
  const auto scene = wm_.snapshot();
  plan::Domain domain = plan::build_domain(registry_, *scene);
  plan::Problem problem = plan::build_problem(domain, *scene, goal);
  if (!only_arm.empty()) {
    for (const std::string& arm : arms()) {
      if (arm == only_arm) continue;
      problem.objects.erase(arm);
      for (auto& [type, ids] : problem.typed_objects) std::erase(ids, arm);
    }
  }
  plan::PlanResult r = plan::plan(domain, problem);
  if (domain_out) *domain_out = std::move(domain);
  if (problem_out) *problem_out = std::move(problem);
  return r;
}

Execution Session::execute(bt::Node& root, double max_time) {
  const auto start = std::chrono::steady_clock::now();
  Execution ex;
  const long max_ticks = std::lround(max_time * kTickRate);
  const bt::RunResult r =
      bt::run_to_completion(root, kTickRate, max_ticks, [this](double dt) { system_->advance(dt); });
  ex.status = r.status;
  ex.budget_exhausted = r.budget_exhausted;
  ex.ticks = r.ticks;
  ex.sim_time = system_->now();
  ex.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ex.diagnostics = system_->diagnostics();
  if (!r.diagnostic.empty()) ex.diagnostics.push_back(r.diagnostic);
  return ex;
}

}  // namespace skillsim::app
