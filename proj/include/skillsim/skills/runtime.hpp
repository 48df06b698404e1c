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

// Simulated robots behind the skills: one simulator, compliant controller and
// trajectory generator per arm, stepped at the control rate.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skillsim/app/run_log.hpp"
#include "skillsim/control/controller.hpp"
#include "skillsim/sim/simulator.hpp"
#include "skillsim/skill/skill.hpp"
#include "skillsim/traj/generator.hpp"
#include "skillsim/wm/world_model.hpp"

namespace skillsim::skills {

// World-model keys used by the skill library.
namespace keys {
inline constexpr const char* kCompliantController = "skiros:CompliantController";
inline constexpr const char* kRobotModel = "skiros:RobotModel";
inline constexpr const char* kHomeConfiguration = "skiros:HomeConfiguration";
inline constexpr const char* kWidth = "skiros:Width";
inline constexpr const char* kHeight = "skiros:Height";
inline constexpr const char* kWipeForce = "skiros:WipeForce";
inline constexpr const char* kFootprintRadius = "skiros:FootprintRadius";
inline constexpr const char* kLaneOverlap = "skiros:LaneOverlap";
inline constexpr const char* kContactStiffness = "skiros:ContactStiffness";
inline constexpr const char* kContactDamping = "skiros:ContactDamping";
inline constexpr const char* kFriction = "skiros:Friction";
inline constexpr const char* kEmpty = "skiros:Empty";
inline constexpr const char* kClean = "skiros:clean";
inline constexpr const char* kSurfaceConcept = "skiros:Surface";
inline constexpr const char* kArmConcept = "rparts:ArmDevice";
}  // namespace keys

inline constexpr const char* kImpedanceController = "cartesian_impedance_controller";
inline constexpr const char* kComplianceController = "cartesian_compliance_controller";

struct SurfaceInfo {
  std::string id;
  Pose pose;  // world frame, z is the outward normal
  double width = 0.0;
  double height = 0.0;
  double wipe_force = 0.0;
  double footprint_radius = 0.0;
  double lane_overlap = 0.5;
  double contact_stiffness = 5e4;
  double contact_damping = 300.0;
  double friction = 20.0;
};

// Reads a surface element; throws skill::SkillError on missing or invalid properties.
SurfaceInfo surface_info(const wm::Scene& scene, const std::string& id);

struct RuntimeConfig {
  double control_dt = 1e-3;  // s
  Vec6 stiffness = (Vec6() << 1000, 1000, 1000, 30, 30, 30).finished();
  double nullspace_stiffness = 10.0;  // Nm/rad, redundant arms only
  double nullspace_damping = 2.0;
  traj::TrajConfig trajectory;
};

class RobotRuntime {
 public:
  RobotRuntime(std::string id, sim::RobotModel model, Pose base, const sim::VecX& home,
               const std::string& controller, const std::vector<SurfaceInfo>& surfaces, RuntimeConfig config,
               long start_step = 0);

  const std::string& id() const { return id_; }
  const RuntimeConfig& config() const { return config_; }
  double now() const { return static_cast<double>(steps_) * config_.control_dt; }

  // One control period: reference, control law, simulation, log row.
  void step();

  Pose tcp_world() const { return sim_.tcp_world(); }
  Pose reference_world() const;
  Pose base_reference_world() const;
  const sim::Simulator& simulator() const { return sim_; }
  control::CompliantController& controller() { return *controller_; }
  const control::CompliantController& controller() const { return *controller_; }
  const std::string& controller_name() const { return controller_name_; }

  void set_goal(const Pose& world_goal);
  void set_overlay(const traj::OverlaySpec& spec);
  const traj::OverlaySpec& overlay() const { return generator_.overlay(); }
  bool trajectory_finished() const { return generator_.finished(now()); }
  double trajectory_finish_time() const { return generator_.finish_time(); }
  // Largest distance of the overlay from the base reference.
  double overlay_reach() const;

  // Wrench in the TCP frame; opens or closes a force window when the force
  // along the TCP z axis changes between zero and nonzero.
  void set_wrench(const Vec6& wrench);

  bool faulted() const { return fault_.has_value(); }
  const std::string& fault() const { return *fault_; }

  void set_active_skill(std::string name) { active_skill_ = std::move(name); }
  std::string attached_tool;

  // Log with surfaces and closed force windows.
  app::RunLog log() const;
  const std::vector<app::LogRow>& rows() const { return rows_; }
  // Contact coverage so far for a surface, or nullopt when unknown.
  std::optional<double> coverage(const std::string& surface) const;

 private:
  std::string id_;
  sim::RobotModel model_;
  RuntimeConfig config_;
  sim::Simulator sim_;
  std::string controller_name_;
  std::unique_ptr<control::CompliantController> controller_;
  control::ImpedanceController* impedance_ = nullptr;
  control::FdccController* fdcc_ = nullptr;
  traj::TrajectoryGenerator generator_;
  long steps_;
  std::optional<std::string> fault_;
  std::string active_skill_;
  std::vector<app::SurfaceMeta> surfaces_;
  std::vector<app::CoverageTracker> trackers_;
  std::vector<app::ForceWindow> windows_;
  std::optional<app::ForceWindow> open_window_;
  std::vector<app::LogRow> rows_;
};

// Services handed to every skill: the world model, lazily created robot
// runtimes sharing one clock, and the abstract command stream.
class System : public skill::Services {
 public:
  System(wm::WorldModel& wm, std::string resource_dir, RuntimeConfig config = {});

  wm::WorldModel& world_model() { return wm_; }
  const RuntimeConfig& config() const { return config_; }
  // Runtime for an arm element, created from its world-model properties on first use.
  RobotRuntime& robot(const std::string& arm);
  const std::map<std::string, std::unique_ptr<RobotRuntime>>& robots() const { return robots_; }

  double now() const { return static_cast<double>(steps_) * config_.control_dt; }
  // Steps every runtime for `dt` (rounded to whole control periods).
  void advance(double dt);

  // Tracks the innermost running skill for the log, then forwards to `sink`.
  skill::SkillObserver observer(skill::SkillObserver sink = {});
  void record_command(const std::string& robot, const std::string& command);
  // Abstract command stream of one robot: skill names with their symbolic arguments.
  std::vector<std::string> commands(const std::string& robot) const;
  // Human-readable reasons for skill failures, in order.
  void diagnose(std::string message) { diagnostics_.push_back(std::move(message)); }
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  wm::WorldModel& wm_;
  std::string resource_dir_;
  RuntimeConfig config_;
  long steps_ = 0;
  std::map<std::string, std::unique_ptr<RobotRuntime>> robots_;
  std::vector<std::string> active_;
  std::map<std::string, std::vector<std::string>> commands_;
  std::vector<std::string> diagnostics_;
};

// System behind a skill context; throws skill::SkillError when absent.
System& system_of(skill::SkillContext& ctx);

}  // namespace skillsim::skills
