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

#include "skillsim/skills/runtime.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

namespace skillsim::skills {

namespace {

double number_or(const wm::Element& e, const char* key, double fallback) {
  const auto v = e.number_property(key);
  return v ? *v : fallback;
}

double require_number(const wm::Element& e, const char* key) {
  const auto v = e.number_property(key);
  if (!v) throw skill::SkillError(e.id + ": missing numeric property " + key);
  return *v;
}

sim::VecX parse_configuration(const std::string& text, int dof, const std::string& owner) {
  std::istringstream in(text);
  std::vector<double> values;
  double v = 0;
  while (in >> v) values.push_back(v);
  if (!in.eof() || static_cast<int>(values.size()) != dof) {
    throw skill::SkillError(owner + ": home configuration needs " + std::to_string(dof) + " numbers");
  }
  return Eigen::Map<sim::VecX>(values.data(), dof);
}

}  // namespace

SurfaceInfo surface_info(const wm::Scene& scene, const std::string& id) {
  const wm::Element* e = scene.find(id);
  if (!e) throw skill::SkillError("unknown surface '" + id + "'");
  SurfaceInfo s;
  s.id = id;
  s.pose = wm::resolve_world_pose(scene, id);
  s.width = require_number(*e, keys::kWidth);
  s.height = require_number(*e, keys::kHeight);
  s.wipe_force = require_number(*e, keys::kWipeForce);
  s.footprint_radius = require_number(*e, keys::kFootprintRadius);
  s.lane_overlap = number_or(*e, keys::kLaneOverlap, 0.5);
  s.contact_stiffness = number_or(*e, keys::kContactStiffness, s.contact_stiffness);
  s.contact_damping = number_or(*e, keys::kContactDamping, s.contact_damping);
  s.friction = number_or(*e, keys::kFriction, s.friction);
  if (!(s.width >= 0 && s.height >= 0)) throw skill::SkillError(id + ": extents must be >= 0");
  if (!(s.wipe_force > 0)) throw skill::SkillError(id + ": wipe force must be > 0");
  if (!(s.footprint_radius > 0)) throw skill::SkillError(id + ": footprint radius must be > 0");
  if (!(s.lane_overlap > 0 && s.lane_overlap < 1)) throw skill::SkillError(id + ": lane overlap must be in (0, 1)");
  return s;
}

RobotRuntime::RobotRuntime(std::string id, sim::RobotModel model, Pose base, const sim::VecX& home,
                           const std::string& controller, const std::vector<SurfaceInfo>& surfaces,
                           RuntimeConfig config, long start_step)
    : id_(std::move(id)),
      model_(std::move(model)),
      config_(std::move(config)),
      sim_(model_, base, home),
      controller_name_(controller),
      generator_(sim::fk(model_, home), config_.trajectory),
      steps_(start_step) {
  control::ImpedanceGains gains = control::ImpedanceGains::diagonal(config_.stiffness);
  if (model_.dof() > 6) gains.nullspace = {home, config_.nullspace_stiffness, config_.nullspace_damping};
  if (controller == kImpedanceController) {
    if (model_.interface != sim::CommandInterface::kTorque) {
      throw skill::SkillError(id_ + ": impedance control needs a torque interface");
    }
    auto c = std::make_unique<control::ImpedanceController>(sim_.model(), gains);
    impedance_ = c.get();
    controller_ = std::move(c);
  } else if (controller == kComplianceController) {
    if (!model_.wrist_ft_sensor) throw skill::SkillError(id_ + ": compliance control needs a wrist sensor");
    auto c = std::make_unique<control::FdccController>(model_, home, gains);
    fdcc_ = c.get();
    controller_ = std::move(c);
  } else {
    throw skill::SkillError(id_ + ": unsupported compliant controller '" + controller + "'");
  }
  controller_->set_reference(sim::fk(model_, home));
  controller_->apply_pending(now());
  for (const auto& s : surfaces) {
    sim::ContactSurface c;
    c.id = s.id;
    c.pose = s.pose;
    c.width = s.width;
    c.height = s.height;
    c.stiffness = s.contact_stiffness;
    c.damping = s.contact_damping;
    c.friction = s.friction;
    c.wipe_force_hint = s.wipe_force;
    c.edge_reach = s.footprint_radius;
    sim_.add_surface(c);
    surfaces_.push_back({s.id, s.pose, s.width, s.height, s.footprint_radius});
    trackers_.emplace_back(surfaces_.back());
  }
}

Pose RobotRuntime::reference_world() const { return sim_.base_pose() * generator_.sample(now()).pose; }

Pose RobotRuntime::base_reference_world() const { return sim_.base_pose() * generator_.base_sample(now()).pose; }

void RobotRuntime::set_goal(const Pose& world_goal) {
  generator_.set_goal(sim_.base_pose().inverse() * world_goal, now());
}

void RobotRuntime::set_overlay(const traj::OverlaySpec& spec) { generator_.set_overlay(spec, now()); }

double RobotRuntime::overlay_reach() const {
  const traj::OverlaySpec& o = generator_.overlay();
  switch (o.kind) {
    case traj::OverlayKind::kNone:
      return 0.0;
    case traj::OverlayKind::kCircle:
      return 2.0 * o.amplitude;
    case traj::OverlayKind::kSine:
      return o.amplitude;
    case traj::OverlayKind::kSpiral:
      break;
  }
  return (reference_world().position - base_reference_world().position).norm();
}

void RobotRuntime::set_wrench(const Vec6& wrench) {
  controller_->set_wrench(wrench);
  const double f = std::abs(wrench[2]);
  if (open_window_ && open_window_->setpoint != f) {
    open_window_->t_off = now();
    windows_.push_back(*open_window_);
    open_window_.reset();
  }
  if (f > 0 && !open_window_) open_window_ = app::ForceWindow{now(), now(), f};
}

void RobotRuntime::step() {
  const double t = now();
  const double dt = config_.control_dt;
  const traj::PoseRef ref = generator_.sample(t);
  if (!fault_) {
    try {
      controller_->set_reference(ref.pose);
      if (impedance_) {
        const sim::SimState& s = sim_.state();
        sim_.step_torque(impedance_->step(s.q, s.qd, t), dt);
      } else {
        sim_.step_position(fdcc_->step(sim_.wrist_ft(), t, dt), dt);
      }
      if (sim_.faulted()) fault_ = "joint limit reached at t=" + std::to_string(t);
    } catch (const std::exception& e) {
      fault_ = e.what();
    }
  }
  ++steps_;
  app::LogRow row;
  row.t = now();
  row.reference = sim_.base_pose() * ref.pose;
  row.actual = sim_.tcp_world();
  row.wrench = sim_.last_step().contact_wrench;
  row.q = sim_.state().q;
  row.skill = active_skill_;
  for (auto& tr : trackers_) tr.add(row);
  rows_.push_back(std::move(row));
}

app::RunLog RobotRuntime::log() const {
  app::RunLog log;
  log.robot = id_;
  log.controller = controller_name_;
  log.dof = model_.dof();
  log.dt = config_.control_dt;
  log.surfaces = surfaces_;
  log.force_windows = windows_;
  if (open_window_) {
    app::ForceWindow w = *open_window_;
    w.t_off = now();
    log.force_windows.push_back(w);
  }
  log.rows = rows_;
  return log;
}

std::optional<double> RobotRuntime::coverage(const std::string& surface) const {
  for (const auto& tr : trackers_) {
    if (tr.surface().id == surface) return tr.contact().fraction();
  }
  return std::nullopt;
}

System::System(wm::WorldModel& wm, std::string resource_dir, RuntimeConfig config)
    : wm_(wm), resource_dir_(std::move(resource_dir)), config_(std::move(config)) {}

RobotRuntime& System::robot(const std::string& arm) {
  if (auto it = robots_.find(arm); it != robots_.end()) return *it->second;
  const auto scene = wm_.snapshot();
  const wm::Element* e = scene->find(arm);
  if (!e) throw skill::SkillError("unknown arm '" + arm + "'");
  if (!scene->is_a(e->type, keys::kArmConcept)) throw skill::SkillError(arm + " is not an arm");
  const auto model_file = e->string_property(keys::kRobotModel);
  const auto home = e->string_property(keys::kHomeConfiguration);
  const auto controller = e->string_property(keys::kCompliantController);
  if (!model_file || !home || !controller) {
    throw skill::SkillError(arm + ": needs " + keys::kRobotModel + ", " + keys::kHomeConfiguration + " and " +
                            keys::kCompliantController);
  }
  std::filesystem::path path(*model_file);
  if (path.is_relative()) path = std::filesystem::path(resource_dir_) / path;
  sim::RobotModel model = sim::load_robot_model_file(path.string());
  const sim::VecX q0 = parse_configuration(*home, model.dof(), arm);
  std::vector<SurfaceInfo> surfaces;
  for (const wm::Element* s : wm::query_by_concept(*scene, keys::kSurfaceConcept, true)) {
    surfaces.push_back(surface_info(*scene, s->id));
  }
  auto rt = std::make_unique<RobotRuntime>(arm, std::move(model), wm::resolve_world_pose(*scene, arm), q0,
                                           *controller, surfaces, config_, steps_);
  rt->set_active_skill(active_.empty() ? std::string() : active_.back());
  return *robots_.emplace(arm, std::move(rt)).first->second;
}

void System::advance(double dt) {
  const long n = std::lround(dt / config_.control_dt);
  for (long i = 0; i < n; ++i) {
    for (auto& [_, r] : robots_) r->step();
    ++steps_;
  }
}

skill::SkillObserver System::observer(skill::SkillObserver sink) {
  return [this, sink = std::move(sink)](const skill::SkillEvent& e) {
    if (e.type == skill::SkillEventType::kStarted) {
      active_.push_back(e.skill);
    } else if (e.type == skill::SkillEventType::kStopped) {
      for (auto it = active_.rbegin(); it != active_.rend(); ++it) {
        if (*it == e.skill) {
          active_.erase(std::next(it).base());
          break;
        }
      }
    }
    const std::string current = active_.empty() ? std::string() : active_.back();
    for (auto& [_, r] : robots_) r->set_active_skill(current);
    if (sink) sink(e);
  };
}

void System::record_command(const std::string& robot, const std::string& command) {
  commands_[robot].push_back(command);
}

std::vector<std::string> System::commands(const std::string& robot) const {
  const auto it = commands_.find(robot);
  return it == commands_.end() ? std::vector<std::string>{} : it->second;
}

System& system_of(skill::SkillContext& ctx) {
  auto* s = dynamic_cast<System*>(ctx.services);
  if (!s) throw skill::SkillError(ctx.skill + ": needs the simulated robot system");
  return *s;
}

}  // namespace skillsim::skills
