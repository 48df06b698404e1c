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

#include "skillsim/skills/library.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "skillsim/control/impedance.hpp"

namespace skillsim::skills {

using bt::Status;
using skill::Bindings;
using skill::Condition;
using skill::ElementId;
using skill::ParamKind;
using skill::ParamValue;
using skill::SkillContext;
using skill::SkillDescription;
using skill::SkillImplementation;

namespace {

const std::string& element(const SkillContext& ctx, const std::string& name) {
  return skill::element_of(ctx.params, name);
}

double number(const SkillContext& ctx, const std::string& name) {
  const wm::PropertyValue& v = skill::scalar_of(ctx.params, name);
  if (!v.is_number()) throw skill::SkillError(ctx.skill + ": parameter '" + name + "' must be a number");
  return v.as_number();
}

std::string text(const SkillContext& ctx, const std::string& name) {
  const wm::PropertyValue& v = skill::scalar_of(ctx.params, name);
  if (v.type() != wm::ValueType::kString) throw skill::SkillError(ctx.skill + ": parameter '" + name + "' must be a string");
  return v.as_string();
}

bool flag(const SkillContext& ctx, const std::string& name) {
  const wm::PropertyValue& v = skill::scalar_of(ctx.params, name);
  if (v.type() != wm::ValueType::kBool) throw skill::SkillError(ctx.skill + ": parameter '" + name + "' must be a bool");
  return v.as_bool();
}

std::vector<std::string> tokens(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

int axis_index(const std::string& axis) {
  static const char* names[] = {"x", "y", "z", "rx", "ry", "rz"};
  for (int i = 0; i < 6; ++i) {
    if (axis == names[i]) return i;
  }
  return -1;
}

std::string num(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

// Base for primitives acting on one arm.
class ArmBehavior : public skill::PrimitiveBehavior {
 protected:
  RobotRuntime& arm(SkillContext& ctx) { return system_of(ctx).robot(element(ctx, "arm")); }
  Status fail(SkillContext& ctx, const std::string& why) {
    system_of(ctx).diagnose(ctx.skill + ": " + why);
    return Status::kFailure;
  }
};

class GotoLinear : public ArmBehavior {
 public:
  void on_start(SkillContext& ctx) override {
    RobotRuntime& rt = arm(ctx);
    target_ = skill::scalar_of(ctx.params, "target").as_pose();
    rt.set_goal(target_);
    dwell_ = std::max(0.0, number(ctx, "dwell"));
    arrived_.reset();
    deadline_ = rt.trajectory_finish_time() + kGotoTimeoutMargin + dwell_;
    const std::string purpose = text(ctx, "purpose");
    system_of(ctx).record_command(rt.id(), purpose.empty() ? "goto_linear" : "goto_linear " + purpose);
  }

  Status execute(SkillContext& ctx) override {
    RobotRuntime& rt = arm(ctx);
    if (rt.faulted()) return fail(ctx, rt.fault());
    if (!arrived_ && rt.trajectory_finished() && within_tolerance(rt)) arrived_ = rt.now();
    if (arrived_ && rt.now() >= *arrived_ + dwell_ - 1e-9) return Status::kSuccess;
    if (rt.now() > deadline_) {
      const Pose tcp = rt.tcp_world();
      return fail(ctx, "timeout, " + num((tcp.position - target_.position).norm() * 1000) + " mm from target");
    }
    return Status::kRunning;
  }

 private:
  bool within_tolerance(const RobotRuntime& rt) const {
    const Pose tcp = rt.tcp_world();
    // Error in the tool frame; axes without stiffness are force controlled and not checked.
    const Vec3 e = tcp.orientation.conjugate() * (tcp.position - target_.position);
    const Mat6& k = rt.controller().target_stiffness();
    double sq = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (k(i, i) > 0.0) sq += e[i] * e[i];
    }
    return std::sqrt(sq) <= kPositionTolerance + rt.overlay_reach() &&
           angle_between(tcp.orientation, target_.orientation) <= kOrientationTolerance;
  }

  Pose target_;
  double dwell_ = 0.0;
  std::optional<double> arrived_;
  double deadline_ = 0.0;
};

class ChangeStiffness : public ArmBehavior {
 public:
  void on_start(SkillContext& ctx) override {
    RobotRuntime& rt = arm(ctx);
    const std::string axes = text(ctx, "axes");
    system_of(ctx).record_command(rt.id(), "change_stiffness axes=" + axes);
    const std::vector<std::string> names = tokens(axes);
    const std::vector<std::string> values = tokens(text(ctx, "values"));
    if (names.empty() || (values.size() != 1 && values.size() != names.size())) {
      error_ = "axes and values do not match";
      return;
    }
    Mat6 k = rt.controller().target_stiffness();
    for (size_t i = 0; i < names.size(); ++i) {
      const int a = axis_index(names[i]);
      if (a < 0) {
        error_ = "unknown axis '" + names[i] + "'";
        return;
      }
      try {
        k(a, a) = std::stod(values[values.size() == 1 ? 0 : i]);
      } catch (const std::exception&) {
        error_ = "bad stiffness value";
        return;
      }
    }
    try {
      rt.controller().set_stiffness(k);
    } catch (const std::invalid_argument& e) {
      error_ = e.what();
    }
  }

  Status execute(SkillContext& ctx) override {
    if (!error_.empty()) return fail(ctx, error_);
    RobotRuntime& rt = arm(ctx);
    if (rt.faulted()) return fail(ctx, rt.fault());
    return rt.controller().settled() ? Status::kSuccess : Status::kRunning;
  }

 private:
  std::string error_;
};

class ApplyForce : public ArmBehavior {
 public:
  void on_start(SkillContext& ctx) override {
    RobotRuntime& rt = arm(ctx);
    const std::string axis = text(ctx, "axis");
    system_of(ctx).record_command(rt.id(), "apply_force axis=" + axis);
    const int a = axis_index(axis);
    const double magnitude = number(ctx, "magnitude");
    if (a < 0 || a > 2 || !std::isfinite(magnitude)) {
      error_ = "force needs a translational axis and a finite magnitude";
      return;
    }
    Vec6 w = Vec6::Zero();
    w[a] = magnitude;
    rt.set_wrench(w);
    until_ = rt.now() + std::max(0.0, number(ctx, "settle"));
  }

  Status execute(SkillContext& ctx) override {
    if (!error_.empty()) return fail(ctx, error_);
    RobotRuntime& rt = arm(ctx);
    if (rt.faulted()) return fail(ctx, rt.fault());
    return rt.now() >= until_ - 1e-9 ? Status::kSuccess : Status::kRunning;
  }

 private:
  std::string error_;
  double until_ = 0.0;
};

class Overlay : public ArmBehavior {
 public:
  void on_start(SkillContext& ctx) override {
    RobotRuntime& rt = arm(ctx);
    const bool on = flag(ctx, "on");
    const std::string kind = text(ctx, "kind");
    system_of(ctx).record_command(rt.id(), on ? "overlay kind=" + kind + " on" : "overlay off");
    traj::OverlaySpec spec;
    if (on) {
      const auto k = traj::overlay_kind_from_string(kind);
      if (!k) {
        error_ = "unknown overlay '" + kind + "'";
        return;
      }
      spec.kind = *k;
      spec.amplitude = number(ctx, "amplitude");
      spec.frequency = number(ctx, "frequency");
      spec.pitch = number(ctx, "pitch");
    }
    try {
      spec.validate();
      rt.set_overlay(spec);
    } catch (const std::invalid_argument& e) {
      error_ = e.what();
    }
  }

  Status execute(SkillContext& ctx) override {
    if (!error_.empty()) return fail(ctx, error_);
    return Status::kSuccess;
  }

 private:
  std::string error_;
};

// Gripper actuation with a fixed latency; the world-model state is written
// when the motion completes.
class GripperSet : public skill::PrimitiveBehavior {
 public:
  using Writer = std::function<void(wm::Element&, bool open)>;
  GripperSet(double latency, Writer writer) : latency_(latency), writer_(std::move(writer)) {}

  void on_start(SkillContext& ctx) override {
    System& sys = system_of(ctx);
    open_ = flag(ctx, "open");
    done_at_ = sys.now() + latency_;
    sys.record_command(element(ctx, "gripper"), open_ ? "gripper_set open" : "gripper_set close");
  }

  Status execute(SkillContext& ctx) override {
    if (system_of(ctx).now() < done_at_ - 1e-9) return Status::kRunning;
    const std::string id = element(ctx, "gripper");
    ctx.wm->mutate([&](wm::Scene& s) { writer_(s.mutable_element(id), open_); });
    return Status::kSuccess;
  }

 private:
  double latency_;
  Writer writer_;
  bool open_ = true;
  double done_at_ = 0.0;
};

// Moves the arm between workstations in the world model only.
class Relocate : public skill::PrimitiveBehavior {
 public:
  Status execute(SkillContext& ctx) override {
    const std::string arm = element(ctx, "arm"), from = element(ctx, "from"), to = element(ctx, "to");
    ctx.wm->mutate([&](wm::Scene& s) {
      s.mutable_element(from).remove_relation(wm::keys::kHasA, arm);
      s.mutable_element(to).add_relation(wm::keys::kHasA, arm);
    });
    return Status::kSuccess;
  }
};

ParamValue pose_value(const Pose& p) { return ParamValue{wm::PropertyValue(p)}; }
ParamValue str(const std::string& s) { return ParamValue{wm::PropertyValue(s)}; }
ParamValue real(double v) { return ParamValue{wm::PropertyValue(v)}; }
ParamValue boolean(bool v) { return ParamValue{wm::PropertyValue(v)}; }

bt::NodePtr labelled(bt::NodePtr node, const std::string& label) {
  node->set_label(label);
  return node;
}

bt::NodePtr go(skill::Expander& ex, const std::string& arm, const Pose& target, const std::string& purpose,
               double dwell = 0.0) {
  return labelled(ex.expand("goto_linear", {{"arm", ElementId{arm}}, {"target", pose_value(target)},
                                            {"purpose", str(purpose)}, {"dwell", real(dwell)}}),
                  purpose);
}

bt::NodePtr build_pick(SkillContext& ctx, skill::Expander& ex) {
  const std::string arm = element(ctx, "arm"), tool = element(ctx, "tool");
  const std::string gripper = element(ctx, "gripper"), location = element(ctx, "location");
  const Pose grasp = wm::resolve_world_pose(*ctx.wm->snapshot(), tool);
  const Pose pregrasp = grasp * Pose::from_translation(Vec3(0, 0, -kApproachDistance));
  wm::WorldModel* wm = ctx.wm;
  System* sys = &system_of(ctx);
  std::vector<bt::NodePtr> steps;
  steps.push_back(labelled(ex.expand("gripper_set", {{"gripper", ElementId{gripper}}, {"open", boolean(true)}}), "open"));
  steps.push_back(go(ex, arm, pregrasp, "pregrasp"));
  steps.push_back(go(ex, arm, grasp, "grasp"));
  steps.push_back(labelled(ex.expand("gripper_set", {{"gripper", ElementId{gripper}}, {"open", boolean(false)}}), "close"));
  steps.push_back(std::make_unique<bt::FunctionLeaf>("attach", [=] {
    wm->mutate([&](wm::Scene& s) {
      s.mutable_element(location).remove_relation(wm::keys::kContain, tool);
      wm::Element& g = s.mutable_element(gripper);
      g.add_relation(wm::keys::kContain, tool);
      g.set_property(keys::kEmpty, false);
      wm::Element& t = s.mutable_element(tool);
      t.set_property(wm::keys::kLinkedToFrameId, g.frame_name());
      t.set_property(wm::keys::kPose, Pose::identity());
    });
    sys->robot(arm).attached_tool = tool;
    return Status::kSuccess;
  }));
  steps.push_back(go(ex, arm, pregrasp, "lift"));
  return std::make_unique<bt::Sequence>(std::move(steps));
}

bt::NodePtr build_wipe(SkillContext& ctx, skill::Expander& ex) {
  System& sys = system_of(ctx);
  const std::string arm = element(ctx, "arm"), surface = element(ctx, "surface");
  const std::string station = element(ctx, "station");
  const SurfaceInfo s = surface_info(*ctx.wm->snapshot(), surface);
  RobotRuntime& rt = sys.robot(arm);
  const traj::OverlaySpec overlay = wipe_overlay();
  const Quat orientation = work_orientation(s);
  const WipeRaster raster = plan_raster(s, overlay, orientation);
  const Vec3 normal = s.pose.orientation * Vec3::UnitZ();
  const auto at = [&](const Vec3& local, double lift) {
    return Pose(s.pose.transform_point(local) + lift * normal, orientation);
  };
  const Bindings on_arm = {{"arm", ElementId{arm}}};
  const auto with = [&](Bindings extra) {
    extra.insert(on_arm.begin(), on_arm.end());
    return extra;
  };
  const double normal_stiffness = rt.config().stiffness[2];

  std::vector<bt::NodePtr> steps;
  steps.push_back(go(ex, arm, at(raster.waypoints.front(), kApproachDistance), "approach"));
  steps.push_back(go(ex, arm, at(raster.waypoints.front(), 0.0), "corner"));
  steps.push_back(labelled(ex.expand("change_stiffness", with({{"axes", str("z")}, {"values", str("0")}})),
                           "release normal"));
  steps.push_back(labelled(ex.expand("apply_force", with({{"axis", str("z")}, {"magnitude", real(s.wipe_force)}})),
                           "press"));
  steps.push_back(labelled(ex.expand("overlay", with({{"kind", str(traj::to_string(overlay.kind))},
                                                      {"amplitude", real(overlay.amplitude)},
                                                      {"frequency", real(overlay.frequency)},
                                                      {"on", boolean(true)}})),
                           "overlay on"));
  // One overlay period at every turn so the circle sweeps the lane ends.
  const double dwell = 1.0 / overlay.frequency;
  steps.push_back(go(ex, arm, at(raster.waypoints.front(), 0.0), "start", dwell));
  for (size_t i = 1; i < raster.waypoints.size(); ++i) {
    const bool across = raster.waypoints[i].y() == raster.waypoints[i - 1].y();
    steps.push_back(go(ex, arm, at(raster.waypoints[i], 0.0), across ? "across" : "down", dwell));
  }
  steps.push_back(labelled(ex.expand("overlay", with({{"on", boolean(false)}})), "overlay off"));
  steps.push_back(labelled(ex.expand("apply_force", with({{"axis", str("z")}, {"magnitude", real(0.0)},
                                                          {"settle", real(0.0)}})),
                           "release"));
  steps.push_back(labelled(ex.expand("change_stiffness", with({{"axes", str("z")}, {"values", str(num(normal_stiffness))}})),
                           "restore normal"));
  steps.push_back(go(ex, arm, at(raster.waypoints.back(), kApproachDistance), "retreat"));
  System* sysp = &sys;
  wm::WorldModel* wm = ctx.wm;
  steps.push_back(std::make_unique<bt::FunctionLeaf>("verify coverage", [=] {
    const double c = sysp->robot(arm).coverage(surface).value_or(0.0);
    if (c >= kCoverageThreshold) return Status::kSuccess;
    sysp->diagnose("wipe_surface: coverage " + num(c) + " below " + num(kCoverageThreshold));
    return Status::kFailure;
  }));
  steps.push_back(std::make_unique<bt::FunctionLeaf>("mark clean", [=] {
    wm->mutate([&](wm::Scene& sc) { sc.mutable_element(station).add_relation(keys::kClean, surface); });
    return Status::kSuccess;
  }));
  return std::make_unique<bt::Sequence>(std::move(steps));
}

SkillDescription describe(std::string name, std::vector<skill::ParamSpec> params) {
  SkillDescription d;
  d.name = std::move(name);
  d.params = std::move(params);
  return d;
}

SkillImplementation primitive(std::string name, std::string skill, skill::PrimitiveFactory f,
                              std::map<std::string, std::string> specializations = {}) {
  SkillImplementation i;
  i.name = std::move(name);
  i.implements = std::move(skill);
  i.primitive = std::move(f);
  i.specializations = std::move(specializations);
  return i;
}

const skill::ParamSpec kArm{"arm", keys::kArmConcept, ParamKind::kRequired, {}};

}  // namespace

traj::OverlaySpec wipe_overlay() {
  traj::OverlaySpec o;
  o.kind = traj::OverlayKind::kCircle;
  o.amplitude = 0.01;
  o.frequency = 1.0;
  return o;
}

Quat work_orientation(const SurfaceInfo& surface) {
  return (surface.pose.orientation * Quat(Eigen::AngleAxisd(std::numbers::pi, Vec3::UnitX()))).normalized();
}

WipeRaster plan_raster(const SurfaceInfo& s, const traj::OverlaySpec& overlay, const Quat& tool_orientation) {
  WipeRaster r;
  // Extent of the overlay in the surface frame, sampled over one period.
  Eigen::Vector2d lo = Eigen::Vector2d::Zero(), hi = Eigen::Vector2d::Zero();
  if (overlay.kind == traj::OverlayKind::kCircle || overlay.kind == traj::OverlayKind::kSine) {
    const auto [e1, e2] = traj::plane_basis(overlay.plane_normal.normalized());
    const Mat3 to_surface = (s.pose.orientation.conjugate() * tool_orientation).toRotationMatrix();
    constexpr int kSamples = 720;
    for (int i = 0; i < kSamples; ++i) {
      const Eigen::Vector2d o = traj::overlay_offset_plane(overlay, i / (kSamples * overlay.frequency));
      const Vec3 v = to_surface * (o.x() * e1 + o.y() * e2);
      lo = lo.cwiseMin(v.head<2>());
      hi = hi.cwiseMax(v.head<2>());
    }
  }
  const double margin = kEdgeMargin;
  r.x_min = -s.width / 2 - lo.x() + margin;
  r.x_max = s.width / 2 - hi.x() - margin;
  r.y_min = -s.height / 2 - lo.y() + margin;
  r.y_max = s.height / 2 - hi.y() - margin;
  if (r.x_min > r.x_max) r.x_min = r.x_max = (r.x_min + r.x_max) / 2;
  if (r.y_min > r.y_max) r.y_min = r.y_max = (r.y_min + r.y_max) / 2;
  r.pitch = 2.0 * s.footprint_radius * (1.0 - s.lane_overlap);
  const double span = r.y_max - r.y_min;
  r.lanes = 1 + static_cast<int>(std::ceil(span / r.pitch - 1e-9));
  double y = r.y_max;
  bool left = true;
  r.waypoints.push_back({r.x_min, y, 0.0});
  for (int i = 0; i < r.lanes; ++i) {
    left = !left;
    r.waypoints.push_back({left ? r.x_min : r.x_max, y, 0.0});
    if (i + 1 < r.lanes) {
      y = std::max(r.y_min, y - r.pitch);
      r.waypoints.push_back({left ? r.x_min : r.x_max, y, 0.0});
    }
  }
  return r;
}

Pose parse_pose(const std::string& text) {
  std::istringstream in(text);
  double v[7];
  for (double& x : v) {
    if (!(in >> x)) throw std::invalid_argument("pose needs 7 numbers 'x y z qx qy qz qw': " + text);
  }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("trailing text in pose: " + text);
  const Quat q(v[6], v[3], v[4], v[5]);
  if (!(q.norm() > 1e-9)) throw std::invalid_argument("degenerate quaternion in pose: " + text);
  return Pose(Vec3(v[0], v[1], v[2]), q.normalized());
}

void register_skills(skill::SkillRegistry& registry) {
  registry.add_description(describe("goto_linear", {kArm,
                                                    {"target", "pose", ParamKind::kRequired, {}},
                                                    {"purpose", "string", ParamKind::kOptional, str("")},
                                                    {"dwell", "float", ParamKind::kOptional, real(0.0)}}));
  registry.add_implementation(primitive("goto_linear", "goto_linear", [] { return std::make_unique<GotoLinear>(); }));

  registry.add_description(describe("change_stiffness", {kArm,
                                                         {"axes", "string", ParamKind::kRequired, {}},
                                                         {"values", "string", ParamKind::kRequired, {}}}));
  registry.add_implementation(
      primitive("change_stiffness", "change_stiffness", [] { return std::make_unique<ChangeStiffness>(); }));

  registry.add_description(describe("apply_force", {kArm,
                                                    {"axis", "string", ParamKind::kOptional, str("z")},
                                                    {"magnitude", "float", ParamKind::kRequired, {}},
                                                    {"settle", "float", ParamKind::kOptional, real(0.5)}}));
  registry.add_implementation(primitive("apply_force", "apply_force", [] { return std::make_unique<ApplyForce>(); }));

  registry.add_description(describe("overlay", {kArm,
                                                {"kind", "string", ParamKind::kOptional, str("circle")},
                                                {"amplitude", "float", ParamKind::kOptional, real(0.01)},
                                                {"frequency", "float", ParamKind::kOptional, real(1.0)},
                                                {"pitch", "float", ParamKind::kOptional, real(0.0)},
                                                {"on", "bool", ParamKind::kOptional, boolean(true)}}));
  registry.add_implementation(primitive("overlay", "overlay", [] { return std::make_unique<Overlay>(); }));

  registry.add_description(describe("gripper_set", {{"gripper", "rparts:GripperEffector", ParamKind::kRequired, {}},
                                                    {"open", "bool", ParamKind::kOptional, boolean(true)}}));
  registry.add_implementation(primitive(
      "two_finger_gripper", "gripper_set",
      [] {
        return std::make_unique<GripperSet>(kTwoFingerLatency,
                                            [](wm::Element& e, bool open) { e.set_property("skiros:Open", open); });
      },
      {{"gripper", "rparts:TwoFingerGripper"}}));
  registry.add_implementation(primitive(
      "three_finger_gripper", "gripper_set",
      [] {
        return std::make_unique<GripperSet>(kThreeFingerLatency, [](wm::Element& e, bool open) {
          e.set_property("skiros:GraspMode", std::string(open ? "basic-open" : "basic-closed"));
        });
      },
      {{"gripper", "rparts:ThreeFingerGripper"}}));

  SkillDescription pick = describe("pick", {kArm,
                                            {"tool", "skiros:Product", ParamKind::kRequired, {}},
                                            {"gripper", "rparts:GripperEffector", ParamKind::kInferred, {}},
                                            {"location", "skiros:Location", ParamKind::kInferred, {}}});
  pick.preconditions = {Condition::relation("arm", wm::keys::kHasA, "gripper"),
                        Condition::property("gripper", keys::kEmpty, true),
                        Condition::relation("location", wm::keys::kContain, "tool")};
  pick.postconditions = {Condition::relation("gripper", wm::keys::kContain, "tool"),
                         Condition::relation("location", wm::keys::kContain, "tool", false),
                         Condition::property("gripper", keys::kEmpty, false)};
  registry.add_description(pick);
  SkillImplementation pick_impl;
  pick_impl.name = "pick";
  pick_impl.implements = "pick";
  pick_impl.compound = build_pick;
  registry.add_implementation(pick_impl);

  SkillDescription relocate = describe("relocate", {kArm,
                                                    {"to", "scalable:Workstation", ParamKind::kRequired, {}},
                                                    {"from", "scalable:Workstation", ParamKind::kInferred, {}}});
  relocate.preconditions = {Condition::relation("from", wm::keys::kHasA, "arm")};
  relocate.postconditions = {Condition::relation("to", wm::keys::kHasA, "arm"),
                             Condition::relation("from", wm::keys::kHasA, "arm", false)};
  registry.add_description(relocate);
  registry.add_implementation(primitive("relocate", "relocate", [] { return std::make_unique<Relocate>(); }));

  SkillDescription wipe = describe("wipe_surface", {kArm,
                                                    {"surface", keys::kSurfaceConcept, ParamKind::kRequired, {}},
                                                    {"station", "scalable:Workstation", ParamKind::kInferred, {}},
                                                    {"gripper", "rparts:GripperEffector", ParamKind::kInferred, {}},
                                                    {"tool", "scalable:Eraser", ParamKind::kInferred, {}}});
  wipe.preconditions = {Condition::relation("station", wm::keys::kContain, "surface"),
                        Condition::relation("station", wm::keys::kHasA, "arm"),
                        Condition::relation("arm", wm::keys::kHasA, "gripper"),
                        Condition::relation("gripper", wm::keys::kContain, "tool")};
  wipe.postconditions = {Condition::relation("station", keys::kClean, "surface")};
  registry.add_description(wipe);
  SkillImplementation wipe_impl;
  wipe_impl.name = "wipe_surface";
  wipe_impl.implements = "wipe_surface";
  wipe_impl.compound = build_wipe;
  registry.add_implementation(wipe_impl);
}

}  // namespace skillsim::skills
