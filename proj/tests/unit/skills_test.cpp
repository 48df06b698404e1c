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
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "skillsim/app/run_log.hpp"
#include "skillsim/app/session.hpp"

namespace skillsim::skills {
namespace {

using bt::Status;
using skill::Bindings;
using skill::ElementId;
using skill::ParamValue;

const std::string kData = SKILLSIM_DATA_DIR;
const std::string kTable = kData + "/scenes/table_iiwa.scene";
const std::string kBoard = kData + "/scenes/whiteboard_ur.scene";
const std::string kTableTray = kData + "/scenes/table_iiwa_tray.scene";
const std::string kBoardTray = kData + "/scenes/whiteboard_ur_tray.scene";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size())) {
    s.replace(at, from.size(), to);
  }
}

// Copy of a shipped scene with textual edits, written to the test temp dir.
std::string scene_variant(const std::string& path, const std::string& name,
                          const std::vector<std::pair<std::string, std::string>>& edits) {
  std::string text = read_file(path);
  replace_all(text, "\"../robots/", "\"" + kData + "/robots/");
  for (const auto& [from, to] : edits) {
    const size_t before = text.size();
    const std::string copy = text;
    replace_all(text, from, to);
    EXPECT_TRUE(text != copy || before != text.size()) << "edit not applied: " << from;
  }
  const std::string out = testing::TempDir() + "/" + name + ".scene";
  std::ofstream(out) << text;
  return out;
}

ParamValue pose(const Pose& p) { return ParamValue{wm::PropertyValue(p)}; }
ParamValue text(const std::string& s) { return ParamValue{wm::PropertyValue(s)}; }
ParamValue real(double v) { return ParamValue{wm::PropertyValue(v)}; }
ParamValue flag(bool v) { return ParamValue{wm::PropertyValue(v)}; }

SurfaceInfo surface(double w, double h, double r = 0.025, double overlap = 0.5) {
  SurfaceInfo s;
  s.id = "s";
  s.width = w;
  s.height = h;
  s.wipe_force = 8;
  s.footprint_radius = r;
  s.lane_overlap = overlap;
  return s;
}

// Raster geometry

TEST(Raster, PitchFollowsFootprintAndOverlap) {
  const SurfaceInfo s = surface(0.5, 0.3, 0.025, 0.5);
  const WipeRaster r = plan_raster(s, wipe_overlay(), work_orientation(s));
  EXPECT_DOUBLE_EQ(r.pitch, 0.025);
  // The circle spans 2 cm along one surface axis and 2 cm along the other.
  EXPECT_NEAR(r.x_max - r.x_min, 0.5 - 0.02 - 2 * kEdgeMargin, 1e-4);
  EXPECT_NEAR(r.y_max - r.y_min, 0.3 - 0.02 - 2 * kEdgeMargin, 1e-4);
  EXPECT_EQ(r.lanes, 1 + static_cast<int>(std::ceil((r.y_max - r.y_min) / r.pitch)));
}

TEST(Raster, StartsTopLeftAndAlternates) {
  const SurfaceInfo s = surface(0.4, 0.2);
  const WipeRaster r = plan_raster(s, wipe_overlay(), work_orientation(s));
  ASSERT_EQ(r.waypoints.size(), static_cast<size_t>(2 * r.lanes));
  EXPECT_DOUBLE_EQ(r.waypoints.front().x(), r.x_min);
  EXPECT_DOUBLE_EQ(r.waypoints.front().y(), r.y_max);
  EXPECT_DOUBLE_EQ(r.waypoints.back().y(), r.y_min);
  for (size_t i = 1; i < r.waypoints.size(); ++i) {
    const Vec3 d = r.waypoints[i] - r.waypoints[i - 1];
    if (i % 2 == 1) {
      EXPECT_EQ(d.y(), 0.0) << "lane " << i;
      EXPECT_NEAR(std::abs(d.x()), r.x_max - r.x_min, 1e-12);
    } else {
      EXPECT_EQ(d.x(), 0.0);
      EXPECT_LT(d.y(), 0.0);
      EXPECT_LE(-d.y(), r.pitch + 1e-12);
    }
  }
}

// Tool-plane circle points around a waypoint, in the surface frame.
std::vector<Vec3> swept(const SurfaceInfo& s, const Vec3& waypoint) {
  const traj::OverlaySpec o = wipe_overlay();
  const auto [e1, e2] = traj::plane_basis(o.plane_normal.normalized());
  const Mat3 to_surface = (s.pose.orientation.conjugate() * work_orientation(s)).toRotationMatrix();
  std::vector<Vec3> out;
  for (int i = 0; i < 64; ++i) {
    const Eigen::Vector2d p = traj::overlay_offset_plane(o, i / 64.0 / o.frequency);
    out.push_back(waypoint + to_surface * (p.x() * e1 + p.y() * e2));
  }
  return out;
}

TEST(Raster, ZeroExtentsGiveOneLane) {
  const SurfaceInfo s = surface(0.0, 0.0);
  const WipeRaster r = plan_raster(s, wipe_overlay(), work_orientation(s));
  EXPECT_EQ(r.lanes, 1);
  ASSERT_EQ(r.waypoints.size(), 2u);
  EXPECT_EQ(r.waypoints[0], r.waypoints[1]);
  // The circle is centred on the point.
  Vec3 mean = Vec3::Zero();
  for (const Vec3& p : swept(s, r.waypoints[0])) mean += p / 64.0;
  EXPECT_LT(mean.norm(), 1e-12);
}

TEST(Raster, RandomSurfacesStayInsideAndSpanTheHeight) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> size(0.0, 1.0), radius(0.005, 0.05), overlap(0.05, 0.95);
  for (int trial = 0; trial < 200; ++trial) {
    const SurfaceInfo s = surface(size(rng), size(rng), radius(rng), overlap(rng));
    const WipeRaster r = plan_raster(s, wipe_overlay(), work_orientation(s));
    EXPECT_LT(r.pitch, 2 * s.footprint_radius);
    // Where the rectangle is wide enough, the circle keeps the edge margin.
    const bool wide = s.width >= 0.02 + 2 * kEdgeMargin, tall = s.height >= 0.02 + 2 * kEdgeMargin;
    for (const Vec3& w : r.waypoints) {
      for (const Vec3& p : swept(s, w)) {
        if (wide) EXPECT_LE(std::abs(p.x()), s.width / 2 - kEdgeMargin + 1e-9);
        if (tall) EXPECT_LE(std::abs(p.y()), s.height / 2 - kEdgeMargin + 1e-9);
      }
    }
    // Minimal lane count covering the inset span.
    const double span = r.y_max - r.y_min;
    EXPECT_GE((r.lanes - 1) * r.pitch, span - 1e-9);
    if (r.lanes > 1) {
      EXPECT_LT((r.lanes - 2) * r.pitch, span);
    }
  }
}

TEST(WorkOrientation, ToolAxisOpposesNormal) {
  SurfaceInfo s = surface(0.5, 0.3);
  s.pose = parse_pose("0 0 0 0.5 0.5 0.5 0.5");
  const Vec3 n = s.pose.orientation * Vec3::UnitZ();
  const Vec3 tool_z = work_orientation(s) * Vec3::UnitZ();
  EXPECT_NEAR((tool_z + n).norm(), 0.0, 1e-12);
}

TEST(ParsePose, ReadsAndNormalizes) {
  const Pose p = parse_pose("1 2 3 0 0 0 2");
  EXPECT_EQ(p.position, Vec3(1, 2, 3));
  EXPECT_DOUBLE_EQ(p.orientation.w(), 1.0);
  EXPECT_THROW(parse_pose("1 2 3"), std::invalid_argument);
  EXPECT_THROW(parse_pose("1 2 3 0 0 0 1 9"), std::invalid_argument);
  EXPECT_THROW(parse_pose("1 2 3 0 0 0 0"), std::invalid_argument);
}

// Registry and implementation selection

constexpr char kGripperScene[] = R"(
rparts:GripperEffector a owl:Class
rparts:TwoFingerGripper rdfs:subClassOf rparts:GripperEffector
rparts:ThreeFingerGripper rdfs:subClassOf rparts:GripperEffector
scalable:WsgGripper rdfs:subClassOf rparts:TwoFingerGripper
scalable:RobotiqGripper rdfs:subClassOf rparts:ThreeFingerGripper
scalable:SuctionCup rdfs:subClassOf rparts:GripperEffector
rparts:ArmDevice a owl:Class
skiros:Product a owl:Class
scalable:Eraser rdfs:subClassOf skiros:Product
skiros:Location a owl:Class
scalable:Workstation rdfs:subClassOf skiros:Location
skiros:Surface rdfs:subClassOf skiros:Location
scalable:WsgGripper-1 a scalable:WsgGripper
scalable:RobotiqGripper-2 a scalable:RobotiqGripper
scalable:SuctionCup-3 a scalable:SuctionCup
)";

TEST(Registry, ValidatesAgainstShippedOntology) {
  skill::SkillRegistry reg;
  register_skills(reg);
  const wm::Scene scene = wm::load_scene(kGripperScene);
  EXPECT_NO_THROW(reg.validate(scene));
  for (const char* name : {"goto_linear", "change_stiffness", "apply_force", "overlay", "gripper_set", "pick",
                           "relocate", "wipe_surface"}) {
    EXPECT_NE(reg.find(name), nullptr) << name;
  }
}

TEST(GripperSelection, ConceptPicksImplementation) {
  skill::SkillRegistry reg;
  register_skills(reg);
  const wm::Scene scene = wm::load_scene(kGripperScene);
  const auto& d = reg.description("gripper_set");
  EXPECT_EQ(skill::select_implementation(d, {{"gripper", ElementId{"scalable:RobotiqGripper-2"}}}, scene, reg).name,
            "three_finger_gripper");
  EXPECT_EQ(skill::select_implementation(d, {{"gripper", ElementId{"scalable:WsgGripper-1"}}}, scene, reg).name,
            "two_finger_gripper");
  EXPECT_THROW(skill::select_implementation(d, {{"gripper", ElementId{"scalable:SuctionCup-3"}}}, scene, reg),
               skill::SelectionError);
}

// Primitives on the simulated robots

struct Arm {
  std::string scene;
  std::string arm;
};

class OnBothArms : public testing::TestWithParam<Arm> {};

TEST_P(OnBothArms, GotoCurrentPoseSucceedsQuickly) {
  app::Session s(GetParam().scene);
  const std::string arm = GetParam().arm;
  const Pose here = s.system().robot(arm).tcp_world();
  auto root = s.expander().expand("goto_linear", {{"arm", ElementId{arm}}, {"target", pose(here)}});
  const app::Execution ex = s.execute(*root, 5.0);
  EXPECT_EQ(ex.status, Status::kSuccess);
  EXPECT_LE(ex.ticks, 5);
}

TEST_P(OnBothArms, GotoFollowsAStraightLine) {
  app::Session s(GetParam().scene);
  const std::string arm = GetParam().arm;
  RobotRuntime& rt = s.system().robot(arm);
  const Pose start = rt.tcp_world();
  Pose goal = start;
  goal.position += Vec3(0.0, 0.3, 0.0);
  auto root = s.expander().expand("goto_linear", {{"arm", ElementId{arm}}, {"target", pose(goal)}});
  const app::Execution ex = s.execute(*root, 20.0);
  ASSERT_EQ(ex.status, Status::kSuccess) << (ex.diagnostics.empty() ? "" : ex.diagnostics.back());
  const Vec3 axis = (goal.position - start.position).normalized();
  double worst = 0.0;
  for (const auto& row : rt.rows()) {
    const Vec3 d = row.actual.position - start.position;
    worst = std::max(worst, (d - d.dot(axis) * axis).norm());
  }
  EXPECT_LE(worst, 0.005);
  EXPECT_LE((rt.tcp_world().position - goal.position).norm(), kPositionTolerance);
}

TEST_P(OnBothArms, UnreachableTargetTimesOut) {
  app::Session s(GetParam().scene);
  const std::string arm = GetParam().arm;
  Pose goal = s.system().robot(arm).tcp_world();
  goal.position += Vec3(3.0, 0.0, 0.0);
  auto root = s.expander().expand("goto_linear", {{"arm", ElementId{arm}}, {"target", pose(goal)}});
  const app::Execution ex = s.execute(*root, 60.0);
  EXPECT_EQ(ex.status, Status::kFailure);
  EXPECT_FALSE(ex.budget_exhausted);
  ASSERT_FALSE(ex.diagnostics.empty());
}

TEST_P(OnBothArms, InvalidStiffnessFails) {
  app::Session s(GetParam().scene);
  const std::string arm = GetParam().arm;
  for (const auto& [axes, values] : std::vector<std::pair<std::string, std::string>>{
           {"z", "-5"}, {"q", "10"}, {"x,y", "1 2 3"}, {"z", "soft"}}) {
    auto root = s.expander().expand("change_stiffness",
                                    {{"arm", ElementId{arm}}, {"axes", text(axes)}, {"values", text(values)}});
    EXPECT_EQ(s.execute(*root, 1.0).status, Status::kFailure) << axes << " " << values;
  }
  EXPECT_EQ(s.system().robot(arm).controller().target_stiffness()(2, 2), s.system().config().stiffness[2]);
}

TEST_P(OnBothArms, StiffnessChangeRampsThenSucceeds) {
  app::Session s(GetParam().scene);
  const std::string arm = GetParam().arm;
  auto root = s.expander().expand("change_stiffness",
                                  {{"arm", ElementId{arm}}, {"axes", text("x, rz")}, {"values", text("200 5")}});
  const app::Execution ex = s.execute(*root, 2.0);
  ASSERT_EQ(ex.status, Status::kSuccess);
  const auto& c = s.system().robot(arm).controller();
  EXPECT_GE(ex.sim_time, c.ramp_time() - 1e-9);
  EXPECT_EQ(c.stiffness()(0, 0), 200.0);
  EXPECT_EQ(c.stiffness()(5, 5), 5.0);
  EXPECT_EQ(c.stiffness()(1, 1), s.system().config().stiffness[1]);
}

TEST_P(OnBothArms, OverlayOffReturnsToTheLine) {
  app::Session s(GetParam().scene);
  const std::string arm = GetParam().arm;
  RobotRuntime& rt = s.system().robot(arm);
  const Pose anchor = rt.base_reference_world();
  auto on = s.expander().expand("overlay", {{"arm", ElementId{arm}}});
  ASSERT_EQ(s.execute(*on, 1.0).status, Status::kSuccess);
  s.system().advance(0.25);
  EXPECT_GT((rt.reference_world().position - anchor.position).norm(), 1e-3);
  auto off = s.expander().expand("overlay", {{"arm", ElementId{arm}}, {"on", flag(false)}});
  ASSERT_EQ(s.execute(*off, 1.0).status, Status::kSuccess);
  s.system().advance(5.0);
  EXPECT_LT((rt.reference_world().position - anchor.position).norm(), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Shipped, OnBothArms,
                         testing::Values(Arm{kTable, "scalable:LbrIiwa-1"}, Arm{kBoard, "scalable:Ur5-2"}),
                         [](const auto& info) { return info.index == 0 ? std::string("Torque") : "Position"; });

TEST(GripperSet, ImplementationsWriteTheirOwnState) {
  {
    app::Session s(kTableTray);
    auto root = s.expander().expand("gripper_set", {{"gripper", ElementId{"scalable:RobotiqGripper-2"}},
                                                    {"open", flag(false)}});
    const app::Execution ex = s.execute(*root, 5.0);
    ASSERT_EQ(ex.status, Status::kSuccess);
    EXPECT_NEAR(ex.sim_time, kThreeFingerLatency, 0.011);
    const auto g = s.world_model().snapshot()->find("scalable:RobotiqGripper-2");
    EXPECT_EQ(g->string_property("skiros:GraspMode").value_or(""), "basic-closed");
  }
  {
    app::Session s(kBoardTray);
    auto root = s.expander().expand("gripper_set", {{"gripper", ElementId{"scalable:WsgGripper-3"}},
                                                    {"open", flag(false)}});
    const app::Execution ex = s.execute(*root, 5.0);
    ASSERT_EQ(ex.status, Status::kSuccess);
    EXPECT_NEAR(ex.sim_time, kTwoFingerLatency, 0.011);
    const auto* v = s.world_model().snapshot()->find("scalable:WsgGripper-3")->property("skiros:Open");
    ASSERT_NE(v, nullptr);
    EXPECT_FALSE(v->as_bool());
  }
}

TEST(GripperSet, UnknownConceptCannotBeExpanded) {
  const std::string path = scene_variant(kBoardTray, "suction", {{"scalable:WsgGripper rdfs:subClassOf rparts:TwoFingerGripper",
                                                                  "scalable:SuctionCup rdfs:subClassOf rparts:GripperEffector"},
                                                                 {"scalable:WsgGripper-3 a scalable:WsgGripper",
                                                                  "scalable:WsgGripper-3 a scalable:SuctionCup"}});
  app::Session s(path);
  EXPECT_THROW(s.expander().expand("gripper_set", {{"gripper", ElementId{"scalable:WsgGripper-3"}}}),
               skill::SelectionError);
}

// Pick

TEST(Pick, TakesTheToolFromTheTray) {
  app::Session s(kTableTray);
  auto root = s.expander().expand("pick", {{"arm", ElementId{"scalable:LbrIiwa-1"}},
                                           {"tool", ElementId{"scalable:Eraser-3"}}});
  const app::Execution ex = s.execute(*root, 60.0);
  ASSERT_EQ(ex.status, Status::kSuccess) << (ex.diagnostics.empty() ? "" : ex.diagnostics.back());
  const auto scene = s.world_model().snapshot();
  EXPECT_TRUE(scene->find("scalable:RobotiqGripper-2")->has_relation("skiros:contain", "scalable:Eraser-3"));
  EXPECT_FALSE(scene->find("scalable:Tray-6")->has_relation("skiros:contain", "scalable:Eraser-3"));
  EXPECT_EQ(s.system().robot("scalable:LbrIiwa-1").attached_tool, "scalable:Eraser-3");
  // The tool now hangs off the gripper frame.
  EXPECT_EQ(scene->find("scalable:Eraser-3")->string_property(wm::keys::kLinkedToFrameId),
            scene->find("scalable:RobotiqGripper-2")->frame_name());
}

TEST(Pick, HeldToolFailsThePrecondition) {
  app::Session s(kBoard);
  auto root = s.expander().expand("pick", {{"arm", ElementId{"scalable:Ur5-2"}},
                                           {"tool", ElementId{"scalable:Eraser-5"}}});
  const app::Execution ex = s.execute(*root, 10.0);
  EXPECT_EQ(ex.status, Status::kFailure);
  bool precondition = false;
  for (const auto& e : s.events()) precondition |= e.type == skill::SkillEventType::kPreconditionFailed;
  EXPECT_TRUE(precondition);
  EXPECT_EQ(s.system().commands("scalable:Ur5-2").size(), 0u);
}

// Full wipes, run once per scene and shared by the checks below.

struct WipeRun {
  app::Execution ex;
  std::vector<std::string> commands;
  app::RunLog log;
  app::CoverageReport report;
  bool clean = false;
  double stiffness_under_force = 0.0;  // largest |K_zz| read back while a force was commanded
  int force_ticks = 0;
};

const WipeRun& wipe(const std::string& scene, const std::string& surface) {
  static std::map<std::string, WipeRun> cache;
  auto it = cache.find(scene);
  if (it != cache.end()) return it->second;
  WipeRun run;
  app::Session s(scene);
  const std::string arm = s.select_arm("");
  const auto station = s.world_model().snapshot();
  auto root = s.expander().expand("wipe_surface", {{"arm", ElementId{arm}}, {"surface", ElementId{surface}}});
  RobotRuntime& rt = s.system().robot(arm);
  const auto start = std::chrono::steady_clock::now();
  const bt::RunResult r = bt::run_to_completion(*root, app::kTickRate, 30000, [&](double dt) {
    s.system().advance(dt);
    if (rt.controller().wrench()[2] != 0.0) {
      ++run.force_ticks;
      run.stiffness_under_force = std::max(run.stiffness_under_force, std::abs(rt.controller().stiffness()(2, 2)));
    }
  });
  run.ex.status = r.status;
  run.ex.sim_time = s.system().now();
  run.ex.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  run.ex.diagnostics = s.system().diagnostics();
  run.commands = s.system().commands(arm);
  run.log = rt.log();
  const auto reports = app::coverage_report(run.log);
  for (const auto& rep : reports) {
    if (rep.surface == surface) run.report = rep;
  }
  for (const auto* e : wm::query_by_concept(*s.world_model().snapshot(), "scalable:Workstation", true)) {
    run.clean |= e->has_relation("skiros:clean", surface);
  }
  return cache.emplace(scene, std::move(run)).first->second;
}

struct Wipe {
  std::string scene;
  std::string surface;
};

class WipeOnBothArms : public testing::TestWithParam<Wipe> {
 protected:
  const WipeRun& run() { return wipe(GetParam().scene, GetParam().surface); }
};

TEST_P(WipeOnBothArms, Succeeds) {
  const WipeRun& r = run();
  ASSERT_EQ(r.ex.status, Status::kSuccess) << (r.ex.diagnostics.empty() ? "" : r.ex.diagnostics.back());
  EXPECT_TRUE(r.clean);
}

TEST_P(WipeOnBothArms, CoversTheSurface) {
  const WipeRun& r = run();
  EXPECT_GE(r.report.fraction, kCoverageThreshold);
  EXPECT_GE(r.report.geometric_fraction, 0.999);
}

TEST_P(WipeOnBothArms, RegulatesTheForce) {
  const WipeRun& r = run();
  ASSERT_GT(r.report.setpoint, 0.0);
  EXPECT_NEAR(r.report.steady_force, r.report.setpoint, 0.15 * r.report.setpoint);
}

TEST_P(WipeOnBothArms, NormalStiffnessIsZeroUnderForce) {
  const WipeRun& r = run();
  EXPECT_GT(r.force_ticks, 1000);
  EXPECT_EQ(r.stiffness_under_force, 0.0);
}

TEST_P(WipeOnBothArms, KeepsContactWhileWiping) {
  // Lift-off shows up as rows without contact inside a force window.
  const WipeRun& r = run();
  const app::SurfaceMeta& surf = r.log.surfaces.front();
  const Pose inv = surf.pose.inverse();
  size_t rows = 0, lifted = 0;
  double peak = 0.0;
  for (const auto& row : r.log.rows) {
    for (const auto& w : r.log.force_windows) {
      if (row.t < w.t_on + app::kForceTransient || row.t > w.t_off) continue;
      if (!app::footprint_over(surf, inv.transform_point(row.actual.position))) continue;
      const double f = app::normal_force(surf, row);
      ++rows;
      lifted += f <= app::kContactThreshold;
      peak = std::max(peak, f);
    }
  }
  ASSERT_GT(rows, 10000u);
  EXPECT_EQ(lifted, 0u);
  EXPECT_LT(peak, 2.0 * r.report.setpoint);
}

TEST_P(WipeOnBothArms, LogIsWellFormed) {
  const WipeRun& r = run();
  ASSERT_FALSE(r.log.rows.empty());
  for (size_t i = 1; i < r.log.rows.size(); ++i) {
    ASSERT_NEAR(r.log.rows[i].t - r.log.rows[i - 1].t, r.log.dt, 1e-9);
  }
  EXPECT_EQ(static_cast<int>(r.log.rows.front().q.size()), r.log.dof);
}

INSTANTIATE_TEST_SUITE_P(Shipped, WipeOnBothArms,
                         testing::Values(Wipe{kTable, "scalable:Cell-7"}, Wipe{kBoard, "scalable:Cell-12"}),
                         [](const auto& info) { return info.index == 0 ? std::string("Table") : "Whiteboard"; });

TEST(Wipe, SameCommandStreamOnBothRobots) {
  const WipeRun& table = wipe(kTable, "scalable:Cell-7");
  const WipeRun& board = wipe(kBoard, "scalable:Cell-12");
  ASSERT_FALSE(table.commands.empty());
  EXPECT_EQ(table.commands, board.commands);
  EXPECT_EQ(table.log.controller, "cartesian_impedance_controller");
  EXPECT_EQ(board.log.controller, "cartesian_compliance_controller");
}

TEST(Wipe, CommandStreamFollowsTheProcedure) {
  const std::vector<std::string>& c = wipe(kBoard, "scalable:Cell-12").commands;
  ASSERT_GT(c.size(), 10u);
  const std::vector<std::string> head = {"goto_linear approach", "goto_linear corner", "change_stiffness axes=z",
                                         "apply_force axis=z", "overlay kind=circle on", "goto_linear start"};
  const std::vector<std::string> tail = {"overlay off", "apply_force axis=z", "change_stiffness axes=z",
                                         "goto_linear retreat"};
  EXPECT_TRUE(std::equal(head.begin(), head.end(), c.begin()));
  EXPECT_TRUE(std::equal(tail.rbegin(), tail.rend(), c.rbegin()));
  for (size_t i = head.size(); i + tail.size() < c.size(); ++i) {
    EXPECT_EQ(c[i], (i - head.size()) % 2 == 0 ? "goto_linear across" : "goto_linear down") << i;
  }
}

TEST(Wipe, ZeroExtentSurfaceIsOneLane) {
  const std::string path = scene_variant(kBoard, "point", {{"skiros:Width \"0.5\"", "skiros:Width \"0\""},
                                                           {"skiros:Height \"0.3\"", "skiros:Height \"0\""}});
  app::Session s(path);
  auto root = s.expander().expand("wipe_surface", {{"arm", ElementId{"scalable:Ur5-2"}},
                                                   {"surface", ElementId{"scalable:Cell-12"}}});
  const app::Execution ex = s.execute(*root, 60.0);
  ASSERT_EQ(ex.status, Status::kSuccess) << (ex.diagnostics.empty() ? "" : ex.diagnostics.back());
  const auto& c = s.system().commands("scalable:Ur5-2");
  EXPECT_EQ(std::count(c.begin(), c.end(), "goto_linear across"), 1);
  EXPECT_EQ(std::count(c.begin(), c.end(), "goto_linear down"), 0);
}

TEST(Wipe, MissingToolIsAPreconditionFailure) {
  app::Session s(kBoardTray);
  auto root = s.expander().expand("wipe_surface", {{"arm", ElementId{"scalable:Ur5-2"}},
                                                   {"surface", ElementId{"scalable:Cell-12"}}});
  EXPECT_EQ(s.execute(*root, 10.0).status, Status::kFailure);
  EXPECT_TRUE(s.system().commands("scalable:Ur5-2").empty());
}

TEST(Wipe, RepeatedRunsAreIdentical) {
  const auto once = [] {
    app::Session s(kTable);
    Pose goal = s.system().robot("scalable:LbrIiwa-1").tcp_world();
    goal.position += Vec3(0.05, 0.0, -0.05);
    auto root = s.expander().expand("goto_linear", {{"arm", ElementId{"scalable:LbrIiwa-1"}}, {"target", pose(goal)}});
    s.execute(*root, 10.0);
    std::ostringstream out;
    app::write_run_log(s.system().robot("scalable:LbrIiwa-1").log(), out);
    return out.str();
  };
  const std::string a = once();
  EXPECT_GT(a.size(), 1000u);
  EXPECT_EQ(a, once());
}

}  // namespace
}  // namespace skillsim::skills
