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

#include "skillsim/wm/world_model.hpp"

#include <random>

#include <gtest/gtest.h>

namespace skillsim::wm {
namespace {

constexpr char kOntology[] = R"(
rparts:ArmDevice a owl:Class
scalable:Ur5 rdfs:subClassOf rparts:ArmDevice
rparts:GripperEffector a owl:Class
rparts:TwoFingerGripper rdfs:subClassOf rparts:GripperEffector
scalable:WsgGripper rdfs:subClassOf rparts:TwoFingerGripper
rparts:ThreeFingerGripper rdfs:subClassOf rparts:GripperEffector
scalable:RobotiqGripper rdfs:subClassOf rparts:ThreeFingerGripper
cora:Robot a owl:Class
)";

// Robot description in the Turtle-like continuation style.
constexpr char kListing[] = R"(
scalable:Ur5-2 a scalable:Ur5, owl:NamedIndividual ;
    rdfs:label "scalable:ur5"^^xsd:string ;
    skiros:BaseFrameId "cora:Robot-1"^^xsd:string ;
    skiros:CartesianGoalAction "/cartesian_trajectory_generator/goal_action"^^xsd:string ;
    skiros:OverlayMotionService "/cartesian_trajectory_generator/overlay_motion"^^xsd:string ;
    skiros:CartesianStiffnessTopic "/cartesian_param_filter/stiffness_goal"^^xsd:string ;
    skiros:CartesianWrenchTopic "/cartesian_param_filter/force_goal"^^xsd:string ;
    skiros:CompliantController "cartesian_compliance_controller"^^xsd:string ;
    skiros:JointConfigurationController "scaled_pos_traj_controller"^^xsd:string ;
    skiros:DiscreteReasoner "AauSpatialReasoner"^^xsd:string ;
    skiros:FrameId "scalable:Ur5-2"^^xsd:string ;
    skiros:LinkedToFrameId "ur5e_base_link"^^xsd:string ;
    skiros:MotionExe "/scaled_pos_traj_controller/follow_joint_trajectory"^^xsd:string ;
    skiros:MoveItGroup "manipulator"^^xsd:string ;
    skiros:MoveItReferenceFrame "ur5e_base_link"^^xsd:string ;
    skiros:MoveItTCPLink "ur5e_tcp_link"^^xsd:string ;
    skiros:hasA scalable:WsgGripper-3 .
scalable:WsgGripper-3 a scalable:WsgGripper
)";

std::string listing_scene() { return std::string(kOntology) + kListing; }

TEST(LoadScene, ListingBlock) {
  const Scene scene = load_scene(listing_scene());
  const Element& arm = scene.element("scalable:Ur5-2");
  EXPECT_EQ(arm.type, "scalable:Ur5");
  EXPECT_EQ(arm.label, "scalable:ur5");
  EXPECT_EQ(arm.string_property("skiros:CompliantController"), "cartesian_compliance_controller");
  EXPECT_EQ(arm.string_property("skiros:MoveItTCPLink"), "ur5e_tcp_link");
  ASSERT_EQ(arm.relations.size(), 1u);
  EXPECT_EQ(arm.relations[0], (Relation{"skiros:hasA", "scalable:WsgGripper-3"}));
  EXPECT_EQ(arm.frame_name(), "scalable:Ur5-2");
}

TEST(LoadScene, EmptyDocument) {
  const Scene scene = load_scene("");
  EXPECT_TRUE(scene.elements().empty());
  EXPECT_TRUE(scene.concepts().empty());
  EXPECT_EQ(scene.world_frame(), "map");
}

TEST(LoadScene, DanglingReferenceRejectedWithLine) {
  const std::string doc = std::string(kOntology) +
                          "scalable:Ur5-2 a scalable:Ur5\n"
                          "scalable:Ur5-2 skiros:hasA scalable:Missing-9\n";
  try {
    load_scene(doc);
    FAIL() << "expected a dangling-reference error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("dangling"), std::string::npos);
    EXPECT_EQ(e.line(), 11);
  }
}

TEST(LoadScene, UnknownConceptAndSyntaxErrors) {
  EXPECT_THROW(load_scene("x:A-1 a x:Undeclared\n"), ParseError);
  EXPECT_THROW(load_scene("rparts:Arm a owl:Class\nx:A-1 a rparts:Arm\nx:A-1 p \"open\n"), ParseError);
  EXPECT_THROW(load_scene("rparts:Arm a owl:Class\nx:A-1 a rparts:Arm\nx:A-1 p \"abc\"^^float\n"),
               ParseError);
  EXPECT_THROW(load_scene("x:B subClassOf x:A\nx:A subClassOf x:B\n"), ParseError);
}

TEST(LoadScene, FrameCycleRejected) {
  const char* doc = R"(
t:Frame a owl:Class
t:A a t:Frame
t:A skiros:FrameId "fa"
t:A skiros:LinkedToFrameId "fb"
t:B a t:Frame
t:B skiros:FrameId "fb"
t:B skiros:LinkedToFrameId "fa"
)";
  EXPECT_THROW(load_scene(doc), ParseError);
}

TEST(LoadScene, TypedLiterals) {
  const char* doc = R"(
t:Thing a owl:Class
t:X a t:Thing   # trailing comment
t:X t:f "0.25"^^float
t:X t:i "-3"^^int
t:X t:b "true"^^bool
t:X t:p "1 2 3 0 0 0 1"^^pose
t:X t:s "hello world"
t:X t:s "second"^^string
)";
  const Scene scene = load_scene(doc);
  const Element& x = scene.element("t:X");
  EXPECT_DOUBLE_EQ(x.require("t:f").as_number(), 0.25);
  EXPECT_EQ(x.require("t:i").type(), ValueType::kInt);
  EXPECT_TRUE(x.require("t:b").as_bool());
  EXPECT_EQ(x.require("t:p").as_pose().position, Vec3(1, 2, 3));
  ASSERT_EQ(x.properties.at("t:s").size(), 2u);
  EXPECT_EQ(x.properties.at("t:s")[1].as_string(), "second");
}

TEST(QueryByConcept, SubtypeQueries) {
  const Scene scene = load_scene(std::string(kOntology) +
                                 "scalable:RobotiqGripper-1 a scalable:RobotiqGripper\n");
  auto found = query_by_concept(scene, "rparts:GripperEffector", true);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0]->id, "scalable:RobotiqGripper-1");
  // Only a subtype instance exists; exact-concept queries up the chain see nothing.
  EXPECT_TRUE(query_by_concept(scene, "rparts:GripperEffector", false).empty());
  EXPECT_TRUE(query_by_concept(scene, "rparts:ThreeFingerGripper", false).empty());
  EXPECT_EQ(query_by_concept(scene, "rparts:ThreeFingerGripper", true).size(), 1u);
  EXPECT_TRUE(query_by_concept(scene, "rparts:TwoFingerGripper", true).empty());
  EXPECT_THROW(query_by_concept(scene, "rparts:Nope", true), WorldModelError);
}

TEST(QueryByConcept, EmptyScene) {
  const Scene scene = load_scene(kOntology);
  EXPECT_TRUE(query_by_concept(scene, "rparts:GripperEffector", true).empty());
}

TEST(ResolveRelation, DeclarationOrder) {
  const Scene listing = load_scene(listing_scene());
  auto grippers = resolve_relation(listing, "scalable:Ur5-2", keys::kHasA);
  ASSERT_EQ(grippers.size(), 1u);
  EXPECT_EQ(grippers[0]->id, "scalable:WsgGripper-3");
  EXPECT_TRUE(resolve_relation(listing, "scalable:WsgGripper-3", keys::kHasA).empty());
  EXPECT_THROW(resolve_relation(listing, "scalable:Nobody", keys::kHasA), WorldModelError);

  const Scene two = load_scene(std::string(kOntology) + R"(
r:Arm-1 a scalable:Ur5
r:Arm-1 skiros:hasA r:G-z
r:Arm-1 skiros:hasA r:G-a
r:G-z a scalable:WsgGripper
r:G-a a scalable:RobotiqGripper
)");
  auto both = resolve_relation(two, "r:Arm-1", keys::kHasA);
  ASSERT_EQ(both.size(), 2u);
  EXPECT_EQ(both[0]->id, "r:G-z");
  EXPECT_EQ(both[1]->id, "r:G-a");
}

TEST(ResolveWorldPose, IdentityAndTranslation) {
  const Scene scene = load_scene(R"(
t:Frame a owl:Class
t:Root a t:Frame
t:Root skiros:Pose "0 0 0 0 0 0 1"^^pose
t:Root skiros:LinkedToFrameId "map"
t:Parent a t:Frame
t:Parent skiros:FrameId "parent_link"
t:Parent skiros:Pose "0 1 0 0 0 0 1"^^pose
t:Parent skiros:LinkedToFrameId "map"
t:Child a t:Frame
t:Child skiros:Pose "1 0 0 0 0 0 1"^^pose
t:Child skiros:LinkedToFrameId "parent_link"
t:Orphan a t:Frame
t:Orphan skiros:Pose "1 0 0 0 0 0 1"^^pose
t:Orphan skiros:LinkedToFrameId "nowhere"
t:NoPose a t:Frame
t:Linked a t:Frame
t:Linked skiros:LinkedToFrameId "parent_link"
)");
  const Pose root = resolve_world_pose(scene, "t:Root");
  EXPECT_EQ(root.position, Vec3::Zero());
  EXPECT_NEAR(root.orientation.w(), 1.0, 1e-15);
  const Pose child = resolve_world_pose(scene, "t:Child");
  EXPECT_TRUE(child.position.isApprox(Vec3(1, 1, 0)));
  EXPECT_THROW(resolve_world_pose(scene, "t:Orphan"), WorldModelError);
  EXPECT_THROW(resolve_world_pose(scene, "t:NoPose"), WorldModelError);
  EXPECT_TRUE(resolve_world_pose(scene, "t:Linked").position.isApprox(Vec3(0, 1, 0)));
}

// Homogeneous-matrix oracle built from the raw quaternion formula.
Eigen::Matrix4d homogeneous(const Vec3& p, double x, double y, double z, double w) {
  const double n = std::sqrt(x * x + y * y + z * z + w * w);
  x /= n, y /= n, z /= n, w /= n;
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 0) = 1 - 2 * (y * y + z * z);
  m(0, 1) = 2 * (x * y - z * w);
  m(0, 2) = 2 * (x * z + y * w);
  m(1, 0) = 2 * (x * y + z * w);
  m(1, 1) = 1 - 2 * (x * x + z * z);
  m(1, 2) = 2 * (y * z - x * w);
  m(2, 0) = 2 * (x * z - y * w);
  m(2, 1) = 2 * (y * z + x * w);
  m(2, 2) = 1 - 2 * (x * x + y * y);
  m.block<3, 1>(0, 3) = p;
  return m;
}

TEST(ResolveWorldPose, MatchesMatrixProductOracle) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Scene scene;
    scene.add_concept("t:Frame");
    Eigen::Matrix4d expected = Eigen::Matrix4d::Identity();
    std::string parent = "map";
    for (int k = 0; k < 3; ++k) {
      const Vec3 p(u(rng), u(rng), u(rng));
      const double qx = u(rng), qy = u(rng), qz = u(rng), qw = u(rng);
      Element e;
      e.id = "t:F" + std::to_string(k);
      e.type = "t:Frame";
      e.set_property(keys::kPose, Pose(p, Quat(qw, qx, qy, qz)));
      e.set_property(keys::kLinkedToFrameId, parent);
      parent = e.id;
      scene.insert_unchecked(e);
      expected = expected * homogeneous(p, qx, qy, qz, qw);
    }
    scene.validate();
    const Eigen::Matrix4d got = resolve_world_pose(scene, "t:F2").matrix();
    EXPECT_LE((got - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Mutation, UpdateRemoveAndDanglingGuard) {
  Scene scene = load_scene(listing_scene());
  Element arm = scene.element("scalable:Ur5-2");
  arm.set_property("skiros:CompliantController", std::string("other"));
  update_element(scene, arm);
  EXPECT_EQ(scene.element("scalable:Ur5-2").string_property("skiros:CompliantController"), "other");

  EXPECT_THROW(remove_element(scene, "scalable:WsgGripper-3"), WorldModelError);
  EXPECT_TRUE(scene.contains("scalable:WsgGripper-3"));

  Element bad = scene.element("scalable:Ur5-2");
  bad.add_relation(keys::kHasA, "scalable:Ghost");
  EXPECT_THROW(update_element(scene, bad), WorldModelError);
  EXPECT_EQ(scene.element("scalable:Ur5-2").relations.size(), 1u);

  Element ghost;
  ghost.id = "scalable:Ghost";
  EXPECT_THROW(update_element(scene, ghost), WorldModelError);

  arm.relations.clear();
  update_element(scene, arm);
  remove_element(scene, "scalable:WsgGripper-3");
  EXPECT_TRUE(query_by_concept(scene, "rparts:GripperEffector", true).empty());
}

TEST(Serialize, RoundTripIsFixpoint) {
  const Scene first = load_scene(listing_scene() + R"(
cora:Robot-1 a cora:Robot
cora:Robot-1 skiros:FrameId "ur5e_base_link"
cora:Robot-1 skiros:Pose "0.1 -0.2 0.45 0 0 0.3826834323650898 0.9238795325112867"^^pose
cora:Robot-1 skiros:LinkedToFrameId "map"
cora:Robot-1 t:mass "12.5"^^float
cora:Robot-1 t:count "3"^^int
cora:Robot-1 t:on "false"^^bool
cora:Robot-1 t:note "quote \" and backslash \\"
)");
  const std::string text = serialize_scene(first);
  const Scene second = load_scene(text);
  EXPECT_EQ(serialize_scene(second), text);
  EXPECT_TRUE(resolve_world_pose(second, "scalable:Ur5-2")
                  .position.isApprox(Vec3(0.1, -0.2, 0.45)));
  EXPECT_EQ(second.element("cora:Robot-1").string_property("t:note"), "quote \" and backslash \\");
}

TEST(WorldModelStore, SnapshotsAreImmutable) {
  WorldModel model(load_scene(listing_scene()));
  auto before = model.snapshot();
  Element arm = before->element("scalable:Ur5-2");
  arm.label = "changed";
  model.update_element(arm);
  EXPECT_EQ(before->element("scalable:Ur5-2").label, "scalable:ur5");
  EXPECT_EQ(model.snapshot()->element("scalable:Ur5-2").label, "changed");
  EXPECT_THROW(model.remove_element("scalable:WsgGripper-3"), WorldModelError);
}

}  // namespace
}  // namespace skillsim::wm
