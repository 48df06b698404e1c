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

// Semantic world model: a concept hierarchy plus a scene of typed elements
// with properties and relations, backed by a line-oriented triple format.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "skillsim/pose.hpp"

namespace skillsim::wm {

inline constexpr const char* kDefaultWorldFrame = "map";

// Well-known predicate names.
namespace keys {
inline constexpr const char* kPose = "skiros:Pose";
inline constexpr const char* kFrameId = "skiros:FrameId";
inline constexpr const char* kLinkedToFrameId = "skiros:LinkedToFrameId";
inline constexpr const char* kBaseFrameId = "skiros:BaseFrameId";
inline constexpr const char* kHasA = "skiros:hasA";
inline constexpr const char* kContain = "skiros:contain";
inline constexpr const char* kWorldFrameId = "skiros:WorldFrameId";
}  // namespace keys

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

class WorldModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueType { kString, kFloat, kInt, kBool, kPose };

class PropertyValue {
 public:
  PropertyValue() = default;
  PropertyValue(std::string s) : v_(std::move(s)) {}  // NOLINT
  PropertyValue(const char* s) : v_(std::string(s)) {}  // NOLINT
  PropertyValue(double d) : v_(d) {}  // NOLINT
  PropertyValue(std::int64_t i) : v_(i) {}  // NOLINT
  PropertyValue(int i) : v_(static_cast<std::int64_t>(i)) {}  // NOLINT
  PropertyValue(bool b) : v_(b) {}  // NOLINT
  PropertyValue(const Pose& p) : v_(p) {}  // NOLINT

  ValueType type() const;
  bool is_number() const { return type() == ValueType::kFloat || type() == ValueType::kInt; }

  const std::string& as_string() const;
  double as_number() const;
  bool as_bool() const;
  const Pose& as_pose() const;

  // Text between the quotes in the scene format, and the type tag.
  std::string lexical() const;
  const char* type_tag() const;

  friend bool operator==(const PropertyValue& a, const PropertyValue& b);

 private:
  std::variant<std::string, double, std::int64_t, bool, Pose> v_;
};

struct Relation {
  std::string predicate;
  std::string target;
  friend bool operator==(const Relation&, const Relation&) = default;
};

struct Element {
  std::string id;
  std::string type;  // concept name
  std::string label;
  // Multi-valued properties are kept in declaration order.
  std::map<std::string, std::vector<PropertyValue>> properties;
  std::vector<Relation> relations;

  const PropertyValue* property(const std::string& name) const;
  const PropertyValue& require(const std::string& name) const;
  std::optional<std::string> string_property(const std::string& name) const;
  std::optional<double> number_property(const std::string& name) const;

  // Replaces all values of `name`.
  void set_property(const std::string& name, PropertyValue value);
  void add_relation(const std::string& predicate, const std::string& target);
  bool has_relation(const std::string& predicate, const std::string& target) const;
  // Removes every matching relation; returns the number removed.
  std::size_t remove_relation(const std::string& predicate, const std::string& target);

  // Frame published by this element: FrameId if present, otherwise the id.
  std::string frame_name() const;
};

struct Concept {
  std::string name;
  std::set<std::string> parents;
};

class Scene {
 public:
  const std::string& world_frame() const { return world_frame_; }
  void set_world_frame(std::string frame) { world_frame_ = std::move(frame); }

  // Concept hierarchy.
  void add_concept(const std::string& name, const std::set<std::string>& parents = {});
  bool has_concept(const std::string& name) const { return concepts_.count(name) > 0; }
  const std::map<std::string, Concept>& concepts() const { return concepts_; }
  // True when `concept_name` equals `ancestor` or descends from it.
  bool is_a(const std::string& concept_name, const std::string& ancestor) const;
  // Shortest number of subClassOf edges from `concept_name` up to `ancestor`.
  std::optional<int> depth_below(const std::string& concept_name, const std::string& ancestor) const;

  // Elements.
  const std::map<std::string, Element>& elements() const { return elements_; }
  bool contains(const std::string& id) const { return elements_.count(id) > 0; }
  const Element& element(const std::string& id) const;
  const Element* find(const std::string& id) const;
  // Element publishing the given frame name, if any.
  const Element* frame_owner(const std::string& frame) const;

  // Unchecked insertion; call validate() afterwards.
  void insert_unchecked(Element e);
  Element& mutable_element(const std::string& id);
  void erase_unchecked(const std::string& id);

  // Checks concepts, relation targets, frame uniqueness and frame cycles.
  void validate() const;

  friend bool operator==(const Scene& a, const Scene& b);

 private:
  std::string world_frame_ = kDefaultWorldFrame;
  std::map<std::string, Concept> concepts_;
  std::map<std::string, Element> elements_;
};

Scene load_scene(std::string_view text);
Scene load_scene_file(const std::string& path);
// Canonical form: statements sorted by subject then predicate.
std::string serialize_scene(const Scene& scene);

std::vector<const Element*> query_by_concept(const Scene& scene, const std::string& concept_name,
                                             bool include_subtypes);
std::vector<const Element*> resolve_relation(const Scene& scene, const std::string& subject,
                                             const std::string& predicate);
Pose resolve_world_pose(const Scene& scene, const std::string& id);

void update_element(Scene& scene, Element element);
void add_element(Scene& scene, Element element);
void remove_element(Scene& scene, const std::string& id);

// Copy-on-write store: readers take immutable snapshots, writers are serialized.
class WorldModel {
 public:
  explicit WorldModel(Scene scene = {});

  std::shared_ptr<const Scene> snapshot() const;

  void update_element(Element element);
  void add_element(Element element);
  void remove_element(const std::string& id);
  // Applies an arbitrary mutation atomically; the result is validated before commit.
  template <typename Fn>
  void mutate(Fn&& fn) {
    std::lock_guard<std::mutex> write(write_mutex_);
    Scene next = *snapshot();
    fn(next);
    next.validate();
    commit(std::move(next));
  }

 private:
  void commit(Scene next);

  mutable std::shared_mutex read_mutex_;
  std::mutex write_mutex_;
  std::shared_ptr<const Scene> current_;
};

}  // namespace skillsim::wm
