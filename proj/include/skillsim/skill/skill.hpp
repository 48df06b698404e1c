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

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "skillsim/bt/tree.hpp"
#include "skillsim/skill/description.hpp"

namespace skillsim::skill {

// Environment handle for skills (robots, clocks, loggers); concrete skill
// libraries downcast to their own type.
class Services {
 public:
  virtual ~Services() = default;
};

// Per-task key/value store. A key bound by one owner may only be rebound by
// the same owner.
class Blackboard {
 public:
  void set(const std::string& key, ParamValue value, const std::string& owner);
  const ParamValue* get(const std::string& key) const;
  bool contains(const std::string& key) const { return entries_.count(key) > 0; }

 private:
  struct Entry {
    ParamValue value;
    std::string owner;
  };
  std::map<std::string, Entry> entries_;
};

enum class SkillEventType {
  kStarted,
  kStopped,
  kSucceeded,
  kFailed,
  kPreconditionFailed,
  kHoldViolated,
  kPostconditionFailed,
};

const char* to_string(SkillEventType t);

struct SkillEvent {
  SkillEventType type;
  std::string skill;           // description name
  std::string implementation;  // implementation name
  std::string detail;
};

using SkillObserver = std::function<void(const SkillEvent&)>;

struct SkillContext {
  wm::WorldModel* wm = nullptr;
  Blackboard* blackboard = nullptr;
  Services* services = nullptr;
  Bindings params;
  std::string skill;
  std::string implementation;
};

class PrimitiveBehavior {
 public:
  virtual ~PrimitiveBehavior() = default;
  virtual void on_init(SkillContext&) {}
  virtual void on_start(SkillContext&) {}
  virtual bt::Status execute(SkillContext&) = 0;
  virtual void on_stop(SkillContext&) {}
};

class Expander;

using PrimitiveFactory = std::function<std::unique_ptr<PrimitiveBehavior>()>;
using CompoundBuilder = std::function<bt::NodePtr(SkillContext&, Expander&)>;

struct SkillImplementation {
  std::string name;
  std::string implements;
  // Parameter -> narrower concept the bound element must belong to.
  std::map<std::string, std::string> specializations;
  std::vector<Condition> extra_preconditions;
  std::vector<Condition> extra_holdconditions;
  std::vector<Condition> extra_postconditions;
  PrimitiveFactory primitive;  // exactly one of primitive and compound is set
  CompoundBuilder compound;

  bool is_compound() const { return static_cast<bool>(compound); }
};

class SkillRegistry {
 public:
  void add_description(SkillDescription description);
  void add_implementation(SkillImplementation implementation);

  const SkillDescription* find(const std::string& name) const;
  const SkillDescription& description(const std::string& name) const;
  const std::map<std::string, SkillDescription>& descriptions() const { return descriptions_; }
  std::vector<const SkillImplementation*> implementations_of(const std::string& name) const;

  // Every specialization names a concept that narrows the described type.
  void validate(const wm::Scene& scene) const;

 private:
  std::map<std::string, SkillDescription> descriptions_;
  std::map<std::string, SkillImplementation> implementations_;
};

// Specificity of an implementation for the given bindings: the sum over its
// specializations of the depth of the specialized concept below the described
// type, or nullopt when a bound element does not belong to it.
std::optional<int> specificity(const SkillImplementation& impl, const SkillDescription& description,
                               const Bindings& bindings, const wm::Scene& scene);

// Most specific matching implementation; SelectionError when none matches or
// the best specificity is shared.
const SkillImplementation& select_implementation(const SkillDescription& description,
                                                 const Bindings& bindings, const wm::Scene& scene,
                                                 const SkillRegistry& registry);

// Description conditions merged with the implementation's additions.
SkillDescription effective_description(const SkillDescription& d, const SkillImplementation& impl);

// Primitive skill as a behavior-tree leaf with the skill lifecycle:
// preconditions before on_start, hold conditions every tick, postconditions
// after Success, on_stop exactly once per started episode.
class PrimitiveSkillLeaf : public bt::Leaf {
 public:
  PrimitiveSkillLeaf(SkillDescription description, SkillContext context,
                     std::unique_ptr<PrimitiveBehavior> behavior, SkillObserver observer);
  std::string kind() const override { return "Skill(" + context_.skill + ")"; }
  const SkillContext& context() const { return context_; }
  int starts() const { return starts_; }
  int stops() const { return stops_; }

 protected:
  void start() override;
  bt::Status update() override;
  void stop() override;

 private:
  void emit(SkillEventType t, const std::string& detail = {}) const;

  SkillDescription description_;
  SkillContext context_;
  std::unique_ptr<PrimitiveBehavior> behavior_;
  SkillObserver observer_;
  bool started_ = false;
  bool precondition_failed_ = false;
  std::string precondition_detail_;
  int starts_ = 0;
  int stops_ = 0;
};

// Compound skill: conditions around a subtree built by the implementation.
class CompoundSkillNode : public bt::Node {
 public:
  CompoundSkillNode(SkillDescription description, SkillContext context, bt::NodePtr child,
                    SkillObserver observer);
  std::string kind() const override { return "Skill(" + context_.skill + ")"; }
  const SkillContext& context() const { return context_; }

 protected:
  bt::Status on_tick() override;
  void on_halt() override;

 private:
  void emit(SkillEventType t, const std::string& detail = {}) const;

  SkillDescription description_;
  SkillContext context_;
  SkillObserver observer_;
  bool active_ = false;
};

// Grounds, selects and builds skill subtrees, recursively for compounds.
class Expander {
 public:
  Expander(const SkillRegistry& registry, wm::WorldModel& wm, Blackboard& blackboard,
           Services* services = nullptr, SkillObserver observer = {});

  // SkillError (or a subclass) when the skill is unknown or cannot be
  // grounded or selected.
  bt::NodePtr expand(const std::string& skill, const Bindings& partial);

  const SkillRegistry& registry() const { return registry_; }
  wm::WorldModel& world_model() { return wm_; }
  Services* services() { return services_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  const SkillRegistry& registry_;
  wm::WorldModel& wm_;
  Blackboard& blackboard_;
  Services* services_;
  SkillObserver observer_;
  std::vector<std::string> warnings_;
};

}  // namespace skillsim::skill
