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

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "skillsim/bt/tree.hpp"
#include "skillsim/skill/skill.hpp"
#include "skillsim/wm/world_model.hpp"

namespace skillsim::plan {

class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GoalParseError : public PlanError {
 public:
  using PlanError::PlanError;
};

// Ground or lifted atom; lifted arguments name schema parameters.
struct Literal {
  std::string predicate;
  std::vector<std::string> args;
  friend auto operator<=>(const Literal&, const Literal&) = default;
  std::string str() const;
};

struct TypedParam {
  std::string name;
  std::string type;  // concept
};

struct ActionSchema {
  std::string name;
  std::vector<TypedParam> params;
  std::vector<Literal> preconditions;
  std::vector<Literal> add_effects;
  std::vector<Literal> delete_effects;
};

struct Domain {
  std::vector<ActionSchema> actions;  // sorted by name
  std::map<std::string, std::size_t> arity;
  // Equality predicates from non-boolean property conditions:
  // predicate name -> (property name, value).
  std::map<std::string, std::pair<std::string, wm::PropertyValue>> equality_predicates;
  // Boolean property predicates (property name == predicate name).
  std::set<std::string> boolean_predicates;
  std::vector<std::string> warnings;
};

struct Problem {
  std::map<std::string, std::string> objects;  // id -> concept
  // Schema parameter type -> sorted ids of objects of that type (subtypes included).
  std::map<std::string, std::vector<std::string>> typed_objects;
  std::set<Literal> init;
  std::vector<Literal> goal;
};

struct GroundAction {
  std::string schema;
  std::vector<std::string> args;
  std::string str() const;  // "(name a b)"
  friend auto operator<=>(const GroundAction&, const GroundAction&) = default;
};

using Plan = std::vector<GroundAction>;

enum class PlanStatus { kSolved, kUnsolvable, kBudgetExceeded };

struct PlanResult {
  PlanStatus status = PlanStatus::kUnsolvable;
  Plan plan;
  std::size_t expanded = 0;
};

// `(p a b)`, `(and (p a b) ...)` or `()`.
std::vector<Literal> parse_goal(const std::string& text);

// One schema per skill description with element parameters. Skills using
// conditions STRIPS cannot express are excluded and listed in warnings.
Domain build_domain(const skill::SkillRegistry& registry, const wm::Scene& scene);

// PlanError for goals over unknown constants or predicates.
Problem build_problem(const Domain& domain, const wm::Scene& scene, const std::vector<Literal>& goal);

// Breadth-first search: shortest plan by action count; among those the
// lexicographically smallest sequence of ground action strings.
PlanResult plan(const Domain& domain, const Problem& problem, std::size_t max_states = 1000000);

// Ground instances of a schema applicable in `state`, sorted.
std::vector<GroundAction> applicable_actions(const Domain& domain, const Problem& problem,
                                             const std::set<Literal>& state);
const ActionSchema& schema(const Domain& domain, const std::string& name);
std::set<Literal> apply(const ActionSchema& a, const GroundAction& g, const std::set<Literal>& state);
Literal ground(const Literal& lifted, const ActionSchema& a, const GroundAction& g);
// True when every action is applicable in turn and the goal holds at the end.
bool validate_plan(const Domain& domain, const Problem& problem, const Plan& plan);

std::string to_pddl_domain(const Domain& domain, const wm::Scene& scene, const std::string& name = "skills");
std::string to_pddl_problem(const Problem& problem, const std::string& name = "task",
                            const std::string& domain_name = "skills");

// Memory Sequence of expanded skill subtrees, one per plan step.
bt::NodePtr plan_to_bt(const Plan& plan, const Domain& domain, skill::Expander& expander);

}  // namespace skillsim::plan
