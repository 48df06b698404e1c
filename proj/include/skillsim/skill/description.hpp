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

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "skillsim/wm/world_model.hpp"

namespace skillsim::skill {

class SkillError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class GroundingError : public SkillError {
 public:
  using SkillError::SkillError;
};
class SelectionError : public SkillError {
 public:
  using SkillError::SkillError;
};

// Reference to a world-model element, distinct from a plain text value.
struct ElementId {
  std::string id;
  friend auto operator<=>(const ElementId&, const ElementId&) = default;
};

using ParamValue = std::variant<ElementId, wm::PropertyValue>;
using Bindings = std::map<std::string, ParamValue>;

std::string to_string(const ParamValue& v);
bool operator==(const ParamValue& a, const ParamValue& b);
// Element id of a bound parameter; throws SkillError for scalars.
const std::string& element_of(const Bindings& b, const std::string& param);
const wm::PropertyValue& scalar_of(const Bindings& b, const std::string& param);

enum class ParamKind { kRequired, kOptional, kInferred };

const char* to_string(ParamKind k);

// Scalar parameter types; every other type name is a concept.
bool is_scalar_type(const std::string& type);

struct ParamSpec {
  std::string name;
  std::string type;  // concept name or one of string/float/int/bool/pose
  ParamKind kind = ParamKind::kRequired;
  std::optional<ParamValue> default_value;

  bool is_element() const { return !is_scalar_type(type); }
};

enum class ConditionKind { kRelation, kProperty };

// Relation: subject --predicate--> object, where object names a parameter or
// an element id. Property: subject.predicate == value, with the value given
// by `literal` or by the parameter named in `object`.
struct Condition {
  ConditionKind kind = ConditionKind::kRelation;
  std::string subject;
  std::string predicate;
  std::string object;
  std::optional<wm::PropertyValue> literal;
  bool desired = true;

  static Condition relation(std::string subject, std::string predicate, std::string object,
                            bool desired = true);
  static Condition property(std::string subject, std::string predicate, wm::PropertyValue value,
                            bool desired = true);
  std::string describe() const;
};

struct SkillDescription {
  std::string name;
  std::vector<ParamSpec> params;
  std::vector<Condition> preconditions;
  std::vector<Condition> holdconditions;
  std::vector<Condition> postconditions;

  const ParamSpec* param(const std::string& name) const;
  // Unique parameter names, condition subjects/objects name parameters,
  // Required params have no default and Optional params have one.
  void validate() const;
};

struct CheckResult {
  bool ok = true;
  std::vector<std::string> violated;
};

// Throws SkillError when a referenced parameter is unbound.
CheckResult check_conditions(const std::vector<Condition>& conditions,
                             const SkillDescription& description, const Bindings& bindings,
                             const wm::Scene& scene);

struct GroundingResult {
  Bindings bindings;
  // Inferred parameter -> number of candidates discarded by the tie-break.
  std::map<std::string, std::size_t> discarded;
  std::vector<std::string> warnings;
};

// Binds defaults and inferred parameters. An inferred parameter takes the
// element of its declared concept that satisfies every precondition mentioning
// it; on ties the lexicographically smallest id wins and the rest are counted.
GroundingResult ground_parameters(const SkillDescription& description, const Bindings& partial,
                                  const wm::Scene& scene);

}  // namespace skillsim::skill
