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

#include "skillsim/skill/description.hpp"

#include <algorithm>
#include <set>

namespace skillsim::skill {

std::string to_string(const ParamValue& v) {
  if (const auto* e = std::get_if<ElementId>(&v)) return e->id;
  return std::get<wm::PropertyValue>(v).lexical();
}

bool operator==(const ParamValue& a, const ParamValue& b) {
  if (a.index() != b.index()) return false;
  if (const auto* e = std::get_if<ElementId>(&a)) return *e == std::get<ElementId>(b);
  return std::get<wm::PropertyValue>(a) == std::get<wm::PropertyValue>(b);
}

const std::string& element_of(const Bindings& b, const std::string& param) {
  auto it = b.find(param);
  if (it == b.end()) throw SkillError("parameter '" + param + "' is unbound");
  const auto* e = std::get_if<ElementId>(&it->second);
  if (!e) throw SkillError("parameter '" + param + "' is not an element");
  return e->id;
}

const wm::PropertyValue& scalar_of(const Bindings& b, const std::string& param) {
  auto it = b.find(param);
  if (it == b.end()) throw SkillError("parameter '" + param + "' is unbound");
  const auto* v = std::get_if<wm::PropertyValue>(&it->second);
  if (!v) throw SkillError("parameter '" + param + "' is not a scalar");
  return *v;
}

const char* to_string(ParamKind k) {
  switch (k) {
    case ParamKind::kRequired: return "required";
    case ParamKind::kOptional: return "optional";
    case ParamKind::kInferred: return "inferred";
  }
  return "required";
}

bool is_scalar_type(const std::string& type) {
  static const std::set<std::string> kScalars = {"string", "float", "int", "bool", "pose"};
  return kScalars.count(type) > 0;
}

Condition Condition::relation(std::string subject, std::string predicate, std::string object,
                              bool desired) {
  Condition c;
  c.kind = ConditionKind::kRelation;
  c.subject = std::move(subject);
  c.predicate = std::move(predicate);
  c.object = std::move(object);
  c.desired = desired;
  return c;
}

Condition Condition::property(std::string subject, std::string predicate, wm::PropertyValue value,
                              bool desired) {
  Condition c;
  c.kind = ConditionKind::kProperty;
  c.subject = std::move(subject);
  c.predicate = std::move(predicate);
  c.literal = std::move(value);
  c.desired = desired;
  return c;
}

std::string Condition::describe() const {
  std::string s = desired ? "" : "not ";
  if (kind == ConditionKind::kRelation) return s + "(" + predicate + " " + subject + " " + object + ")";
  return s + "(" + predicate + " " + subject + " = " + (literal ? literal->lexical() : object) + ")";
}

const ParamSpec* SkillDescription::param(const std::string& n) const {
  for (const auto& p : params) {
    if (p.name == n) return &p;
  }
  return nullptr;
}

void SkillDescription::validate() const {
  std::set<std::string> seen;
  for (const auto& p : params) {
    if (p.name.empty()) throw SkillError("skill '" + name + "': empty parameter name");
    if (!seen.insert(p.name).second) {
      throw SkillError("skill '" + name + "': duplicate parameter '" + p.name + "'");
    }
    if (p.kind == ParamKind::kRequired && p.default_value) {
      throw SkillError("skill '" + name + "': required parameter '" + p.name + "' has a default");
    }
    if (p.kind == ParamKind::kOptional && !p.default_value) {
      throw SkillError("skill '" + name + "': optional parameter '" + p.name + "' needs a default");
    }
    if (p.kind == ParamKind::kInferred && !p.is_element()) {
      throw SkillError("skill '" + name + "': inferred parameter '" + p.name + "' must be an element");
    }
  }
  for (const auto* list : {&preconditions, &holdconditions, &postconditions}) {
    for (const auto& c : *list) {
      if (!param(c.subject)) {
        throw SkillError("skill '" + name + "': condition subject '" + c.subject +
                         "' is not a parameter");
      }
      if (c.kind == ConditionKind::kProperty && !c.literal && !param(c.object)) {
        throw SkillError("skill '" + name + "': property condition object '" + c.object +
                         "' is not a parameter");
      }
    }
  }
}

namespace {

// Element id the relation object refers to: a bound parameter or a literal id.
std::optional<std::string> object_id(const Condition& c, const SkillDescription& d,
                                     const Bindings& b) {
  if (!d.param(c.object)) return c.object;
  auto it = b.find(c.object);
  if (it == b.end()) return std::nullopt;
  const auto* e = std::get_if<ElementId>(&it->second);
  if (!e) throw SkillError("relation object '" + c.object + "' is not an element parameter");
  return e->id;
}

bool holds(const Condition& c, const SkillDescription& d, const Bindings& b,
           const wm::Scene& scene) {
  const wm::Element* subject = scene.find(element_of(b, c.subject));
  bool truth = false;
  if (subject) {
    if (c.kind == ConditionKind::kRelation) {
      const auto target = object_id(c, d, b);
      if (!target) throw SkillError("parameter '" + c.object + "' is unbound");
      truth = subject->has_relation(c.predicate, *target);
    } else {
      const wm::PropertyValue expected = c.literal ? *c.literal : scalar_of(b, c.object);
      const wm::PropertyValue* actual = subject->property(c.predicate);
      truth = actual && *actual == expected;
    }
  }
  return truth == c.desired;
}

bool mentions(const Condition& c, const std::string& p) {
  return c.subject == p || (!c.literal && c.object == p);
}

// Other parameter of a condition mentioning p, if it is a parameter.
std::optional<std::string> other_param(const Condition& c, const SkillDescription& d,
                                       const std::string& p) {
  const std::string other = c.subject == p ? c.object : c.subject;
  if (c.kind == ConditionKind::kProperty && c.subject == p && c.literal) return std::nullopt;
  if (other == p || !d.param(other)) return std::nullopt;
  return other;
}

}  // namespace

CheckResult check_conditions(const std::vector<Condition>& conditions,
                             const SkillDescription& description, const Bindings& bindings,
                             const wm::Scene& scene) {
  CheckResult r;
  for (const auto& c : conditions) {
    if (!holds(c, description, bindings, scene)) {
      r.ok = false;
      r.violated.push_back(c.describe());
    }
  }
  return r;
}

GroundingResult ground_parameters(const SkillDescription& description, const Bindings& partial,
                                  const wm::Scene& scene) {
  description.validate();
  GroundingResult out;
  out.bindings = partial;
  for (const auto& [name, value] : partial) {
    const ParamSpec* p = description.param(name);
    if (!p) throw GroundingError("skill '" + description.name + "' has no parameter '" + name + "'");
    if (const auto* e = std::get_if<ElementId>(&value)) {
      const wm::Element* el = scene.find(e->id);
      if (!el) throw GroundingError("parameter '" + name + "': unknown element '" + e->id + "'");
      if (p->is_element() && !scene.is_a(el->type, p->type)) {
        throw GroundingError("parameter '" + name + "': element '" + e->id + "' is not a " + p->type);
      }
    } else if (p->is_element()) {
      throw GroundingError("parameter '" + name + "' expects an element of " + p->type);
    }
  }
  std::vector<const ParamSpec*> pending;
  for (const auto& p : description.params) {
    if (out.bindings.count(p.name)) continue;
    switch (p.kind) {
      case ParamKind::kRequired:
        throw GroundingError("required parameter '" + p.name + "' of '" + description.name +
                             "' is unbound");
      case ParamKind::kOptional:
        out.bindings[p.name] = *p.default_value;
        break;
      case ParamKind::kInferred:
        pending.push_back(&p);
        break;
    }
  }

  // A parameter is ready when every precondition mentioning it has its other
  // side bound. When nothing is ready the first pending parameter proceeds
  // with the conditions it can evaluate.
  while (!pending.empty()) {
    auto ready = std::find_if(pending.begin(), pending.end(), [&](const ParamSpec* p) {
      for (const auto& c : description.preconditions) {
        if (!mentions(c, p->name)) continue;
        const auto other = other_param(c, description, p->name);
        if (other && !out.bindings.count(*other)) return false;
      }
      return true;
    });
    if (ready == pending.end()) ready = pending.begin();
    const ParamSpec& p = **ready;

    std::vector<std::string> typed;
    for (const wm::Element* e : query_by_concept(scene, p.type, true)) typed.push_back(e->id);
    std::sort(typed.begin(), typed.end());
    if (typed.empty()) {
      throw GroundingError("no candidate of type " + p.type + " for inferred parameter '" +
                           p.name + "'");
    }
    std::vector<std::string> matching;
    for (const auto& id : typed) {
      Bindings trial = out.bindings;
      trial[p.name] = ElementId{id};
      bool ok = true;
      for (const auto& c : description.preconditions) {
        if (!mentions(c, p.name)) continue;
        const auto other = other_param(c, description, p.name);
        if (other && !trial.count(*other)) continue;
        if (!holds(c, description, trial, scene)) {
          ok = false;
          break;
        }
      }
      if (ok) matching.push_back(id);
    }
    if (matching.empty()) {
      // Keep the skill groundable so the precondition check reports the
      // violated condition instead.
      matching = typed;
      out.warnings.push_back("no element satisfies the preconditions on '" + p.name +
                             "'; binding by type only");
    }
    out.bindings[p.name] = ElementId{matching.front()};
    if (matching.size() > 1) {
      out.discarded[p.name] = matching.size() - 1;
      out.warnings.push_back("inferred parameter '" + p.name + "': " +
                             std::to_string(matching.size()) + " candidates, chose '" +
                             matching.front() + "'");
    }
    pending.erase(ready);
  }
  return out;
}

}  // namespace skillsim::skill
