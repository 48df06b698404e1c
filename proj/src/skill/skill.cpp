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

#include "skillsim/skill/skill.hpp"

#include <algorithm>

namespace skillsim::skill {

void Blackboard::set(const std::string& key, ParamValue value, const std::string& owner) {
  auto it = entries_.find(key);
  if (it != entries_.end() && it->second.owner != owner) {
    throw SkillError("blackboard key '" + key + "' is owned by '" + it->second.owner + "'");
  }
  entries_[key] = Entry{std::move(value), owner};
}

const ParamValue* Blackboard::get(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second.value;
}

const char* to_string(SkillEventType t) {
  switch (t) {
    case SkillEventType::kStarted: return "started";
    case SkillEventType::kStopped: return "stopped";
    case SkillEventType::kSucceeded: return "succeeded";
    case SkillEventType::kFailed: return "failed";
    case SkillEventType::kPreconditionFailed: return "precondition-failed";
    case SkillEventType::kHoldViolated: return "hold-violated";
    case SkillEventType::kPostconditionFailed: return "postcondition-failed";
  }
  return "failed";
}

void SkillRegistry::add_description(SkillDescription description) {
  description.validate();
  const std::string name = description.name;
  if (!descriptions_.emplace(name, std::move(description)).second) {
    throw SkillError("skill '" + name + "' is already registered");
  }
}

void SkillRegistry::add_implementation(SkillImplementation impl) {
  const SkillDescription* d = find(impl.implements);
  if (!d) throw SkillError("implementation '" + impl.name + "' implements unknown skill '" + impl.implements + "'");
  if (static_cast<bool>(impl.primitive) == static_cast<bool>(impl.compound)) {
    throw SkillError("implementation '" + impl.name + "' must be either primitive or compound");
  }
  for (const auto& [param, concept_name] : impl.specializations) {
    const ParamSpec* p = d->param(param);
    if (!p || !p->is_element()) {
      throw SkillError("implementation '" + impl.name + "' specializes unknown element parameter '" + param + "'");
    }
  }
  effective_description(*d, impl).validate();
  const std::string name = impl.name;
  if (!implementations_.emplace(name, std::move(impl)).second) {
    throw SkillError("implementation '" + name + "' is already registered");
  }
}

const SkillDescription* SkillRegistry::find(const std::string& name) const {
  auto it = descriptions_.find(name);
  return it == descriptions_.end() ? nullptr : &it->second;
}

const SkillDescription& SkillRegistry::description(const std::string& name) const {
  const SkillDescription* d = find(name);
  if (!d) throw SkillError("unknown skill '" + name + "'");
  return *d;
}

std::vector<const SkillImplementation*> SkillRegistry::implementations_of(const std::string& name) const {
  std::vector<const SkillImplementation*> out;
  for (const auto& [_, impl] : implementations_) {
    if (impl.implements == name) out.push_back(&impl);
  }
  return out;
}

void SkillRegistry::validate(const wm::Scene& scene) const {
  for (const auto& [_, impl] : implementations_) {
    const SkillDescription& d = description(impl.implements);
    for (const auto& [param, concept_name] : impl.specializations) {
      const std::string& base = d.param(param)->type;
      if (!scene.has_concept(concept_name) || !scene.is_a(concept_name, base)) {
        throw SkillError("implementation '" + impl.name + "': '" + concept_name +
                         "' does not narrow '" + base + "'");
      }
    }
  }
}

std::optional<int> specificity(const SkillImplementation& impl, const SkillDescription& description,
                               const Bindings& bindings, const wm::Scene& scene) {
  int total = 0;
  for (const auto& [param, concept_name] : impl.specializations) {
    const wm::Element* e = scene.find(element_of(bindings, param));
    if (!e || !scene.has_concept(concept_name) || !scene.is_a(e->type, concept_name)) return std::nullopt;
    const auto depth = scene.depth_below(concept_name, description.param(param)->type);
    if (!depth) return std::nullopt;
    total += *depth;
  }
  return total;
}

const SkillImplementation& select_implementation(const SkillDescription& description,
                                                 const Bindings& bindings, const wm::Scene& scene,
                                                 const SkillRegistry& registry) {
  std::vector<std::pair<int, const SkillImplementation*>> matches;
  for (const SkillImplementation* impl : registry.implementations_of(description.name)) {
    if (auto s = specificity(*impl, description, bindings, scene)) matches.emplace_back(*s, impl);
  }
  if (matches.empty()) {
    std::string detail;
    for (const auto& [param, value] : bindings) {
      if (const auto* e = std::get_if<ElementId>(&value); e && scene.find(e->id)) {
        detail += " " + param + "=" + e->id + " (" + scene.element(e->id).type + ")";
      }
    }
    throw SelectionError("no implementation of '" + description.name + "' matches" + detail);
  }
  const int best = std::max_element(matches.begin(), matches.end())->first;
  std::vector<std::string> tied;
  const SkillImplementation* chosen = nullptr;
  for (const auto& [s, impl] : matches) {
    if (s == best) {
      tied.push_back(impl->name);
      chosen = impl;
    }
  }
  if (tied.size() > 1) {
    std::sort(tied.begin(), tied.end());
    std::string names;
    for (const auto& n : tied) names += " " + n;
    throw SelectionError("ambiguous implementations of '" + description.name + "':" + names);
  }
  return *chosen;
}

SkillDescription effective_description(const SkillDescription& d, const SkillImplementation& impl) {
  SkillDescription out = d;
  out.preconditions.insert(out.preconditions.end(), impl.extra_preconditions.begin(),
                           impl.extra_preconditions.end());
  out.holdconditions.insert(out.holdconditions.end(), impl.extra_holdconditions.begin(),
                            impl.extra_holdconditions.end());
  out.postconditions.insert(out.postconditions.end(), impl.extra_postconditions.begin(),
                            impl.extra_postconditions.end());
  return out;
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string s;
  for (const auto& i : items) s += (s.empty() ? "" : ", ") + i;
  return s;
}

}  // namespace

PrimitiveSkillLeaf::PrimitiveSkillLeaf(SkillDescription description, SkillContext context,
                                       std::unique_ptr<PrimitiveBehavior> behavior,
                                       SkillObserver observer)
    : description_(std::move(description)),
      context_(std::move(context)),
      behavior_(std::move(behavior)),
      observer_(std::move(observer)) {
  if (!behavior_) throw SkillError("primitive '" + context_.skill + "' has no behavior");
  behavior_->on_init(context_);
}

void PrimitiveSkillLeaf::emit(SkillEventType t, const std::string& detail) const {
  if (observer_) observer_({t, context_.skill, context_.implementation, detail});
}

void PrimitiveSkillLeaf::start() {
  const auto scene = context_.wm->snapshot();
  const CheckResult pre = check_conditions(description_.preconditions, description_, context_.params, *scene);
  if (!pre.ok) {
    precondition_failed_ = true;
    precondition_detail_ = join(pre.violated);
    emit(SkillEventType::kPreconditionFailed, precondition_detail_);
    return;
  }
  started_ = true;
  ++starts_;
  emit(SkillEventType::kStarted);
  behavior_->on_start(context_);
}

bt::Status PrimitiveSkillLeaf::update() {
  if (precondition_failed_) return bt::Status::kFailure;
  {
    const auto scene = context_.wm->snapshot();
    const CheckResult hold =
        check_conditions(description_.holdconditions, description_, context_.params, *scene);
    if (!hold.ok) {
      emit(SkillEventType::kHoldViolated, join(hold.violated));
      return bt::Status::kFailure;
    }
  }
  const bt::Status s = behavior_->execute(context_);
  if (s == bt::Status::kSuccess) {
    const auto scene = context_.wm->snapshot();
    const CheckResult post =
        check_conditions(description_.postconditions, description_, context_.params, *scene);
    if (!post.ok) {
      emit(SkillEventType::kPostconditionFailed, join(post.violated));
      return bt::Status::kFailure;
    }
    emit(SkillEventType::kSucceeded);
  } else if (s == bt::Status::kFailure) {
    emit(SkillEventType::kFailed);
  }
  return s;
}

void PrimitiveSkillLeaf::stop() {
  precondition_failed_ = false;
  if (!started_) return;
  started_ = false;
  ++stops_;
  behavior_->on_stop(context_);
  emit(SkillEventType::kStopped);
}

CompoundSkillNode::CompoundSkillNode(SkillDescription description, SkillContext context,
                                     bt::NodePtr child, SkillObserver observer)
    : description_(std::move(description)), context_(std::move(context)), observer_(std::move(observer)) {
  if (!child) throw SkillError("compound '" + context_.skill + "' built an empty tree");
  children_.push_back(std::move(child));
}

void CompoundSkillNode::emit(SkillEventType t, const std::string& detail) const {
  if (observer_) observer_({t, context_.skill, context_.implementation, detail});
}

bt::Status CompoundSkillNode::on_tick() {
  const auto scene = context_.wm->snapshot();
  if (!active_) {
    const CheckResult pre = check_conditions(description_.preconditions, description_, context_.params, *scene);
    if (!pre.ok) {
      emit(SkillEventType::kPreconditionFailed, join(pre.violated));
      return bt::Status::kFailure;
    }
    active_ = true;
    emit(SkillEventType::kStarted);
  }
  const CheckResult hold = check_conditions(description_.holdconditions, description_, context_.params, *scene);
  if (!hold.ok) {
    emit(SkillEventType::kHoldViolated, join(hold.violated));
    children_[0]->halt();
    active_ = false;
    emit(SkillEventType::kStopped);
    return bt::Status::kFailure;
  }
  bt::Status s = children_[0]->tick();
  if (s == bt::Status::kRunning) return s;
  if (s == bt::Status::kSuccess) {
    const auto after = context_.wm->snapshot();
    const CheckResult post = check_conditions(description_.postconditions, description_, context_.params, *after);
    if (!post.ok) {
      emit(SkillEventType::kPostconditionFailed, join(post.violated));
      s = bt::Status::kFailure;
    } else {
      emit(SkillEventType::kSucceeded);
    }
  } else {
    emit(SkillEventType::kFailed);
  }
  active_ = false;
  emit(SkillEventType::kStopped);
  return s;
}

void CompoundSkillNode::on_halt() {
  if (!active_) return;
  active_ = false;
  emit(SkillEventType::kStopped);
}

Expander::Expander(const SkillRegistry& registry, wm::WorldModel& wm, Blackboard& blackboard,
                   Services* services, SkillObserver observer)
    : registry_(registry),
      wm_(wm),
      blackboard_(blackboard),
      services_(services),
      observer_(std::move(observer)) {}

bt::NodePtr Expander::expand(const std::string& skill, const Bindings& partial) {
  const SkillDescription& d = registry_.description(skill);
  const auto scene = wm_.snapshot();
  GroundingResult g = ground_parameters(d, partial, *scene);
  for (auto& w : g.warnings) warnings_.push_back(skill + ": " + w);
  const SkillImplementation& impl = select_implementation(d, g.bindings, *scene, registry_);

  SkillContext ctx;
  ctx.wm = &wm_;
  ctx.blackboard = &blackboard_;
  ctx.services = services_;
  ctx.params = std::move(g.bindings);
  ctx.skill = skill;
  ctx.implementation = impl.name;
  SkillDescription eff = effective_description(d, impl);
  if (impl.is_compound()) {
    bt::NodePtr child = impl.compound(ctx, *this);
    return std::make_unique<CompoundSkillNode>(std::move(eff), std::move(ctx), std::move(child), observer_);
  }
  return std::make_unique<PrimitiveSkillLeaf>(std::move(eff), std::move(ctx), impl.primitive(), observer_);
}

}  // namespace skillsim::skill
