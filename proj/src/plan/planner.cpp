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

#include "skillsim/plan/planner.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <optional>
#include <sstream>

namespace skillsim::plan {

std::string Literal::str() const {
  std::string s = "(" + predicate;
  for (const auto& a : args) s += " " + a;
  return s + ")";
}

std::string GroundAction::str() const {
  std::string s = "(" + schema;
  for (const auto& a : args) s += " " + a;
  return s + ")";
}

namespace {

// Minimal s-expression reader for goals.
struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  SExpr read() {
    skip();
    if (pos_ >= text_.size()) throw GoalParseError("goal: unexpected end of input");
    if (text_[pos_] == ')') throw GoalParseError("goal: unexpected ')' at offset " + std::to_string(pos_));
    SExpr e;
    if (text_[pos_] == '(') {
      ++pos_;
      e.is_list = true;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw GoalParseError("goal: missing ')'");
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        e.list.push_back(read());
      }
      return e;
    }
    const size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')') {
      ++pos_;
    }
    e.atom = text_.substr(start, pos_ - start);
    return e;
  }

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  const std::string& text_;
  size_t pos_ = 0;
};

Literal literal_from(const SExpr& e) {
  if (!e.is_list || e.list.empty()) throw GoalParseError("goal: expected a literal '(predicate args...)'");
  Literal l;
  for (size_t i = 0; i < e.list.size(); ++i) {
    if (e.list[i].is_list) throw GoalParseError("goal: nested list inside a literal");
    if (i == 0) {
      l.predicate = e.list[i].atom;
    } else {
      l.args.push_back(e.list[i].atom);
    }
  }
  if (l.predicate == "not") throw GoalParseError("goal: negative literals are not supported");
  return l;
}

std::string eq_predicate(const std::string& property, const wm::PropertyValue& v) {
  return property + "=" + v.lexical();
}

bool is_param(const ActionSchema& a, const std::string& name) {
  return std::any_of(a.params.begin(), a.params.end(), [&](const TypedParam& p) { return p.name == name; });
}

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') {
      out += c;
    } else if (c == '=') {
      out += "-is-";
    } else {
      out += '_';
    }
  }
  return out;
}

}  // namespace

std::vector<Literal> parse_goal(const std::string& text) {
  Reader r(text);
  if (r.at_end()) throw GoalParseError("goal: empty input");
  const SExpr e = r.read();
  if (!r.at_end()) throw GoalParseError("goal: trailing input after the goal expression");
  if (!e.is_list) throw GoalParseError("goal: expected a parenthesized expression");
  if (e.list.empty()) return {};
  if (!e.list[0].is_list && e.list[0].atom == "and") {
    std::vector<Literal> out;
    for (size_t i = 1; i < e.list.size(); ++i) out.push_back(literal_from(e.list[i]));
    return out;
  }
  return {literal_from(e)};
}

Domain build_domain(const skill::SkillRegistry& registry, const wm::Scene& scene) {
  using skill::Condition;
  using skill::ConditionKind;
  Domain domain;

  // Values of every property in the scene, for equality predicates.
  std::map<std::string, std::vector<wm::PropertyValue>> harvested;
  for (const auto& [_, e] : scene.elements()) {
    for (const auto& [name, values] : e.properties) {
      for (const auto& v : values) {
        auto& list = harvested[name];
        if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
      }
    }
  }

  for (const auto& [name, d] : registry.descriptions()) {
    ActionSchema a;
    a.name = name;
    for (const auto& p : d.params) {
      if (p.is_element()) a.params.push_back({p.name, p.type});
    }
    std::string reason;
    const auto arg = [&](const std::string& x) -> std::string {
      const skill::ParamSpec* p = d.param(x);
      if (p && !p->is_element()) reason = "condition on scalar parameter '" + x + "'";
      return x;
    };
    std::map<std::string, std::pair<std::string, wm::PropertyValue>> eqs;
    std::set<std::string> bools;
    for (const Condition& c : d.preconditions) {
      if (c.kind == ConditionKind::kRelation) {
        if (!c.desired) reason = "negative precondition " + c.describe();
        a.preconditions.push_back({c.predicate, {arg(c.subject), arg(c.object)}});
      } else if (!c.literal) {
        reason = "property condition against a parameter " + c.describe();
      } else if (c.literal->type() == wm::ValueType::kBool) {
        if (c.literal->as_bool() != c.desired) reason = "negative precondition " + c.describe();
        bools.insert(c.predicate);
        a.preconditions.push_back({c.predicate, {arg(c.subject)}});
      } else {
        if (!c.desired) reason = "negative precondition " + c.describe();
        const std::string eq = eq_predicate(c.predicate, *c.literal);
        eqs[eq] = {c.predicate, *c.literal};
        a.preconditions.push_back({eq, {arg(c.subject)}});
      }
    }
    for (const Condition& c : d.postconditions) {
      if (c.kind == ConditionKind::kRelation) {
        (c.desired ? a.add_effects : a.delete_effects).push_back({c.predicate, {arg(c.subject), arg(c.object)}});
      } else if (!c.literal) {
        reason = "property effect from a parameter " + c.describe();
      } else if (c.literal->type() == wm::ValueType::kBool) {
        bools.insert(c.predicate);
        (c.literal->as_bool() == c.desired ? a.add_effects : a.delete_effects)
            .push_back({c.predicate, {arg(c.subject)}});
      } else {
        const std::string eq = eq_predicate(c.predicate, *c.literal);
        eqs[eq] = {c.predicate, *c.literal};
        if (!c.desired) {
          a.delete_effects.push_back({eq, {arg(c.subject)}});
          continue;
        }
        a.add_effects.push_back({eq, {arg(c.subject)}});
        // A property holds a single value: setting it removes the others.
        for (const auto& v : harvested[c.predicate]) {
          if (v == *c.literal) continue;
          const std::string other = eq_predicate(c.predicate, v);
          eqs[other] = {c.predicate, v};
          a.delete_effects.push_back({other, {arg(c.subject)}});
        }
      }
    }
    if (a.params.size() != d.params.size() && reason.empty()) {
      // Scalar parameters do not take part in planning.
    }
    std::map<std::string, std::size_t> arity = domain.arity;
    for (const auto* list : {&a.preconditions, &a.add_effects, &a.delete_effects}) {
      for (const Literal& l : *list) {
        auto [it, inserted] = arity.emplace(l.predicate, l.args.size());
        if (!inserted && it->second != l.args.size()) {
          reason = "predicate " + l.predicate + " used with arity " + std::to_string(l.args.size()) +
                   " and " + std::to_string(it->second);
        }
      }
    }
    if (!reason.empty()) {
      domain.warnings.push_back("skill '" + name + "' excluded from planning: " + reason);
      continue;
    }
    domain.arity = std::move(arity);
    domain.equality_predicates.insert(eqs.begin(), eqs.end());
    domain.boolean_predicates.insert(bools.begin(), bools.end());
    domain.actions.push_back(std::move(a));
  }
  return domain;
}

Problem build_problem(const Domain& domain, const wm::Scene& scene, const std::vector<Literal>& goal) {
  Problem p;
  for (const auto& [id, e] : scene.elements()) {
    p.objects[id] = e.type;
    for (const auto& r : e.relations) p.init.insert({r.predicate, {id, r.target}});
    for (const auto& pred : domain.boolean_predicates) {
      const wm::PropertyValue* v = e.property(pred);
      if (v && v->type() == wm::ValueType::kBool && v->as_bool()) p.init.insert({pred, {id}});
    }
    for (const auto& [pred, pv] : domain.equality_predicates) {
      const auto it = e.properties.find(pv.first);
      if (it == e.properties.end()) continue;
      if (std::find(it->second.begin(), it->second.end(), pv.second) != it->second.end()) {
        p.init.insert({pred, {id}});
      }
    }
  }
  for (const auto& a : domain.actions) {
    for (const auto& param : a.params) {
      if (p.typed_objects.count(param.type)) continue;
      auto& list = p.typed_objects[param.type];
      for (const auto& [id, type] : p.objects) {
        if (scene.is_a(type, param.type)) list.push_back(id);
      }
    }
  }
  for (const auto& l : goal) {
    for (const auto& a : l.args) {
      if (!p.objects.count(a)) throw PlanError("goal " + l.str() + ": unknown constant '" + a + "'");
    }
    const auto ar = domain.arity.find(l.predicate);
    if (ar != domain.arity.end() && ar->second != l.args.size()) {
      throw PlanError("goal " + l.str() + ": predicate has arity " + std::to_string(ar->second));
    }
  }
  p.goal = goal;
  return p;
}

const ActionSchema& schema(const Domain& domain, const std::string& name) {
  for (const auto& a : domain.actions) {
    if (a.name == name) return a;
  }
  throw PlanError("unknown action '" + name + "'");
}

Literal ground(const Literal& lifted, const ActionSchema& a, const GroundAction& g) {
  Literal out{lifted.predicate, {}};
  for (const auto& x : lifted.args) {
    std::string v = x;
    for (size_t i = 0; i < a.params.size(); ++i) {
      if (a.params[i].name == x) v = g.args[i];
    }
    out.args.push_back(v);
  }
  return out;
}

std::set<Literal> apply(const ActionSchema& a, const GroundAction& g, const std::set<Literal>& state) {
  std::set<Literal> next = state;
  for (const auto& l : a.delete_effects) next.erase(ground(l, a, g));
  for (const auto& l : a.add_effects) next.insert(ground(l, a, g));
  return next;
}

std::vector<GroundAction> applicable_actions(const Domain& domain, const Problem& problem,
                                             const std::set<Literal>& state) {
  std::map<std::string, std::vector<const Literal*>> by_predicate;
  for (const auto& l : state) by_predicate[l.predicate].push_back(&l);

  std::vector<GroundAction> out;
  for (const auto& a : domain.actions) {
    std::vector<std::optional<std::string>> binding(a.params.size());
    const auto index_of = [&](const std::string& name) -> int {
      for (size_t i = 0; i < a.params.size(); ++i) {
        if (a.params[i].name == name) return static_cast<int>(i);
      }
      return -1;
    };
    const auto type_ok = [&](size_t i, const std::string& obj) {
      const auto& list = problem.typed_objects.at(a.params[i].type);
      return std::binary_search(list.begin(), list.end(), obj);
    };
    std::function<void(size_t)> fill_free = [&](size_t i) {
      if (i == a.params.size()) {
        GroundAction g{a.name, {}};
        for (const auto& b : binding) g.args.push_back(*b);
        out.push_back(std::move(g));
        return;
      }
      if (binding[i]) {
        fill_free(i + 1);
        return;
      }
      for (const auto& obj : problem.typed_objects.at(a.params[i].type)) {
        binding[i] = obj;
        fill_free(i + 1);
      }
      binding[i].reset();
    };
    std::function<void(size_t)> match = [&](size_t k) {
      if (k == a.preconditions.size()) {
        fill_free(0);
        return;
      }
      const Literal& pre = a.preconditions[k];
      const auto it = by_predicate.find(pre.predicate);
      if (it == by_predicate.end()) return;
      for (const Literal* fact : it->second) {
        if (fact->args.size() != pre.args.size()) continue;
        std::vector<int> newly;
        bool ok = true;
        for (size_t j = 0; j < pre.args.size() && ok; ++j) {
          const int pi = index_of(pre.args[j]);
          if (pi < 0) {
            ok = fact->args[j] == pre.args[j];
          } else if (binding[pi]) {
            ok = *binding[pi] == fact->args[j];
          } else if (type_ok(pi, fact->args[j])) {
            binding[pi] = fact->args[j];
            newly.push_back(pi);
          } else {
            ok = false;
          }
        }
        if (ok) match(k + 1);
        for (int pi : newly) binding[pi].reset();
      }
    };
    match(0);
  }
  std::sort(out.begin(), out.end(), [](const GroundAction& x, const GroundAction& y) { return x.str() < y.str(); });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

bool satisfies(const std::set<Literal>& state, const std::vector<Literal>& goal) {
  return std::all_of(goal.begin(), goal.end(), [&](const Literal& l) { return state.count(l) > 0; });
}

}  // namespace

PlanResult plan(const Domain& domain, const Problem& problem, std::size_t max_states) {
  PlanResult result;
  struct Node {
    std::set<Literal> state;
    long parent;
    GroundAction action;
  };
  std::vector<Node> nodes;
  std::set<std::set<Literal>> seen;
  std::deque<long> queue;
  nodes.push_back({problem.init, -1, {}});
  seen.insert(problem.init);
  queue.push_back(0);
  while (!queue.empty()) {
    const long cur = queue.front();
    queue.pop_front();
    if (satisfies(nodes[cur].state, problem.goal)) {
      for (long n = cur; nodes[n].parent >= 0; n = nodes[n].parent) result.plan.push_back(nodes[n].action);
      std::reverse(result.plan.begin(), result.plan.end());
      result.status = PlanStatus::kSolved;
      return result;
    }
    if (++result.expanded > max_states) {
      result.status = PlanStatus::kBudgetExceeded;
      return result;
    }
    for (auto& g : applicable_actions(domain, problem, nodes[cur].state)) {
      std::set<Literal> next = apply(schema(domain, g.schema), g, nodes[cur].state);
      if (!seen.insert(next).second) continue;
      nodes.push_back({std::move(next), cur, std::move(g)});
      queue.push_back(static_cast<long>(nodes.size()) - 1);
    }
  }
  result.status = PlanStatus::kUnsolvable;
  return result;
}

bool validate_plan(const Domain& domain, const Problem& problem, const Plan& p) {
  std::set<Literal> state = problem.init;
  for (const auto& g : p) {
    const ActionSchema& a = schema(domain, g.schema);
    if (g.args.size() != a.params.size()) return false;
    for (size_t i = 0; i < a.params.size(); ++i) {
      const auto& list = problem.typed_objects.at(a.params[i].type);
      if (!std::binary_search(list.begin(), list.end(), g.args[i])) return false;
    }
    for (const auto& pre : a.preconditions) {
      if (!state.count(ground(pre, a, g))) return false;
    }
    state = apply(a, g, state);
  }
  return satisfies(state, problem.goal);
}

std::string to_pddl_domain(const Domain& domain, const wm::Scene& scene, const std::string& name) {
  std::ostringstream out;
  out << "(define (domain " << sanitize(name) << ")\n";
  out << "  (:requirements :strips :typing)\n";
  out << "  (:types";
  for (const auto& [cname, c] : scene.concepts()) {
    out << "\n    " << sanitize(cname);
    if (!c.parents.empty()) out << " - " << sanitize(*c.parents.begin());
  }
  out << ")\n";
  // Argument types are not tracked per predicate; "object" keeps the file valid.
  out << "  (:predicates";
  for (const auto& [pred, n] : domain.arity) {
    out << "\n    (" << sanitize(pred);
    for (size_t i = 0; i < n; ++i) out << " ?a" << i << " - object";
    out << ")";
  }
  out << ")\n";
  const auto lit = [](const Literal& l, const ActionSchema& a) {
    std::string s = "(" + sanitize(l.predicate);
    for (const auto& x : l.args) s += " " + (is_param(a, x) ? "?" + sanitize(x) : sanitize(x));
    return s + ")";
  };
  for (const auto& a : domain.actions) {
    out << "  (:action " << sanitize(a.name) << "\n    :parameters (";
    for (size_t i = 0; i < a.params.size(); ++i) {
      out << (i ? " " : "") << "?" << sanitize(a.params[i].name) << " - " << sanitize(a.params[i].type);
    }
    out << ")\n    :precondition (and";
    for (const auto& l : a.preconditions) out << " " << lit(l, a);
    out << ")\n    :effect (and";
    for (const auto& l : a.add_effects) out << " " << lit(l, a);
    for (const auto& l : a.delete_effects) out << " (not " << lit(l, a) << ")";
    out << "))\n";
  }
  out << ")\n";
  return out.str();
}

std::string to_pddl_problem(const Problem& problem, const std::string& name, const std::string& domain_name) {
  std::ostringstream out;
  out << "(define (problem " << sanitize(name) << ")\n";
  out << "  (:domain " << sanitize(domain_name) << ")\n";
  out << "  (:objects";
  for (const auto& [id, type] : problem.objects) out << "\n    " << sanitize(id) << " - " << sanitize(type);
  out << ")\n  (:init";
  const auto lit = [](const Literal& l) {
    std::string s = "(" + sanitize(l.predicate);
    for (const auto& x : l.args) s += " " + sanitize(x);
    return s + ")";
  };
  for (const auto& l : problem.init) out << "\n    " << lit(l);
  out << ")\n  (:goal (and";
  for (const auto& l : problem.goal) out << " " << lit(l);
  out << ")))\n";
  return out.str();
}

bt::NodePtr plan_to_bt(const Plan& p, const Domain& domain, skill::Expander& expander) {
  std::vector<bt::NodePtr> steps;
  for (const auto& g : p) {
    const ActionSchema& a = schema(domain, g.schema);
    skill::Bindings b;
    for (size_t i = 0; i < a.params.size(); ++i) b[a.params[i].name] = skill::ElementId{g.args[i]};
    steps.push_back(expander.expand(g.schema, b));
  }
  auto root = std::make_unique<bt::Sequence>(std::move(steps));
  root->set_label("plan");
  return root;
}

}  // namespace skillsim::plan
