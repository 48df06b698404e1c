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

#include "skillsim/bt/tree.hpp"

#include <sstream>
#include <stdexcept>

namespace skillsim::bt {

const char* to_string(Status s) {
  switch (s) {
    case Status::kRunning: return "Running";
    case Status::kSuccess: return "Success";
    case Status::kFailure: return "Failure";
  }
  return "Failure";
}

Node::Node(std::vector<std::unique_ptr<Node>> children) : children_(std::move(children)) {
  for (const auto& c : children_) {
    if (!c) throw std::invalid_argument("behavior tree child is null");
  }
}

Status Node::tick() {
  last_ = on_tick();
  return *last_;
}

void Node::halt() {
  if (last_ != Status::kRunning) {
    last_.reset();
    return;
  }
  on_halt();
  halt_children_from(0);
  last_.reset();
}

void Node::halt_children_from(size_t first) {
  for (size_t i = first; i < children_.size(); ++i) children_[i]->halt();
}

long Node::leaf_ticks() const {
  long n = 0;
  for (const auto& c : children_) n += c->leaf_ticks();
  return n;
}

Sequence::Sequence(std::vector<NodePtr> children, bool memory)
    : Node(std::move(children)), memory_(memory) {}

Status Sequence::on_tick() {
  size_t i = memory_ ? index_ : 0;
  for (; i < children_.size(); ++i) {
    const Status s = children_[i]->tick();
    if (s == Status::kRunning) {
      index_ = i;
      halt_children_from(i + 1);
      return s;
    }
    if (s == Status::kFailure) {
      index_ = 0;
      halt_children_from(i + 1);
      return s;
    }
  }
  index_ = 0;
  return Status::kSuccess;
}

Selector::Selector(std::vector<NodePtr> children, bool memory)
    : Node(std::move(children)), memory_(memory) {}

Status Selector::on_tick() {
  size_t i = memory_ ? index_ : 0;
  for (; i < children_.size(); ++i) {
    const Status s = children_[i]->tick();
    if (s == Status::kRunning) {
      index_ = i;
      halt_children_from(i + 1);
      return s;
    }
    if (s == Status::kSuccess) {
      index_ = 0;
      halt_children_from(i + 1);
      return s;
    }
  }
  index_ = 0;
  return Status::kFailure;
}

Parallel::Parallel(std::vector<NodePtr> children, size_t threshold)
    : Node(std::move(children)), threshold_(threshold), done_(children_.size()) {
  if (threshold_ > children_.size()) {
    throw std::invalid_argument("parallel threshold exceeds the number of children");
  }
}

void Parallel::reset() { done_.assign(children_.size(), std::nullopt); }

void Parallel::on_halt() { reset(); }

Status Parallel::on_tick() {
  size_t successes = 0, failures = 0;
  for (size_t i = 0; i < children_.size(); ++i) {
    if (!done_[i]) {
      const Status s = children_[i]->tick();
      if (s != Status::kRunning) done_[i] = s;
    }
    if (done_[i] == Status::kSuccess) ++successes;
    if (done_[i] == Status::kFailure) ++failures;
  }
  Status result = Status::kRunning;
  if (successes >= threshold_) {
    result = Status::kSuccess;
  } else if (children_.size() - failures < threshold_) {
    result = Status::kFailure;
  }
  if (result != Status::kRunning) {
    halt_children_from(0);
    reset();
  }
  return result;
}

Decorator::Decorator(DecoratorPolicy policy, NodePtr child, int attempts)
    : policy_(policy), attempts_(attempts) {
  if (!child) throw std::invalid_argument("decorator needs exactly one child");
  if (policy_ == DecoratorPolicy::kRetry && attempts_ < 1) {
    throw std::invalid_argument("retry needs at least one attempt");
  }
  children_.push_back(std::move(child));
}

std::string Decorator::kind() const {
  switch (policy_) {
    case DecoratorPolicy::kInvert: return "Invert";
    case DecoratorPolicy::kRetry: return "Retry(" + std::to_string(attempts_) + ")";
    case DecoratorPolicy::kForceSuccess: return "ForceSuccess";
  }
  return "Decorator";
}

Status Decorator::on_tick() {
  const Status s = children_[0]->tick();
  switch (policy_) {
    case DecoratorPolicy::kInvert:
      if (s == Status::kRunning) return s;
      return s == Status::kSuccess ? Status::kFailure : Status::kSuccess;
    case DecoratorPolicy::kForceSuccess:
      return s == Status::kRunning ? s : Status::kSuccess;
    case DecoratorPolicy::kRetry:
      if (s == Status::kSuccess) {
        failures_ = 0;
        return s;
      }
      if (s == Status::kFailure) {
        if (++failures_ >= attempts_) {
          failures_ = 0;
          return Status::kFailure;
        }
        // Next attempt starts on the next tick.
        return Status::kRunning;
      }
      return s;
  }
  return s;
}

Status Leaf::on_tick() {
  if (!active_) {
    active_ = true;
    start();
  }
  ++ticks_;
  const Status s = update();
  if (s != Status::kRunning) {
    active_ = false;
    stop();
  }
  return s;
}

void Leaf::on_halt() {
  if (active_) {
    active_ = false;
    stop();
  }
}

FunctionLeaf::FunctionLeaf(std::string name, std::function<Status()> update,
                           std::function<void()> start, std::function<void()> stop)
    : name_(std::move(name)),
      update_(std::move(update)),
      start_(std::move(start)),
      stop_(std::move(stop)) {
  if (!update_) throw std::invalid_argument("leaf needs an update function");
}

namespace {

void write_text(const Node& n, int depth, std::ostringstream& out) {
  out << std::string(2 * depth, ' ') << n.kind();
  if (!n.label().empty()) out << ' ' << n.label();
  out << " [" << (n.last_status() ? to_string(*n.last_status()) : "-") << "]\n";
  for (const auto& c : n.children()) write_text(*c, depth + 1, out);
}

}  // namespace

std::string to_text(const Node& root) {
  std::ostringstream out;
  write_text(root, 0, out);
  return out.str();
}

size_t node_count(const Node& root) {
  size_t n = 1;
  for (const auto& c : root.children()) n += node_count(*c);
  return n;
}

RunResult run_to_completion(Node& root, double rate_hz, long max_ticks,
                            const std::function<void(double)>& between_ticks) {
  if (!(rate_hz > 0.0)) throw std::invalid_argument("tick rate must be > 0");
  RunResult r;
  const double dt = 1.0 / rate_hz;
  while (r.ticks < max_ticks) {
    ++r.ticks;
    r.status = root.tick();
    if (r.status != Status::kRunning) return r;
    if (between_ticks) between_ticks(dt);
  }
  root.halt();
  r.status = Status::kFailure;
  r.budget_exhausted = true;
  r.diagnostic = "tick budget of " + std::to_string(max_ticks) + " exhausted";
  return r;
}

}  // namespace skillsim::bt
