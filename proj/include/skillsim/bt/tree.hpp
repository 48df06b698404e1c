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
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace skillsim::bt {

enum class Status { kRunning, kSuccess, kFailure };

const char* to_string(Status s);

class Node {
 public:
  virtual ~Node() = default;

  Status tick();
  // Stops a running subtree; running leaves get their stop hook.
  void halt();

  virtual std::string kind() const = 0;
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  const std::vector<std::unique_ptr<Node>>& children() const { return children_; }
  // Status returned by the most recent tick; empty before the first tick or after a halt.
  std::optional<Status> last_status() const { return last_; }
  // Total number of leaf ticks below (and including) this node.
  virtual long leaf_ticks() const;

 protected:
  Node() = default;
  explicit Node(std::vector<std::unique_ptr<Node>> children);
  virtual Status on_tick() = 0;
  virtual void on_halt() {}
  void halt_children_from(size_t first);

  std::vector<std::unique_ptr<Node>> children_;

 private:
  std::string label_;
  std::optional<Status> last_;
};

using NodePtr = std::unique_ptr<Node>;

// Ticks children in order. With memory, a Running child is resumed on the
// next tick and completed children are not re-ticked until the sequence
// finishes; without memory every tick restarts from the first child.
class Sequence : public Node {
 public:
  explicit Sequence(std::vector<NodePtr> children, bool memory = true);
  std::string kind() const override { return memory_ ? "Sequence" : "ReactiveSequence"; }

 protected:
  Status on_tick() override;
  void on_halt() override { index_ = 0; }

 private:
  bool memory_;
  size_t index_ = 0;
};

class Selector : public Node {
 public:
  explicit Selector(std::vector<NodePtr> children, bool memory = true);
  std::string kind() const override { return memory_ ? "Selector" : "ReactiveSelector"; }

 protected:
  Status on_tick() override;
  void on_halt() override { index_ = 0; }

 private:
  bool memory_;
  size_t index_ = 0;
};

// Ticks every unfinished child. Success once `threshold` children succeeded,
// Failure once fewer than `threshold` can still succeed, Running otherwise.
class Parallel : public Node {
 public:
  Parallel(std::vector<NodePtr> children, size_t threshold);
  std::string kind() const override { return "Parallel(" + std::to_string(threshold_) + ")"; }

 protected:
  Status on_tick() override;
  void on_halt() override;

 private:
  void reset();
  size_t threshold_;
  std::vector<std::optional<Status>> done_;
};

enum class DecoratorPolicy { kInvert, kRetry, kForceSuccess };

class Decorator : public Node {
 public:
  // `attempts` is the total number of tries for kRetry (>= 1).
  Decorator(DecoratorPolicy policy, NodePtr child, int attempts = 1);
  std::string kind() const override;

 protected:
  Status on_tick() override;
  void on_halt() override { failures_ = 0; }

 private:
  DecoratorPolicy policy_;
  int attempts_;
  int failures_ = 0;
};

// Leaf with explicit lifecycle: start() before the first tick of an episode,
// update() every tick, stop() exactly once when the episode ends (completion
// or halt).
class Leaf : public Node {
 public:
  long leaf_ticks() const override { return ticks_; }
  bool active() const { return active_; }

 protected:
  Leaf() = default;
  virtual void start() {}
  virtual Status update() = 0;
  virtual void stop() {}

 private:
  Status on_tick() final;
  void on_halt() final;
  bool active_ = false;
  long ticks_ = 0;
};

// Leaf from callables; handy for tests and glue.
class FunctionLeaf : public Leaf {
 public:
  FunctionLeaf(std::string name, std::function<Status()> update,
               std::function<void()> start = {}, std::function<void()> stop = {});
  std::string kind() const override { return "Leaf(" + name_ + ")"; }

 protected:
  void start() override {
    if (start_) start_();
  }
  Status update() override { return update_(); }
  void stop() override {
    if (stop_) stop_();
  }

 private:
  std::string name_;
  std::function<Status()> update_;
  std::function<void()> start_;
  std::function<void()> stop_;
};

// One node per line, two spaces per depth level: `Kind [Status]`, with `-`
// for nodes that hold no status.
std::string to_text(const Node& root);
size_t node_count(const Node& root);

struct RunResult {
  Status status = Status::kFailure;
  long ticks = 0;
  bool budget_exhausted = false;
  std::string diagnostic;
};

// Ticks `root` at `rate_hz` until it stops running or `max_ticks` ticks were
// used. `between_ticks(dt)` runs after every Running tick. An exhausted
// budget halts the tree and reports Failure.
RunResult run_to_completion(Node& root, double rate_hz, long max_ticks,
                            const std::function<void(double)>& between_ticks = {});

}  // namespace skillsim::bt
