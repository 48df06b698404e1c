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

#include "skillsim/app/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "skillsim/app/run_log.hpp"
#include "skillsim/app/session.hpp"
#include "skillsim/skills/library.hpp"

namespace skillsim::app {
namespace {

namespace fs = std::filesystem;

// Thrown for usage mistakes found after CLI parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string scene;
  std::string robot;
  std::string out;
  double max_time = 600.0;
};

std::string out_dir(const RunOptions& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv(kLogDirEnv); env && *env) return env;
  return "skillsim_runs";
}

std::string file_stem(std::string id) {
  for (char& c : id) {
    if (c == ':' || c == '/' || c == ' ') c = '_';
  }
  return id;
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path.string());
  body(f);
  if (!f) throw IoError("write failed: " + path.string());
}

// Run log, plot CSV, coverage CSV and report for every robot that moved.
void write_artifacts(Session& s, const RunOptions& o, std::ostream& out) {
  const fs::path dir = out_dir(o);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& [id, rt] : s.system().robots()) {
    if (!o.robot.empty() && id != o.robot) continue;
    const RunLog log = rt->log();
    const std::string stem = file_stem(id);
    const auto reports = coverage_report(log);
    write_file(dir / (stem + ".csv"), [&](std::ostream& f) { write_run_log(log, f); });
    write_file(dir / (stem + "_plot.csv"), [&](std::ostream& f) { write_plot_csv(log, f); });
    write_file(dir / (stem + "_coverage.csv"), [&](std::ostream& f) { write_coverage_csv(log, f); });
    write_file(dir / (stem + "_report.txt"), [&](std::ostream& f) { write_report(reports, f); });
    out << "robot " << id << " (" << log.controller << "), " << log.rows.size() << " rows -> " << (dir / stem).string()
        << ".csv\n";
    write_report(reports, out);
    out << "commands:";
    for (const auto& c : s.system().commands(id)) out << "\n  " << c;
    out << "\n";
  }
}

int execute(Session& s, bt::Node& root, const RunOptions& o, std::ostream& out, std::ostream& err) {
  Execution ex;
  try {
    ex = s.execute(root, o.max_time);
  } catch (const std::exception& e) {
    err << "execution error: " << e.what() << "\n";
    return kExitExecution;
  }
  out << "status " << bt::to_string(ex.status) << (ex.budget_exhausted ? " (time budget exhausted)" : "") << "\n";
  out << "sim_time " << ex.sim_time << " s, wall_time " << std::fixed << std::setprecision(2) << ex.wall_time
      << " s, ticks " << ex.ticks << "\n";
  out << std::defaultfloat << std::setprecision(6);
  for (const auto& d : ex.diagnostics) err << "diagnostic: " << d << "\n";
  write_artifacts(s, o, out);
  return ex.status == bt::Status::kSuccess ? kExitOk : kExitExecution;
}

std::string print_plan(const plan::PlanResult& r) {
  std::ostringstream s;
  s << "plan (" << r.plan.size() << " steps, " << r.expanded << " states expanded):\n";
  for (const auto& a : r.plan) s << "  " << a.str() << "\n";
  return s.str();
}

int plan_failure(const plan::PlanResult& r, std::ostream& err) {
  err << (r.status == plan::PlanStatus::kBudgetExceeded ? "search budget exceeded" : "goal is unsolvable") << " ("
      << r.expanded << " states expanded)\n";
  return kExitPlan;
}

// Arm for a run: --robot, the only arm, or none when the scene has no arm.
std::string arm_for(const Session& s, const RunOptions& o) {
  if (o.robot.empty() && s.arms().empty()) return {};
  return s.select_arm(o.robot);
}

int cmd_run_goal(const RunOptions& o, const std::string& goal_text, std::ostream& out, std::ostream& err) {
  Session s(o.scene);
  const auto goal = plan::parse_goal(goal_text);
  const std::string arm = arm_for(s, o);
  plan::Domain domain;
  const plan::PlanResult r = s.plan_goal(goal, &domain, nullptr, arm);
  for (const auto& w : domain.warnings) err << "warning: " << w << "\n";
  if (r.status != plan::PlanStatus::kSolved) return plan_failure(r, err);
  out << print_plan(r);
  bt::NodePtr root = plan::plan_to_bt(r.plan, domain, s.expander());
  for (const auto& w : s.expander().warnings()) err << "warning: " << w << "\n";
  return execute(s, *root, o, out, err);
}

skill::ParamValue parse_param(Session& s, const skill::ParamSpec& spec, const std::string& text) {
  const auto bad = [&] { return UsageError("parameter '" + spec.name + "' (" + spec.type + "): bad value '" + text + "'"); };
  if (spec.is_element()) return skill::ElementId{text};
  if (spec.type == "pose") {
    try {
      return wm::PropertyValue(skills::parse_pose(text));
    } catch (const std::invalid_argument&) {
      // An element id stands for its world pose.
      const auto scene = s.world_model().snapshot();
      if (!scene->find(text)) throw bad();
      return wm::PropertyValue(wm::resolve_world_pose(*scene, text));
    }
  }
  if (spec.type == "bool") {
    if (text == "true" || text == "1") return wm::PropertyValue(true);
    if (text == "false" || text == "0") return wm::PropertyValue(false);
    throw bad();
  }
  if (spec.type == "float" || spec.type == "int") {
    try {
      size_t used = 0;
      if (spec.type == "int") {
        const long long v = std::stoll(text, &used);
        if (used == text.size()) return wm::PropertyValue(static_cast<std::int64_t>(v));
      } else {
        const double v = std::stod(text, &used);
        if (used == text.size()) return wm::PropertyValue(v);
      }
    } catch (const std::exception&) {
    }
    throw bad();
  }
  return wm::PropertyValue(text);
}

int cmd_run_skill(const RunOptions& o, const std::string& skill_name, const std::vector<std::string>& params,
                  std::ostream& out, std::ostream& err) {
  Session s(o.scene);
  const skill::SkillDescription* d = s.registry().find(skill_name);
  if (!d) throw UsageError("unknown skill '" + skill_name + "' (see list-skills)");
  skill::Bindings bindings;
  for (const std::string& kv : params) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects name=value, got '" + kv + "'");
    const std::string name = kv.substr(0, eq);
    const skill::ParamSpec* spec = d->param(name);
    if (!spec) throw UsageError(skill_name + " has no parameter '" + name + "'");
    bindings[name] = parse_param(s, *spec, kv.substr(eq + 1));
  }
  if (const skill::ParamSpec* arm = d->param("arm"); arm && !bindings.count("arm")) {
    bindings["arm"] = skill::ElementId{s.select_arm(o.robot)};
  }
  for (const auto& p : d->params) {
    if (p.kind == skill::ParamKind::kRequired && !bindings.count(p.name)) {
      throw UsageError(skill_name + ": missing required parameter '" + p.name + "' (" + p.type + ")");
    }
  }
  bt::NodePtr root = s.expander().expand(skill_name, bindings);
  for (const auto& w : s.expander().warnings()) err << "warning: " << w << "\n";
  RunOptions run = o;
  if (run.robot.empty() && bindings.count("arm")) run.robot = skill::element_of(bindings, "arm");
  return execute(s, *root, run, out, err);
}

int cmd_plan(const std::string& scene, const std::string& goal_text, const std::string& pddl_dir, std::ostream& out,
             std::ostream& err) {
  Session s(scene);
  const auto goal = plan::parse_goal(goal_text);
  plan::Domain domain;
  plan::Problem problem;
  const plan::PlanResult r = s.plan_goal(goal, &domain, &problem);
  for (const auto& w : domain.warnings) err << "warning: " << w << "\n";
  if (!pddl_dir.empty()) {
    std::error_code ec;
    fs::create_directories(pddl_dir, ec);
    if (ec) throw IoError("cannot create " + pddl_dir + ": " + ec.message());
    const auto scene_ptr = s.world_model().snapshot();
    write_file(fs::path(pddl_dir) / "domain.pddl", [&](std::ostream& f) { f << plan::to_pddl_domain(domain, *scene_ptr); });
    write_file(fs::path(pddl_dir) / "problem.pddl", [&](std::ostream& f) { f << plan::to_pddl_problem(problem); });
  }
  if (r.status != plan::PlanStatus::kSolved) return plan_failure(r, err);
  out << print_plan(r);
  return kExitOk;
}

int cmd_list_skills(const std::string& scene, std::ostream& out) {
  Session s(scene);
  for (const auto& [name, d] : s.registry().descriptions()) {
    out << name << "\n";
    for (const auto& p : d.params) {
      out << "  " << p.name << " : " << p.type << " [" << skill::to_string(p.kind) << "]";
      if (p.default_value) out << " = " << skill::to_string(*p.default_value);
      out << "\n";
    }
    for (const auto& c : d.preconditions) out << "  pre  " << c.describe() << "\n";
    for (const auto& c : d.holdconditions) out << "  hold " << c.describe() << "\n";
    for (const auto& c : d.postconditions) out << "  post " << c.describe() << "\n";
    for (const auto* impl : s.registry().implementations_of(name)) {
      out << "  impl " << impl->name << (impl->is_compound() ? " (compound)" : "");
      for (const auto& [param, concept_name] : impl->specializations) out << " " << param << ":" << concept_name;
      out << "\n";
    }
  }
  return kExitOk;
}

int cmd_report(const std::string& path, const std::string& out_path, std::ostream& out) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path);
  const RunLog log = read_run_log(f);
  write_report(coverage_report(log), out);
  if (!out_path.empty()) write_file(out_path, [&](std::ostream& c) { write_coverage_csv(log, c); });
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Skill-based robot programming on simulated compliant arms", "skillsim"};
  app.require_subcommand(1);
  RunOptions run;
  std::string goal, skill_name, log_path, coverage_path, pddl_dir;
  std::vector<std::string> params;

  const auto add_run_flags = [&](CLI::App* c) {
    c->add_option("--robot", run.robot, "Arm element id (required when the scene has several arms)");
    c->add_option("--out", run.out, std::string("Artifact directory (default $") + kLogDirEnv + " or skillsim_runs)");
    c->add_option("--max-time", run.max_time, "Simulated time budget, s")->check(CLI::PositiveNumber);
  };
  CLI::App* run_goal = app.add_subcommand("run-goal", "Plan a goal, execute the plan and write logs");
  run_goal->add_option("scene", run.scene, "Scene file")->required();
  run_goal->add_option("goal", goal, "Goal, e.g. \"(skiros:clean station surface)\"")->required();
  add_run_flags(run_goal);

  CLI::App* run_skill = app.add_subcommand("run-skill", "Execute one skill with explicit parameters");
  run_skill->add_option("scene", run.scene, "Scene file")->required();
  run_skill->add_option("skill", skill_name, "Skill name")->required();
  run_skill->add_option("--param", params, "name=value, repeatable");
  add_run_flags(run_skill);

  CLI::App* report = app.add_subcommand("report", "Coverage and force report for a run log");
  report->add_option("log", log_path, "Run log CSV")->required();
  report->add_option("--coverage-csv", coverage_path, "Write lane path and covered cells here");

  std::string scene_only;
  CLI::App* list = app.add_subcommand("list-skills", "List skill descriptions and implementations");
  list->add_option("scene", scene_only, "Scene file")->required();

  CLI::App* plan_cmd = app.add_subcommand("plan", "Plan a goal without executing it");
  plan_cmd->add_option("scene", scene_only, "Scene file")->required();
  plan_cmd->add_option("goal", goal, "Goal")->required();
  plan_cmd->add_option("--pddl", pddl_dir, "Also write domain.pddl and problem.pddl here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    err << app.help();
    return kExitInput;
  }

  try {
    if (run_goal->parsed()) return cmd_run_goal(run, goal, out, err);
    if (run_skill->parsed()) return cmd_run_skill(run, skill_name, params, out, err);
    if (report->parsed()) return cmd_report(log_path, coverage_path, out);
    if (list->parsed()) return cmd_list_skills(scene_only, out);
    if (plan_cmd->parsed()) return cmd_plan(scene_only, goal, pddl_dir, out, err);
  } catch (const plan::GoalParseError& e) {
    err << "goal parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitInput;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitInput;
  } catch (const wm::ParseError& e) {
    err << "scene parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const LogFormatError& e) {
    err << "malformed log: " << e.what() << "\n";
    return kExitInput;
  } catch (const plan::PlanError& e) {
    err << "planning error: " << e.what() << "\n";
    return kExitPlan;
  } catch (const skill::SkillError& e) {
    err << "skill error: " << e.what() << "\n";
    return kExitPlan;
  } catch (const wm::WorldModelError& e) {
    err << "world model error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace skillsim::app
