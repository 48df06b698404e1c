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

// Per-step run logs, surface coverage and force statistics.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "skillsim/sim/robot_model.hpp"

namespace skillsim::app {

class LogFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LogRow {
  double t = 0.0;
  Pose reference;  // world frame
  Pose actual;     // world frame
  Vec6 wrench = Vec6::Zero();  // on the robot at the TCP, TCP frame
  sim::VecX q;
  std::string skill;
};

struct SurfaceMeta {
  std::string id;
  Pose pose;  // world frame, z is the outward normal
  double width = 0.0;
  double height = 0.0;
  double footprint_radius = 0.0;
};

// Interval with a nonzero force setpoint along the surface normal.
struct ForceWindow {
  double t_on = 0.0;
  double t_off = 0.0;
  double setpoint = 0.0;  // N
};

struct RunLog {
  std::string robot;
  std::string controller;
  int dof = 0;
  double dt = 1e-3;
  std::vector<SurfaceMeta> surfaces;
  std::vector<ForceWindow> force_windows;
  std::vector<LogRow> rows;
};

void write_run_log(const RunLog& log, std::ostream& out);
// Every `stride`-th row of the same columns.
void write_plot_csv(const RunLog& log, std::ostream& out, int stride = 10);
RunLog read_run_log(std::istream& in);

inline constexpr double kCellSize = 0.005;        // m
inline constexpr double kContactThreshold = 1.0;  // N
inline constexpr double kPlaneTolerance = 0.005;  // m, reference points counted as on the surface

// Rasterized rectangle in the surface frame, centred on the surface origin.
class CoverageGrid {
 public:
  CoverageGrid(double width, double height, double cell = kCellSize);
  // Marks every cell whose centre lies within `radius` of (x, y).
  void mark(double x, double y, double radius);
  double fraction() const;
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  bool covered(int ix, int iy) const { return cells_[iy * nx_ + ix] != 0; }
  // Cell centre in the surface frame.
  Vec3 centre(int ix, int iy) const;

 private:
  double width_, height_, cell_;
  int nx_, ny_;
  std::vector<char> cells_;
};

// Normal force (N) the surface exerts on the robot for one row.
double normal_force(const SurfaceMeta& s, const LogRow& row);

// True when a footprint centred at `local` (surface frame) overlaps the rectangle.
bool footprint_over(const SurfaceMeta& s, const Vec3& local);

// Incremental coverage: contact cells from the actual TCP while the normal
// force exceeds 1 N, geometric cells from reference points on the plane.
class CoverageTracker {
 public:
  explicit CoverageTracker(SurfaceMeta surface);
  void add(const LogRow& row);
  const CoverageGrid& contact() const { return contact_; }
  const CoverageGrid& geometric() const { return geometric_; }
  const SurfaceMeta& surface() const { return surface_; }

 private:
  SurfaceMeta surface_;
  CoverageGrid contact_;
  CoverageGrid geometric_;
};

struct CoverageReport {
  std::string surface;
  double fraction = 0.0;            // contact coverage
  double geometric_fraction = 0.0;  // reference raster coverage
  double mean_force = 0.0;          // over rows in contact, N
  double min_force = 0.0;
  double max_force = 0.0;
  double duration = 0.0;  // s, first to last row
  std::size_t contact_rows = 0;
  // Mean normal force over every force window after `transient`, and the setpoint.
  double steady_force = 0.0;
  double setpoint = 0.0;
};

inline constexpr double kForceTransient = 2.0;  // s

std::vector<CoverageReport> coverage_report(const RunLog& log, double transient = kForceTransient);
void write_report(const std::vector<CoverageReport>& reports, std::ostream& out);
// Plot-ready CSV: the lane path (downsampled reference) and the covered cells.
void write_coverage_csv(const RunLog& log, std::ostream& out, int stride = 10);

}  // namespace skillsim::app
