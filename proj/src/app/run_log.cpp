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

#include "skillsim/app/run_log.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace skillsim::app {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void put_pose(std::ostream& out, const Pose& p) {
  const auto& q = p.orientation;
  out << num(p.position.x()) << ',' << num(p.position.y()) << ',' << num(p.position.z()) << ',' << num(q.x())
      << ',' << num(q.y()) << ',' << num(q.z()) << ',' << num(q.w());
}

std::string column_header(int dof) {
  std::string h = "t";
  for (const char* prefix : {"ref", "act"}) {
    for (const char* c : {"x", "y", "z", "qx", "qy", "qz", "qw"}) h += std::string(",") + prefix + "_" + c;
  }
  for (const char* c : {"fx", "fy", "fz", "tx", "ty", "tz"}) h += std::string(",") + c;
  for (int i = 0; i < dof; ++i) h += ",q" + std::to_string(i + 1);
  return h + ",skill";
}

void write_header(const RunLog& log, std::ostream& out) {
  out << "# skillsim run log v1\n";
  out << "# robot " << log.robot << "\n";
  out << "# controller " << log.controller << "\n";
  out << "# dof " << log.dof << "\n";
  out << "# dt " << num(log.dt) << "\n";
  for (const auto& s : log.surfaces) {
    const auto& q = s.pose.orientation;
    out << "# surface " << s.id << ' ' << num(s.pose.position.x()) << ' ' << num(s.pose.position.y()) << ' '
        << num(s.pose.position.z()) << ' ' << num(q.x()) << ' ' << num(q.y()) << ' ' << num(q.z()) << ' '
        << num(q.w()) << ' ' << num(s.width) << ' ' << num(s.height) << ' ' << num(s.footprint_radius) << "\n";
  }
  for (const auto& w : log.force_windows) {
    out << "# force_window " << num(w.t_on) << ' ' << num(w.t_off) << ' ' << num(w.setpoint) << "\n";
  }
  out << column_header(log.dof) << "\n";
}

void write_row(const LogRow& r, std::ostream& out) {
  out << num(r.t) << ',';
  put_pose(out, r.reference);
  out << ',';
  put_pose(out, r.actual);
  for (int i = 0; i < 6; ++i) out << ',' << num(r.wrench[i]);
  for (int i = 0; i < r.q.size(); ++i) out << ',' << num(r.q[i]);
  out << ',' << r.skill << '\n';
}

double parse_number(const std::string& s, int line) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw LogFormatError("line " + std::to_string(line) + ": not a number: '" + s + "'");
  }
}

Pose pose_from(const std::vector<double>& v, size_t at) {
  return Pose(Vec3(v[at], v[at + 1], v[at + 2]),
              Quat(v[at + 6], v[at + 3], v[at + 4], v[at + 5]).normalized());
}

}  // namespace

void write_run_log(const RunLog& log, std::ostream& out) {
  write_header(log, out);
  for (const auto& r : log.rows) write_row(r, out);
}

void write_plot_csv(const RunLog& log, std::ostream& out, int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  write_header(log, out);
  for (size_t i = 0; i < log.rows.size(); i += static_cast<size_t>(stride)) write_row(log.rows[i], out);
}

RunLog read_run_log(std::istream& in) {
  RunLog log;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  bool dof_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      ss >> key;
      if (key == "robot") {
        ss >> log.robot;
      } else if (key == "controller") {
        ss >> log.controller;
      } else if (key == "dof") {
        if (!(ss >> log.dof) || log.dof < 0) throw LogFormatError("line " + std::to_string(lineno) + ": bad dof");
        dof_seen = true;
      } else if (key == "dt") {
        if (!(ss >> log.dt) || !(log.dt > 0)) throw LogFormatError("line " + std::to_string(lineno) + ": bad dt");
      } else if (key == "surface") {
        SurfaceMeta s;
        double v[10];
        ss >> s.id;
        for (double& x : v) {
          if (!(ss >> x)) throw LogFormatError("line " + std::to_string(lineno) + ": bad surface record");
        }
        s.pose = Pose(Vec3(v[0], v[1], v[2]), Quat(v[6], v[3], v[4], v[5]).normalized());
        s.width = v[7];
        s.height = v[8];
        s.footprint_radius = v[9];
        log.surfaces.push_back(s);
      } else if (key == "force_window") {
        ForceWindow w;
        if (!(ss >> w.t_on >> w.t_off >> w.setpoint)) {
          throw LogFormatError("line " + std::to_string(lineno) + ": bad force window");
        }
        log.force_windows.push_back(w);
      }
      continue;
    }
    if (!header_seen) {
      if (line.rfind("t,", 0) != 0) throw LogFormatError("line " + std::to_string(lineno) + ": missing column header");
      if (!dof_seen) throw LogFormatError("missing '# dof' metadata before the column header");
      if (line != column_header(log.dof)) {
        throw LogFormatError("line " + std::to_string(lineno) + ": columns do not match dof " + std::to_string(log.dof));
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    const size_t numeric = 1 + 14 + 6 + static_cast<size_t>(log.dof);
    if (cells.size() != numeric + 1) {
      throw LogFormatError("line " + std::to_string(lineno) + ": expected " + std::to_string(numeric + 1) +
                           " columns, got " + std::to_string(cells.size()));
    }
    std::vector<double> v(numeric);
    for (size_t i = 0; i < numeric; ++i) v[i] = parse_number(cells[i], lineno);
    LogRow r;
    r.t = v[0];
    r.reference = pose_from(v, 1);
    r.actual = pose_from(v, 8);
    for (int i = 0; i < 6; ++i) r.wrench[i] = v[15 + i];
    r.q = sim::VecX(log.dof);
    for (int i = 0; i < log.dof; ++i) r.q[i] = v[21 + i];
    r.skill = cells.back();
    if (!log.rows.empty() && !(r.t > log.rows.back().t)) {
      throw LogFormatError("line " + std::to_string(lineno) + ": time is not strictly increasing");
    }
    log.rows.push_back(std::move(r));
  }
  if (!header_seen) throw LogFormatError("missing column header");
  return log;
}

CoverageGrid::CoverageGrid(double width, double height, double cell)
    : width_(std::max(width, 0.0)), height_(std::max(height, 0.0)), cell_(cell) {
  if (!(cell > 0.0)) throw std::invalid_argument("cell size must be > 0");
  // A degenerate side still holds one row of cells.
  nx_ = std::max(1, static_cast<int>(std::ceil(width_ / cell_ - 1e-9)));
  ny_ = std::max(1, static_cast<int>(std::ceil(height_ / cell_ - 1e-9)));
  cells_.assign(static_cast<size_t>(nx_) * ny_, 0);
}

Vec3 CoverageGrid::centre(int ix, int iy) const {
  // Cells tile the rectangle from its lower-left corner; the last row and
  // column may be clipped, their centres stay inside the rectangle.
  const double x0 = -width_ / 2, y0 = -height_ / 2;
  const double cx = std::min(x0 + (ix + 0.5) * cell_, (x0 + ix * cell_ + width_ / 2) / 2);
  const double cy = std::min(y0 + (iy + 0.5) * cell_, (y0 + iy * cell_ + height_ / 2) / 2);
  return {cx, cy, 0.0};
}

void CoverageGrid::mark(double x, double y, double radius) {
  const double x0 = -width_ / 2, y0 = -height_ / 2;
  const int ix0 = std::max(0, static_cast<int>(std::floor((x - radius - x0) / cell_)) - 1);
  const int ix1 = std::min(nx_ - 1, static_cast<int>(std::floor((x + radius - x0) / cell_)) + 1);
  const int iy0 = std::max(0, static_cast<int>(std::floor((y - radius - y0) / cell_)) - 1);
  const int iy1 = std::min(ny_ - 1, static_cast<int>(std::floor((y + radius - y0) / cell_)) + 1);
  const double r2 = radius * radius;
  for (int iy = iy0; iy <= iy1; ++iy) {
    for (int ix = ix0; ix <= ix1; ++ix) {
      const Vec3 c = centre(ix, iy);
      const double dx = c.x() - x, dy = c.y() - y;
      if (dx * dx + dy * dy <= r2) cells_[iy * nx_ + ix] = 1;
    }
  }
}

double CoverageGrid::fraction() const {
  if (cells_.empty()) return 0.0;
  return static_cast<double>(std::count(cells_.begin(), cells_.end(), 1)) / static_cast<double>(cells_.size());
}

double normal_force(const SurfaceMeta& s, const LogRow& row) {
  const Vec3 f_world = row.actual.orientation * row.wrench.head<3>();
  return f_world.dot(s.pose.orientation * Vec3::UnitZ());
}

bool footprint_over(const SurfaceMeta& s, const Vec3& local) {
  const double dx = std::max(0.0, std::abs(local.x()) - s.width / 2);
  const double dy = std::max(0.0, std::abs(local.y()) - s.height / 2);
  return dx * dx + dy * dy <= s.footprint_radius * s.footprint_radius;
}

CoverageTracker::CoverageTracker(SurfaceMeta surface)
    : surface_(std::move(surface)),
      contact_(surface_.width, surface_.height),
      geometric_(surface_.width, surface_.height) {}

void CoverageTracker::add(const LogRow& row) {
  const Pose inv = surface_.pose.inverse();
  const Vec3 a = inv.transform_point(row.actual.position);
  if (footprint_over(surface_, a) && normal_force(surface_, row) > kContactThreshold) {
    contact_.mark(a.x(), a.y(), surface_.footprint_radius);
  }
  const Vec3 r = inv.transform_point(row.reference.position);
  if (footprint_over(surface_, r) && std::abs(r.z()) <= kPlaneTolerance) geometric_.mark(r.x(), r.y(), surface_.footprint_radius);
}

std::vector<CoverageReport> coverage_report(const RunLog& log, double transient) {
  std::vector<CoverageReport> out;
  for (const auto& s : log.surfaces) {
    CoverageTracker tracker(s);
    CoverageReport rep;
    rep.surface = s.id;
    double sum = 0.0, steady_sum = 0.0;
    std::size_t steady_n = 0;
    const Pose inv = s.pose.inverse();
    for (const auto& row : log.rows) {
      tracker.add(row);
      const double fn = normal_force(s, row);
      if (fn > kContactThreshold) {
        if (rep.contact_rows == 0) {
          rep.min_force = rep.max_force = fn;
        } else {
          rep.min_force = std::min(rep.min_force, fn);
          rep.max_force = std::max(rep.max_force, fn);
        }
        ++rep.contact_rows;
        sum += fn;
      }
      const Vec3 a = inv.transform_point(row.actual.position);
      const bool over = footprint_over(s, a) && std::abs(a.z()) < 0.02;
      for (const auto& w : log.force_windows) {
        if (over && row.t >= w.t_on + transient && row.t <= w.t_off) {
          steady_sum += fn;
          ++steady_n;
          rep.setpoint = w.setpoint;
          break;
        }
      }
    }
    rep.fraction = tracker.contact().fraction();
    rep.geometric_fraction = tracker.geometric().fraction();
    if (rep.contact_rows > 0) rep.mean_force = sum / static_cast<double>(rep.contact_rows);
    if (steady_n > 0) rep.steady_force = steady_sum / static_cast<double>(steady_n);
    if (!log.rows.empty()) rep.duration = log.rows.back().t - log.rows.front().t;
    out.push_back(rep);
  }
  return out;
}

void write_report(const std::vector<CoverageReport>& reports, std::ostream& out) {
  for (const auto& r : reports) {
    out << "surface " << r.surface << "\n";
    out << "  coverage " << num(r.fraction) << "\n";
    out << "  geometric_coverage " << num(r.geometric_fraction) << "\n";
    out << "  contact_rows " << r.contact_rows << "\n";
    out << "  force_mean " << num(r.mean_force) << " min " << num(r.min_force) << " max " << num(r.max_force)
        << "\n";
    out << "  steady_force " << num(r.steady_force) << " setpoint " << num(r.setpoint) << "\n";
    out << "  duration " << num(r.duration) << "\n";
  }
}

void write_coverage_csv(const RunLog& log, std::ostream& out, int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  out << "kind,surface,x,y,value\n";
  for (const auto& s : log.surfaces) {
    const Pose inv = s.pose.inverse();
    for (size_t i = 0; i < log.rows.size(); i += static_cast<size_t>(stride)) {
      const Vec3 r = inv.transform_point(log.rows[i].reference.position);
      const Vec3 a = inv.transform_point(log.rows[i].actual.position);
      out << "path," << s.id << ',' << num(r.x()) << ',' << num(r.y()) << ',' << num(r.z()) << '\n';
      out << "actual," << s.id << ',' << num(a.x()) << ',' << num(a.y()) << ',' << num(normal_force(s, log.rows[i]))
          << '\n';
    }
    CoverageTracker tracker(s);
    for (const auto& row : log.rows) tracker.add(row);
    const CoverageGrid& g = tracker.contact();
    for (int iy = 0; iy < g.ny(); ++iy) {
      for (int ix = 0; ix < g.nx(); ++ix) {
        const Vec3 c = g.centre(ix, iy);
        out << "cell," << s.id << ',' << num(c.x()) << ',' << num(c.y()) << ',' << (g.covered(ix, iy) ? 1 : 0)
            << '\n';
      }
    }
  }
}

}  // namespace skillsim::app
