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

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

namespace skillsim::app {
namespace {

SurfaceMeta plate() {
  SurfaceMeta s;
  s.id = "plate";
  s.pose = Pose(Vec3(0.3, -0.1, 0.7), Quat(Eigen::AngleAxisd(0.4, Vec3(1, 2, 3).normalized())));
  s.width = 0.1;
  s.height = 0.05;
  s.footprint_radius = 0.01;
  return s;
}

// Row at surface-frame point (x, y, z) pushed back with `force` N along the normal.
LogRow row_at(const SurfaceMeta& s, double t, double x, double y, double z, double force) {
  LogRow r;
  r.t = t;
  r.actual = Pose(s.pose.transform_point(Vec3(x, y, z)), s.pose.orientation);
  r.reference = r.actual;
  r.wrench.head<3>() = Vec3(0, 0, force);
  r.q = sim::VecX::Zero(2);
  r.skill = "wipe";
  return r;
}

RunLog log_with(const SurfaceMeta& s) {
  RunLog log;
  log.robot = "arm";
  log.controller = "cartesian_impedance_controller";
  log.dof = 2;
  log.surfaces = {s};
  return log;
}

TEST(RunLog, RoundTripKeepsEveryField) {
  RunLog log = log_with(plate());
  log.force_windows = {{0.5, 1.5, 8.0}};
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 50; ++i) {
    LogRow r;
    r.t = i * log.dt;
    r.reference = Pose(Vec3(u(rng), u(rng), u(rng)), Quat(u(rng), u(rng), u(rng), u(rng)).normalized());
    r.actual = Pose(Vec3(u(rng), u(rng), u(rng)), Quat(u(rng), u(rng), u(rng), u(rng)).normalized());
    for (int k = 0; k < 6; ++k) r.wrench[k] = 20 * u(rng);
    r.q = sim::VecX::Random(2);
    r.skill = i < 25 ? "goto_linear" : "apply_force";
    log.rows.push_back(r);
  }
  std::stringstream out;
  write_run_log(log, out);
  const RunLog back = read_run_log(out);
  EXPECT_EQ(back.robot, log.robot);
  EXPECT_EQ(back.controller, log.controller);
  EXPECT_EQ(back.dof, 2);
  ASSERT_EQ(back.surfaces.size(), 1u);
  EXPECT_EQ(back.surfaces[0].id, "plate");
  EXPECT_NEAR(back.surfaces[0].footprint_radius, 0.01, 1e-12);
  ASSERT_EQ(back.force_windows.size(), 1u);
  EXPECT_EQ(back.force_windows[0].setpoint, 8.0);
  ASSERT_EQ(back.rows.size(), log.rows.size());
  for (size_t i = 0; i < log.rows.size(); ++i) {
    const LogRow &a = log.rows[i], &b = back.rows[i];
    EXPECT_NEAR(a.t, b.t, 1e-12);
    EXPECT_LT((a.actual.position - b.actual.position).norm(), 1e-9);
    EXPECT_LT(a.actual.orientation.angularDistance(b.actual.orientation), 1e-8);
    EXPECT_LT((a.reference.position - b.reference.position).norm(), 1e-9);
    EXPECT_LT((a.wrench - b.wrench).norm(), 1e-7);
    EXPECT_LT((a.q - b.q).norm(), 1e-9);
    EXPECT_EQ(a.skill, b.skill);
  }
  // Writing the parsed log again is byte-identical.
  std::stringstream again, first;
  write_run_log(back, again);
  write_run_log(read_run_log(again), first);
  EXPECT_EQ(again.str(), first.str());
}

TEST(RunLog, PlotCsvKeepsEveryTenthRow) {
  RunLog log = log_with(plate());
  for (int i = 0; i < 95; ++i) log.rows.push_back(row_at(plate(), i * 1e-3, 0, 0, 0, 0));
  std::stringstream out;
  write_plot_csv(log, out);
  const RunLog plot = read_run_log(out);
  ASSERT_EQ(plot.rows.size(), 10u);
  EXPECT_NEAR(plot.rows[3].t, 0.030, 1e-12);
  EXPECT_THROW(write_plot_csv(log, out, 0), std::invalid_argument);
}

TEST(RunLog, RejectsMalformedInput) {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_run_log(in);
  };
  std::stringstream good;
  RunLog log = log_with(plate());
  log.rows = {row_at(plate(), 0.0, 0, 0, 0, 0), row_at(plate(), 0.001, 0, 0, 0, 0)};
  write_run_log(log, good);
  const std::string text = good.str();
  EXPECT_NO_THROW(parse(text));
  EXPECT_THROW(parse(""), LogFormatError);
  EXPECT_THROW(parse("# dof 2\nt,foo\n"), LogFormatError);
  // Time must increase.
  std::string back = text;
  back.replace(back.rfind("\n0.001,"), 7, "\n0.000,");
  EXPECT_THROW(parse(back), LogFormatError);
  // Short row.
  EXPECT_THROW(parse(text + "0.002,1,2\n"), LogFormatError);
  // Non-numeric value.
  std::string bad = text;
  bad.replace(bad.rfind("\n0.001,"), 7, "\nzero,");
  EXPECT_THROW(parse(bad), LogFormatError);
}

TEST(Coverage, EmptyLogCoversNothing) {
  const RunLog log = log_with(plate());
  const auto rep = coverage_report(log);
  ASSERT_EQ(rep.size(), 1u);
  EXPECT_EQ(rep[0].fraction, 0.0);
  EXPECT_EQ(rep[0].geometric_fraction, 0.0);
  EXPECT_EQ(rep[0].contact_rows, 0u);
  EXPECT_EQ(rep[0].duration, 0.0);
}

TEST(Coverage, NoContactCoversNothing) {
  const SurfaceMeta s = plate();
  RunLog log = log_with(s);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> x(-0.05, 0.05), y(-0.025, 0.025), f(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) log.rows.push_back(row_at(s, i * 1e-3, x(rng), y(rng), 0.0, f(rng)));
  const auto rep = coverage_report(log);
  EXPECT_EQ(rep[0].fraction, 0.0);
  EXPECT_EQ(rep[0].contact_rows, 0u);
  // The reference raster still counts geometrically.
  EXPECT_GT(rep[0].geometric_fraction, 0.9);
}

TEST(Coverage, FullSweepCoversEverything) {
  const SurfaceMeta s = plate();
  RunLog log = log_with(s);
  int i = 0;
  for (double y = -0.025; y <= 0.025 + 1e-9; y += 0.005) {
    for (double x = -0.05; x <= 0.05 + 1e-9; x += 0.002) log.rows.push_back(row_at(s, 1e-3 * i++, x, y, -1e-3, 8.0));
  }
  const auto rep = coverage_report(log);
  EXPECT_EQ(rep[0].fraction, 1.0);
  EXPECT_EQ(rep[0].geometric_fraction, 1.0);
  EXPECT_DOUBLE_EQ(rep[0].mean_force, 8.0);
}

TEST(Coverage, GridMatchesBruteForce) {
  // Independent rasterization: every cell centre against every contact point.
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const double w = 0.003 + 0.2 * u(rng), h = 0.003 + 0.1 * u(rng), r = 0.002 + 0.02 * u(rng);
    CoverageGrid grid(w, h);
    std::vector<Eigen::Vector2d> points;
    for (int k = 0; k < 30; ++k) {
      points.emplace_back((u(rng) - 0.5) * (w + 0.02), (u(rng) - 0.5) * (h + 0.02));
      grid.mark(points.back().x(), points.back().y(), r);
    }
    const int nx = static_cast<int>(std::ceil(w / kCellSize - 1e-9)), ny = static_cast<int>(std::ceil(h / kCellSize - 1e-9));
    ASSERT_EQ(grid.nx(), nx);
    ASSERT_EQ(grid.ny(), ny);
    int covered = 0;
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        const double x_lo = -w / 2 + ix * kCellSize, x_hi = std::min(w / 2, x_lo + kCellSize);
        const double y_lo = -h / 2 + iy * kCellSize, y_hi = std::min(h / 2, y_lo + kCellSize);
        const Eigen::Vector2d c((x_lo + x_hi) / 2, (y_lo + y_hi) / 2);
        bool hit = false;
        for (const auto& p : points) hit |= (p - c).norm() <= r;
        covered += hit;
        EXPECT_EQ(grid.covered(ix, iy), hit) << trial << " " << ix << " " << iy;
      }
    }
    EXPECT_DOUBLE_EQ(grid.fraction(), static_cast<double>(covered) / (nx * ny));
  }
}

TEST(Coverage, DegenerateSurfaceIsOneCell) {
  CoverageGrid grid(0.0, 0.0);
  EXPECT_EQ(grid.nx(), 1);
  EXPECT_EQ(grid.ny(), 1);
  EXPECT_EQ(grid.fraction(), 0.0);
  grid.mark(0.004, 0.0, 0.005);
  EXPECT_EQ(grid.fraction(), 1.0);
}

TEST(Coverage, NormalForceUsesTheSurfaceNormal) {
  const SurfaceMeta s = plate();
  LogRow r = row_at(s, 0, 0, 0, 0, 0);
  // Tool turned about the normal: the force along the normal is unchanged.
  r.actual.orientation = s.pose.orientation * Quat(Eigen::AngleAxisd(1.1, Vec3::UnitZ()));
  r.wrench.head<3>() = Vec3(0, 0, 6.5);
  EXPECT_NEAR(normal_force(s, r), 6.5, 1e-12);
  // Tool flipped: a pull reads negative.
  r.actual.orientation = s.pose.orientation * Quat(Eigen::AngleAxisd(M_PI, Vec3::UnitX()));
  EXPECT_NEAR(normal_force(s, r), -6.5, 1e-12);
}

TEST(Coverage, SteadyForceSkipsTheTransient) {
  const SurfaceMeta s = plate();
  RunLog log = log_with(s);
  log.force_windows = {{1.0, 5.0, 10.0}};
  for (int i = 0; i <= 6000; ++i) {
    const double t = i * 1e-3;
    const double f = t < 1.0 ? 0.0 : (t < 3.0 ? 30.0 : 10.0);
    log.rows.push_back(row_at(s, t, 0, 0, -1e-3, f));
  }
  const auto rep = coverage_report(log);
  EXPECT_NEAR(rep[0].steady_force, 10.0, 1e-12);
  EXPECT_EQ(rep[0].setpoint, 10.0);
  EXPECT_EQ(rep[0].max_force, 30.0);
}

TEST(Coverage, ReportIsDeterministic) {
  const SurfaceMeta s = plate();
  RunLog log = log_with(s);
  for (int i = 0; i < 500; ++i) log.rows.push_back(row_at(s, i * 1e-3, 0.0001 * i - 0.025, 0.0, 0.0, 3.0));
  std::stringstream a, b, c, d;
  write_report(coverage_report(log), a);
  write_report(coverage_report(log), b);
  EXPECT_EQ(a.str(), b.str());
  write_coverage_csv(log, c);
  write_coverage_csv(log, d);
  EXPECT_EQ(c.str(), d.str());
  EXPECT_NE(c.str().find("cell,plate,"), std::string::npos);
}

}  // namespace
}  // namespace skillsim::app
