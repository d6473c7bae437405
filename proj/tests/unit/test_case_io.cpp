#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "random_state.hpp"
#include "simplets/case_io.hpp"
#include "simplets/error.hpp"

using namespace simplets;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "simplets_case_io_test";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<double> split_numbers(const std::string& line) {
  std::vector<double> v;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::strtod(cell.c_str(), nullptr));
  return v;
}

}  // namespace

TEST(Parameters, DerivedCoefficients) {
  const auto m = derive_parameters(0.001, 5.0 / 3.0);
  EXPECT_EQ(m.A, 0.5);
  EXPECT_EQ(m.CT3, 0.4);
  EXPECT_NEAR(m.B, 5.53892e-4, 1e-9);
  EXPECT_NEAR(m.CT1, 8.30838e-4, 1e-9);
  EXPECT_NEAR(m.CT2, 4.43113e-4, 1e-9);
  EXPECT_EQ(derive_parameters(0.001, 5.0 / 3.0), m);
  EXPECT_THROW(derive_parameters(0.0, 5.0 / 3.0), ConfigError);
  EXPECT_THROW(derive_parameters(-1.0, 5.0 / 3.0), ConfigError);
  EXPECT_THROW(derive_parameters(0.001, 1.0), ConfigError);
}

TEST(Parameters, InletVelocityAndTransport) {
  EXPECT_DOUBLE_EQ(inlet_velocity(2.43, 5.0 / 3.0), 2.43 * std::sqrt(5.0 / 6.0));
  EXPECT_NEAR(inlet_velocity(2.43, 5.0 / 3.0), 2.2183, 5e-5);
  EXPECT_EQ(hard_sphere_transport(1.0).mu, 1.0);
  EXPECT_EQ(hard_sphere_transport(4.0).mu, 2.0);
  EXPECT_EQ(hard_sphere_transport(4.0).lambda, 2.0);
  double last = 0.0;
  for (double T = 0.1; T < 10.0; T += 0.1) {
    EXPECT_GT(hard_sphere_transport(T).mu, last);
    last = hard_sphere_transport(T).mu;
  }
}

TEST(ChannelCase, FullMeshAndSquares) {
  CaseParameters p;
  auto a = build_channel_case(p, false);
  EXPECT_EQ(a.problem.geom.nx(), 4032);
  EXPECT_EQ(a.problem.geom.ny(), 200);
  EXPECT_EQ(a.problem.mask.count(CellKind::Solid), 400u);
  EXPECT_EQ(a.problem.mask.cells(110, 90), CellKind::Solid);
  EXPECT_EQ(a.problem.mask.cells(129, 109), CellKind::Solid);
  EXPECT_EQ(a.problem.bc.inlet.u, inlet_velocity(2.43, 5.0 / 3.0));
  EXPECT_EQ(a.problem.bc.wall(0).T, 1.0);
  EXPECT_EQ(a.problem.bc.wall(0).u, a.problem.bc.inlet.u);
  EXPECT_EQ(a.problem.bc.wall(1).u, 0.0);

  p.height = 20.0;
  auto b = build_channel_case(p, false);
  EXPECT_EQ(b.problem.geom.ny(), 400);
  EXPECT_EQ(b.problem.mask.count(CellKind::Solid), 800u);
  EXPECT_EQ(b.problem.mask.cells(115, 95), CellKind::Solid);   // centred in y band [0, 10]
  EXPECT_EQ(b.problem.mask.cells(115, 295), CellKind::Solid);  // and [10, 20]

  p.height = 10.0;
  p.wall_velocity = -inlet_velocity(p.mach, p.gamma);
  EXPECT_EQ(build_channel_case(p, false).problem.bc.wall(0).u, -a.problem.bc.inlet.u);
}

TEST(ChannelCase, DeskMeshSnapsSquare) {
  CaseParameters p;
  p.spacing = 0.2;
  auto s = build_channel_case(p, true);
  EXPECT_EQ(s.problem.geom.nx(), 1008);
  EXPECT_EQ(s.problem.geom.ny(), 50);
  EXPECT_EQ(s.problem.mask.count(CellKind::Solid), 25u);
  EXPECT_TRUE(s.fields.has_planes());
}

TEST(ChannelCase, InitialStateAndReproducibility) {
  CaseParameters p;
  p.spacing = 0.2;
  auto a = build_channel_case(p, false);
  auto b = build_channel_case(p, false);
  for (int k = 0; k < 3; ++k) EXPECT_TRUE(a.fields.buffer(k) == b.fields.buffer(k));
  EXPECT_TRUE(a.fields.diff_buffer(0) == b.fields.diff_buffer(0));
  const auto& m = a.problem.mask;
  const State& s = a.fields.prev();
  const double uin = a.problem.bc.inlet.u;
  for (int j = 0; j < m.ny; ++j) {
    EXPECT_EQ(s.u(0, j), uin);
    for (int i = 0; i < m.nx; ++i) {
      if (!m.fluid(i, j)) continue;
      EXPECT_EQ(s.p(i, j), 1.0);
      EXPECT_EQ(s.T(i, j), 1.0);
      EXPECT_EQ(s.rho(i, j), 1.0);
      if (m.u_faces(i, j) == FaceKind::Computed) EXPECT_EQ(s.u(i, j), uin);
      EXPECT_EQ(s.v(i, j), 0.0);
    }
  }
}

TEST(ClosedCases, CavityLidAndBox) {
  CaseParameters p;
  p.kind = CaseKind::Cavity;
  p.length = 1.0;
  p.height = 1.0;
  p.spacing = 1.0 / 64.0;
  auto c = build_case(p, false);
  EXPECT_EQ(c.problem.geom.nx(), 64);
  EXPECT_EQ(c.problem.mask.sides.west, SideKind::Wall);
  EXPECT_EQ(c.problem.mask.sides.north_wall, 1);
  EXPECT_NEAR(c.problem.bc.wall(1).u, 0.1 * std::sqrt(5.0 / 6.0), 1e-15);
  p.kind = CaseKind::Box;
  EXPECT_EQ(build_case(p, false).problem.bc.wall(1).u, 0.0);
}

TEST(WriteFields, SingleCellCsv) {
  const auto g = build_uniform_grid(1.0, 1.0, 1.0);
  State s(1, 1);
  s.p(0, 0) = 1.5;
  s.T(0, 0) = 0.75;
  s.rho(0, 0) = 2.0;
  s.u(0, 0) = 1.0;
  s.u(1, 0) = 2.0;
  s.v(0, 0) = -1.0;
  s.v(0, 1) = 0.0;
  const auto path = scratch("one.csv");
  write_fields(g, s, path, FieldFormat::Csv);
  const auto l = lines_of(path);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "x,y,p,T,rho,u,v");
  EXPECT_EQ(split_numbers(l[1]), (std::vector<double>{0.5, 0.5, 1.5, 0.75, 2.0, 1.5, -0.5}));
}

TEST(WriteFields, CsvRoundTripsAllDigits) {
  std::mt19937_64 rng(77);
  const auto g = build_uniform_grid(0.4, 0.3, 0.1);
  State s(4, 3);
  testing_support::randomize(rng, s);
  const auto path = scratch("rt.csv");
  write_fields(g, s, path, FieldFormat::Csv);
  const auto l = lines_of(path);
  ASSERT_EQ(l.size(), 13u);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i) {
      const auto v = split_numbers(l[static_cast<std::size_t>(1 + j * 4 + i)]);
      ASSERT_EQ(v.size(), 7u);
      EXPECT_EQ(v[0], g.xv(i));
      EXPECT_EQ(v[1], g.yv(j));
      EXPECT_EQ(v[2], s.p(i, j));
      EXPECT_EQ(v[3], s.T(i, j));
      EXPECT_EQ(v[4], s.rho(i, j));
      EXPECT_EQ(v[5], 0.5 * (s.u(i, j) + s.u(i + 1, j)));
      EXPECT_EQ(v[6], 0.5 * (s.v(i, j) + s.v(i, j + 1)));
    }
  // deterministic bytes
  const auto path2 = scratch("rt2.csv");
  write_fields(g, s, path2, FieldFormat::Csv);
  EXPECT_EQ(lines_of(path2), l);
}

TEST(WriteFields, VtkLayout) {
  const auto g = build_uniform_grid(0.5, 0.3, 0.1);
  State s(5, 3);
  s.p.fill(1.0);
  const auto path = scratch("f.vtk");
  write_fields(g, s, path, FieldFormat::Vtk);
  const auto l = lines_of(path);
  EXPECT_EQ(l[0], "# vtk DataFile Version 3.0");
  EXPECT_EQ(l[2], "ASCII");
  EXPECT_EQ(l[3], "DATASET STRUCTURED_POINTS");
  EXPECT_EQ(l[4], "DIMENSIONS 5 3 1");
  EXPECT_EQ(l[7], "POINT_DATA 15");
  int blocks = 0;
  for (const auto& x : l) blocks += x.rfind("SCALARS ", 0) == 0;
  EXPECT_EQ(blocks, 5);
  EXPECT_EQ(l.size(), 8u + 5u * (2u + 15u));
}

TEST(WriteFields, UnwritablePath) {
  const auto g = build_uniform_grid(1.0, 1.0, 1.0);
  State s(1, 1);
  try {
    write_fields(g, s, "/nonexistent/dir/f.csv", FieldFormat::Csv);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/f.csv"), std::string::npos);
  }
}

TEST(MassBalance, UniformFlowBalances) {
  CaseParameters p;
  p.length = 4.0;
  p.height = 1.0;
  p.spacing = 0.25;
  p.square_size = 0.0;
  auto c = build_channel_case(p, false);
  const SchemeConfig sc{};
  const auto mb = boundary_mass_flux(c.problem, c.fields.prev(), sc);
  EXPECT_NEAR(mb.inflow, c.problem.bc.inlet.u * 1.0, 1e-14);
  EXPECT_NEAR(mb.relative_imbalance(), 0.0, 1e-15);
  EXPECT_NEAR(continuity_imbalance(c.problem, c.fields.prev(), c.fields.prev(), sc, 0.01), 0.0, 1e-14);
}
