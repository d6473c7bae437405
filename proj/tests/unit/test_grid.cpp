#include <gtest/gtest.h>

#include <numeric>
#include <string>

#include "simplets/error.hpp"
#include "simplets/grid.hpp"

using namespace simplets;

namespace {

DomainSides closed() {
  DomainSides s;
  s.west = SideKind::Wall;
  s.east = SideKind::Wall;
  return s;
}

std::string config_error_text(double lx, double ly, double h) {
  try {
    build_uniform_grid(lx, ly, h);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Grid, ChannelMeshSizes) {
  const auto g = build_uniform_grid(201.6, 10.0, 0.05);
  EXPECT_EQ(g.nx(), 4032);
  EXPECT_EQ(g.ny(), 200);
  const auto g2 = build_uniform_grid(201.6, 20.0, 0.05);
  EXPECT_EQ(g2.nx(), 4032);
  EXPECT_EQ(g2.ny(), 400);
}

TEST(Grid, SingleCell) {
  const auto g = build_uniform_grid(1.0, 1.0, 1.0);
  EXPECT_EQ(g.nx(), 1);
  EXPECT_EQ(g.ny(), 1);
  EXPECT_DOUBLE_EQ(g.xv(0), 0.5);
  EXPECT_DOUBLE_EQ(g.yv(0), 0.5);
}

TEST(Grid, UniformSpacingAndCentres) {
  const auto g = build_uniform_grid(3.0, 2.0, 0.25);
  for (int i = 0; i < g.nx(); ++i) {
    EXPECT_DOUBLE_EQ(g.dx(i), 0.25);
    EXPECT_GT(g.xf(i + 1) - g.xf(i), 0.0);
    EXPECT_DOUBLE_EQ(g.xv(i), g.xf(i) + 0.5 * g.dx(i));
  }
  for (int j = 0; j < g.ny(); ++j) EXPECT_DOUBLE_EQ(g.dy(j), 0.25);
  // ghost widths repeat the boundary width
  EXPECT_DOUBLE_EQ(g.dx(-1), 0.25);
  EXPECT_DOUBLE_EQ(g.dy(g.ny() + 2), 0.25);
}

TEST(Grid, NonDivisibleExtentNamesAxis) {
  const auto ex = config_error_text(1.03, 1.0, 0.05);
  EXPECT_NE(ex.find("along x"), std::string::npos) << ex;
  const auto ey = config_error_text(1.0, 1.03, 0.05);
  EXPECT_NE(ey.find("along y"), std::string::npos) << ey;
  EXPECT_THROW(build_uniform_grid(1.0, 1.0, 0.0), ConfigError);
  EXPECT_THROW(build_uniform_grid(-1.0, 1.0, 0.1), ConfigError);
}

TEST(Grid, NonMonotoneFacesRejected) {
  EXPECT_THROW(GridGeometry({0.0, 1.0, 1.0}, {0.0, 1.0}), ConfigError);
}

TEST(Classify, CentreSolidOfThreeByThree) {
  const auto g = build_uniform_grid(3.0, 3.0, 1.0);
  const auto m = classify_cells(g, {Obstacle{1.0, 1.0, 2.0, 2.0, 1}}, closed());
  EXPECT_EQ(m.count(CellKind::Solid), 1u);
  EXPECT_EQ(m.count(CellKind::WallAdjacent), 8u);
  EXPECT_EQ(m.count(CellKind::Fluid), 0u);
  EXPECT_EQ(m.cells(1, 1), CellKind::Solid);
  // the west neighbour of the solid touches it on its east side
  EXPECT_TRUE(m.side_bits(0, 1) & kEast);
  EXPECT_TRUE(m.side_bits(1, 0) & kNorth);
  EXPECT_TRUE(m.side_bits(2, 1) & kWest);
  EXPECT_TRUE(m.side_bits(1, 2) & kSouth);
}

TEST(Classify, ChannelWallRows) {
  const auto g = build_uniform_grid(4.0, 2.0, 0.25);
  const auto m = classify_cells(g, {}, DomainSides{});
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      const bool edge = j == 0 || j == g.ny() - 1;
      EXPECT_EQ(m.cells(i, j), edge ? CellKind::WallAdjacent : CellKind::Fluid) << i << "," << j;
    }
  EXPECT_EQ(m.side_bits(3, 0), kSouth);
  EXPECT_EQ(m.side_bits(3, g.ny() - 1), kNorth);
}

TEST(Classify, SquareInChannel) {
  const auto g = build_uniform_grid(201.6, 10.0, 0.05);
  const auto m = classify_cells(g, {Obstacle{5.5, 4.5, 6.5, 5.5, 1}}, DomainSides{});
  EXPECT_EQ(m.count(CellKind::Solid), 400u);
  for (int j = 90; j < 110; ++j)
    for (int i = 110; i < 130; ++i) EXPECT_EQ(m.cells(i, j), CellKind::Solid);
  EXPECT_EQ(m.cells(109, 100), CellKind::WallAdjacent);
  EXPECT_EQ(m.cells(130, 100), CellKind::WallAdjacent);
  EXPECT_NE(m.cells(110, 89), CellKind::Solid);
  EXPECT_NE(m.cells(110, 110), CellKind::Solid);
}

TEST(Classify, EveryFluidSolidFaceHasOneWallTag) {
  const auto g = build_uniform_grid(4.0, 3.0, 0.5);
  const auto m = classify_cells(g, {Obstacle{1.0, 1.0, 2.0, 2.0, 1}}, closed());
  int expected = 0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i) {
      if (!m.fluid(i, j)) continue;
      for (auto [di, dj] : {std::pair{-1, 0}, {1, 0}, {0, -1}, {0, 1}}) expected += !m.fluid(i + di, j + dj);
    }
  EXPECT_EQ(static_cast<int>(m.walls.size()), expected);
  for (const auto& w : m.walls) {
    EXPECT_TRUE(m.fluid(w.fi, w.fj));
    EXPECT_FALSE(m.fluid(w.fi + w.di, w.fj + w.dj));
    int same = 0;
    for (const auto& o : m.walls) same += o.fi == w.fi && o.fj == w.fj && o.di == w.di && o.dj == w.dj;
    EXPECT_EQ(same, 1);
    const bool obstacle = w.fi + w.di >= 0 && w.fi + w.di < g.nx() && w.fj + w.dj >= 0 && w.fj + w.dj < g.ny();
    EXPECT_EQ(w.wall_id, obstacle ? 1 : 0);
  }
}

TEST(Classify, FaceKindsOfChannel) {
  const auto g = build_uniform_grid(2.0, 1.0, 0.25);
  const auto m = classify_cells(g, {}, DomainSides{});
  for (int j = 0; j < g.ny(); ++j) {
    EXPECT_EQ(m.u_faces(0, j), FaceKind::Fixed);
    EXPECT_EQ(m.u_faces(g.nx(), j), FaceKind::Outlet);
    EXPECT_EQ(m.u_faces(1, j), FaceKind::Computed);
  }
  for (int i = 0; i < g.nx(); ++i) {
    EXPECT_EQ(m.v_faces(i, 0), FaceKind::Fixed);
    EXPECT_EQ(m.v_faces(i, g.ny()), FaceKind::Fixed);
    EXPECT_EQ(m.v_faces(i, 1), FaceKind::Computed);
  }
}

TEST(Classify, RejectsBadObstacles) {
  const auto g = build_uniform_grid(4.0, 4.0, 1.0);
  EXPECT_THROW(classify_cells(g, {Obstacle{1.5, 1.0, 2.0, 2.0, 1}}, closed()), ConfigError);
  EXPECT_THROW(classify_cells(g, {Obstacle{3.0, 3.0, 5.0, 4.0, 1}}, closed()), ConfigError);
}

TEST(Grid, PartitionAndTelescoping) {
  const auto g = GridGeometry({0.0, 0.1, 0.35, 0.4, 1.0}, {0.0, 0.5, 0.7});
  double sx = 0.0;
  for (int i = 0; i < g.nx(); ++i) sx += g.dx(i);
  EXPECT_NEAR(sx, g.length_x(), 1e-15);
  double sy = 0.0;
  for (int j = 0; j < g.ny(); ++j) sy += g.dy(j);
  EXPECT_NEAR(sy, g.length_y(), 1e-15);
  EXPECT_DOUBLE_EQ(g.xf(g.nx()), 1.0);
}
