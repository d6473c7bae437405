#include "simplets/grid.hpp"

#include <cmath>
#include <optional>

#include "simplets/error.hpp"

namespace simplets {

namespace {

std::vector<double> padded_widths(const std::vector<double>& faces, const char* axis) {
  const int n = static_cast<int>(faces.size()) - 1;
  if (n < 1) throw ConfigError(std::string("mesh needs at least one cell along ") + axis);
  std::vector<double> widths(static_cast<std::size_t>(n + 2 * kGhostLayers));
  for (int k = 0; k < n; ++k) {
    const double w = faces[static_cast<std::size_t>(k + 1)] - faces[static_cast<std::size_t>(k)];
    if (!(w > 0.0)) {
      throw ConfigError(std::string("face coordinates along ") + axis +
                        " must be strictly increasing");
    }
    widths[static_cast<std::size_t>(k + kGhostLayers)] = w;
  }
  for (int g = 1; g <= kGhostLayers; ++g) {
    widths[static_cast<std::size_t>(kGhostLayers - g)] =
        widths[static_cast<std::size_t>(kGhostLayers + g - 1)];
    widths[static_cast<std::size_t>(kGhostLayers + n + g - 1)] =
        widths[static_cast<std::size_t>(kGhostLayers + n - g)];
  }
  return widths;
}

int divisions(double length, double spacing, const char* axis) {
  if (!(length > 0.0) || !(spacing > 0.0)) {
    throw ConfigError(std::string("extent and spacing along ") + axis + " must be positive");
  }
  const double ratio = length / spacing;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 || rounded < 1.0) {
    throw ConfigError(std::string("extent along ") + axis +
                      " is not an integer multiple of the mesh spacing");
  }
  return static_cast<int>(rounded);
}

std::optional<int> snap(double coord, const GridGeometry& g, bool x_axis) {
  const int n = x_axis ? g.nx() : g.ny();
  for (int k = 0; k <= n; ++k) {
    const double f = x_axis ? g.xf(k) : g.yf(k);
    if (std::abs(f - coord) <= 1e-9) return k;
  }
  return std::nullopt;
}

}  // namespace

GridGeometry::GridGeometry(std::vector<double> x_faces, std::vector<double> y_faces)
    : nx_(static_cast<int>(x_faces.size()) - 1),
      ny_(static_cast<int>(y_faces.size()) - 1),
      xf_(std::move(x_faces)),
      yf_(std::move(y_faces)) {
  dx_ = padded_widths(xf_, "x");
  dy_ = padded_widths(yf_, "y");
}

GridGeometry build_uniform_grid(double length_x, double length_y, double spacing) {
  const int nx = divisions(length_x, spacing, "x");
  const int ny = divisions(length_y, spacing, "y");
  std::vector<double> xf(static_cast<std::size_t>(nx + 1));
  std::vector<double> yf(static_cast<std::size_t>(ny + 1));
  for (int i = 0; i <= nx; ++i) xf[static_cast<std::size_t>(i)] = i * spacing;
  for (int j = 0; j <= ny; ++j) yf[static_cast<std::size_t>(j)] = j * spacing;
  return GridGeometry(std::move(xf), std::move(yf));
}

std::size_t CellMask::count(CellKind kind) const {
  std::size_t n = 0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (cells(i, j) == kind) ++n;
  return n;
}

CellMask classify_cells(const GridGeometry& geom, const std::vector<Obstacle>& obstacles,
                        const DomainSides& sides) {
  if (sides.south != SideKind::Wall || sides.north != SideKind::Wall) {
    throw ConfigError("south and north domain sides must be walls");
  }
  if (sides.west == SideKind::Outlet) throw ConfigError("west side cannot be an outlet");
  if (sides.east == SideKind::Inlet) throw ConfigError("east side cannot be an inlet");

  const int nx = geom.nx();
  const int ny = geom.ny();
  CellMask m;
  m.nx = nx;
  m.ny = ny;
  m.sides = sides;
  m.cells = Array2D<CellKind>(nx, ny, kGhostLayers, CellKind::Solid);
  m.side_bits = Array2D<std::uint8_t>(nx, ny, kGhostLayers, 0);
  Array2D<std::uint8_t> solid_wall_id(nx, ny, kGhostLayers, 0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) m.cells(i, j) = CellKind::Fluid;

  for (const Obstacle& ob : obstacles) {
    if (!(ob.x1 > ob.x0) || !(ob.y1 > ob.y0)) throw ConfigError("obstacle has empty extent");
    const double eps = 1e-9;
    if (ob.x0 < geom.xf(0) - eps || ob.x1 > geom.xf(nx) + eps || ob.y0 < geom.yf(0) - eps ||
        ob.y1 > geom.yf(ny) + eps) {
      throw ConfigError("obstacle lies outside the domain");
    }
    const auto i0 = snap(ob.x0, geom, true);
    const auto i1 = snap(ob.x1, geom, true);
    const auto j0 = snap(ob.y0, geom, false);
    const auto j1 = snap(ob.y1, geom, false);
    if (!i0 || !i1 || !j0 || !j1) throw ConfigError("obstacle edges are not aligned with mesh faces");
    for (int j = *j0; j < *j1; ++j) {
      for (int i = *i0; i < *i1; ++i) {
        m.cells(i, j) = CellKind::Solid;
        solid_wall_id(i, j) = ob.wall_id;
      }
    }
  }

  // Walls seen from every fluid cell, in a fixed W, E, S, N order.
  struct Dir {
    int di, dj;
    WallSide bit;
  };
  constexpr Dir dirs[4] = {{-1, 0, kWest}, {1, 0, kEast}, {0, -1, kSouth}, {0, 1, kNorth}};
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (m.cells(i, j) == CellKind::Solid) continue;
      std::uint8_t bits = 0;
      for (const Dir& d : dirs) {
        const int ni = i + d.di;
        const int nj = j + d.dj;
        std::optional<std::uint8_t> wall;
        if (ni < 0) {
          if (sides.west == SideKind::Wall) wall = sides.west_wall;
        } else if (ni >= nx) {
          if (sides.east == SideKind::Wall) wall = sides.east_wall;
        } else if (nj < 0) {
          wall = sides.south_wall;
        } else if (nj >= ny) {
          wall = sides.north_wall;
        } else if (m.cells(ni, nj) == CellKind::Solid) {
          wall = solid_wall_id(ni, nj);
        }
        if (wall) {
          bits |= d.bit;
          m.walls.push_back(WallFace{i, j, d.di, d.dj, *wall});
        }
      }
      m.side_bits(i, j) = bits;
      if (bits != 0) m.cells(i, j) = CellKind::WallAdjacent;
    }
  }

  m.u_faces = Array2D<FaceKind>(nx + 1, ny, kGhostLayers, FaceKind::Ghost);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const bool left = m.fluid(i - 1, j);
      const bool right = m.fluid(i, j);
      FaceKind k = FaceKind::Ghost;
      if (i == 0) {
        if (right) k = FaceKind::Fixed;
      } else if (i == nx) {
        if (left) k = sides.east == SideKind::Outlet ? FaceKind::Outlet : FaceKind::Fixed;
      } else if (left && right) {
        k = FaceKind::Computed;
      } else if (left || right) {
        k = FaceKind::Fixed;
      }
      m.u_faces(i, j) = k;
    }
  }
  m.v_faces = Array2D<FaceKind>(nx, ny + 1, kGhostLayers, FaceKind::Ghost);
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const bool below = m.fluid(i, j - 1);
      const bool above = m.fluid(i, j);
      FaceKind k = FaceKind::Ghost;
      if (below && above) {
        k = FaceKind::Computed;
      } else if (below || above) {
        k = FaceKind::Fixed;
      }
      m.v_faces(i, j) = k;
    }
  }
  return m;
}

}  // namespace simplets
