#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simplets/array2d.hpp"

namespace simplets {

/// Staggered Cartesian mesh. Scalars live at cell centres, u on vertical
/// faces (face i is the left face of cell i), v on horizontal faces.
/// Widths and coordinates are stored with kGhostLayers of padding on each
/// side (ghost widths repeat the nearest boundary width) so stencils that
/// reach into ghost cells see a valid spacing.
class GridGeometry {
 public:
  GridGeometry() = default;
  /// Builds from face coordinates: x_faces has nx + 1 strictly increasing
  /// entries, y_faces ny + 1.
  GridGeometry(std::vector<double> x_faces, std::vector<double> y_faces);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }

  double dx(int i) const noexcept { return dx_[static_cast<std::size_t>(i + kGhostLayers)]; }
  double dy(int j) const noexcept { return dy_[static_cast<std::size_t>(j + kGhostLayers)]; }
  /// Left face x-coordinate of cell i; valid for i in [0, nx].
  double xf(int i) const noexcept { return xf_[static_cast<std::size_t>(i)]; }
  double yf(int j) const noexcept { return yf_[static_cast<std::size_t>(j)]; }
  double xv(int i) const noexcept { return xf(i) + 0.5 * dx(i); }
  double yv(int j) const noexcept { return yf(j) + 0.5 * dy(j); }

  double length_x() const noexcept { return xf_.back() - xf_.front(); }
  double length_y() const noexcept { return yf_.back() - yf_.front(); }

  friend bool operator==(const GridGeometry&, const GridGeometry&) = default;

 private:
  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> xf_, yf_;
  std::vector<double> dx_, dy_;
};

/// Uniform mesh with spacing `spacing` on [0, length_x] x [0, length_y].
/// Both extents must be integer multiples of the spacing to within 1e-9.
GridGeometry build_uniform_grid(double length_x, double length_y, double spacing);

enum class CellKind : std::uint8_t { Fluid = 0, Solid = 1, WallAdjacent = 2 };

/// Side bits for WallAdjacent cells.
enum WallSide : std::uint8_t {
  kWest = 1u << 0,
  kEast = 1u << 1,
  kSouth = 1u << 2,
  kNorth = 1u << 3,
};

/// How a face velocity is obtained.
///   Computed - solved from the momentum equation.
///   Fixed    - known boundary value (wall-normal velocity, inlet velocity).
///   Outlet   - solved from momentum with zero pressure gradient (d = 0).
///   Ghost    - outside the fluid; filled from boundary conditions.
enum class FaceKind : std::uint8_t { Computed = 0, Fixed = 1, Outlet = 2, Ghost = 3 };

enum class SideKind : std::uint8_t { Wall, Inlet, Outlet };

/// Kind of each outer boundary of the rectangular domain. South and north
/// must be walls; west may be inlet or wall; east outlet or wall.
struct DomainSides {
  SideKind west = SideKind::Inlet;
  SideKind east = SideKind::Outlet;
  SideKind south = SideKind::Wall;
  SideKind north = SideKind::Wall;
  /// Wall-condition ids used when the corresponding side is a wall.
  std::uint8_t west_wall = 0;
  std::uint8_t east_wall = 0;
  std::uint8_t south_wall = 0;
  std::uint8_t north_wall = 0;
};

/// Axis-aligned solid rectangle [x0, x1] x [y0, y1] in mesh coordinates.
struct Obstacle {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;
  std::uint8_t wall_id = 0;
};

/// One face separating a fluid cell from a wall (solid cell or domain wall).
struct WallFace {
  int fi = 0;          ///< fluid cell
  int fj = 0;
  int di = 0;          ///< unit step from the fluid cell into the wall
  int dj = 0;
  std::uint8_t wall_id = 0;
};

/// Cell and face classification of a mesh.
struct CellMask {
  int nx = 0;
  int ny = 0;
  DomainSides sides;
  Array2D<CellKind> cells;      ///< padded; ghost cells are Solid
  Array2D<std::uint8_t> side_bits;
  Array2D<FaceKind> u_faces;    ///< (nx + 1) x ny faces
  Array2D<FaceKind> v_faces;    ///< nx x (ny + 1) faces
  std::vector<WallFace> walls;  ///< every fluid/wall face, deterministic order

  bool fluid(int i, int j) const noexcept {
    return i >= 0 && i < nx && j >= 0 && j < ny && cells(i, j) != CellKind::Solid;
  }
  bool wall_adjacent(int i, int j) const noexcept {
    return fluid(i, j) && cells(i, j) == CellKind::WallAdjacent;
  }

  std::size_t count(CellKind kind) const;
};

/// Classifies cells. Obstacle edges must lie on mesh faces (within 1e-9) and
/// inside the domain.
CellMask classify_cells(const GridGeometry& geom, const std::vector<Obstacle>& obstacles,
                        const DomainSides& sides);

}  // namespace simplets
