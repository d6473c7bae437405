#include "simplets/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "simplets/error.hpp"

namespace simplets {

namespace {

enum Target : int { kP, kT, kRho, kGamma, kGammaL, kU, kV };

struct Entry {
  int target;
  int i;
  int j;
  double value;
};

Array2D<double>* target_array(int t, State& s, Diffusivity* d) {
  switch (t) {
    case kP: return &s.p;
    case kT: return &s.T;
    case kRho: return &s.rho;
    case kGamma: return d ? &d->gamma : nullptr;
    case kGammaL: return d ? &d->gamma_l : nullptr;
    case kU: return &s.u;
    default: return &s.v;
  }
}

/// Ghost values for the cells and faces behind one wall face. Reads only
/// fluid cells and non-ghost faces, so the result does not depend on the
/// order in which walls are visited.
void collect_wall(const GridGeometry& g, const CellMask& m, const BoundarySetup& bc, const State& s,
                  const Diffusivity* d, const WallFace& w, std::vector<Entry>& out) {
  const WallCondition& wc = bc.wall(w.wall_id);
  const int fi = w.fi;
  const int fj = w.fj;
  const bool x_normal = w.di != 0;
  const double dn = 0.5 * (x_normal ? g.dx(fi) : g.dy(fj));
  const SlipCoefficients sc = slip_coefficients(bc.kn, s.rho(fi, fj));
  const double T_s = jump_temperature(wc.T, s.T(fi, fj), sc.tau, dn);

  for (int k = 1; k <= 2; ++k) {
    const int gi = fi + k * w.di;
    const int gj = fj + k * w.dj;
    if (m.fluid(gi, gj)) continue;
    int mi = fi - (k - 1) * w.di;
    int mj = fj - (k - 1) * w.dj;
    if (!m.fluid(mi, mj)) {
      mi = fi;
      mj = fj;
    }
    out.push_back({kT, gi, gj, 2.0 * T_s - s.T(mi, mj)});
    out.push_back({kP, gi, gj, s.p(mi, mj)});
    out.push_back({kRho, gi, gj, s.rho(mi, mj)});
    if (d) {
      out.push_back({kGamma, gi, gj, d->gamma(mi, mj)});
      out.push_back({kGammaL, gi, gj, d->gamma_l(mi, mj)});
    }
  }

  // Tangential velocity: the two face lines bounding the fluid cell,
  // continued into the wall.
  const Array2D<double>& tang = x_normal ? s.v : s.u;
  const Array2D<FaceKind>& tkind = x_normal ? m.v_faces : m.u_faces;
  const double t_wall = x_normal ? wc.v : wc.u;
  const int tgt = x_normal ? kV : kU;
  for (int side = 0; side <= 1; ++side) {
    // Face line through the fluid cell: (fi, fj + side) for v, (fi + side, fj) for u.
    const int li = x_normal ? fi : fi + side;
    const int lj = x_normal ? fj + side : fj;
    const double partner = tang(li, lj);
    const double t_s = slip_velocity(t_wall, partner, sc.zeta, dn);
    for (int k = 1; k <= 2; ++k) {
      const int gi = li + k * w.di;
      const int gj = lj + k * w.dj;
      if (tkind(gi, gj) != FaceKind::Ghost) continue;
      const int mi = li - (k - 1) * w.di;
      const int mj = lj - (k - 1) * w.dj;
      const double mirror = tkind(mi, mj) == FaceKind::Ghost ? partner : tang(mi, mj);
      out.push_back({tgt, gi, gj, 2.0 * t_s - mirror});
    }
  }

  // Normal velocity: odd reflection about the wall face.
  const Array2D<double>& norm = x_normal ? s.u : s.v;
  const Array2D<FaceKind>& nkind = x_normal ? m.u_faces : m.v_faces;
  const int ntgt = x_normal ? kU : kV;
  const int wi = x_normal ? (w.di < 0 ? fi : fi + 1) : fi;
  const int wj = x_normal ? fj : (w.dj < 0 ? fj : fj + 1);
  for (int k = 1; k <= 2; ++k) {
    const int gi = wi + k * w.di;
    const int gj = wj + k * w.dj;
    if (nkind(gi, gj) != FaceKind::Ghost) continue;
    const int mi = wi - k * w.di;
    const int mj = wj - k * w.dj;
    const double mirror = nkind(mi, mj) == FaceKind::Ghost ? 0.0 : norm(mi, mj);
    out.push_back({ntgt, gi, gj, 0.0 - mirror});
  }
}

}  // namespace

const WallCondition& BoundarySetup::wall(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= walls.size()) {
    throw ConfigError("no wall condition for wall id " + std::to_string(id));
  }
  return walls[static_cast<std::size_t>(id)];
}

SlipCoefficients slip_coefficients(double kn, double rho_local) {
  if (!(rho_local > 0.0)) {
    throw NumericDomainError("slip coefficients need a positive local density");
  }
  return {1.1466 * kn / rho_local, 2.1904 * kn / rho_local};
}

void apply_boundary_conditions(const GridGeometry& g, const CellMask& m, const BoundarySetup& bc,
                               State& s, Diffusivity* d) {
  std::vector<Entry> entries;
  entries.reserve(m.walls.size() * 16);
  for (const WallFace& w : m.walls) collect_wall(g, m, bc, s, d, w, entries);

  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.target != b.target) return a.target < b.target;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  });
  for (std::size_t k = 0; k < entries.size();) {
    std::size_t e = k;
    double sum = 0.0;
    while (e < entries.size() && entries[e].target == entries[k].target &&
           entries[e].i == entries[k].i && entries[e].j == entries[k].j) {
      sum += entries[e].value;
      ++e;
    }
    if (Array2D<double>* a = target_array(entries[k].target, s, d)) {
      (*a)(entries[k].i, entries[k].j) = sum / static_cast<double>(e - k);
    }
    k = e;
  }

  apply_inlet_outlet(g, m, bc.inlet, s, d);
}

void apply_inlet_outlet(const GridGeometry& g, const CellMask& m, const InletOutlet& io, State& s,
                        Diffusivity* d) {
  (void)g;
  const int nx = m.nx;
  const int ny = m.ny;
  const int jb = -kGhostLayers;
  if (m.sides.west == SideKind::Inlet) {
    const double rho = io.p / io.T;
    const double gam = std::sqrt(io.T);
    for (int j = jb; j < ny + kGhostLayers; ++j) {
      for (int i = -kGhostLayers; i < 0; ++i) {
        s.p(i, j) = io.p;
        s.T(i, j) = io.T;
        s.rho(i, j) = rho;
        if (d) {
          d->gamma(i, j) = gam;
          d->gamma_l(i, j) = gam;
        }
        s.u(i, j) = io.u;
        s.v(i, j) = io.v;
      }
      if (j >= 0 && j < ny && m.u_faces(0, j) == FaceKind::Fixed) s.u(0, j) = io.u;
    }
    for (int i = -kGhostLayers; i < 0; ++i) s.v(i, ny + kGhostLayers) = io.v;
  }
  if (m.sides.east == SideKind::Outlet) {
    for (int j = jb; j < ny + kGhostLayers; ++j) {
      for (int i = nx; i < nx + kGhostLayers; ++i) {
        s.p(i, j) = s.p(nx - 1, j);
        s.T(i, j) = s.T(nx - 1, j);
        s.rho(i, j) = s.rho(nx - 1, j);
        if (d) {
          d->gamma(i, j) = d->gamma(nx - 1, j);
          d->gamma_l(i, j) = d->gamma_l(nx - 1, j);
        }
        s.v(i, j) = s.v(nx - 1, j);
      }
      for (int i = nx + 1; i < nx + 1 + kGhostLayers; ++i) s.u(i, j) = s.u(nx, j);
    }
    for (int i = nx; i < nx + kGhostLayers; ++i) s.v(i, ny + kGhostLayers) = s.v(nx - 1, ny + kGhostLayers);
  }
}

}  // namespace simplets
