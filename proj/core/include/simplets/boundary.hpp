#pragma once

#include <vector>

#include "simplets/fields.hpp"
#include "simplets/grid.hpp"

namespace simplets {

/// Motion and temperature of one wall. Only the velocity component
/// tangential to a given wall face is used.
struct WallCondition {
  double u = 0.0;
  double v = 0.0;
  double T = 1.0;

  friend bool operator==(const WallCondition&, const WallCondition&) = default;
};

/// Fixed inflow state on the west side.
struct InletOutlet {
  double p = 1.0;
  double T = 1.0;
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const InletOutlet&, const InletOutlet&) = default;
};

/// Everything needed to fill ghost values: Knudsen number for the slip and
/// jump coefficients, wall conditions indexed by wall id, inflow state.
struct BoundarySetup {
  double kn = 0.0;
  std::vector<WallCondition> walls{WallCondition{}};
  InletOutlet inlet;

  const WallCondition& wall(int id) const;
};

struct SlipCoefficients {
  double zeta = 0.0;
  double tau = 0.0;
};

/// zeta = 1.1466 Kn / rho, tau = 2.1904 Kn / rho. Throws NumericDomainError
/// when rho_local <= 0.
SlipCoefficients slip_coefficients(double kn, double rho_local);

/// Gas velocity at the wall from the slip condition closed with a one-sided
/// difference over distance dn.
inline double slip_velocity(double v_wall, double v_interior, double zeta, double dn) noexcept {
  const double r = zeta / dn;
  return (v_wall + r * v_interior) / (1.0 + r);
}

/// Gas temperature at the wall from the jump condition; same closure.
inline double jump_temperature(double T_wall, double T_interior, double tau, double dn) noexcept {
  const double r = tau / dn;
  return (T_wall + r * T_interior) / (1.0 + r);
}

/// Fills every ghost location of `s` (and of `d` when given) so that the
/// interior stencils see the wall, inflow and outflow conditions:
///  - cells and faces behind walls mirror the interior about the wall-surface
///    value given by the slip and jump conditions; wall-normal velocities are
///    reflected with opposite sign;
///  - cells west of an inlet hold the inflow state;
///  - cells and faces east of an outlet repeat the last interior column.
/// Only non-fluid cells and Ghost faces are written.
void apply_boundary_conditions(const GridGeometry& g, const CellMask& m, const BoundarySetup& bc,
                               State& s, Diffusivity* d);

/// Inflow and outflow strips only.
void apply_inlet_outlet(const GridGeometry& g, const CellMask& m, const InletOutlet& io, State& s,
                        Diffusivity* d);

}  // namespace simplets
