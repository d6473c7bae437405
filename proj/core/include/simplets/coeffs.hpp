#pragma once

#include "simplets/array2d.hpp"
#include "simplets/grid.hpp"
#include "simplets/schemes.hpp"

namespace simplets {

/// Nondimensional parameters of the governing equations.
struct ModelCoefficients {
  double A = 0.5;    ///< pressure-gradient factor
  double B = 0.0;    ///< viscous diffusion factor
  double CT1 = 0.0;  ///< heat conduction factor
  double CT2 = 0.0;  ///< viscous dissipation factor
  double CT3 = 0.4;  ///< pressure work factor

  friend bool operator==(const ModelCoefficients&, const ModelCoefficients&) = default;
};

/// Read-only views of one snapshot. gamma/gamma_l may be null for the
/// previous-time-level snapshot, which never needs them.
struct FieldRefs {
  const Array2D<double>* p = nullptr;
  const Array2D<double>* T = nullptr;
  const Array2D<double>* rho = nullptr;
  const Array2D<double>* gamma = nullptr;
  const Array2D<double>* gamma_l = nullptr;
  const Array2D<double>* u = nullptr;
  const Array2D<double>* v = nullptr;
};

/// Convective contributions evaluated once per time step under the explicit
/// schemes.
struct ExplicitPlanes {
  Array2D<double> u;  ///< on x-faces
  Array2D<double> v;  ///< on y-faces
  Array2D<double> T;  ///< at cell centres
};

/// Everything a coefficient assembly reads. All referenced arrays must stay
/// unmodified while assemblies run.
struct AssemblyContext {
  const GridGeometry* geom = nullptr;
  FieldRefs old;   ///< previous iterate of loop 2
  FieldRefs prev;  ///< previous time level
  const ExplicitPlanes* planes = nullptr;  ///< if set, explicit terms are read from here
  ModelCoefficients model;
  SchemeConfig scheme;
  double dt = 0.0;
};

/// Link coefficients of a face-velocity equation
///   a0 u = a1 u_W + a2 u_E + a3 u_S + a4 u_N + b + explicit_term - A*area*(dp)
/// with d = A*area/a0.
struct MomentumCoeffs {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
  double b = 0.0;
  double d = 0.0;
  double explicit_term = 0.0;
};

/// a0 T = dt (a1 T_W + a2 T_E + a3 T_S + a4 T_N + sc + explicit_term) + rho^{n-1} T^{n-1} dx dy
struct TemperatureCoeffs {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0, a4 = 0.0;
  double sc = 0.0;
  double explicit_term = 0.0;
};

/// a0 p = (apx_w p_W + apx_e p_E + apy_s p_S + apy_n p_N) dt + b
struct PressureCoeffs {
  double a0 = 0.0;
  double apx_w = 0.0, apx_e = 0.0, apy_s = 0.0, apy_n = 0.0;
  double bpx_w = 0.0, bpx_e = 0.0, bpy_s = 0.0, bpy_n = 0.0;
  double b = 0.0;
};

// --- diffusion ----------------------------------------------------------------

/// Harmonic face average of two cell values separated by widths dl, dr.
/// Throws NumericDomainError if a gamma or width is not positive.
double harmonic_gamma(double gamma_left, double gamma_right, double d_left, double d_right);

/// Linear interpolation to the face between two cells of widths da and db.
inline double face_lerp(double a, double b, double da, double db) noexcept {
  return (db * a + da * b) / (da + db);
}

/// Conductance of the x-face of a v control volume: B*Gamma*(dy_j + dy_{j-1})/(dx_i + dx_{i-1}).
inline double diffusion_conductance_vx(double B, double gamma_face, double dy_j, double dy_jm1,
                                       double dx_i, double dx_im1) noexcept {
  return B * gamma_face * (dy_j + dy_jm1) / (dx_i + dx_im1);
}
/// Conductance of the y-face of a v control volume: B*Gamma_{i,j-1}*dx_i/dy_{j-1}.
inline double diffusion_conductance_vy(double B, double gamma_cell, double dx_i, double dy_jm1) noexcept {
  return B * gamma_cell * dx_i / dy_jm1;
}
/// Heat conductance of the x-face between cells i-1 and i.
inline double diffusion_conductance_Tx(double CT1, double gamma_l_face, double dy_j, double dx_i,
                                       double dx_im1) noexcept {
  return CT1 * gamma_l_face * dy_j / (0.5 * (dx_i + dx_im1));
}
/// Heat conductance of the y-face between cells j-1 and j.
inline double diffusion_conductance_Ty(double CT1, double gamma_l_face, double dx_i, double dy_j,
                                       double dy_jm1) noexcept {
  return CT1 * gamma_l_face * dx_i / (0.5 * (dy_j + dy_jm1));
}

// --- face densities and fluxes on a snapshot ---------------------------------

/// rho^u on x-face (i, j) from the snapshot's rho and u.
double face_rho_u(const GridGeometry& g, const FieldRefs& f, const SchemeConfig& s, int i, int j);
/// rho^v on y-face (i, j).
double face_rho_v(const GridGeometry& g, const FieldRefs& f, const SchemeConfig& s, int i, int j);
/// F^x on x-face (i, j).
double flux_x(const GridGeometry& g, const FieldRefs& f, const SchemeConfig& s, int i, int j);
/// F^y on y-face (i, j).
double flux_y(const GridGeometry& g, const FieldRefs& f, const SchemeConfig& s, int i, int j);

// --- momentum -----------------------------------------------------------------

/// Coefficients for v on y-face (i, j) (between cells (i, j-1) and (i, j)).
MomentumCoeffs momentum_coeffs_v_implicit(const AssemblyContext& c, int i, int j);
MomentumCoeffs momentum_coeffs_v_explicit(const AssemblyContext& c, int i, int j);
/// Coefficients for u on x-face (i, j), the axis transpose of the v set.
MomentumCoeffs momentum_coeffs_u_implicit(const AssemblyContext& c, int i, int j);
MomentumCoeffs momentum_coeffs_u_explicit(const AssemblyContext& c, int i, int j);

/// Dispatch on c.scheme.time.
MomentumCoeffs momentum_coeffs_v(const AssemblyContext& c, int i, int j);
MomentumCoeffs momentum_coeffs_u(const AssemblyContext& c, int i, int j);

/// Explicit convective terms from the previous time level (c.prev).
double explicit_term_v(const AssemblyContext& c, int i, int j);
double explicit_term_u(const AssemblyContext& c, int i, int j);
double explicit_term_T(const AssemblyContext& c, int i, int j);

// --- temperature --------------------------------------------------------------

/// Face velocities around one cell plus the four mid-edge interpolants used
/// by the dissipation function.
struct VelocityPatch {
  double u_w = 0.0, u_e = 0.0;          ///< u_{i,j}, u_{i+1,j}
  double v_s = 0.0, v_n = 0.0;          ///< v_{i,j}, v_{i,j+1}
  double v_at_east = 0.0, v_at_west = 0.0;    ///< v at (x^f_{i+1}, y^v_j), (x^f_i, y^v_j)
  double u_at_north = 0.0, u_at_south = 0.0;  ///< u at (x^v_i, y^f_{j+1}), (x^v_i, y^f_j)
};

/// Source S^T_c: CT2*Gamma*Phi*dx*dy + CT3*p*div(u)*dx*dy.
double dissipation_source(const VelocityPatch& vp, double p, double gamma, double CT2, double CT3,
                          double dx, double dy) noexcept;

/// Gathers the velocity patch of cell (i, j) from the snapshot with bilinear
/// interpolation for the mid-edge values.
VelocityPatch velocity_patch(const GridGeometry& g, const FieldRefs& f, int i, int j);

TemperatureCoeffs temperature_coeffs_implicit(const AssemblyContext& c, int i, int j);
TemperatureCoeffs temperature_coeffs_explicit(const AssemblyContext& c, int i, int j);
TemperatureCoeffs temperature_coeffs(const AssemblyContext& c, int i, int j);

// --- pressure -----------------------------------------------------------------

/// Per-cell inputs of the pressure equation: pseudo velocities and d
/// coefficients on the four faces, face densities, the current temperature
/// and the previous-time-level state.
struct PressureInputs {
  double uhat_w = 0.0, du_w = 0.0, uhat_e = 0.0, du_e = 0.0;
  double vhat_s = 0.0, dv_s = 0.0, vhat_n = 0.0, dv_n = 0.0;
  double rho_u_w = 0.0, rho_u_e = 0.0, rho_v_s = 0.0, rho_v_n = 0.0;
  double T = 0.0;
  double p_prev = 0.0, T_prev = 0.0;
  double dx = 0.0, dy = 0.0, dt = 0.0;
};

/// Throws NumericDomainError when T <= 0.
PressureCoeffs pressure_coeffs(const PressureInputs& in);

/// Jacobi update of p from its coefficients and neighbour values.
inline double pressure_value(const PressureCoeffs& pc, double p_w, double p_e, double p_s,
                             double p_n, double dt) noexcept {
  return ((pc.apx_w * p_w + pc.apx_e * p_e + pc.apy_s * p_s + pc.apy_n * p_n) * dt + pc.b) / pc.a0;
}

/// Jacobi update of T from its coefficients and neighbour values.
inline double temperature_value(const TemperatureCoeffs& tc, double T_w, double T_e, double T_s,
                                double T_n, double rho_prev, double T_prev, double dx, double dy,
                                double dt) noexcept {
  return (dt * (tc.a1 * T_w + tc.a2 * T_e + tc.a3 * T_s + tc.a4 * T_n + tc.sc + tc.explicit_term) +
          rho_prev * T_prev * dx * dy) /
         tc.a0;
}

}  // namespace simplets
