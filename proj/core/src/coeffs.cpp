#include "simplets/coeffs.hpp"

#include <string>
#include <utility>

#include "simplets/error.hpp"

namespace simplets {

namespace {

enum class Axis { X, Y };

/// Oriented view of the neighbourhood of a face velocity. `n` runs along the
/// velocity component (normal to the face), `t` across it. For the v
/// equation (normal axis Y) the point (t, n) is (i + t, j + n); for the u
/// equation it is (i + n, j + t). Writing the kernel once in these
/// coordinates makes the u set the exact transpose of the v set.
template <Axis N>
struct Frame {
  const GridGeometry& g;
  const SchemeConfig& s;
  int i;
  int j;

  double at(const Array2D<double>& a, int t, int n) const {
    if constexpr (N == Axis::Y) {
      return a(i + t, j + n);
    } else {
      return a(i + n, j + t);
    }
  }
  double dn(int n) const {
    if constexpr (N == Axis::Y) {
      return g.dy(j + n);
    } else {
      return g.dx(i + n);
    }
  }
  double dt(int t) const {
    if constexpr (N == Axis::Y) {
      return g.dx(i + t);
    } else {
      return g.dy(j + t);
    }
  }
  const Array2D<double>& normal(const FieldRefs& f) const { return N == Axis::Y ? *f.v : *f.u; }
  const Array2D<double>& tangential(const FieldRefs& f) const { return N == Axis::Y ? *f.u : *f.v; }

  StencilScalars along_t(const Array2D<double>& a, int t0, int n, double vel) const {
    return {at(a, t0, n),     at(a, t0 + 1, n), at(a, t0 + 2, n), at(a, t0 + 3, n),
            dt(t0),           dt(t0 + 1),       dt(t0 + 2),       dt(t0 + 3),
            vel};
  }
  StencilScalars along_n(const Array2D<double>& a, int t, int n0, double vel) const {
    return {at(a, t, n0), at(a, t, n0 + 1), at(a, t, n0 + 2), at(a, t, n0 + 3),
            dn(n0),       dn(n0 + 1),       dn(n0 + 2),       dn(n0 + 3),
            vel};
  }

  /// Mass flux through the tangential face (t, n).
  double flux_t(const FieldRefs& f, int t, int n) const {
    const double vt = at(tangential(f), t, n);
    const double rho = face_value(along_t(*f.rho, t - 2, n, vt), s);
    return rho * vt * dn(n);
  }
  /// Normal velocity at the centre of cell (0, n).
  double vbar(const FieldRefs& f, int n) const {
    const auto& a = normal(f);
    return 0.5 * (at(a, 0, n) + at(a, 0, n + 1));
  }
  /// Mass flux through the centre of cell (0, n).
  double flux_n(const FieldRefs& f, int n) const { return vbar(f, n) * at(*f.rho, 0, n) * dt(0); }

  /// Gamma at the corner shared by cells (t-1, -1), (t, -1), (t-1, 0), (t, 0).
  double gamma_corner(const Array2D<double>& gam, int t) const {
    const double lo = face_lerp(at(gam, t - 1, -1), at(gam, t, -1), dt(t - 1), dt(t));
    const double hi = face_lerp(at(gam, t - 1, 0), at(gam, t, 0), dt(t - 1), dt(t));
    return face_lerp(lo, hi, dn(-1), dn(0));
  }
};

struct Diffusion {
  double west, east, south, north;
};

template <Axis N>
Diffusion momentum_diffusion(const Frame<N>& fr, const AssemblyContext& c) {
  const auto& gam = *c.old.gamma;
  const double B = c.model.B;
  const double span_n = fr.dn(0) + fr.dn(-1);
  return {B * fr.gamma_corner(gam, 0) * span_n / (fr.dt(0) + fr.dt(-1)),
          B * fr.gamma_corner(gam, 1) * span_n / (fr.dt(1) + fr.dt(0)),
          B * fr.at(gam, 0, -1) * fr.dt(0) / fr.dn(-1),
          B * fr.at(gam, 0, 0) * fr.dt(0) / fr.dn(0)};
}

template <Axis N>
double momentum_time_term(const Frame<N>& fr, const AssemblyContext& c) {
  const auto& rho = *c.old.rho;
  return (fr.at(rho, 0, 0) * fr.dn(0) + fr.at(rho, 0, -1) * fr.dn(-1)) * fr.dt(0) / (2.0 * c.dt);
}

template <Axis N>
double momentum_source(const Frame<N>& fr, const AssemblyContext& c) {
  const auto& pp = *c.prev.p;
  const auto& Tp = *c.prev.T;
  const double inertia =
      (fr.at(pp, 0, 0) / fr.at(Tp, 0, 0) * fr.dn(0) + fr.at(pp, 0, -1) / fr.at(Tp, 0, -1) * fr.dn(-1)) *
      fr.dt(0) / (2.0 * c.dt) * fr.at(fr.normal(c.prev), 0, 0);
  const auto& gam = *c.old.gamma;
  const auto& vt = fr.tangential(c.old);
  const double cross =
      fr.gamma_corner(gam, 1) * (fr.at(vt, 1, 0) - fr.at(vt, 1, -1)) -
      fr.gamma_corner(gam, 0) * (fr.at(vt, 0, 0) - fr.at(vt, 0, -1)) -
      2.0 / 3.0 * fr.at(gam, 0, 0) * (fr.at(vt, 1, 0) - fr.at(vt, 0, 0)) +
      2.0 / 3.0 * fr.at(gam, 0, -1) * (fr.at(vt, 1, -1) - fr.at(vt, 0, -1));
  return inertia + c.model.B * cross;
}

/// The frame computes neighbours in (t-, t+, n-, n+) order; the u set is
/// stored west, east, south, north like the v set.
template <Axis N>
MomentumCoeffs oriented(MomentumCoeffs m) {
  if constexpr (N == Axis::X) {
    std::swap(m.a1, m.a3);
    std::swap(m.a2, m.a4);
  }
  return m;
}

void check_diagonal(double a0, const char* what, int i, int j) {
  if (!(a0 > 0.0)) {
    throw NumericDomainError(std::string("nonpositive diagonal coefficient in ") + what +
                             " equation at (" + std::to_string(i) + ", " + std::to_string(j) +
                             ")");
  }
}

template <Axis N>
MomentumCoeffs momentum_implicit(const AssemblyContext& c, int i, int j) {
  const Frame<N> fr{*c.geom, c.scheme, i, j};
  const FieldRefs& o = c.old;
  const bool bl = c.scheme.branchless;
  const auto& vn = fr.normal(o);
  const auto& vt = fr.tangential(o);

  const double fw0 = fr.flux_t(o, 0, 0);
  const double fw1 = fr.flux_t(o, 0, -1);
  const double fe0 = fr.flux_t(o, 1, 0);
  const double fe1 = fr.flux_t(o, 1, -1);
  const double fs = fr.flux_n(o, -1);
  const double fn = fr.flux_n(o, 0);

  const double ac1 =
      0.5 * (positive_part(fw0, bl) - fw0 * psi_s(fr.along_t(vn, -2, 0, fr.at(vt, 0, 0)), c.scheme) +
             positive_part(fw1, bl) - fw1 * psi_s(fr.along_t(vn, -2, 0, fr.at(vt, 0, -1)), c.scheme));
  const double ac2 =
      0.5 * (positive_part(-fe0, bl) - fe0 * psi_s(fr.along_t(vn, -1, 0, fr.at(vt, 1, 0)), c.scheme) +
             positive_part(-fe1, bl) - fe1 * psi_s(fr.along_t(vn, -1, 0, fr.at(vt, 1, -1)), c.scheme));
  const double ac3 =
      positive_part(fs, bl) - fs * psi_c(fr.along_n(vn, 0, -2, fr.vbar(o, -1)), c.scheme);
  const double ac4 =
      positive_part(-fn, bl) - fn * psi_c(fr.along_n(vn, 0, -1, fr.vbar(o, 0)), c.scheme);

  const Diffusion D = momentum_diffusion(fr, c);
  MomentumCoeffs m;
  m.a1 = ac1 + D.west;
  m.a2 = ac2 + D.east;
  m.a3 = ac3 + 4.0 / 3.0 * D.south;
  m.a4 = ac4 + 4.0 / 3.0 * D.north;
  m.a0 = m.a1 + m.a2 + m.a3 + m.a4 + 0.5 * (fe0 - fw0 + fe1 - fw1) + fn - fs +
         momentum_time_term(fr, c);
  check_diagonal(m.a0, N == Axis::Y ? "v" : "u", i, j);
  m.b = momentum_source(fr, c);
  m.d = c.model.A / m.a0 * fr.dt(0);
  m.explicit_term = 0.0;
  return oriented<N>(m);
}

template <Axis N>
double momentum_explicit_term(const AssemblyContext& c, int i, int j) {
  const Frame<N> fr{*c.geom, c.scheme, i, j};
  const FieldRefs& p = c.prev;
  const bool bl = c.scheme.branchless;
  const auto& vn = fr.normal(p);
  const auto& vt = fr.tangential(p);
  const auto& rho = *p.rho;

  // Tangential faces: the convected value is the face value between
  // normal-velocity neighbours, weighted by the two half-face fluxes.
  auto east = [&](int n) {
    return fr.flux_t(p, 1, n) * face_value(fr.along_t(vn, -1, 0, fr.at(vt, 1, n)), c.scheme);
  };
  auto west = [&](int n) {
    return fr.flux_t(p, 0, n) * face_value(fr.along_t(vn, -2, 0, fr.at(vt, 0, n)), c.scheme);
  };
  auto centre = [&](int n) {
    const double vb = fr.vbar(p, n);
    const StencilScalars st = fr.along_n(vn, 0, n - 1, vb);
    return fr.dt(0) * fr.at(rho, 0, n) * vb *
           (upwind_select(st.phi2, st.phi3, vb, bl) + (st.phi3 - st.phi2) * psi_c(st, c.scheme));
  };
  return -0.5 * (east(-1) + east(0)) + 0.5 * (west(-1) + west(0)) - centre(0) + centre(-1);
}

template <Axis N>
MomentumCoeffs momentum_explicit(const AssemblyContext& c, int i, int j, double explicit_term) {
  const Frame<N> fr{*c.geom, c.scheme, i, j};
  const Diffusion D = momentum_diffusion(fr, c);
  MomentumCoeffs m;
  m.a1 = D.west;
  m.a2 = D.east;
  m.a3 = 4.0 / 3.0 * D.south;
  m.a4 = 4.0 / 3.0 * D.north;
  m.a0 = m.a1 + m.a2 + m.a3 + m.a4 + momentum_time_term(fr, c);
  check_diagonal(m.a0, N == Axis::Y ? "v" : "u", i, j);
  m.b = momentum_source(fr, c);
  m.d = c.model.A / m.a0 * fr.dt(0);
  m.explicit_term = explicit_term;
  return oriented<N>(m);
}

StencilScalars row_x(const GridGeometry& g, const Array2D<double>& a, int i0, int j, double vel) {
  return {a(i0, j),  a(i0 + 1, j),  a(i0 + 2, j),  a(i0 + 3, j),
          g.dx(i0),  g.dx(i0 + 1),  g.dx(i0 + 2),  g.dx(i0 + 3), vel};
}
StencilScalars col_y(const GridGeometry& g, const Array2D<double>& a, int i, int j0, double vel) {
  return {a(i, j0),  a(i, j0 + 1),  a(i, j0 + 2),  a(i, j0 + 3),
          g.dy(j0),  g.dy(j0 + 1),  g.dy(j0 + 2),  g.dy(j0 + 3), vel};
}

double conductance_Tx(const GridGeometry& g, const AssemblyContext& c, int i, int j) {
  const auto& gl = *c.old.gamma_l;
  const double face = harmonic_gamma(gl(i - 1, j), gl(i, j), g.dx(i - 1), g.dx(i));
  return diffusion_conductance_Tx(c.model.CT1, face, g.dy(j), g.dx(i), g.dx(i - 1));
}
double conductance_Ty(const GridGeometry& g, const AssemblyContext& c, int i, int j) {
  const auto& gl = *c.old.gamma_l;
  const double face = harmonic_gamma(gl(i, j - 1), gl(i, j), g.dy(j - 1), g.dy(j));
  return diffusion_conductance_Ty(c.model.CT1, face, g.dx(i), g.dy(j), g.dy(j - 1));
}

double temperature_source(const AssemblyContext& c, int i, int j) {
  const GridGeometry& g = *c.geom;
  return dissipation_source(velocity_patch(g, c.old, i, j), (*c.old.p)(i, j), (*c.old.gamma)(i, j),
                            c.model.CT2, c.model.CT3, g.dx(i), g.dy(j));
}

}  // namespace

double harmonic_gamma(double gamma_left, double gamma_right, double d_left, double d_right) {
  if (!(gamma_left > 0.0) || !(gamma_right > 0.0)) {
    throw NumericDomainError("diffusion coefficient must be positive for harmonic averaging");
  }
  if (!(d_left > 0.0) || !(d_right > 0.0)) {
    throw NumericDomainError("cell widths must be positive for harmonic averaging");
  }
  return (d_left + d_right) * gamma_left * gamma_right / (d_left * gamma_right + d_right * gamma_left);
}

double face_rho_u(const GridGeometry& g, const FieldRefs& f, const SchemeConfig& s, int i, int j) {
  return face_density_u(row_x(g, *f.rho, i - 2, j, (*f.u)(i, j)), s);
}
double face_rho_v(const GridGeometry& g, const FieldRefs& f, const SchemeConfig& s, int i, int j) {
  return face_density_v(col_y(g, *f.rho, i, j - 2, (*f.v)(i, j)), s);
}
double flux_x(const GridGeometry& g, const FieldRefs& f, const SchemeConfig& s, int i, int j) {
  return mass_flux_x(face_rho_u(g, f, s, i, j), (*f.u)(i, j), g.dy(j));
}
double flux_y(const GridGeometry& g, const FieldRefs& f, const SchemeConfig& s, int i, int j) {
  return mass_flux_y(face_rho_v(g, f, s, i, j), (*f.v)(i, j), g.dx(i));
}

MomentumCoeffs momentum_coeffs_v_implicit(const AssemblyContext& c, int i, int j) {
  return momentum_implicit<Axis::Y>(c, i, j);
}
MomentumCoeffs momentum_coeffs_u_implicit(const AssemblyContext& c, int i, int j) {
  return momentum_implicit<Axis::X>(c, i, j);
}
MomentumCoeffs momentum_coeffs_v_explicit(const AssemblyContext& c, int i, int j) {
  const double e = c.planes ? c.planes->v(i, j) : momentum_explicit_term<Axis::Y>(c, i, j);
  return momentum_explicit<Axis::Y>(c, i, j, e);
}
MomentumCoeffs momentum_coeffs_u_explicit(const AssemblyContext& c, int i, int j) {
  const double e = c.planes ? c.planes->u(i, j) : momentum_explicit_term<Axis::X>(c, i, j);
  return momentum_explicit<Axis::X>(c, i, j, e);
}
MomentumCoeffs momentum_coeffs_v(const AssemblyContext& c, int i, int j) {
  return c.scheme.is_explicit() ? momentum_coeffs_v_explicit(c, i, j) : momentum_coeffs_v_implicit(c, i, j);
}
MomentumCoeffs momentum_coeffs_u(const AssemblyContext& c, int i, int j) {
  return c.scheme.is_explicit() ? momentum_coeffs_u_explicit(c, i, j) : momentum_coeffs_u_implicit(c, i, j);
}

double explicit_term_v(const AssemblyContext& c, int i, int j) {
  return momentum_explicit_term<Axis::Y>(c, i, j);
}
double explicit_term_u(const AssemblyContext& c, int i, int j) {
  return momentum_explicit_term<Axis::X>(c, i, j);
}

double explicit_term_T(const AssemblyContext& c, int i, int j) {
  const GridGeometry& g = *c.geom;
  const FieldRefs& p = c.prev;
  const auto& T = *p.T;
  const auto& u = *p.u;
  const auto& v = *p.v;
  const SchemeConfig& s = c.scheme;
  return -flux_x(g, p, s, i + 1, j) * face_value(row_x(g, T, i - 1, j, u(i + 1, j)), s) +
         flux_x(g, p, s, i, j) * face_value(row_x(g, T, i - 2, j, u(i, j)), s) -
         flux_y(g, p, s, i, j + 1) * face_value(col_y(g, T, i, j - 1, v(i, j + 1)), s) +
         flux_y(g, p, s, i, j) * face_value(col_y(g, T, i, j - 2, v(i, j)), s);
}

double dissipation_source(const VelocityPatch& vp, double p, double gamma, double CT2, double CT3,
                          double dx, double dy) noexcept {
  const double dudx = (vp.u_e - vp.u_w) / dx;
  const double dvdy = (vp.v_n - vp.v_s) / dy;
  const double shear = (vp.v_at_east - vp.v_at_west) / dx + (vp.u_at_north - vp.u_at_south) / dy;
  const double div = dudx + dvdy;
  const double phi = 2.0 * (dudx * dudx + dvdy * dvdy) + shear * shear - 2.0 / 3.0 * div * div;
  return CT2 * gamma * phi * dx * dy + CT3 * p * div * dx * dy;
}

VelocityPatch velocity_patch(const GridGeometry& g, const FieldRefs& f, int i, int j) {
  const auto& u = *f.u;
  const auto& v = *f.v;
  VelocityPatch vp;
  vp.u_w = u(i, j);
  vp.u_e = u(i + 1, j);
  vp.v_s = v(i, j);
  vp.v_n = v(i, j + 1);
  auto v_at_xface = [&](int fi) {
    const double lo = face_lerp(v(fi - 1, j), v(fi, j), g.dx(fi - 1), g.dx(fi));
    const double hi = face_lerp(v(fi - 1, j + 1), v(fi, j + 1), g.dx(fi - 1), g.dx(fi));
    return 0.5 * (lo + hi);
  };
  auto u_at_yface = [&](int fj) {
    const double lo = face_lerp(u(i, fj - 1), u(i, fj), g.dy(fj - 1), g.dy(fj));
    const double hi = face_lerp(u(i + 1, fj - 1), u(i + 1, fj), g.dy(fj - 1), g.dy(fj));
    return 0.5 * (lo + hi);
  };
  vp.v_at_east = v_at_xface(i + 1);
  vp.v_at_west = v_at_xface(i);
  vp.u_at_north = u_at_yface(j + 1);
  vp.u_at_south = u_at_yface(j);
  return vp;
}

TemperatureCoeffs temperature_coeffs_implicit(const AssemblyContext& c, int i, int j) {
  const GridGeometry& g = *c.geom;
  const FieldRefs& o = c.old;
  const SchemeConfig& s = c.scheme;
  const bool bl = s.branchless;
  const auto& T = *o.T;
  const double fw = flux_x(g, o, s, i, j);
  const double fe = flux_x(g, o, s, i + 1, j);
  const double fs = flux_y(g, o, s, i, j);
  const double fn = flux_y(g, o, s, i, j + 1);

  TemperatureCoeffs tc;
  tc.a1 = positive_part(fw, bl) - fw * psi_s(row_x(g, T, i - 2, j, (*o.u)(i, j)), s) +
          conductance_Tx(g, c, i, j);
  tc.a2 = positive_part(-fe, bl) - fe * psi_s(row_x(g, T, i - 1, j, (*o.u)(i + 1, j)), s) +
          conductance_Tx(g, c, i + 1, j);
  tc.a3 = positive_part(fs, bl) - fs * psi_s(col_y(g, T, i, j - 2, (*o.v)(i, j)), s) +
          conductance_Ty(g, c, i, j);
  tc.a4 = positive_part(-fn, bl) - fn * psi_s(col_y(g, T, i, j - 1, (*o.v)(i, j + 1)), s) +
          conductance_Ty(g, c, i, j + 1);
  tc.a0 = c.dt * (tc.a1 + tc.a2 + tc.a3 + tc.a4 + fe - fw + fn - fs) +
          (*o.rho)(i, j) * g.dx(i) * g.dy(j);
  check_diagonal(tc.a0, "T", i, j);
  tc.sc = temperature_source(c, i, j);
  tc.explicit_term = 0.0;
  return tc;
}

TemperatureCoeffs temperature_coeffs_explicit(const AssemblyContext& c, int i, int j) {
  const GridGeometry& g = *c.geom;
  TemperatureCoeffs tc;
  tc.a1 = conductance_Tx(g, c, i, j);
  tc.a2 = conductance_Tx(g, c, i + 1, j);
  tc.a3 = conductance_Ty(g, c, i, j);
  tc.a4 = conductance_Ty(g, c, i, j + 1);
  tc.a0 = c.dt * (tc.a1 + tc.a2 + tc.a3 + tc.a4) + (*c.old.rho)(i, j) * g.dx(i) * g.dy(j);
  check_diagonal(tc.a0, "T", i, j);
  tc.sc = temperature_source(c, i, j);
  tc.explicit_term = c.planes ? c.planes->T(i, j) : explicit_term_T(c, i, j);
  return tc;
}

TemperatureCoeffs temperature_coeffs(const AssemblyContext& c, int i, int j) {
  return c.scheme.is_explicit() ? temperature_coeffs_explicit(c, i, j)
                                : temperature_coeffs_implicit(c, i, j);
}

PressureCoeffs pressure_coeffs(const PressureInputs& in) {
  if (!(in.T > 0.0)) throw NumericDomainError("pressure equation needs a positive temperature");
  PressureCoeffs pc;
  pc.apx_w = in.rho_u_w * in.du_w * in.dy;
  pc.apx_e = in.rho_u_e * in.du_e * in.dy;
  pc.apy_s = in.rho_v_s * in.dv_s * in.dx;
  pc.apy_n = in.rho_v_n * in.dv_n * in.dx;
  pc.bpx_w = in.rho_u_w * in.uhat_w * in.dy;
  pc.bpx_e = in.rho_u_e * in.uhat_e * in.dy;
  pc.bpy_s = in.rho_v_s * in.vhat_s * in.dx;
  pc.bpy_n = in.rho_v_n * in.vhat_n * in.dx;
  pc.a0 = 1.0 / in.T * in.dx * in.dy + (pc.apx_w + pc.apx_e + pc.apy_s + pc.apy_n) * in.dt;
  pc.b = in.p_prev / in.T_prev * in.dx * in.dy -
         (pc.bpx_e - pc.bpx_w + pc.bpy_n - pc.bpy_s) * in.dt;
  return pc;
}

}  // namespace simplets
