#include "simplets/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "simplets/error.hpp"

namespace simplets {

PassInputs make_pass_inputs(const Problem& problem, const State& old, const Diffusivity& diff_old,
                            const State& prev, const ExplicitPlanes* planes,
                            const SchemeConfig& scheme, double dt) {
  PassInputs in;
  in.problem = &problem;
  in.old = &old;
  in.prev = &prev;
  in.diff_old = &diff_old;
  in.ac.geom = &problem.geom;
  in.ac.old = refs(old, &diff_old);
  in.ac.prev = refs(prev);
  in.ac.planes = scheme.is_explicit() ? planes : nullptr;
  in.ac.model = problem.model;
  in.ac.scheme = scheme;
  in.ac.dt = dt;
  return in;
}

FaceUpdate pseudo_velocity_u(const PassInputs& in, int i, int j) {
  const FaceKind kind = in.problem->mask.u_faces(i, j);
  const Array2D<double>& u = in.old->u;
  if (kind != FaceKind::Computed && kind != FaceKind::Outlet) return {u(i, j), 0.0};
  const MomentumCoeffs m = momentum_coeffs_u(in.ac, i, j);
  const double hat = (m.a1 * u(i - 1, j) + m.a2 * u(i + 1, j) + m.a3 * u(i, j - 1) +
                      m.a4 * u(i, j + 1) + m.b + m.explicit_term) /
                     m.a0;
  return {hat, kind == FaceKind::Computed ? m.d : 0.0};
}

FaceUpdate pseudo_velocity_v(const PassInputs& in, int i, int j) {
  const FaceKind kind = in.problem->mask.v_faces(i, j);
  const Array2D<double>& v = in.old->v;
  if (kind != FaceKind::Computed && kind != FaceKind::Outlet) return {v(i, j), 0.0};
  const MomentumCoeffs m = momentum_coeffs_v(in.ac, i, j);
  const double hat = (m.a1 * v(i - 1, j) + m.a2 * v(i + 1, j) + m.a3 * v(i, j - 1) +
                      m.a4 * v(i, j + 1) + m.b + m.explicit_term) /
                     m.a0;
  return {hat, kind == FaceKind::Computed ? m.d : 0.0};
}

double temperature_update(const PassInputs& in, int i, int j, const Array2D<double>& T_nb) {
  const GridGeometry& g = in.problem->geom;
  const TemperatureCoeffs tc = temperature_coeffs(in.ac, i, j);
  return temperature_value(tc, T_nb(i - 1, j), T_nb(i + 1, j), T_nb(i, j - 1), T_nb(i, j + 1),
                           in.prev->rho(i, j), in.prev->T(i, j), g.dx(i), g.dy(j), in.ac.dt);
}

double pressure_update(const PassInputs& in, int i, int j, double T_cur, const FaceUpdate& uw,
                       const FaceUpdate& ue, const FaceUpdate& vs, const FaceUpdate& vn,
                       const Array2D<double>& p_nb) {
  const GridGeometry& g = in.problem->geom;
  const SchemeConfig& s = in.ac.scheme;
  PressureInputs pi;
  pi.uhat_w = uw.hat;
  pi.du_w = uw.d;
  pi.uhat_e = ue.hat;
  pi.du_e = ue.d;
  pi.vhat_s = vs.hat;
  pi.dv_s = vs.d;
  pi.vhat_n = vn.hat;
  pi.dv_n = vn.d;
  pi.rho_u_w = face_rho_u(g, in.ac.old, s, i, j);
  pi.rho_u_e = face_rho_u(g, in.ac.old, s, i + 1, j);
  pi.rho_v_s = face_rho_v(g, in.ac.old, s, i, j);
  pi.rho_v_n = face_rho_v(g, in.ac.old, s, i, j + 1);
  pi.T = T_cur;
  pi.p_prev = in.prev->p(i, j);
  pi.T_prev = in.prev->T(i, j);
  pi.dx = g.dx(i);
  pi.dy = g.dy(j);
  pi.dt = in.ac.dt;
  if (!(T_cur > 0.0) || !std::isfinite(T_cur)) {
    throw StateCorruption("nonpositive or non-finite temperature", i, j);
  }
  const PressureCoeffs pc = pressure_coeffs(pi);
  return pressure_value(pc, p_nb(i - 1, j), p_nb(i + 1, j), p_nb(i, j - 1), p_nb(i, j + 1),
                        in.ac.dt);
}

EosValues refresh_eos(double p, double T, int i, int j) {
  if (!(p > 0.0) || !std::isfinite(p)) throw StateCorruption("nonpositive or non-finite pressure", i, j);
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw StateCorruption("nonpositive or non-finite temperature", i, j);
  }
  return {p / T, std::sqrt(T)};
}

void compute_explicit_terms(const Problem& problem, const State& prev, const Diffusivity& diff_prev,
                            const SchemeConfig& scheme, double dt, ExplicitPlanes& planes) {
  if (!scheme.is_explicit()) {
    throw UsageError("explicit convective terms requested under an implicit scheme");
  }
  AssemblyContext ac;
  ac.geom = &problem.geom;
  ac.old = refs(prev, &diff_prev);
  ac.prev = refs(prev);
  ac.model = problem.model;
  ac.scheme = scheme;
  ac.dt = dt;
  const CellMask& m = problem.mask;
  planes.u.fill(0.0);
  planes.v.fill(0.0);
  planes.T.fill(0.0);
  for (int j = 0; j < m.ny; ++j) {
    for (int i = 0; i <= m.nx; ++i) {
      const FaceKind k = m.u_faces(i, j);
      if (k == FaceKind::Computed || k == FaceKind::Outlet) planes.u(i, j) = explicit_term_u(ac, i, j);
    }
  }
  for (int j = 0; j <= m.ny; ++j) {
    for (int i = 0; i < m.nx; ++i) {
      const FaceKind k = m.v_faces(i, j);
      if (k == FaceKind::Computed || k == FaceKind::Outlet) planes.v(i, j) = explicit_term_v(ac, i, j);
    }
  }
  for (int j = 0; j < m.ny; ++j) {
    for (int i = 0; i < m.nx; ++i) {
      if (m.fluid(i, j)) planes.T(i, j) = explicit_term_T(ac, i, j);
    }
  }
}

void carry_inactive(const CellMask& m, const State& old, const Diffusivity& diff_old, State& cur,
                    Diffusivity& diff_cur, int i0, int i1, int j0, int j1) {
  for (int j = j0; j < j1; ++j) {
    for (int i = i0; i < i1; ++i) {
      if (m.fluid(i, j)) continue;
      cur.p(i, j) = old.p(i, j);
      cur.T(i, j) = old.T(i, j);
      cur.rho(i, j) = old.rho(i, j);
      diff_cur.gamma(i, j) = diff_old.gamma(i, j);
      diff_cur.gamma_l(i, j) = diff_old.gamma_l(i, j);
    }
  }
}

void reference_pass(const PassInputs& in, Loop3Order order, int loop3, State& cur,
                    Diffusivity& diff_cur) {
  const CellMask& m = in.problem->mask;
  const int nx = m.nx;
  const int ny = m.ny;
  Array2D<double> uhat(nx + 1, ny), du(nx + 1, ny), vhat(nx, ny + 1), dv(nx, ny + 1);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const FaceUpdate f = pseudo_velocity_u(in, i, j);
      uhat(i, j) = f.hat;
      du(i, j) = f.d;
    }
  }
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const FaceUpdate f = pseudo_velocity_v(in, i, j);
      vhat(i, j) = f.hat;
      dv(i, j) = f.d;
    }
  }

  auto pressure_at = [&](int i, int j, double T, const Array2D<double>& p_nb) {
    return pressure_update(in, i, j, T, {uhat(i, j), du(i, j)}, {uhat(i + 1, j), du(i + 1, j)},
                           {vhat(i, j), dv(i, j)}, {vhat(i, j + 1), dv(i, j + 1)}, p_nb);
  };

  if (order == Loop3Order::Gpu || loop3 <= 1) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        if (!m.fluid(i, j)) continue;
        const double T = temperature_update(in, i, j, in.old->T);
        cur.T(i, j) = T;
        cur.p(i, j) = pressure_at(i, j, T, in.old->p);
      }
    }
  } else {
    Array2D<double> Tk = in.old->T;
    Array2D<double> pk = in.old->p;
    Array2D<double> Tn = Tk;
    Array2D<double> pn = pk;
    for (int rep = 0; rep < loop3; ++rep) {
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
          if (m.fluid(i, j)) Tn(i, j) = temperature_update(in, i, j, Tk);
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
          if (m.fluid(i, j)) pn(i, j) = pressure_at(i, j, Tn(i, j), pk);
      Tk.swap(Tn);
      pk.swap(pn);
    }
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        if (!m.fluid(i, j)) continue;
        cur.T(i, j) = Tk(i, j);
        cur.p(i, j) = pk(i, j);
      }
    }
  }

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!m.fluid(i, j)) continue;
      const EosValues e = refresh_eos(cur.p(i, j), cur.T(i, j), i, j);
      cur.rho(i, j) = e.rho;
      diff_cur.gamma(i, j) = e.gamma;
      diff_cur.gamma_l(i, j) = e.gamma;
    }
  }
  carry_inactive(m, *in.old, *in.diff_old, cur, diff_cur, 0, nx, 0, ny);

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const FaceUpdate f{uhat(i, j), du(i, j)};
      cur.u(i, j) = m.u_faces(i, j) == FaceKind::Computed
                        ? correct_velocity(f, cur.p(i, j), cur.p(i - 1, j))
                        : f.hat;
    }
  }
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const FaceUpdate f{vhat(i, j), dv(i, j)};
      cur.v(i, j) = m.v_faces(i, j) == FaceKind::Computed
                        ? correct_velocity(f, cur.p(i, j), cur.p(i, j - 1))
                        : f.hat;
    }
  }
}

double Residuals::max() const noexcept { return std::max(std::max(p, T), std::max(u, v)); }

void ResidualAccumulator::add_block(const CellMask& m, const State& old, const State& cur, int i0,
                                    int i1, int j0, int j1) {
  for (int j = j0; j < j1; ++j) {
    for (int i = i0; i < i1; ++i) {
      if (!m.fluid(i, j)) continue;
      dp = std::max(dp, std::abs(cur.p(i, j) - old.p(i, j)));
      dT = std::max(dT, std::abs(cur.T(i, j) - old.T(i, j)));
      mp = std::max(mp, std::abs(cur.p(i, j)));
      mT = std::max(mT, std::abs(cur.T(i, j)));
    }
  }
  const int iu1 = i1 + (i1 == m.nx ? 1 : 0);
  for (int j = j0; j < j1; ++j) {
    for (int i = i0; i < iu1; ++i) {
      const FaceKind k = m.u_faces(i, j);
      if (k != FaceKind::Computed && k != FaceKind::Outlet) continue;
      du = std::max(du, std::abs(cur.u(i, j) - old.u(i, j)));
      mu = std::max(mu, std::abs(cur.u(i, j)));
    }
  }
  const int jv1 = j1 + (j1 == m.ny ? 1 : 0);
  for (int j = j0; j < jv1; ++j) {
    for (int i = i0; i < i1; ++i) {
      const FaceKind k = m.v_faces(i, j);
      if (k != FaceKind::Computed && k != FaceKind::Outlet) continue;
      dv = std::max(dv, std::abs(cur.v(i, j) - old.v(i, j)));
      mv = std::max(mv, std::abs(cur.v(i, j)));
    }
  }
}

void ResidualAccumulator::merge(const ResidualAccumulator& o) noexcept {
  dp = std::max(dp, o.dp);
  dT = std::max(dT, o.dT);
  du = std::max(du, o.du);
  dv = std::max(dv, o.dv);
  mp = std::max(mp, o.mp);
  mT = std::max(mT, o.mT);
  mu = std::max(mu, o.mu);
  mv = std::max(mv, o.mv);
}

Residuals ResidualAccumulator::scaled() const noexcept {
  auto sc = [](double d, double m) { return d / (m > 0.0 ? m : 1.0); };
  return {sc(dp, mp), sc(dT, mT), sc(du, mu), sc(dv, mv)};
}

Residuals compute_residuals(const CellMask& m, const State& old, const State& cur) {
  ResidualAccumulator acc;
  acc.add_block(m, old, cur, 0, m.nx, 0, m.ny);
  return acc.scaled();
}

}  // namespace simplets
