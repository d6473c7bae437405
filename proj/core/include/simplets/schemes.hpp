#pragma once

#include <algorithm>
#include <cmath>

#include "simplets/branchless.hpp"

namespace simplets {

enum class TimeScheme { Explicit, Implicit };
enum class SpaceScheme { Upwind, Tvd };

/// Time x space treatment of the convective terms.
struct SchemeConfig {
  TimeScheme time = TimeScheme::Implicit;
  SpaceScheme space = SpaceScheme::Upwind;
  /// Keeps the TVD arithmetic but forces the limiter to zero.
  bool null_limiter = false;
  /// Use arithmetic selects instead of conditionals in the kernels.
  bool branchless = false;

  bool limiter_active() const noexcept { return space == SpaceScheme::Tvd && !null_limiter; }
  bool is_explicit() const noexcept { return time == TimeScheme::Explicit; }

  friend bool operator==(const SchemeConfig&, const SchemeConfig&) = default;
};

/// Four consecutive values along one axis with their cell widths and the
/// velocity whose sign selects the upwind side. Surface corrections sit
/// between phi2 and phi3.
struct StencilScalars {
  double phi1, phi2, phi3, phi4;
  double d1, d2, d3, d4;
  double vel;
};

/// Van Leer limiter psi(r) = (r + |r|) / (1 + r); zero for r <= 0 and for NaN.
inline double van_leer(double r) noexcept {
  if (!(r > 0.0)) return 0.0;
  if (r > 1e300) return 2.0;
  return (r + std::abs(r)) / (1.0 + r);
}

namespace detail {

inline double limiter(double r, const SchemeConfig& s) noexcept {
  return s.limiter_active() ? van_leer(r) : 0.0;
}

inline double ratio(double num, double den) noexcept { return den != 0.0 ? num / den : 0.0; }

inline double pick(bool cond, double a, double b, bool branchless) noexcept {
  if (branchless) return branchless::select(static_cast<double>(cond), a, b);
  return cond ? a : b;
}

}  // namespace detail

/// TVD correction on the surface between phi2 and phi3. Both branches are
/// evaluated; a zero denominator yields a zero correction.
inline double psi_s(const StencilScalars& s, const SchemeConfig& cfg) noexcept {
  const double span23 = s.d2 + s.d3;
  const double r_pos = detail::ratio(span23 * (s.phi2 - s.phi1), (s.d1 + s.d2) * (s.phi3 - s.phi2));
  const double r_neg = detail::ratio(span23 * (s.phi4 - s.phi3), (s.d3 + s.d4) * (s.phi3 - s.phi2));
  const double pos = s.d2 / span23 * detail::limiter(r_pos, cfg);
  const double neg = 0.0 - s.d3 / span23 * detail::limiter(r_neg, cfg);
  return detail::pick(s.vel > 0.0, pos, neg, cfg.branchless);
}

/// TVD correction at a cell centre between phi2 and phi3 (d4 is unused).
inline double psi_c(const StencilScalars& s, const SchemeConfig& cfg) noexcept {
  const double r_pos = detail::ratio(s.d2 * (s.phi2 - s.phi1), s.d1 * (s.phi3 - s.phi2));
  const double r_neg = detail::ratio(s.d2 * (s.phi4 - s.phi3), s.d3 * (s.phi3 - s.phi2));
  const double pos = 0.5 * detail::limiter(r_pos, cfg);
  const double neg = 0.0 - 0.5 * detail::limiter(r_neg, cfg);
  return detail::pick(s.vel > 0.0, pos, neg, cfg.branchless);
}

/// phi1 if v > 0, otherwise phi2.
inline double upwind_select(double phi1, double phi2, double v, bool branchless = false) noexcept {
  return detail::pick(v > 0.0, phi1, phi2, branchless);
}

inline double positive_part(double f, bool branchless = false) noexcept {
  return branchless ? branchless::positive_part(f) : std::max(0.0, f);
}

/// Convected value on the surface between phi2 and phi3: donor plus the
/// limited correction times the jump across the surface.
inline double face_value(const StencilScalars& s, const SchemeConfig& cfg) noexcept {
  return upwind_select(s.phi2, s.phi3, s.vel, cfg.branchless) + psi_s(s, cfg) * (s.phi3 - s.phi2);
}

/// Density on the x-face between cells i-1 and i from rho_{i-2..i+1} and
/// dx_{i-2..i+1}. face_density_v is the same operation along y.
inline double face_density_u(const StencilScalars& rho, const SchemeConfig& cfg) noexcept {
  return face_value(rho, cfg);
}
inline double face_density_v(const StencilScalars& rho, const SchemeConfig& cfg) noexcept {
  return face_value(rho, cfg);
}

inline double mass_flux_x(double rho_u, double u_face, double dy) noexcept { return rho_u * u_face * dy; }
inline double mass_flux_y(double rho_v, double v_face, double dx) noexcept { return rho_v * v_face * dx; }

}  // namespace simplets
