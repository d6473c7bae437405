#pragma once

#include "simplets/boundary.hpp"
#include "simplets/coeffs.hpp"
#include "simplets/fields.hpp"
#include "simplets/grid.hpp"

namespace simplets {

/// Immutable description of a case: mesh, classification, boundary
/// conditions and model parameters.
struct Problem {
  GridGeometry geom;
  CellMask mask;
  BoundarySetup bc;
  ModelCoefficients model;
};

/// Everything one loop-2 pass reads. The referenced snapshots must not
/// change while the pass runs.
struct PassInputs {
  const Problem* problem = nullptr;
  const State* old = nullptr;
  const State* prev = nullptr;
  const Diffusivity* diff_old = nullptr;
  AssemblyContext ac;
};

/// Builds pass inputs; `planes` may be null (implicit schemes).
PassInputs make_pass_inputs(const Problem& problem, const State& old, const Diffusivity& diff_old,
                            const State& prev, const ExplicitPlanes* planes,
                            const SchemeConfig& scheme, double dt);

/// Pseudo velocity and pressure-gradient coefficient of one face.
struct FaceUpdate {
  double hat = 0.0;
  double d = 0.0;
};

/// Computed faces solve the momentum equation; Outlet faces do too but with
/// d = 0; Fixed and Ghost faces keep their old value with d = 0.
FaceUpdate pseudo_velocity_u(const PassInputs& in, int i, int j);
FaceUpdate pseudo_velocity_v(const PassInputs& in, int i, int j);

/// New temperature of fluid cell (i, j) with neighbour temperatures taken
/// from T_nb.
double temperature_update(const PassInputs& in, int i, int j, const Array2D<double>& T_nb);

/// New pressure of fluid cell (i, j) from its current temperature, the four
/// face updates (west, east, south, north) and neighbour pressures in p_nb.
double pressure_update(const PassInputs& in, int i, int j, double T_cur, const FaceUpdate& uw,
                       const FaceUpdate& ue, const FaceUpdate& vs, const FaceUpdate& vn,
                       const Array2D<double>& p_nb);

/// u = u_hat - d (p_hi - p_lo).
inline double correct_velocity(const FaceUpdate& f, double p_hi, double p_lo) noexcept {
  return f.hat - f.d * (p_hi - p_lo);
}

struct EosValues {
  double rho = 0.0;
  double gamma = 0.0;
};

/// rho = p / T and Gamma = Gamma^lambda = sqrt(T). Throws StateCorruption
/// naming (i, j) unless p and T are positive and finite.
EosValues refresh_eos(double p, double T, int i, int j);

/// Convective planes of the explicit schemes from the previous time level.
/// Throws UsageError under an implicit scheme.
void compute_explicit_terms(const Problem& problem, const State& prev, const Diffusivity& diff_prev,
                            const SchemeConfig& scheme, double dt, ExplicitPlanes& planes);

enum class Loop3Order { Gpu, Serial };

/// One loop-2 pass over the whole domain with full-size temporary arrays.
/// With Loop3Order::Gpu the temperature/pressure pair is evaluated once,
/// since further repetitions reproduce the same values. With
/// Loop3Order::Serial, loop3 sweeps update T and then p with neighbours
/// from the previous repetition.
void reference_pass(const PassInputs& in, Loop3Order order, int loop3, State& cur,
                    Diffusivity& diff_cur);

/// Copies cell values of non-fluid cells in [i0, i1) x [j0, j1) from old to
/// current so the current snapshot is fully defined.
void carry_inactive(const CellMask& m, const State& old, const Diffusivity& diff_old, State& cur,
                    Diffusivity& diff_cur, int i0, int i1, int j0, int j1);

/// Scaled max-norm changes between two iterates.
struct Residuals {
  double p = 0.0;
  double T = 0.0;
  double u = 0.0;
  double v = 0.0;

  double max() const noexcept;
};

/// Maximum absolute change and maximum magnitude per field over the fluid
/// cells and computed faces of a block; combine blocks with merge() and
/// finish with scaled(). A block owns the left face of each of its cells,
/// plus the last face of the domain when it touches the east or north side.
struct ResidualAccumulator {
  double dp = 0.0, dT = 0.0, du = 0.0, dv = 0.0;
  double mp = 0.0, mT = 0.0, mu = 0.0, mv = 0.0;

  void add_block(const CellMask& m, const State& old, const State& cur, int i0, int i1, int j0,
                 int j1);
  void merge(const ResidualAccumulator& o) noexcept;
  Residuals scaled() const noexcept;
};

Residuals compute_residuals(const CellMask& m, const State& old, const State& cur);

}  // namespace simplets
