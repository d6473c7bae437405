#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "simplets/config.hpp"
#include "simplets/fields.hpp"
#include "simplets/kernels.hpp"
#include "simplets/solver.hpp"

namespace simplets {

enum class CaseKind {
  Channel,  ///< inflow past square particles between moving walls
  Cavity,   ///< closed box with a moving north lid
  Box       ///< closed box with static walls
};

struct CaseParameters {
  CaseKind kind = CaseKind::Channel;
  double kn = 0.001;
  double mach = 2.43;
  double gamma = 5.0 / 3.0;
  double pr = 2.0 / 3.0;
  double length = 201.6;       ///< L_ch (or box width)
  double height = 10.0;        ///< H_ch (or box height)
  double inlet_length = 5.5;   ///< L_a, distance from inlet to the square front
  double square_size = 1.0;    ///< a
  double spacing = 0.05;       ///< mesh step
  int squares = 0;             ///< 0: one per 10 units of height
  std::optional<double> wall_velocity;  ///< channel walls; default +u_in
  double wall_temperature = 1.0;
  double lid_velocity = 0.1 * 0.9128709291752769;  ///< cavity lid, Mach 0.1 at gamma 5/3
};

/// Nondimensional equation coefficients for a hard-sphere gas. Throws
/// ConfigError when kn <= 0 or gamma <= 1.
ModelCoefficients derive_parameters(double kn, double gamma);

/// Inlet speed in thermal-velocity units: M * sqrt(gamma / 2).
double inlet_velocity(double mach, double gamma);

/// Temperature scaling of viscosity and heat conduction, mu/mu_h and
/// lambda/lambda_h, for a hard-sphere gas.
struct Transport {
  double mu = 0.0;
  double lambda = 0.0;
};
Transport hard_sphere_transport(double T);

struct CaseSetup {
  Problem problem;
  FieldSet fields;
};

/// Builds mesh, classification, boundary conditions and the initial uniform
/// state (p = T = 1, u = u_in for the channel, at rest otherwise) in every
/// snapshot buffer.
CaseSetup build_case(const CaseParameters& params, bool explicit_planes);
CaseSetup build_channel_case(const CaseParameters& params, bool explicit_planes);
CaseSetup build_cavity_case(const CaseParameters& params, bool explicit_planes);
CaseSetup build_box_case(const CaseParameters& params, bool explicit_planes);

/// Sets every buffer of `fields` to the uniform state (p, T, u0, 0), with
/// Fixed faces at their boundary values, then fills ghost values.
void initialize_uniform(const Problem& problem, FieldSet& fields, double p, double T, double u0);

/// Everything a run needs, read from a configuration.
struct RunSettings {
  CaseParameters params;
  SolverConfig solver;
  long steps = 100;
  std::string out_dir = "out";
  int fields_every = 0;      ///< 0: only at the end
  int checkpoint_every = 0;  ///< 0: only at the end
  std::string format = "csv";  ///< csv | vtk | both
};

/// Throws ConfigError on unknown keys or invalid values.
RunSettings settings_from_config(const Config& cfg);

/// Parses "implicit", "explicit" / "upwind", "tvd" pairs written as
/// "<time>x<space>", e.g. "implicitxtvd".
SchemeConfig parse_scheme(const std::string& text);
std::string scheme_name(const SchemeConfig& s);

enum class FieldFormat { Csv, Vtk };

/// CSV: header x,y,p,T,rho,u,v and one line per cell; velocities averaged
/// from the two bounding faces. VTK: legacy ASCII structured points.
/// Throws IoError when the file cannot be written.
void write_fields(const GridGeometry& g, const State& s, const std::filesystem::path& path,
                  FieldFormat format);

/// Mass flux through the inlet and outlet face columns of the fluid.
struct MassBalance {
  double inflow = 0.0;
  double outflow = 0.0;
  double relative_imbalance() const noexcept;
};
MassBalance boundary_mass_flux(const Problem& problem, const State& s, const SchemeConfig& scheme);

/// Discrete continuity residual summed over the fluid, including the storage
/// term, relative to the inflow: |sum(div F) + sum(d rho / dt)| / inflow.
double continuity_imbalance(const Problem& problem, const State& cur, const State& prev,
                            const SchemeConfig& scheme, double dt);

}  // namespace simplets
