#include "simplets/case_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

#include "simplets/boundary.hpp"
#include "simplets/error.hpp"

namespace simplets {

ModelCoefficients derive_parameters(double kn, double gamma) {
  if (!(kn > 0.0)) throw ConfigError("Knudsen number must be positive");
  if (!(gamma > 1.0)) throw ConfigError("specific heat ratio must exceed 1");
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  ModelCoefficients m;
  m.A = 0.5;
  m.B = 5.0 * sqrt_pi / 16.0 * kn;
  m.CT1 = kn * std::sqrt(std::numbers::pi * 225.0 / 1024.0);
  m.CT2 = sqrt_pi / 4.0 * kn;
  m.CT3 = 2.0 / 5.0;
  return m;
}

double inlet_velocity(double mach, double gamma) { return mach * std::sqrt(gamma / 2.0); }

Transport hard_sphere_transport(double T) {
  if (!(T > 0.0)) throw NumericDomainError("temperature must be positive");
  return {std::sqrt(T), std::sqrt(T)};
}

void initialize_uniform(const Problem& problem, FieldSet& fields, double p, double T, double u0) {
  const CellMask& m = problem.mask;
  const double inlet_u = problem.bc.inlet.u;
  for (int k = 0; k < 3; ++k) {
    State& s = fields.buffer(k);
    s.p.fill(p);
    s.T.fill(T);
    s.rho.fill(p / T);
    s.u.fill(u0);
    s.v.fill(0.0);
    for (int j = 0; j < m.ny; ++j) {
      for (int i = 0; i <= m.nx; ++i) {
        const FaceKind kind = m.u_faces(i, j);
        if (kind == FaceKind::Fixed) {
          s.u(i, j) = (i == 0 && m.sides.west == SideKind::Inlet) ? inlet_u : 0.0;
        } else if (kind == FaceKind::Ghost) {
          s.u(i, j) = 0.0;
        }
      }
    }
  }
  for (int k = 0; k < 2; ++k) {
    fields.diff_buffer(k).gamma.fill(std::sqrt(T));
    fields.diff_buffer(k).gamma_l.fill(std::sqrt(T));
  }
  for (int k = 0; k < 3; ++k) {
    apply_boundary_conditions(problem.geom, problem.mask, problem.bc, fields.buffer(k),
                              &fields.diff_buffer(k % 2));
  }
  if (fields.has_planes()) {
    fields.planes().u.fill(0.0);
    fields.planes().v.fill(0.0);
    fields.planes().T.fill(0.0);
  }
}

CaseSetup build_channel_case(const CaseParameters& params, bool explicit_planes) {
  const ModelCoefficients model = derive_parameters(params.kn, params.gamma);
  GridGeometry geom = build_uniform_grid(params.length, params.height, params.spacing);
  const double u_in = inlet_velocity(params.mach, params.gamma);

  int squares = params.squares;
  if (squares < 0) throw ConfigError("case.squares must not be negative");
  if (squares == 0) squares = std::max(1, static_cast<int>(std::lround(params.height / 10.0)));
  const double band = params.height / squares;
  const int size_cells = static_cast<int>(std::lround(params.square_size / params.spacing));
  if (params.square_size > 0.0 && size_cells < 1) {
    throw ConfigError("square is smaller than one mesh cell");
  }

  std::vector<Obstacle> obstacles;
  if (params.square_size > 0.0) {
    const int i0 = static_cast<int>(std::lround(params.inlet_length / params.spacing));
    if (i0 < 1 || i0 + size_cells >= geom.nx()) throw ConfigError("square does not fit in the channel");
    for (int s = 0; s < squares; ++s) {
      const double yc = (s + 0.5) * band;
      const int j0 = static_cast<int>(std::lround((yc - 0.5 * params.square_size) / params.spacing));
      if (j0 < 1 || j0 + size_cells >= geom.ny()) throw ConfigError("square does not fit in the channel");
      obstacles.push_back(Obstacle{geom.xf(i0), geom.yf(j0), geom.xf(i0 + size_cells),
                                   geom.yf(j0 + size_cells), 1});
    }
  }

  DomainSides sides;
  sides.west = SideKind::Inlet;
  sides.east = SideKind::Outlet;
  sides.south_wall = 0;
  sides.north_wall = 0;
  CellMask mask = classify_cells(geom, obstacles, sides);

  BoundarySetup bc;
  bc.kn = params.kn;
  bc.walls = {WallCondition{params.wall_velocity.value_or(u_in), 0.0, params.wall_temperature},
              WallCondition{0.0, 0.0, params.wall_temperature}};
  bc.inlet = InletOutlet{1.0, 1.0, u_in, 0.0};

  CaseSetup setup{Problem{std::move(geom), std::move(mask), bc, model},
                  FieldSet(0, 0, false)};
  setup.fields = FieldSet(setup.problem.geom.nx(), setup.problem.geom.ny(), explicit_planes);
  initialize_uniform(setup.problem, setup.fields, 1.0, 1.0, u_in);
  return setup;
}

namespace {

CaseSetup closed_box(const CaseParameters& params, bool explicit_planes, double lid) {
  const ModelCoefficients model = derive_parameters(params.kn, params.gamma);
  GridGeometry geom = build_uniform_grid(params.length, params.height, params.spacing);
  DomainSides sides;
  sides.west = SideKind::Wall;
  sides.east = SideKind::Wall;
  sides.west_wall = 0;
  sides.east_wall = 0;
  sides.south_wall = 0;
  sides.north_wall = 1;
  CellMask mask = classify_cells(geom, {}, sides);
  BoundarySetup bc;
  bc.kn = params.kn;
  bc.walls = {WallCondition{0.0, 0.0, params.wall_temperature},
              WallCondition{lid, 0.0, params.wall_temperature}};
  bc.inlet = InletOutlet{1.0, 1.0, 0.0, 0.0};
  CaseSetup setup{Problem{std::move(geom), std::move(mask), bc, model}, FieldSet(0, 0, false)};
  setup.fields = FieldSet(setup.problem.geom.nx(), setup.problem.geom.ny(), explicit_planes);
  initialize_uniform(setup.problem, setup.fields, 1.0, 1.0, 0.0);
  return setup;
}

}  // namespace

CaseSetup build_cavity_case(const CaseParameters& params, bool explicit_planes) {
  return closed_box(params, explicit_planes, params.lid_velocity);
}

CaseSetup build_box_case(const CaseParameters& params, bool explicit_planes) {
  return closed_box(params, explicit_planes, 0.0);
}

CaseSetup build_case(const CaseParameters& params, bool explicit_planes) {
  switch (params.kind) {
    case CaseKind::Cavity: return build_cavity_case(params, explicit_planes);
    case CaseKind::Box: return build_box_case(params, explicit_planes);
    default: return build_channel_case(params, explicit_planes);
  }
}

SchemeConfig parse_scheme(const std::string& text) {
  const auto x = text.find('x', text.find_first_of("tT") + 1);
  const std::string time = x == std::string::npos ? text : text.substr(0, x);
  const std::string space = x == std::string::npos ? std::string() : text.substr(x + 1);
  SchemeConfig s;
  if (time == "implicit") {
    s.time = TimeScheme::Implicit;
  } else if (time == "explicit") {
    s.time = TimeScheme::Explicit;
  } else {
    throw ConfigError("unknown scheme '" + text + "'; expected {explicit,implicit}x{upwind,tvd}");
  }
  if (space == "upwind") {
    s.space = SpaceScheme::Upwind;
  } else if (space == "tvd") {
    s.space = SpaceScheme::Tvd;
  } else {
    throw ConfigError("unknown scheme '" + text + "'; expected {explicit,implicit}x{upwind,tvd}");
  }
  return s;
}

std::string scheme_name(const SchemeConfig& s) {
  return std::string(s.is_explicit() ? "explicit" : "implicit") + "x" +
         (s.space == SpaceScheme::Tvd ? "tvd" : "upwind");
}

RunSettings settings_from_config(const Config& cfg) {
  static const std::set<std::string> known = {
      "case.kind",          "case.kn",           "case.mach",          "case.gamma",
      "case.pr",            "case.length",       "case.height",        "case.inlet_length",
      "case.square_size",   "case.spacing",      "case.squares",       "case.wall_velocity",
      "case.wall_temperature", "case.lid_velocity", "scheme.time",     "scheme.space",
      "scheme.null_limiter", "solver.dt",        "solver.tolerance",   "solver.max_iterations",
      "solver.loop3",       "solver.loop3_order", "solver.steps",      "solver.reference_path",
      "decomp.sx",          "decomp.sy",         "workers",            "branchless",
      "output.dir",         "output.fields_every", "output.checkpoint_every", "output.format"};
  cfg.check_known(known);

  RunSettings r;
  CaseParameters& c = r.params;
  const std::string kind = cfg.get_string("case.kind", "channel");
  if (kind == "channel") {
    c.kind = CaseKind::Channel;
  } else if (kind == "cavity") {
    c.kind = CaseKind::Cavity;
  } else if (kind == "box") {
    c.kind = CaseKind::Box;
  } else {
    throw ConfigError("case.kind must be channel, cavity or box");
  }
  c.kn = cfg.get_double("case.kn", c.kn);
  c.mach = cfg.get_double("case.mach", c.mach);
  c.gamma = cfg.get_double("case.gamma", c.gamma);
  c.pr = cfg.get_double("case.pr", c.pr);
  c.length = cfg.get_double("case.length", c.length);
  c.height = cfg.get_double("case.height", c.height);
  c.inlet_length = cfg.get_double("case.inlet_length", c.inlet_length);
  c.square_size = cfg.get_double("case.square_size", c.square_size);
  c.spacing = cfg.get_double("case.spacing", c.spacing);
  c.squares = cfg.get_int("case.squares", c.squares);
  if (cfg.has("case.wall_velocity")) c.wall_velocity = cfg.get_double("case.wall_velocity", 0.0);
  c.wall_temperature = cfg.get_double("case.wall_temperature", c.wall_temperature);
  c.lid_velocity = cfg.get_double("case.lid_velocity", c.lid_velocity);
  if (!(c.kn > 0.0)) throw ConfigError("case.kn must be positive");
  if (!(c.mach > 0.0)) throw ConfigError("case.mach must be positive");
  if (!(c.wall_temperature > 0.0)) throw ConfigError("case.wall_temperature must be positive");
  derive_parameters(c.kn, c.gamma);

  SolverConfig& s = r.solver;
  s.scheme = parse_scheme(cfg.get_string("scheme.time", "implicit") + "x" +
                          cfg.get_string("scheme.space", "upwind"));
  s.scheme.null_limiter = cfg.get_bool("scheme.null_limiter", false);
  s.scheme.branchless = cfg.get_bool("branchless", false);
  s.dt = cfg.get_double("solver.dt", s.dt);
  s.tolerance = cfg.get_double("solver.tolerance", s.tolerance);
  s.max_iterations = cfg.get_int("solver.max_iterations", s.max_iterations);
  s.loop3_iterations = cfg.get_int("solver.loop3", s.loop3_iterations);
  const std::string order = cfg.get_string("solver.loop3_order", "gpu");
  if (order == "gpu") {
    s.loop3_order = Loop3Order::Gpu;
  } else if (order == "serial") {
    s.loop3_order = Loop3Order::Serial;
  } else {
    throw ConfigError("solver.loop3_order must be gpu or serial");
  }
  s.reference_path = cfg.get_bool("solver.reference_path", false);
  s.parallel.sx = cfg.get_int("decomp.sx", 1);
  s.parallel.sy = cfg.get_int("decomp.sy", 1);
  s.parallel.workers = cfg.get_int("workers", 1);
  s.validate();

  r.steps = cfg.get_long("solver.steps", r.steps);
  if (r.steps < 0) throw ConfigError("solver.steps must not be negative");
  r.out_dir = cfg.get_string("output.dir", r.out_dir);
  r.fields_every = cfg.get_int("output.fields_every", 0);
  r.checkpoint_every = cfg.get_int("output.checkpoint_every", 0);
  if (r.fields_every < 0 || r.checkpoint_every < 0) {
    throw ConfigError("output intervals must not be negative");
  }
  r.format = cfg.get_string("output.format", "csv");
  if (r.format != "csv" && r.format != "vtk" && r.format != "both") {
    throw ConfigError("output.format must be csv, vtk or both");
  }
  return r;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_fields(const GridGeometry& g, const State& s, const std::filesystem::path& path,
                  FieldFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const int nx = g.nx();
  const int ny = g.ny();
  auto uc = [&](int i, int j) { return 0.5 * (s.u(i, j) + s.u(i + 1, j)); };
  auto vc = [&](int i, int j) { return 0.5 * (s.v(i, j) + s.v(i, j + 1)); };
  if (format == FieldFormat::Csv) {
    out << "x,y,p,T,rho,u,v\n";
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        out << fmt(g.xv(i)) << ',' << fmt(g.yv(j)) << ',' << fmt(s.p(i, j)) << ','
            << fmt(s.T(i, j)) << ',' << fmt(s.rho(i, j)) << ',' << fmt(uc(i, j)) << ','
            << fmt(vc(i, j)) << '\n';
      }
    }
  } else {
    out << "# vtk DataFile Version 3.0\n"
        << "simplets fields\n"
        << "ASCII\n"
        << "DATASET STRUCTURED_POINTS\n"
        << "DIMENSIONS " << nx << ' ' << ny << " 1\n"
        << "ORIGIN " << fmt(g.xv(0)) << ' ' << fmt(g.yv(0)) << " 0\n"
        << "SPACING " << fmt(g.dx(0)) << ' ' << fmt(g.dy(0)) << " 1\n"
        << "POINT_DATA " << static_cast<long>(nx) * ny << '\n';
    auto block = [&](const char* name, auto value) {
      out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) out << fmt(value(i, j)) << '\n';
    };
    block("p", [&](int i, int j) { return s.p(i, j); });
    block("T", [&](int i, int j) { return s.T(i, j); });
    block("rho", [&](int i, int j) { return s.rho(i, j); });
    block("u", uc);
    block("v", vc);
  }
  if (!out) throw IoError("failed writing " + path.string());
}

double MassBalance::relative_imbalance() const noexcept {
  const double ref = std::abs(inflow) > 0.0 ? std::abs(inflow) : 1.0;
  return std::abs(inflow - outflow) / ref;
}

MassBalance boundary_mass_flux(const Problem& problem, const State& s, const SchemeConfig& scheme) {
  const CellMask& m = problem.mask;
  const FieldRefs f = refs(s);
  MassBalance mb;
  for (int j = 0; j < m.ny; ++j) {
    if (m.u_faces(0, j) != FaceKind::Ghost) mb.inflow += flux_x(problem.geom, f, scheme, 0, j);
    if (m.u_faces(m.nx, j) != FaceKind::Ghost) mb.outflow += flux_x(problem.geom, f, scheme, m.nx, j);
  }
  return mb;
}

double continuity_imbalance(const Problem& problem, const State& cur, const State& prev,
                            const SchemeConfig& scheme, double dt) {
  const CellMask& m = problem.mask;
  const GridGeometry& g = problem.geom;
  const FieldRefs f = refs(cur);
  double total = 0.0;
  for (int j = 0; j < m.ny; ++j) {
    for (int i = 0; i < m.nx; ++i) {
      if (!m.fluid(i, j)) continue;
      const double storage = (cur.p(i, j) / cur.T(i, j) - prev.p(i, j) / prev.T(i, j)) * g.dx(i) *
                             g.dy(j) / dt;
      const double net = flux_x(g, f, scheme, i + 1, j) - flux_x(g, f, scheme, i, j) +
                         flux_y(g, f, scheme, i, j + 1) - flux_y(g, f, scheme, i, j);
      total += storage + net;
    }
  }
  const double inflow = boundary_mass_flux(problem, cur, scheme).inflow;
  return std::abs(total) / (std::abs(inflow) > 0.0 ? std::abs(inflow) : 1.0);
}

}  // namespace simplets
