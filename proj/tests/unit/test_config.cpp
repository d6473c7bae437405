#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "simplets/case_io.hpp"
#include "simplets/config.hpp"
#include "simplets/error.hpp"

using namespace simplets;

TEST(ConfigParse, SectionsCommentsAndOverrides) {
  const auto c = Config::parse(
      "# header\n"
      "steps_unused = 1 ; trailing\n"
      "[case]\n"
      "  kn = 0.001\n"
      "solver.dt = 0.02   # dotted keys ignore the section\n"
      "kn = 0.002\n"
      "\n"
      "[ output ]\n"
      "format=vtk\n");
  EXPECT_EQ(c.get_double("case.kn", 0.0), 0.002);
  EXPECT_EQ(c.get_double("solver.dt", 0.0), 0.02);
  EXPECT_EQ(c.get_string("output.format", ""), "vtk");
  EXPECT_EQ(c.get_string("steps_unused", ""), "1");
  EXPECT_EQ(c.get_double("missing", 4.5), 4.5);
  EXPECT_EQ(c.keys().size(), 4u);
}

TEST(ConfigParse, MalformedLinesNameLine) {
  try {
    Config::parse("a = 1\nno equals here\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(Config::parse("[case\n"), ConfigError);
  EXPECT_THROW(Config::parse(" = 3\n"), ConfigError);
}

TEST(ConfigParse, TypedGetters) {
  const auto c = Config::parse("a = 12\nb = 1e-3\nc = yes\nd = off\ne = 1.5x\nf = 99999999999\n");
  EXPECT_EQ(c.get_int("a", 0), 12);
  EXPECT_EQ(c.get_long("a", 0), 12);
  EXPECT_EQ(c.get_double("b", 0.0), 1e-3);
  EXPECT_TRUE(c.get_bool("c", false));
  EXPECT_FALSE(c.get_bool("d", true));
  EXPECT_THROW(c.get_double("e", 0.0), ConfigError);
  EXPECT_THROW(c.get_int("b", 0), ConfigError);
  EXPECT_THROW(c.get_bool("a", false), ConfigError);
  EXPECT_THROW(c.get_int("f", 0), ConfigError);
  EXPECT_EQ(c.get_long("f", 0), 99999999999L);
}

TEST(ConfigParse, CanonicalTextRoundTrips) {
  const auto c = Config::parse("[solver]\ndt = 0.01\n[case]\nkn=0.001\n");
  EXPECT_EQ(c.text(), "case.kn = 0.001\nsolver.dt = 0.01\n");
  EXPECT_EQ(Config::parse(c.text()), c);
}

TEST(ConfigParse, LoadMissingFile) {
  EXPECT_THROW(Config::load("/nonexistent/dir/x.ini"), ConfigError);
  const auto p = std::filesystem::temp_directory_path() / "simplets_cfg_test.ini";
  std::ofstream(p) << "[case]\nkn = 0.01\n";
  EXPECT_EQ(Config::load(p).get_double("case.kn", 0.0), 0.01);
  std::filesystem::remove(p);
}

TEST(Settings, DefaultsAndValues) {
  const auto s = settings_from_config(Config::parse(
      "workers = 2\nbranchless = true\n"
      "[case]\nkind = cavity\nkn = 0.05\nlength = 1\nheight = 1\nspacing = 0.125\n"
      "[scheme]\ntime = explicit\nspace = tvd\n"
      "[solver]\ndt = 0.002\nsteps = 7\nloop3 = 3\nloop3_order = serial\n"
      "[decomp]\nsx = 2\nsy = 1\n"
      "[output]\ndir = o\nfields_every = 3\nformat = both\n"));
  EXPECT_EQ(s.params.kind, CaseKind::Cavity);
  EXPECT_EQ(s.params.kn, 0.05);
  EXPECT_EQ(s.solver.scheme.time, TimeScheme::Explicit);
  EXPECT_EQ(s.solver.scheme.space, SpaceScheme::Tvd);
  EXPECT_TRUE(s.solver.scheme.branchless);
  EXPECT_EQ(s.solver.dt, 0.002);
  EXPECT_EQ(s.steps, 7);
  EXPECT_EQ(s.solver.loop3_iterations, 3);
  EXPECT_EQ(s.solver.loop3_order, Loop3Order::Serial);
  EXPECT_EQ(s.solver.parallel.sx, 2);
  EXPECT_EQ(s.solver.parallel.workers, 2);
  EXPECT_EQ(s.out_dir, "o");
  EXPECT_EQ(s.fields_every, 3);
  EXPECT_EQ(s.format, "both");

  const auto d = settings_from_config(Config{});
  EXPECT_EQ(d.params.kind, CaseKind::Channel);
  EXPECT_EQ(d.solver.scheme.time, TimeScheme::Implicit);
  EXPECT_EQ(d.solver.scheme.space, SpaceScheme::Upwind);
  EXPECT_EQ(d.solver.tolerance, 1e-8);
  EXPECT_EQ(d.solver.loop3_iterations, 2);
}

TEST(Settings, Rejections) {
  for (const char* bad : {"case.kn = 0\n", "case.kn = -1\n", "case.mach = 0\n", "bogus.key = 1\n",
                          "solver.dt = 0\n", "scheme.time = sideways\n", "output.format = png\n",
                          "case.kind = sphere\n", "solver.steps = -1\n", "solver.loop3 = 0\n",
                          "workers = 0\n", "case.gamma = 1\n"}) {
    EXPECT_THROW(settings_from_config(Config::parse(bad)), ConfigError) << bad;
  }
}

TEST(Scheme, ParseAndName) {
  for (const char* n : {"implicitxupwind", "implicitxtvd", "explicitxupwind", "explicitxtvd"}) {
    EXPECT_EQ(scheme_name(parse_scheme(n)), n);
  }
  EXPECT_EQ(parse_scheme("explicitxtvd").time, TimeScheme::Explicit);
  EXPECT_EQ(parse_scheme("explicitxtvd").space, SpaceScheme::Tvd);
  EXPECT_THROW(parse_scheme("implicit"), ConfigError);
  EXPECT_THROW(parse_scheme("implicitxcentral"), ConfigError);
  EXPECT_THROW(parse_scheme("tvdximplicit"), ConfigError);
}
