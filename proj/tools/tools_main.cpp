// simplets command line: run, resume, info, derive.

#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "simplets/driver.hpp"
#include "simplets/error.hpp"

namespace {

using namespace simplets;

enum Exit { kOk = 0, kConfig = 2, kNonConvergence = 3, kCorruption = 4, kOther = 1 };

struct Overrides {
  std::optional<std::string> out_dir;
  std::optional<int> fields_every;
  std::optional<int> workers;
  std::optional<std::string> scheme;

  void apply(Config& cfg) const {
    if (out_dir) cfg.set("output.dir", *out_dir);
    if (fields_every) cfg.set("output.fields_every", std::to_string(*fields_every));
    if (workers) cfg.set("workers", std::to_string(*workers));
    if (scheme) {
      const SchemeConfig s = parse_scheme(*scheme);
      cfg.set("scheme.time", s.is_explicit() ? "explicit" : "implicit");
      cfg.set("scheme.space", s.space == SpaceScheme::Tvd ? "tvd" : "upwind");
    }
  }
};

int cmd_run(const std::string& path, const Overrides& ov) {
  Config cfg = Config::load(path);
  ov.apply(cfg);
  Run run = start_run(cfg);
  advance_run(run, run.settings.steps, &std::cout);
  return kOk;
}

int cmd_resume(const std::string& path, const Overrides& ov) {
  const Checkpoint cp = read_checkpoint(path);
  Config cfg = Config::parse(cp.config_text);
  ov.apply(cfg);
  Run run = resume_run(cp, cfg);
  advance_run(run, run.settings.steps, &std::cout);
  return kOk;
}

int cmd_info(const std::string& path) {
  const Checkpoint cp = read_checkpoint(path);
  const Config cfg = Config::parse(cp.config_text);
  const RunSettings s = settings_from_config(cfg);
  std::printf("step %ld\ntime %.17g\nmesh %d x %d\nscheme %s\nconfig_hash %016llx\n", cp.step,
              cp.time, cp.fields.nx(), cp.fields.ny(), scheme_name(s.solver.scheme).c_str(),
              static_cast<unsigned long long>(cp.config_hash));
  std::printf("--- config\n%s", cp.config_text.c_str());
  return kOk;
}

int cmd_derive(const std::string& path) {
  const RunSettings s = settings_from_config(Config::load(path));
  const ModelCoefficients m = derive_parameters(s.params.kn, s.params.gamma);
  std::printf("Kn %.6g\nM %.6g\ngamma %.17g\nA %.17g\nB %.17g\nCT1 %.17g\nCT2 %.17g\nCT3 %.17g\n",
              s.params.kn, s.params.mach, s.params.gamma, m.A, m.B, m.CT1, m.CT2, m.CT3);
  std::printf("u_in %.17g\n", inlet_velocity(s.params.mach, s.params.gamma));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressible slip-flow solver"};
  app.require_subcommand(1);
  Overrides ov;
  std::string path;

  auto add_flags = [&](CLI::App* sub) {
    sub->add_option("--out-dir", ov.out_dir, "output directory");
    sub->add_option("--fields-every", ov.fields_every, "write fields every N steps")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--workers", ov.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--scheme", ov.scheme, "{explicit,implicit}x{upwind,tvd}");
  };
  auto* run = app.add_subcommand("run", "run a case from a configuration file");
  run->add_option("config", path)->required();
  add_flags(run);
  auto* resume = app.add_subcommand("resume", "continue a run from a checkpoint");
  resume->add_option("checkpoint", path)->required();
  add_flags(resume);
  auto* info = app.add_subcommand("info", "describe a checkpoint");
  info->add_option("checkpoint", path)->required();
  auto* derive = app.add_subcommand("derive", "print derived model parameters");
  derive->add_option("config", path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(path, ov);
    if (*resume) return cmd_resume(path, ov);
    if (*info) return cmd_info(path);
    return cmd_derive(path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const NonConvergence& e) {
    std::cerr << "not converged: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const StateCorruption& e) {
    std::cerr << "state corruption: " << e.what() << '\n';
    return kCorruption;
  } catch (const CheckpointError& e) {
    std::cerr << "checkpoint error: " << e.what() << '\n';
    return kCorruption;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
}
