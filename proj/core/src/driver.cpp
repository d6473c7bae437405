#include "simplets/driver.hpp"

#include <cstdio>
#include <ostream>

#include "simplets/error.hpp"

namespace simplets {

namespace {

std::string format_step(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06ld", step);
  return buf;
}

void write_outputs(const Run& run, const std::filesystem::path& dir) {
  const long step = run.solver.step();
  const std::string stem = "fields_" + format_step(step);
  const std::string& format = run.settings.format;
  const auto& g = run.solver.problem().geom;
  const State& s = run.solver.fields().prev();
  if (format == "csv" || format == "both") write_fields(g, s, dir / (stem + ".csv"), FieldFormat::Csv);
  if (format == "vtk" || format == "both") write_fields(g, s, dir / (stem + ".vtk"), FieldFormat::Vtk);
}

void write_state(const Run& run, const std::filesystem::path& dir) {
  write_checkpoint(dir / ("checkpoint_" + format_step(run.solver.step()) + ".bin"), run.config_text,
                   run.solver.time(), run.solver.step(), run.solver.fields());
}

}  // namespace

bool is_output_key(const std::string& key) {
  return key.rfind("output.", 0) == 0 || key == "workers";
}

Run start_run(const Config& cfg) {
  RunSettings settings = settings_from_config(cfg);
  CaseSetup setup = build_case(settings.params, settings.solver.scheme.is_explicit());
  Solver solver(std::move(setup.problem), settings.solver, std::move(setup.fields));
  return Run{std::move(settings), cfg.text(), std::move(solver)};
}

Run resume_run(const Checkpoint& cp, const Config& cfg) {
  const Config stored = Config::parse(cp.config_text);
  Config physical = stored;
  Config merged = stored;
  for (const auto& key : cfg.keys()) {
    (is_output_key(key) ? merged : physical).set(key, cfg.get_string(key, ""));
  }
  check_config_hash(cp, physical.text());
  if (physical.keys() != stored.keys()) {
    throw ConfigError("configuration does not match the one stored in the checkpoint");
  }

  RunSettings settings = settings_from_config(merged);
  CaseSetup setup = build_case(settings.params, settings.solver.scheme.is_explicit());
  if (setup.fields.nx() != cp.fields.nx() || setup.fields.ny() != cp.fields.ny() ||
      setup.fields.has_planes() != cp.fields.has_planes()) {
    throw CheckpointError("checkpoint mesh does not match its configuration");
  }
  Solver solver(std::move(setup.problem), settings.solver, cp.fields, cp.time, cp.step);
  return Run{std::move(settings), cp.config_text, std::move(solver)};
}

void advance_run(Run& run, long last_step, std::ostream* log, bool write_output) {
  const std::filesystem::path dir = run.settings.out_dir;
  if (write_output) std::filesystem::create_directories(dir);
  char line[160];
  const PassObserver observer = [&](const PassRecord& r) {
    if (!log) return;
    std::snprintf(line, sizeof line, "%.10g %d %.6e %.6e %.6e %.6e\n", r.time, r.iteration,
                  r.residual.p, r.residual.T, r.residual.u, r.residual.v);
    *log << line;
  };
  while (run.solver.step() < last_step) {
    const StepReport rep = run.solver.advance(observer);
    if (!rep.converged) {
      if (write_output) write_state(run, dir);
      throw NonConvergence("step " + std::to_string(run.solver.step() + 1) + " did not converge in " +
                           std::to_string(rep.iterations) + " passes (residual " +
                           std::to_string(rep.residual.max()) + ")");
    }
    if (!write_output) continue;
    const long step = run.solver.step();
    if (run.settings.fields_every > 0 && step % run.settings.fields_every == 0) write_outputs(run, dir);
    if (run.settings.checkpoint_every > 0 && step % run.settings.checkpoint_every == 0) {
      write_state(run, dir);
    }
  }
  if (write_output) {
    write_outputs(run, dir);
    write_state(run, dir);
  }
}

}  // namespace simplets
