#pragma once

#include <iosfwd>
#include <string>

#include "simplets/case_io.hpp"
#include "simplets/checkpoint.hpp"
#include "simplets/solver.hpp"

namespace simplets {

/// A solver together with the settings and canonical configuration text it
/// was built from.
struct Run {
  RunSettings settings;
  std::string config_text;
  Solver solver;
};

/// Fresh run from a configuration.
Run start_run(const Config& cfg);

/// Run continued from a checkpoint. `cfg` must be the configuration stored in
/// the checkpoint with only output or worker settings changed; any other
/// difference raises ConfigError.
Run resume_run(const Checkpoint& cp, const Config& cfg);

/// Advances until `last_step`, logging one `t iter res_p res_T res_u res_v`
/// line per pass to `log` (when non-null). Writes fields and checkpoints into
/// settings.out_dir at the configured intervals and at the end. Throws
/// NonConvergence when a step exhausts its passes.
void advance_run(Run& run, long last_step, std::ostream* log, bool write_output = true);

/// Configuration keys that do not affect the computed solution.
bool is_output_key(const std::string& key);

}  // namespace simplets
