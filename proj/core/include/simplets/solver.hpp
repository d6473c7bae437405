#pragma once

#include <functional>
#include <memory>

#include "simplets/fields.hpp"
#include "simplets/kernels.hpp"
#include "simplets/parallel.hpp"

namespace simplets {

struct SolverConfig {
  double dt = 0.01;
  double tolerance = 1e-8;     ///< loop-2 convergence threshold on scaled residuals
  int max_iterations = 500;    ///< loop-2 passes per time step
  int loop3_iterations = 2;
  Loop3Order loop3_order = Loop3Order::Gpu;
  SchemeConfig scheme;
  ParallelConfig parallel;
  /// Use full-size temporaries instead of the row sweep. Always used for the
  /// serial loop-3 ordering.
  bool reference_path = false;

  /// Throws ConfigError on out-of-range values.
  void validate() const;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

/// One loop-2 pass, reported to the observer.
struct PassRecord {
  double time = 0.0;   ///< time level being computed
  long step = 0;       ///< index of that time level
  int iteration = 0;   ///< 1-based pass index within the step
  Residuals residual;
  const State* current = nullptr;
};

struct StepReport {
  bool converged = false;
  int iterations = 0;
  Residuals residual;
};

using PassObserver = std::function<void(const PassRecord&)>;

/// SIMPLE-TS driver: time loop, loop-2 passes, convergence control.
class Solver {
 public:
  Solver(Problem problem, SolverConfig config, FieldSet fields, double time = 0.0, long step = 0);

  /// Advances one time step. Returns a record with converged = false when
  /// the pass limit is reached; the step is then not accepted.
  StepReport advance(const PassObserver& observer = {});

  const Problem& problem() const noexcept { return problem_; }
  const SolverConfig& config() const noexcept { return config_; }
  FieldSet& fields() noexcept { return fields_; }
  const FieldSet& fields() const noexcept { return fields_; }
  const SubdomainPlan& plan() const noexcept { return plan_; }
  double time() const noexcept { return time_; }
  /// Field storage plus the row buffers of every subdomain.
  MemoryReport memory_report() const noexcept;
  long step() const noexcept { return step_; }

 private:
  void run_pass(const PassInputs& in, ResidualAccumulator& acc);

  Problem problem_;
  SolverConfig config_;
  FieldSet fields_;
  SubdomainPlan plan_;
  std::vector<RowBuffers> buffers_;
  std::unique_ptr<WorkerPool> pool_;
  double time_ = 0.0;
  long step_ = 0;
};

}  // namespace simplets
