#include "simplets/solver.hpp"

#include <cmath>

#include "simplets/boundary.hpp"
#include "simplets/error.hpp"

namespace simplets {

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("solver.dt must be positive");
  if (!(tolerance > 0.0)) throw ConfigError("solver.tolerance must be positive");
  if (max_iterations < 0) throw ConfigError("solver.max_iterations must not be negative");
  if (loop3_iterations < 1) throw ConfigError("solver.loop3 must be at least 1");
  if (parallel.sx < 1 || parallel.sy < 1) throw ConfigError("decomp.sx and decomp.sy must be at least 1");
  if (parallel.workers < 1) throw ConfigError("workers must be at least 1");
}

Solver::Solver(Problem problem, SolverConfig config, FieldSet fields, double time, long step)
    : problem_(std::move(problem)),
      config_(config),
      fields_(std::move(fields)),
      time_(time),
      step_(step) {
  config_.validate();
  if (fields_.nx() != problem_.geom.nx() || fields_.ny() != problem_.geom.ny()) {
    throw ConfigError("field storage does not match the mesh");
  }
  if (config_.scheme.is_explicit() && !fields_.has_planes()) {
    throw ConfigError("explicit schemes need explicit-term storage");
  }
  plan_ = plan_decomposition(problem_.geom, config_.parallel.sx, config_.parallel.sy,
                             config_.parallel.workers);
  buffers_.reserve(plan_.parts.size());
  for (const Subdomain& sd : plan_.parts) buffers_.emplace_back(row_buffer_width(sd, plan_.halo));
  pool_ = std::make_unique<WorkerPool>(config_.parallel.workers);
}

void Solver::run_pass(const PassInputs& in, ResidualAccumulator& acc) {
  State& cur = fields_.cur();
  Diffusivity& dcur = fields_.diff_cur();
  const bool reference = config_.reference_path ||
                         (config_.loop3_order == Loop3Order::Serial && config_.loop3_iterations > 1);
  if (reference) {
    reference_pass(in, config_.loop3_order, config_.loop3_iterations, cur, dcur);
    acc.add_block(problem_.mask, *in.old, cur, 0, problem_.mask.nx, 0, problem_.mask.ny);
    return;
  }
  const std::vector<SubdomainView> views = exchange_halos(*in.old, plan_);
  std::vector<ResidualAccumulator> parts(plan_.parts.size());
  pool_->run(static_cast<int>(plan_.parts.size()), [&](int k) {
    const auto idx = static_cast<std::size_t>(k);
    sweep_subdomain(in, views[idx], buffers_[idx], cur, dcur);
    const Subdomain& sd = plan_.parts[idx];
    parts[idx].add_block(problem_.mask, *in.old, cur, sd.i0, sd.i1, sd.j0, sd.j1);
  });
  for (const ResidualAccumulator& p : parts) acc.merge(p);
}

MemoryReport Solver::memory_report() const noexcept {
  MemoryReport r = simplets::memory_report(fields_);
  for (const RowBuffers& b : buffers_) r.bytes += b.capacity() * sizeof(double);
  return r;
}

StepReport Solver::advance(const PassObserver& observer) {
  StepReport report;
  if (config_.max_iterations < 1) return report;

  fields_.begin_step();
  apply_boundary_conditions(problem_.geom, problem_.mask, problem_.bc, fields_.prev(),
                            &fields_.diff_old());
  const ExplicitPlanes* planes = nullptr;
  if (config_.scheme.is_explicit()) {
    compute_explicit_terms(problem_, fields_.prev(), fields_.diff_old(), config_.scheme,
                           config_.dt, fields_.planes());
    planes = &fields_.planes();
  }

  const double t_next = time_ + config_.dt;
  for (int it = 1; it <= config_.max_iterations; ++it) {
    if (it > 1) {
      apply_boundary_conditions(problem_.geom, problem_.mask, problem_.bc, fields_.old(),
                                &fields_.diff_old());
    }
    const PassInputs in = make_pass_inputs(problem_, fields_.old(), fields_.diff_old(),
                                           fields_.prev(), planes, config_.scheme, config_.dt);
    ResidualAccumulator acc;
    run_pass(in, acc);
    report.iterations = it;
    report.residual = acc.scaled();
    if (observer) observer({t_next, step_ + 1, it, report.residual, &fields_.cur()});
    if (report.residual.max() < config_.tolerance) {
      fields_.accept_step();
      time_ = t_next;
      ++step_;
      report.converged = true;
      return report;
    }
    if (it < config_.max_iterations) fields_.next_iterate();
  }
  return report;
}

}  // namespace simplets
