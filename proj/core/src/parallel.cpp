#include "simplets/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <string>

#include "simplets/error.hpp"

namespace simplets {

namespace {
std::atomic<std::size_t> g_row_buffer_allocations{0};
}

std::vector<int> split_extent(int n, int parts) {
  if (parts < 1 || parts > n) {
    throw ConfigError("cannot split " + std::to_string(n) + " cells into " + std::to_string(parts) +
                      " parts");
  }
  std::vector<int> sizes(static_cast<std::size_t>(parts), n / parts);
  for (int k = 0; k < n % parts; ++k) ++sizes[static_cast<std::size_t>(k)];
  return sizes;
}

SubdomainPlan plan_decomposition(const GridGeometry& g, int sx, int sy, int workers) {
  if (workers < 1) throw ConfigError("worker count must be at least 1");
  if (sx < 1 || sy < 1) throw ConfigError("subdomain counts must be at least 1");
  const std::vector<int> wx = split_extent(g.nx(), sx);
  const std::vector<int> wy = split_extent(g.ny(), sy);
  SubdomainPlan plan;
  plan.sx = sx;
  plan.sy = sy;
  plan.workers = workers;
  int j0 = 0;
  for (int by = 0; by < sy; ++by) {
    int i0 = 0;
    const int h = wy[static_cast<std::size_t>(by)];
    for (int bx = 0; bx < sx; ++bx) {
      const int w = wx[static_cast<std::size_t>(bx)];
      Subdomain sd;
      sd.i0 = i0;
      sd.i1 = i0 + w;
      sd.j0 = j0;
      sd.j1 = j0 + h;
      sd.worker = static_cast<int>(plan.parts.size()) % workers;
      plan.parts.push_back(sd);
      i0 += w;
    }
    j0 += h;
  }
  return plan;
}

std::vector<SubdomainView> exchange_halos(const State& old, const SubdomainPlan& plan) {
  std::vector<SubdomainView> views;
  views.reserve(plan.parts.size());
  for (const Subdomain& sd : plan.parts) views.emplace_back(old, sd, plan.halo);
  return views;
}

RowBuffers::RowBuffers(int width)
    : width_(width), data_(static_cast<std::size_t>(kTotalRows) * static_cast<std::size_t>(width)) {
  g_row_buffer_allocations.fetch_add(1, std::memory_order_relaxed);
}

std::size_t RowBuffers::allocations() noexcept {
  return g_row_buffer_allocations.load(std::memory_order_relaxed);
}

int row_buffer_width(const Subdomain& sd, int halo) noexcept { return sd.width() + 2 * halo; }

void sweep_subdomain(const PassInputs& in, const SubdomainView& view, RowBuffers& buf, State& cur,
                     Diffusivity& diff_cur) {
  const CellMask& m = in.problem->mask;
  const State& old = *in.old;
  const Diffusivity& dold = *in.diff_old;
  const Subdomain& sd = view.subdomain();
  const int cs = std::max(sd.i0 - 1, 0);
  const int rs = std::max(sd.j0 - 1, 0);
  const bool last_x = sd.i1 == m.nx;
  // Columns [cs, i1) of cells and faces [cs, i1] are held in the buffers.
  if (buf.width() != row_buffer_width(sd, view.halo()) || sd.i1 - cs + 1 > buf.width() ||
      buf.capacity() != static_cast<std::size_t>(RowBuffers::kTotalRows * buf.width())) {
    throw UsageError("row buffer does not match the subdomain");
  }
  auto slot = [cs](int i) { return i - cs; };

  for (int i = cs; i < sd.i1; ++i) {
    const FaceUpdate f = pseudo_velocity_v(in, i, rs);
    buf.vhat(rs, slot(i)) = f.hat;
    buf.dv(rs, slot(i)) = f.d;
  }

  for (int jr = rs; jr < sd.j1; ++jr) {
    for (int i = cs; i <= sd.i1; ++i) {
      const FaceUpdate f = pseudo_velocity_u(in, i, jr);
      buf.uhat(slot(i)) = f.hat;
      buf.du(slot(i)) = f.d;
    }
    for (int i = cs; i < sd.i1; ++i) {
      const FaceUpdate f = pseudo_velocity_v(in, i, jr + 1);
      buf.vhat(jr + 1, slot(i)) = f.hat;
      buf.dv(jr + 1, slot(i)) = f.d;
    }

    const bool owned_row = jr >= sd.j0;
    for (int i = cs; i < sd.i1; ++i) {
      const bool owned = owned_row && i >= sd.i0;
      if (!m.fluid(i, jr)) {
        buf.p(jr, slot(i)) = old.p(i, jr);
        if (owned) {
          cur.p(i, jr) = old.p(i, jr);
          cur.T(i, jr) = old.T(i, jr);
          cur.rho(i, jr) = old.rho(i, jr);
          diff_cur.gamma(i, jr) = dold.gamma(i, jr);
          diff_cur.gamma_l(i, jr) = dold.gamma_l(i, jr);
        }
        continue;
      }
      const int k = slot(i);
      const double T = temperature_update(in, i, jr, old.T);
      const double p = pressure_update(in, i, jr, T, {buf.uhat(k), buf.du(k)},
                                       {buf.uhat(k + 1), buf.du(k + 1)},
                                       {buf.vhat(jr, k), buf.dv(jr, k)},
                                       {buf.vhat(jr + 1, k), buf.dv(jr + 1, k)}, old.p);
      buf.p(jr, k) = p;
      if (owned) {
        cur.T(i, jr) = T;
        cur.p(i, jr) = p;
        const EosValues e = refresh_eos(p, T, i, jr);
        cur.rho(i, jr) = e.rho;
        diff_cur.gamma(i, jr) = e.gamma;
        diff_cur.gamma_l(i, jr) = e.gamma;
      }
    }

    if (!owned_row) continue;
    const int iu1 = sd.i1 + (last_x ? 1 : 0);
    for (int i = sd.i0; i < iu1; ++i) {
      const int k = slot(i);
      const FaceUpdate f{buf.uhat(k), buf.du(k)};
      cur.u(i, jr) = m.u_faces(i, jr) == FaceKind::Computed
                         ? correct_velocity(f, buf.p(jr, k), buf.p(jr, k - 1))
                         : f.hat;
    }
    for (int i = sd.i0; i < sd.i1; ++i) {
      const int k = slot(i);
      const FaceUpdate f{buf.vhat(jr, k), buf.dv(jr, k)};
      cur.v(i, jr) = m.v_faces(i, jr) == FaceKind::Computed
                         ? correct_velocity(f, buf.p(jr, k), buf.p(jr - 1, k))
                         : f.hat;
    }
  }

  if (sd.j1 == m.ny) {
    // The north boundary faces were computed as the last "row + 1" set.
    for (int i = sd.i0; i < sd.i1; ++i) {
      const int k = slot(i);
      const FaceUpdate f{buf.vhat(m.ny, k), buf.dv(m.ny, k)};
      cur.v(i, m.ny) = m.v_faces(i, m.ny) == FaceKind::Computed
                           ? correct_velocity(f, cur.p(i, m.ny), cur.p(i, m.ny - 1))
                           : f.hat;
    }
  }
}

WorkerPool::WorkerPool(int workers) {
  if (workers < 1) throw ConfigError("worker count must be at least 1");
  for (int w = 1; w < workers; ++w) threads_.emplace_back([this, w] { worker_loop(w); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard<std::mutex> lk(mu_);
    stop_ = true;
  }
  start_cv_.notify_all();
  for (std::thread& t : threads_) t.join();
}

void WorkerPool::run_share(int w) {
  for (int k = w; k < tasks_; k += size()) {
    try {
      (*fn_)(k);
    } catch (...) {
      errors_[static_cast<std::size_t>(k)] = std::current_exception();
    }
  }
}

void WorkerPool::worker_loop(int w) {
  std::size_t seen = 0;
  for (;;) {
    {
      std::unique_lock<std::mutex> lk(mu_);
      start_cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
    }
    run_share(w);
    {
      std::lock_guard<std::mutex> lk(mu_);
      --pending_;
    }
    done_cv_.notify_one();
  }
}

void WorkerPool::run(int tasks, const std::function<void(int)>& fn) {
  errors_.assign(static_cast<std::size_t>(std::max(tasks, 0)), nullptr);
  tasks_ = tasks;
  fn_ = &fn;
  if (!threads_.empty()) {
    {
      std::lock_guard<std::mutex> lk(mu_);
      pending_ = static_cast<int>(threads_.size());
      ++generation_;
    }
    start_cv_.notify_all();
  }
  run_share(0);
  if (!threads_.empty()) {
    std::unique_lock<std::mutex> lk(mu_);
    done_cv_.wait(lk, [&] { return pending_ == 0; });
  }
  fn_ = nullptr;
  for (const std::exception_ptr& e : errors_) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace simplets
