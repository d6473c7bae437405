#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "simplets/kernels.hpp"

namespace simplets {

struct ParallelConfig {
  int sx = 1;
  int sy = 1;
  int workers = 1;

  friend bool operator==(const ParallelConfig&, const ParallelConfig&) = default;
};

/// Interior cells [i0, i1) x [j0, j1) of one subdomain and its worker.
struct Subdomain {
  int i0 = 0, i1 = 0, j0 = 0, j1 = 0;
  int worker = 0;

  int width() const noexcept { return i1 - i0; }
  int height() const noexcept { return j1 - j0; }
};

struct SubdomainPlan {
  int sx = 1;
  int sy = 1;
  int halo = 2;
  int workers = 1;
  std::vector<Subdomain> parts;  ///< row-major: index = by * sx + bx
};

/// Splits n cells into `parts` near-equal extents; the remainder goes one
/// cell at a time to the lowest-index parts. Returns the part sizes.
std::vector<int> split_extent(int n, int parts);

/// Throws ConfigError when sx, sy or workers are below 1 or exceed the mesh.
SubdomainPlan plan_decomposition(const GridGeometry& g, int sx, int sy, int workers);

/// Read access to the old snapshot as seen by one subdomain: interior plus
/// a halo of plan.halo cells. Halo values resolve to the owning
/// subdomain's interior values of the same snapshot.
class SubdomainView {
 public:
  SubdomainView(const State& old, const Subdomain& sd, int halo) : old_(&old), sd_(sd), halo_(halo) {}

  bool contains(int i, int j) const noexcept {
    return i >= sd_.i0 - halo_ && i < sd_.i1 + halo_ && j >= sd_.j0 - halo_ && j < sd_.j1 + halo_;
  }
  const State& state() const noexcept { return *old_; }
  const Subdomain& subdomain() const noexcept { return sd_; }
  int halo() const noexcept { return halo_; }

 private:
  const State* old_;
  Subdomain sd_;
  int halo_;
};

/// Halo exchange for one pass. All subdomains share the old snapshot, which
/// is immutable during the pass, so each view reads its halo directly from
/// the owner's interior.
std::vector<SubdomainView> exchange_halos(const State& old, const SubdomainPlan& plan);

/// Row-local temporaries of one subdomain: two rows of p, one of u_hat and
/// d^u, two of v_hat and d^v, each `width` wide.
class RowBuffers {
 public:
  static constexpr int kPressureRows = 2;
  static constexpr int kUhatRows = 1;
  static constexpr int kDuRows = 1;
  static constexpr int kVhatRows = 2;
  static constexpr int kDvRows = 2;
  static constexpr int kTotalRows = kPressureRows + kUhatRows + kDuRows + kVhatRows + kDvRows;

  RowBuffers() = default;
  explicit RowBuffers(int width);

  int width() const noexcept { return width_; }
  std::size_t capacity() const noexcept { return data_.size(); }

  double& p(int row, int k) noexcept { return at(0 + (row & 1), k); }
  double& uhat(int k) noexcept { return at(2, k); }
  double& du(int k) noexcept { return at(3, k); }
  double& vhat(int row, int k) noexcept { return at(4 + (row & 1), k); }
  double& dv(int row, int k) noexcept { return at(6 + (row & 1), k); }

  /// Number of buffer allocations performed by all RowBuffers objects.
  static std::size_t allocations() noexcept;

 private:
  double& at(int slot, int k) noexcept {
    return data_[static_cast<std::size_t>(slot) * static_cast<std::size_t>(width_) +
                 static_cast<std::size_t>(k)];
  }

  int width_ = 0;
  std::vector<double> data_;
};

/// Width needed by a subdomain: interior plus a halo on each side.
int row_buffer_width(const Subdomain& sd, int halo) noexcept;

/// Sweeps the rows of one subdomain bottom to top. Per row: pseudo velocities
/// into the row buffers, temperature and pressure per cell, then velocity
/// correction. Cells one column west and one row south of the subdomain are
/// recomputed locally so no values from other subdomains' current snapshot
/// are needed. Writes only this subdomain's cells and owned faces of `cur`.
void sweep_subdomain(const PassInputs& in, const SubdomainView& view, RowBuffers& buf, State& cur,
                     Diffusivity& diff_cur);

/// Fixed pool of worker threads. Task k runs on worker k % size(); the
/// calling thread acts as worker 0.
class WorkerPool {
 public:
  explicit WorkerPool(int workers);
  ~WorkerPool();
  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  int size() const noexcept { return static_cast<int>(threads_.size()) + 1; }

  /// Runs fn(0) ... fn(tasks - 1) and waits for all. If tasks throw, the
  /// exception of the lowest task index is rethrown.
  void run(int tasks, const std::function<void(int)>& fn);

 private:
  void worker_loop(int w);
  void run_share(int w);

  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  std::size_t generation_ = 0;
  int pending_ = 0;
  bool stop_ = false;
  int tasks_ = 0;
  const std::function<void(int)>* fn_ = nullptr;
  std::vector<std::exception_ptr> errors_;
};

}  // namespace simplets
