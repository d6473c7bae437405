#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "simplets/array2d.hpp"
#include "simplets/coeffs.hpp"

namespace simplets {

/// Primary variables of one snapshot.
struct State {
  Array2D<double> p, T, rho;  ///< cell centres
  Array2D<double> u;          ///< x-faces, (nx + 1) x ny
  Array2D<double> v;          ///< y-faces, nx x (ny + 1)

  State() = default;
  State(int nx, int ny);

  friend bool operator==(const State&, const State&) = default;
};

/// Diffusion coefficients Gamma and Gamma^lambda at cell centres.
struct Diffusivity {
  Array2D<double> gamma, gamma_l;

  Diffusivity() = default;
  Diffusivity(int nx, int ny);

  friend bool operator==(const Diffusivity&, const Diffusivity&) = default;
};

/// Read views of a state plus its diffusivities (which may be null).
FieldRefs refs(const State& s, const Diffusivity* d = nullptr);

/// Snapshots of the solution. Three State buffers rotate between the roles
/// previous time level (n-1), previous iterate (old) and current; two
/// Diffusivity buffers alternate between old and current. Roles move by
/// index, never by copying.
class FieldSet {
 public:
  FieldSet() = default;
  FieldSet(int nx, int ny, bool explicit_planes);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }

  State& prev() noexcept { return states_[prev_]; }
  State& old() noexcept { return states_[old_]; }
  State& cur() noexcept { return states_[cur_]; }
  const State& prev() const noexcept { return states_[prev_]; }
  const State& old() const noexcept { return states_[old_]; }
  const State& cur() const noexcept { return states_[cur_]; }

  Diffusivity& diff_old() noexcept { return diff_[diff_old_]; }
  Diffusivity& diff_cur() noexcept { return diff_[1 - diff_old_]; }
  const Diffusivity& diff_old() const noexcept { return diff_[diff_old_]; }
  const Diffusivity& diff_cur() const noexcept { return diff_[1 - diff_old_]; }

  bool has_planes() const noexcept { return planes_.has_value(); }
  ExplicitPlanes& planes() { return planes_.value(); }
  const ExplicitPlanes& planes() const { return planes_.value(); }

  /// Start of a time step: the previous iterate is the previous time level.
  void begin_step() noexcept;
  /// After a non-final pass: current becomes old, a free buffer becomes current.
  void next_iterate() noexcept;
  /// After the final pass of a step: current becomes the previous time level.
  void accept_step() noexcept;

  /// Buffer indices of (prev, old, cur, diffusivity old).
  std::array<int, 4> roles() const noexcept { return {prev_, old_, cur_, diff_old_}; }
  /// Restores roles saved by roles(). Throws UsageError on invalid indices.
  void set_roles(const std::array<int, 4>& r);

  State& buffer(int k) { return states_.at(static_cast<std::size_t>(k)); }
  const State& buffer(int k) const { return states_.at(static_cast<std::size_t>(k)); }
  Diffusivity& diff_buffer(int k) { return diff_.at(static_cast<std::size_t>(k)); }
  const Diffusivity& diff_buffer(int k) const { return diff_.at(static_cast<std::size_t>(k)); }

  /// Number of persistent double-precision values held by this set,
  /// including ghost layers.
  std::size_t persistent_scalars() const noexcept;

 private:
  int nx_ = 0;
  int ny_ = 0;
  std::array<State, 3> states_;
  std::array<Diffusivity, 2> diff_;
  std::optional<ExplicitPlanes> planes_;
  int prev_ = 0;
  int old_ = 0;
  int cur_ = 1;
  int diff_old_ = 0;
};

/// Tally of persistent storage used to check the per-cell memory budget.
struct MemoryReport {
  std::size_t bytes = 0;
  std::size_t control_volumes = 0;
  /// bytes / (8 * control_volumes)
  double scalars_per_cv() const noexcept;
};

/// Persistent storage of a FieldSet over its nx * ny control volumes.
MemoryReport memory_report(const FieldSet& f) noexcept;

}  // namespace simplets
