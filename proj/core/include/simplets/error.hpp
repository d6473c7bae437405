#pragma once

#include <stdexcept>
#include <string>

namespace simplets {

/// Invalid case, mesh or solver configuration. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value left its mathematical domain (nonpositive diffusion coefficient,
/// nonpositive diagonal coefficient).
class NumericDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thermodynamic state became unphysical (p <= 0, T <= 0 or NaN) at a cell.
/// Maps to CLI exit code 4.
class StateCorruption : public std::runtime_error {
 public:
  StateCorruption(const std::string& what, int i, int j)
      : std::runtime_error(what + " at cell (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")"),
        i_(i),
        j_(j) {}

  int i() const noexcept { return i_; }
  int j() const noexcept { return j_; }

 private:
  int i_;
  int j_;
};

/// Operation called in a mode where it is not defined.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outer iterations exhausted before the residual tolerance was met. Exit code 3.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checkpoint file truncated, tampered or of an unknown version. Exit code 4.
class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace simplets
