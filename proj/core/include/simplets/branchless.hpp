#pragma once

// Arithmetic replacements for logical operators and selects, so kernels can
// run without data-dependent branches. Truth values are doubles in {0, 1};
// any nonzero operand counts as true.

namespace simplets::branchless {

/// Conversion of an arbitrary number to a truth value, like a cast to bool.
constexpr double truth(double x) noexcept { return static_cast<double>(x != 0.0); }

constexpr double logical_and(double x, double y) noexcept { return x * y; }
constexpr double logical_or(double x, double y) noexcept { return truth(x + y); }
constexpr double logical_not(double x) noexcept { return 1.0 - truth(x); }
constexpr double logical_xor(double x, double y) noexcept { return truth(x - y); }
constexpr double square(double x) noexcept { return x * x; }

/// a when x == 1, b when x == 0. The trailing + 0.0 folds a negative zero
/// into +0 so the result matches the branching form bit for bit.
constexpr double select(double x, double a, double b) noexcept {
  return x * a + (1.0 - x) * b + 0.0;
}

/// max(0, f) without a branch.
constexpr double positive_part(double f) noexcept {
  return static_cast<double>(f > 0.0) * f + 0.0;
}

}  // namespace simplets::branchless
