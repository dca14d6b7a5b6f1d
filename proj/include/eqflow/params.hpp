#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "eqflow/errors.hpp"

namespace eqflow {

/// Dimensions of the two sphere factors. q == 0 encodes the singly invariant
/// SO(p+1) family, where the second factor collapses and y is an ordinary
/// height coordinate.
struct Params {
  int p = 1;
  int q = 1;

  [[nodiscard]] bool doubly_invariant() const { return q >= 1; }
  [[nodiscard]] int dimension_sum() const { return p + q; }

  void validate() const {
    if (p < 1) throw ValidationError("p must be >= 1 (got " + std::to_string(p) + ")");
    if (q < 0) throw ValidationError("q must be >= 0 (got " + std::to_string(q) + ")");
  }

  friend bool operator==(const Params&, const Params&) = default;
};

/// Angle of the minimal cone y = sqrt(q/p) x. Zero when q == 0.
[[nodiscard]] inline double alpha0(const Params& params) {
  return std::atan(std::sqrt(static_cast<double>(params.q) / params.p));
}

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2;
inline constexpr double kTwoPi = 2 * std::numbers::pi;

}  // namespace eqflow
