#pragma once

#include <cmath>
#include <string_view>
#include <vector>

#include "eqflow/params.hpp"

namespace eqflow {

/// Point (x, y, alpha) of a profile curve in the orbit space at arc length s.
struct OrbitState {
  double x = 0.0;
  double y = 0.0;
  double alpha = 0.0;
  double s = 0.0;
};

/// Point of the reduced (theta, alpha) plane.
struct PhaseState {
  double theta = 0.0;
  double alpha = 0.0;
};

enum class Termination {
  MaxLength,
  ConvergedToEquilibrium,
  HitOrigin,
  HitAxis,
  StepUnderflow,
};

std::string_view to_string(Termination t);

/// How the derivatives of a curve may be obtained.
enum class CurveSource {
  /// Samples only: derivatives come from finite differences.
  External,
  /// The curve solves f + 2 alpha' = 0 for its params; derivatives follow
  /// from the closed-form right-hand side.
  BiconservativeOde,
};

struct Tolerances {
  double rel = 1e-10;
  double abs = 1e-12;
};

/// Orbit-space sample with the cached curvature of the profile.
struct OrbitSample {
  double s = 0.0;
  double x = 0.0;
  double y = 0.0;
  double alpha = 0.0;
  double alpha_dot = 0.0;

  [[nodiscard]] OrbitState state() const { return {x, y, alpha, s}; }
};

struct OrbitTrajectory {
  Params params;
  std::vector<OrbitSample> samples;
  CurveSource source = CurveSource::External;
  Termination termination = Termination::MaxLength;
  Tolerances tolerances;
};

/// Phase-plane sample.
///
/// Besides (theta, alpha) the sample keeps the displacement from the anchor
/// (alpha0, alpha0 + 2 pi k) as mantissa * exp(log_scale). Near the sink the
/// displacement shrinks far below double resolution of theta itself; the
/// mantissa form keeps its sign and direction exact, which is what crossing
/// counts need.
struct PhaseSample {
  double s = 0.0;
  double theta = 0.0;
  double alpha = 0.0;
  double dev_theta = 0.0;   // mantissa of theta - alpha0
  double dev_alpha = 0.0;   // mantissa of alpha - (alpha0 + 2 pi k)
  double rate_theta = 0.0;  // mantissa of d theta / ds
  double rate_alpha = 0.0;  // mantissa of d alpha / ds
  double log_scale = 0.0;

  [[nodiscard]] PhaseState state() const { return {theta, alpha}; }
  /// theta - alpha0 in plain doubles (underflows to 0 deep in the tail).
  [[nodiscard]] double theta_offset() const { return dev_theta * std::exp(log_scale); }
  /// log of the Euclidean distance to the anchor; -inf at the anchor itself.
  [[nodiscard]] double log_distance() const {
    return std::log(std::hypot(dev_theta, dev_alpha)) + log_scale;
  }
};

struct PhaseTrajectory {
  Params params;
  std::vector<PhaseSample> samples;
  Termination termination = Termination::MaxLength;
  Tolerances tolerances;
  bool backward = false;
};

}  // namespace eqflow
