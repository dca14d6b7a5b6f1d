#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "eqflow/params.hpp"
#include "eqflow/trajectory.hpp"

namespace eqflow {

struct FieldValue {
  double dtheta = 0.0;
  double dalpha = 0.0;
};

/// Reduced field in the (theta, alpha) plane, where (x, y) = r (cos theta, sin theta).
/// Throws UnsupportedCase for q == 0.
FieldValue vector_field(const PhaseState& state, const Params& params);

/// Same field written in the displacement (u, v) = (theta - alpha0, alpha - alpha0)
/// from the sink. Every term is a product of sines of small quantities, so the
/// result keeps full relative accuracy as (u, v) -> 0.
FieldValue deviation_field(double u, double v, const Params& params);

/// P0, P1, Q1, Q2, Q3, Q4 in that order.
std::vector<PhaseState> stationary_points(const Params& params);
/// Labels matching stationary_points().
std::array<std::string_view, 6> stationary_point_labels();

using Matrix2 = std::array<std::array<double, 2>, 2>;

Matrix2 jacobian_at(const PhaseState& state, const Params& params);

enum class EquilibriumKind { SpiralSink, NodalSink, SpiralSource, NodalSource, Saddle, Degenerate };

std::string_view to_string(EquilibriumKind kind);

struct EquilibriumReport {
  PhaseState point;
  Matrix2 jacobian{};
  std::array<std::complex<double>, 2> eigenvalues{};
  EquilibriumKind kind = EquilibriumKind::Degenerate;
};

/// k^2 - 18k + 9 for k = p + q. The characteristic discriminant at the sink
/// is (sin a0 cos a0)^2 times this integer, so its sign decides spiral vs node.
long long sink_discriminant_factor(const Params& params);

/// Throws NotStationary if |X(state)| > 1e-12.
EquilibriumReport classify_equilibrium(const PhaseState& state, const Params& params);

enum class Region { R1, R2, BoundaryUpper1, BoundaryLower1, BoundaryUpper2, VerticalEdge, Outside };

std::string_view to_string(Region region);

/// Throws ValidationError when theta lies outside [0, pi/2]. Non-finite input is Outside.
Region region_of(const PhaseState& state, double tol = 1e-12);

/// alpha in (0, pi/2) with d alpha / ds = 0 at theta, i.e. arccot((p/q) tan theta).
double nullcline_g(double theta, const Params& params);

/// 200 (1 + 10 / (p + q)).
double default_s_max(const Params& params);

struct PhaseOptions {
  double max_arclen = 0.0;  // <= 0 selects default_s_max
  Tolerances tolerances;
  bool backward = false;
  bool stop_on_convergence = true;
  double convergence_radius = 1e-10;
  int convergence_steps = 10;
};

/// Adaptive integration of the reduced field. Backward runs integrate the
/// negated field, so s still increases sample to sample.
PhaseTrajectory integrate_phase(const PhaseState& start, const Params& params,
                                const PhaseOptions& options = {});

/// Arc-length positions where theta - alpha0 changes sign, refined by
/// bisection on the Hermite interpolant to 1e-12 in s.
std::vector<double> crossing_locations(const PhaseTrajectory& traj);

std::size_t crossing_count(const PhaseTrajectory& traj);

}  // namespace eqflow
