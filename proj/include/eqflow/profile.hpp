#pragma once

#include <cstddef>

#include "eqflow/params.hpp"
#include "eqflow/phase_plane.hpp"
#include "eqflow/trajectory.hpp"

namespace eqflow {

struct OrbitRate {
  double dx = 0.0;
  double dy = 0.0;
  double dalpha = 0.0;
};

/// (cos a, sin a, -(p sin a / x - q cos a / y) / 3); the y-term is dropped for q == 0.
OrbitRate biconservative_rhs(const OrbitState& state, const Params& params);

enum class Direction { Forward, Backward };

struct OrbitOptions {
  Direction direction = Direction::Forward;
  double max_arclen = 100.0;
  Tolerances tolerances;
  double origin_radius = 1e-8;
  double axis_threshold = 1e-10;
};

/// Adaptive integration of the profile equation.
///
/// A backward run is stored as the orientation-reversed curve: the start
/// becomes (x, y, alpha + pi) and s keeps increasing. The reversed curve is
/// itself a solution, so the trajectory stays tagged as ODE-generated.
OrbitTrajectory integrate_orbit(const OrbitState& start, const Params& params,
                                const OrbitOptions& options = {});

struct PrimeIntegrals {
  double I = 0.0;  // y^(q/3) cos a; plain cos a when q == 0
  double J = 0.0;  // x^(p/3) sin a
  bool I_applicable = true;
};

PrimeIntegrals prime_integrals(const OrbitState& state, const Params& params);

struct PrimeIntegralRates {
  double I_dot = 0.0;
  double J_dot = 0.0;
};

/// Closed-form derivatives of I and J along solutions.
PrimeIntegralRates prime_integral_rates(const OrbitState& state, const Params& params);

/// x^e for x >= 0 via exp(e log x), with 0^e = 0. Negative bases throw.
double fractional_power(double base, double exponent);

/// (theta, alpha) with theta the polar angle of (x, y).
PhaseState to_phase(const OrbitState& state);

/// Rebuilds the orbit-space curve of a phase trajectory. r0 fixes the free
/// scale at the first sample. Backward phase runs come out orientation
/// reversed so that s increases.
OrbitTrajectory lift_phase_to_orbit(const PhaseTrajectory& phase, double r0);

/// s -> (1/c) gamma(c s). Negative c applies |c| and reverses orientation.
OrbitTrajectory homothety(const OrbitTrajectory& traj, double c);

/// Same point set traversed the other way: alpha + pi, s -> s_end - s.
OrbitTrajectory reverse_orientation(const OrbitTrajectory& traj);

/// Upper half of the q = 0 profile with x^(p/3) sin a = C, from the vertical
/// tangent at x = C^(3/p) (height y0) out to x_max. Samples are uniform in
/// u = sqrt(x^(2p/3) - C^2).
OrbitTrajectory catenary_profile(double C, int p, double x_max, std::size_t n_samples,
                                 double y0 = 0.0);

/// Adds the mirror image below y0, traversed so that the whole curve is one
/// smooth solution with the vertical tangent at s = 0.
OrbitTrajectory extend_catenary(const OrbitTrajectory& half);

/// The ray at angle alpha0, s in (0, s_max].
OrbitTrajectory minimal_cone_profile(const Params& params, double s_max,
                                     std::size_t n_samples = 101);

/// params3 must be (3p', 3q') for the base's (p', q'). True when the base is
/// minimal and satisfies the biconservative equation for params3 within tol.
bool triple_cover_check(const Params& params3, const OrbitTrajectory& base, double tol = 1e-9);

/// max over samples of |3 a' + p sin a / x - q cos a / y| using cached a'.
double biconservative_defect(const OrbitTrajectory& traj, const Params& params);

}  // namespace eqflow
