#pragma once

#include <vector>

#include "eqflow/jet.hpp"
#include "eqflow/params.hpp"
#include "eqflow/trajectory.hpp"

namespace eqflow {

struct PrincipalCurvature {
  double value = 0.0;
  int multiplicity = 0;
};

/// Pointwise curvature of the invariant hypersurface generated by a profile
/// point. Signs follow the normal eta = (-y' w, x' z); the opposite
/// orientation negates f and every principal curvature.
struct CurvatureData {
  double f = 0.0;
  std::vector<PrincipalCurvature> principal_curvatures;
  double second_fund_norm_sq = 0.0;
  double alpha_dot = 0.0;
};

/// f = alpha' + p sin(alpha)/x - q cos(alpha)/y, i.e. trace of the shape operator.
double mean_curvature_f(const OrbitState& state, double alpha_dot, const Params& params);

CurvatureData shape_operator_spectrum(const OrbitState& state, double alpha_dot,
                                      const Params& params);

/// Value of f on a solution of f + 2 alpha' = 0, written without alpha':
/// (2/3)(p sin(alpha)/x - q cos(alpha)/y).
double f_on_biconservative(const OrbitState& state, const Params& params);

template <std::size_t K>
struct CurveJet {
  Jet<K> x;
  Jet<K> y;
  Jet<K> alpha;
};

/// Taylor expansion in arc length of the solution of 3 alpha' + p sin(alpha)/x
/// - q cos(alpha)/y = 0 through `state` (the y-term is absent when q == 0).
template <std::size_t K>
CurveJet<K> biconservative_jet(const OrbitState& state, const Params& params) {
  CurveJet<K> j;
  j.x.c[0] = state.x;
  j.y.c[0] = state.y;
  j.alpha.c[0] = state.alpha;
  for (std::size_t k = 0; k < K; ++k) {
    const auto sc = sincos(j.alpha);
    Jet<K> g = static_cast<double>(params.p) * sc.sin / j.x;
    if (params.q > 0) g -= static_cast<double>(params.q) * sc.cos / j.y;
    const double inv = 1.0 / static_cast<double>(k + 1);
    j.x.c[k + 1] = sc.cos.c[k] * inv;
    j.y.c[k + 1] = sc.sin.c[k] * inv;
    j.alpha.c[k + 1] = -g.c[k] / 3.0 * inv;
  }
  return j;
}

/// f and its first two arc-length derivatives.
struct MeanCurvatureDerivatives {
  double f = 0.0;
  double f_dot = 0.0;
  double f_ddot = 0.0;
};

/// Derivatives of f (evaluated with `eval`) along the biconservative solution
/// of `generator` through `state`, by Taylor-mode differentiation.
MeanCurvatureDerivatives mean_curvature_derivatives(const OrbitState& state,
                                                    const Params& generator,
                                                    const Params& eval);

struct SampledField {
  std::vector<double> s;
  std::vector<double> value;

  [[nodiscard]] double max_abs() const;
  [[nodiscard]] std::size_t size() const { return s.size(); }
};

enum class DerivativeMode {
  Auto,              // analytic for ODE-generated curves, finite differences otherwise
  Analytic,
  FiniteDifference,  // second-order centred differences on the sample grid
};

/// f'(f + 2 alpha') per sample, with f evaluated for `params`.
SampledField tangential_residual(const OrbitTrajectory& curve, const Params& params,
                                 DerivativeMode mode = DerivativeMode::Auto);

/// f'' + f'(p x'/x + q y'/y) - f |A|^2 per sample.
SampledField normal_residual(const OrbitTrajectory& curve, const Params& params,
                             DerivativeMode mode = DerivativeMode::Auto);

/// f sampled along the curve from the cached alpha'.
SampledField mean_curvature_field(const OrbitTrajectory& curve, const Params& params);

/// Recomputes the cached alpha' of every sample by centred differences of
/// alpha (one-sided at the ends). Intended for externally supplied curves.
void fill_alpha_dot_by_differences(OrbitTrajectory& curve);

}  // namespace eqflow
