#include "eqflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eqflow {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::MaxLength: return "MaxLength";
    case Termination::ConvergedToEquilibrium: return "ConvergedToEquilibrium";
    case Termination::HitOrigin: return "HitOrigin";
    case Termination::HitAxis: return "HitAxis";
    case Termination::StepUnderflow: return "StepUnderflow";
  }
  return "Unknown";
}

namespace {

void check_domain(const OrbitState& st, const Params& params) {
  if (!(st.x > 0.0)) throw DomainError("x must be positive (got " + std::to_string(st.x) + ")");
  if (params.q > 0 && st.y == 0.0) throw DomainError("y must be nonzero when q >= 1");
}

// Centred second-order weights on a non-uniform grid.
struct Stencil {
  double m1, c0, p1;
};

Stencil first_derivative(double h1, double h2) {
  return {-h2 / (h1 * (h1 + h2)), (h2 - h1) / (h1 * h2), h1 / (h2 * (h1 + h2))};
}

Stencil second_derivative(double h1, double h2) {
  return {2.0 / (h1 * (h1 + h2)), -2.0 / (h1 * h2), 2.0 / (h2 * (h1 + h2))};
}

bool use_analytic(const OrbitTrajectory& curve, DerivativeMode mode) {
  switch (mode) {
    case DerivativeMode::Analytic: return true;
    case DerivativeMode::FiniteDifference: return false;
    case DerivativeMode::Auto: return curve.source == CurveSource::BiconservativeOde;
  }
  return false;
}

// f, f', f'' per sample, either from the generating ODE or by differences.
struct FSeries {
  std::vector<double> s, f, f_dot, f_ddot;
  std::vector<std::size_t> index;
};

FSeries f_series(const OrbitTrajectory& curve, const Params& params, DerivativeMode mode) {
  FSeries out;
  const auto& smp = curve.samples;
  if (use_analytic(curve, mode)) {
    for (std::size_t i = 0; i < smp.size(); ++i) {
      const auto d = mean_curvature_derivatives(smp[i].state(), curve.params, params);
      out.s.push_back(smp[i].s);
      out.f.push_back(d.f);
      out.f_dot.push_back(d.f_dot);
      out.f_ddot.push_back(d.f_ddot);
      out.index.push_back(i);
    }
    return out;
  }
  if (smp.size() < 3) {
    throw InsufficientSamples("finite differences need at least 3 samples (got " +
                              std::to_string(smp.size()) + ")");
  }
  std::vector<double> f(smp.size());
  for (std::size_t i = 0; i < smp.size(); ++i) {
    f[i] = mean_curvature_f(smp[i].state(), smp[i].alpha_dot, params);
  }
  for (std::size_t i = 1; i + 1 < smp.size(); ++i) {
    const double h1 = smp[i].s - smp[i - 1].s;
    const double h2 = smp[i + 1].s - smp[i].s;
    const auto d1 = first_derivative(h1, h2);
    const auto d2 = second_derivative(h1, h2);
    out.s.push_back(smp[i].s);
    out.f.push_back(f[i]);
    out.f_dot.push_back(d1.m1 * f[i - 1] + d1.c0 * f[i] + d1.p1 * f[i + 1]);
    out.f_ddot.push_back(d2.m1 * f[i - 1] + d2.c0 * f[i] + d2.p1 * f[i + 1]);
    out.index.push_back(i);
  }
  return out;
}

}  // namespace

double mean_curvature_f(const OrbitState& state, double alpha_dot, const Params& params) {
  check_domain(state, params);
  double f = alpha_dot + params.p * std::sin(state.alpha) / state.x;
  if (params.q > 0) f -= params.q * std::cos(state.alpha) / state.y;
  return f;
}

CurvatureData shape_operator_spectrum(const OrbitState& state, double alpha_dot,
                                      const Params& params) {
  check_domain(state, params);
  const double k_first = std::sin(state.alpha) / state.x;
  CurvatureData out;
  out.alpha_dot = alpha_dot;
  out.principal_curvatures.push_back({k_first, params.p});
  double trace = params.p * k_first;
  double norm_sq = params.p * k_first * k_first;
  if (params.q > 0) {
    const double k_second = -std::cos(state.alpha) / state.y;
    out.principal_curvatures.push_back({k_second, params.q});
    trace += params.q * k_second;
    norm_sq += params.q * k_second * k_second;
  }
  out.principal_curvatures.push_back({alpha_dot, 1});
  out.f = trace + alpha_dot;
  out.second_fund_norm_sq = norm_sq + alpha_dot * alpha_dot;
  return out;
}

double f_on_biconservative(const OrbitState& state, const Params& params) {
  check_domain(state, params);
  double g = params.p * std::sin(state.alpha) / state.x;
  if (params.q > 0) g -= params.q * std::cos(state.alpha) / state.y;
  return 2.0 * g / 3.0;
}

MeanCurvatureDerivatives mean_curvature_derivatives(const OrbitState& state,
                                                    const Params& generator,
                                                    const Params& eval) {
  check_domain(state, generator);
  check_domain(state, eval);
  // f needs alpha' and the expansion loses one order on differentiation.
  constexpr std::size_t K = 4;
  const auto jet = biconservative_jet<K>(state, generator);
  const auto sc = sincos(jet.alpha);
  Jet<K> f = jet.alpha.differentiated() + static_cast<double>(eval.p) * sc.sin / jet.x;
  if (eval.q > 0) f -= static_cast<double>(eval.q) * sc.cos / jet.y;
  return {f.derivative(0), f.derivative(1), f.derivative(2)};
}

double SampledField::max_abs() const {
  double m = 0.0;
  for (double v : value) m = std::max(m, std::abs(v));
  return m;
}

SampledField tangential_residual(const OrbitTrajectory& curve, const Params& params,
                                 DerivativeMode mode) {
  const auto series = f_series(curve, params, mode);
  SampledField out;
  for (std::size_t k = 0; k < series.s.size(); ++k) {
    const double alpha_dot = use_analytic(curve, mode)
                                 ? biconservative_jet<1>(curve.samples[series.index[k]].state(),
                                                         curve.params)
                                       .alpha.c[1]
                                 : curve.samples[series.index[k]].alpha_dot;
    out.s.push_back(series.s[k]);
    out.value.push_back(series.f_dot[k] * (series.f[k] + 2.0 * alpha_dot));
  }
  return out;
}

SampledField normal_residual(const OrbitTrajectory& curve, const Params& params,
                             DerivativeMode mode) {
  const auto series = f_series(curve, params, mode);
  SampledField out;
  for (std::size_t k = 0; k < series.s.size(); ++k) {
    const auto& smp = curve.samples[series.index[k]];
    const double alpha_dot =
        use_analytic(curve, mode) ? biconservative_jet<1>(smp.state(), curve.params).alpha.c[1]
                                  : smp.alpha_dot;
    const double xd = std::cos(smp.alpha);
    const double yd = std::sin(smp.alpha);
    double drift = params.p * xd / smp.x;
    double norm_sq = params.p * (yd / smp.x) * (yd / smp.x) + alpha_dot * alpha_dot;
    if (params.q > 0) {
      drift += params.q * yd / smp.y;
      norm_sq += params.q * (xd / smp.y) * (xd / smp.y);
    }
    out.s.push_back(series.s[k]);
    out.value.push_back(series.f_ddot[k] + series.f_dot[k] * drift - series.f[k] * norm_sq);
  }
  return out;
}

SampledField mean_curvature_field(const OrbitTrajectory& curve, const Params& params) {
  SampledField out;
  for (const auto& smp : curve.samples) {
    out.s.push_back(smp.s);
    out.value.push_back(mean_curvature_f(smp.state(), smp.alpha_dot, params));
  }
  return out;
}

void fill_alpha_dot_by_differences(OrbitTrajectory& curve) {
  auto& smp = curve.samples;
  if (smp.size() < 3) {
    throw InsufficientSamples("finite differences need at least 3 samples");
  }
  const std::size_t n = smp.size();
  std::vector<double> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const auto w = first_derivative(smp[i].s - smp[i - 1].s, smp[i + 1].s - smp[i].s);
    d[i] = w.m1 * smp[i - 1].alpha + w.c0 * smp[i].alpha + w.p1 * smp[i + 1].alpha;
  }
  // Second-order one-sided ends.
  auto one_sided = [&](std::size_t a, std::size_t b, std::size_t c) {
    const double h1 = smp[b].s - smp[a].s;
    const double h2 = smp[c].s - smp[b].s;
    const double wa = -(2 * h1 + h2) / (h1 * (h1 + h2));
    const double wb = (h1 + h2) / (h1 * h2);
    const double wc = -h1 / (h2 * (h1 + h2));
    return wa * smp[a].alpha + wb * smp[b].alpha + wc * smp[c].alpha;
  };
  d[0] = one_sided(0, 1, 2);
  {
    // mirror of the forward formula for the last point
    const double h1 = smp[n - 2].s - smp[n - 3].s;
    const double h2 = smp[n - 1].s - smp[n - 2].s;
    d[n - 1] = h2 / (h1 * (h1 + h2)) * smp[n - 3].alpha - (h1 + h2) / (h1 * h2) * smp[n - 2].alpha +
               (2 * h2 + h1) / (h2 * (h1 + h2)) * smp[n - 1].alpha;
  }
  for (std::size_t i = 0; i < n; ++i) smp[i].alpha_dot = d[i];
}

}  // namespace eqflow
