#include "eqflow/phase_plane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eqflow/dopri5.hpp"

namespace eqflow {

namespace {

void require_doubly_invariant(const Params& params) {
  params.validate();
  if (params.q < 1) {
    throw UnsupportedCase("the reduced phase plane requires q >= 1 (got q = " +
                          std::to_string(params.q) + ")");
  }
}

// alpha - target reduced to (-pi, pi].
double wrapped_difference(double alpha, double target) {
  double d = std::remainder(alpha - target, kTwoPi);
  if (d <= -kPi) d += kTwoPi;
  return d;
}

double distance_mod_alpha(const PhaseState& a, const PhaseState& b) {
  return std::hypot(a.theta - b.theta, wrapped_difference(a.alpha, b.alpha));
}

double frobenius(const Matrix2& m) {
  return std::sqrt(m[0][0] * m[0][0] + m[0][1] * m[0][1] + m[1][0] * m[1][0] + m[1][1] * m[1][1]);
}

// Below this log-scale the deviation is too small for the quadratic terms to
// register and the field is replaced by its linearisation.
constexpr double kLinearBelow = -50.0;
constexpr double kMantissaHigh = 1e3;
constexpr double kMantissaLow = 1e-3;

}  // namespace

FieldValue vector_field(const PhaseState& st, const Params& params) {
  require_doubly_invariant(params);
  const double s = std::sin(st.theta);
  const double c = std::cos(st.theta);
  return {3.0 * s * c * std::sin(st.alpha - st.theta),
          params.q * std::cos(st.alpha) * c - params.p * std::sin(st.alpha) * s};
}

FieldValue deviation_field(double u, double v, const Params& params) {
  const double a0 = alpha0(params);
  const double diff = v - u;
  const double sum = u + v;
  const double half = std::sin(0.5 * diff);
  const double dtheta = 1.5 * std::sin(2.0 * a0 + 2.0 * u) * std::sin(diff);
  const double dalpha = -0.5 * (params.q - params.p) * 2.0 * half * half -
                        (params.q + params.p) * std::sin(2.0 * a0 + 0.5 * sum) * std::sin(0.5 * sum);
  return {dtheta, dalpha};
}

std::vector<PhaseState> stationary_points(const Params& params) {
  require_doubly_invariant(params);
  const double a0 = alpha0(params);
  return {{a0, a0}, {a0, a0 + kPi}, {0.0, kHalfPi}, {0.0, 3 * kHalfPi}, {kHalfPi, 0.0},
          {kHalfPi, kPi}};
}

std::array<std::string_view, 6> stationary_point_labels() {
  return {"P0", "P1", "Q1", "Q2", "Q3", "Q4"};
}

Matrix2 jacobian_at(const PhaseState& st, const Params& params) {
  require_doubly_invariant(params);
  const double d = st.alpha - st.theta;
  const double s2 = std::sin(2 * st.theta);
  const double sa = std::sin(st.alpha);
  const double ca = std::cos(st.alpha);
  const double st_ = std::sin(st.theta);
  const double ct = std::cos(st.theta);
  Matrix2 j{};
  j[0][0] = 3.0 * std::cos(2 * st.theta) * std::sin(d) - 1.5 * s2 * std::cos(d);
  j[0][1] = 1.5 * s2 * std::cos(d);
  j[1][0] = -params.q * ca * st_ - params.p * sa * ct;
  j[1][1] = -params.q * sa * ct - params.p * ca * st_;
  return j;
}

std::string_view to_string(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::SpiralSink: return "SpiralSink";
    case EquilibriumKind::NodalSink: return "NodalSink";
    case EquilibriumKind::SpiralSource: return "SpiralSource";
    case EquilibriumKind::NodalSource: return "NodalSource";
    case EquilibriumKind::Saddle: return "Saddle";
    case EquilibriumKind::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

long long sink_discriminant_factor(const Params& params) {
  const long long k = params.p + params.q;
  return k * k - 18 * k + 9;
}

EquilibriumReport classify_equilibrium(const PhaseState& st, const Params& params) {
  const auto x = vector_field(st, params);
  if (std::hypot(x.dtheta, x.dalpha) > 1e-12) {
    throw NotStationary("state (" + std::to_string(st.theta) + ", " + std::to_string(st.alpha) +
                        ") is not stationary");
  }
  EquilibriumReport rep;
  rep.point = st;
  rep.jacobian = jacobian_at(st, params);
  const auto& j = rep.jacobian;
  const double tr = j[0][0] + j[1][1];
  const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  double disc = tr * tr - 4 * det;

  // At P0 and P1 the sign of the discriminant is an integer question; do not
  // let round-off decide it.
  const double a0 = alpha0(params);
  const bool at_sink = distance_mod_alpha(st, {a0, a0}) <= 1e-12;
  const bool at_source = distance_mod_alpha(st, {a0, a0 + kPi}) <= 1e-12;
  if (at_sink || at_source) {
    const double sc = std::sin(a0) * std::cos(a0);
    disc = sc * sc * static_cast<double>(sink_discriminant_factor(params));
  }

  if (disc < 0) {
    const double im = 0.5 * std::sqrt(-disc);
    rep.eigenvalues = {std::complex<double>(tr / 2, im), std::complex<double>(tr / 2, -im)};
  } else {
    const double r = std::sqrt(disc);
    // stable roots of l^2 - tr l + det
    const double big = tr >= 0 ? 0.5 * (tr + r) : 0.5 * (tr - r);
    const double small = big != 0.0 ? det / big : 0.0;
    rep.eigenvalues = {std::complex<double>(std::max(big, small), 0.0),
                       std::complex<double>(std::min(big, small), 0.0)};
  }

  const double zero_tol = 1e-12 * frobenius(j);
  const double re0 = rep.eigenvalues[0].real();
  const double re1 = rep.eigenvalues[1].real();
  if (std::abs(re0) <= zero_tol || std::abs(re1) <= zero_tol) {
    rep.kind = EquilibriumKind::Degenerate;
  } else if (disc < 0) {
    rep.kind = re0 < 0 ? EquilibriumKind::SpiralSink : EquilibriumKind::SpiralSource;
  } else if (re0 < 0 && re1 < 0) {
    rep.kind = EquilibriumKind::NodalSink;
  } else if (re0 > 0 && re1 > 0) {
    rep.kind = EquilibriumKind::NodalSource;
  } else {
    rep.kind = EquilibriumKind::Saddle;
  }
  return rep;
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::R1: return "R1";
    case Region::R2: return "R2";
    case Region::BoundaryUpper1: return "BoundaryUpper1";
    case Region::BoundaryLower1: return "BoundaryLower1";
    case Region::BoundaryUpper2: return "BoundaryUpper2";
    case Region::VerticalEdge: return "VerticalEdge";
    case Region::Outside: return "Outside";
  }
  return "Unknown";
}

Region region_of(const PhaseState& st, double tol) {
  if (!std::isfinite(st.theta) || !std::isfinite(st.alpha)) return Region::Outside;
  if (st.theta < -tol || st.theta > kHalfPi + tol) {
    throw ValidationError("theta must lie in [0, pi/2] (got " + std::to_string(st.theta) + ")");
  }
  if (st.theta <= tol || st.theta >= kHalfPi - tol) return Region::VerticalEdge;

  // alpha - theta reduced into [-pi/2, 3pi/2)
  const double raw = st.alpha - st.theta;
  const double turns = std::floor((raw + kHalfPi) / kTwoPi);
  double d = raw - turns * kTwoPi;
  double lifted_turns = turns;
  if (d > 3 * kHalfPi - tol) {
    d -= kTwoPi;
    lifted_turns += 1;
  }
  if (std::abs(d + kHalfPi) <= tol) {
    // The edge alpha = theta - pi/2 (mod 2 pi) bounds R1 from below and R2
    // from above; report it against whichever copy the raw alpha sits on.
    return lifted_turns <= 0 ? Region::BoundaryLower1 : Region::BoundaryUpper2;
  }
  if (std::abs(d - kHalfPi) <= tol) return Region::BoundaryUpper1;
  return d < kHalfPi ? Region::R1 : Region::R2;
}

double nullcline_g(double theta, const Params& params) {
  require_doubly_invariant(params);
  if (!(theta > 0.0 && theta < kHalfPi)) {
    throw DomainError("nullcline_g needs 0 < theta < pi/2 (got " + std::to_string(theta) + ")");
  }
  return std::atan2(static_cast<double>(params.q), params.p * std::tan(theta));
}

double default_s_max(const Params& params) {
  return 200.0 * (1.0 + 10.0 / static_cast<double>(params.p + params.q));
}

PhaseTrajectory integrate_phase(const PhaseState& start, const Params& params,
                                const PhaseOptions& opt) {
  require_doubly_invariant(params);
  if (!std::isfinite(start.theta) || !std::isfinite(start.alpha) || start.theta < 0.0 ||
      start.theta > kHalfPi) {
    throw ValidationError("phase start needs 0 <= theta <= pi/2");
  }
  const double s_max = opt.max_arclen > 0 ? opt.max_arclen : default_s_max(params);
  const double a0 = alpha0(params);
  const double dir = opt.backward ? -1.0 : 1.0;
  const double sc0 = std::sin(a0) * std::cos(a0);
  const double k = params.p + params.q;
  const auto equilibria = stationary_points(params);

  // Displacement from (a0, anchor) kept as mantissa * exp(log_scale).
  double anchor = a0 + kTwoPi * std::round((start.alpha - a0) / kTwoPi);
  double log_scale = 0.0;
  std::array<double, 2> w{start.theta - a0, start.alpha - anchor};

  auto rhs = [&](double, const std::array<double, 2>& m) -> std::array<double, 2> {
    if (log_scale < kLinearBelow) {
      return {dir * 3.0 * sc0 * (m[1] - m[0]), -dir * k * sc0 * (m[0] + m[1])};
    }
    const double scale = std::exp(log_scale);
    const auto f = deviation_field(scale * m[0], scale * m[1], params);
    return {dir * f.dtheta / scale, dir * f.dalpha / scale};
  };

  ode::StepperOptions so;
  so.rel_tol = opt.tolerances.rel;
  so.abs_tol = opt.tolerances.abs;
  ode::Dopri5<2> stepper(rhs, 0.0, w, so);

  PhaseTrajectory out;
  out.params = params;
  out.tolerances = opt.tolerances;
  out.backward = opt.backward;

  auto push = [&](double s) {
    const auto& m = stepper.y();
    const auto& r = stepper.dydt();
    PhaseSample smp;
    smp.s = s;
    const double scale = std::exp(log_scale);
    smp.theta = a0 + scale * m[0];
    smp.alpha = anchor + scale * m[1];
    smp.dev_theta = m[0];
    smp.dev_alpha = m[1];
    smp.rate_theta = r[0];
    smp.rate_alpha = r[1];
    smp.log_scale = log_scale;
    out.samples.push_back(smp);
  };

  // Keeps the mantissa in [1e-3, 1e3] with log_scale <= 0, and the alpha
  // displacement within one turn of the anchor.
  auto renormalise = [&]() {
    auto m = stepper.y();
    bool changed = false;
    const double n = std::hypot(m[0], m[1]);
    if (n > 0.0 && (n > kMantissaHigh || n < kMantissaLow)) {
      const double target = log_scale + std::log(n);
      if (target >= 0.0) {
        const double scale = std::exp(log_scale);
        m = {m[0] * scale, m[1] * scale};
        log_scale = 0.0;
      } else {
        m = {m[0] / n, m[1] / n};
        log_scale = target;
      }
      changed = true;
    }
    if (std::abs(m[1]) * std::exp(log_scale) > kPi) {
      const double scale = std::exp(log_scale);
      m = {m[0] * scale, m[1] * scale};
      log_scale = 0.0;
      const double shift = kTwoPi * std::round(m[1] / kTwoPi);
      m[1] -= shift;
      anchor += shift;
      changed = true;
    }
    if (changed) stepper.reset(m);
  };

  renormalise();
  push(0.0);
  int near_count = 0;
  out.termination = Termination::MaxLength;
  while (stepper.t() < s_max) {
    if (stepper.step(s_max) == ode::StepStatus::Underflow) {
      out.termination = Termination::StepUnderflow;
      break;
    }
    renormalise();
    push(stepper.t());
    const auto& last = out.samples.back();

    if (last.theta <= opt.tolerances.abs || last.theta >= kHalfPi - opt.tolerances.abs) {
      out.termination = Termination::HitAxis;
      break;
    }

    double dist = std::exp(last.log_distance());
    for (std::size_t e = 1; e < equilibria.size(); ++e) {
      dist = std::min(dist, distance_mod_alpha(last.state(), equilibria[e]));
    }
    near_count = dist < opt.convergence_radius ? near_count + 1 : 0;
    if (opt.stop_on_convergence && near_count >= opt.convergence_steps) {
      out.termination = Termination::ConvergedToEquilibrium;
      break;
    }
  }
  return out;
}

std::vector<double> crossing_locations(const PhaseTrajectory& traj) {
  std::vector<double> out;
  const auto& smp = traj.samples;
  auto sign_of = [](double v) { return (v > 0) - (v < 0); };
  int last_sign = 0;
  std::size_t last_index = 0;
  for (std::size_t i = 0; i < smp.size(); ++i) {
    const int sg = sign_of(smp[i].dev_theta);
    if (sg == 0) continue;
    if (last_sign != 0 && sg != last_sign) {
      if (last_index + 1 == i) {
        const auto& a = smp[last_index];
        const auto& b = smp[i];
        const double rescale = std::exp(b.log_scale - a.log_scale);
        const double ua = a.dev_theta;
        const double ra = a.rate_theta;
        const double ub = b.dev_theta * rescale;
        const double rb = b.rate_theta * rescale;
        const double h = b.s - a.s;
        auto hermite = [&](double s) {
          const double t = (s - a.s) / h;
          const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
          const double h10 = t * (1 - t) * (1 - t);
          const double h01 = t * t * (3 - 2 * t);
          const double h11 = t * t * (t - 1);
          return h00 * ua + h10 * h * ra + h01 * ub + h11 * h * rb;
        };
        double lo = a.s;
        double hi = b.s;
        const int slo = sign_of(ua);
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (sign_of(hermite(mid)) == slo) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        out.push_back(0.5 * (lo + hi));
      } else {
        // crossed through samples sitting exactly on theta = alpha0
        out.push_back(smp[last_index + 1].s);
      }
    }
    last_sign = sg;
    last_index = i;
  }
  return out;
}

std::size_t crossing_count(const PhaseTrajectory& traj) { return crossing_locations(traj).size(); }

}  // namespace eqflow
