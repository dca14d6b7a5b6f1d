#include "eqflow/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "eqflow/dopri5.hpp"
#include "eqflow/geometry.hpp"

namespace eqflow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_interior(const OrbitState& st, const Params& params) {
  if (!std::isfinite(st.x) || !std::isfinite(st.y) || !std::isfinite(st.alpha)) {
    throw ValidationError("start state must be finite");
  }
  if (!(st.x > 0.0)) throw DomainError("x must be positive (got " + std::to_string(st.x) + ")");
  if (params.q > 0 && !(st.y > 0.0)) {
    throw DomainError("y must be positive when q >= 1 (got " + std::to_string(st.y) + ")");
  }
}

double g_term(double x, double y, double alpha, const Params& params) {
  double g = params.p * std::sin(alpha) / x;
  if (params.q > 0) g -= params.q * std::cos(alpha) / y;
  return g;
}

OrbitSample make_sample(double s, double x, double y, double alpha, const Params& params) {
  return {s, x, y, alpha, -g_term(x, y, alpha, params) / 3.0};
}

}  // namespace

OrbitRate biconservative_rhs(const OrbitState& st, const Params& params) {
  if (!(st.x > 0.0)) throw DomainError("x must be positive (got " + std::to_string(st.x) + ")");
  if (params.q > 0 && st.y == 0.0) throw DomainError("axis contact: y = 0 with q >= 1");
  return {std::cos(st.alpha), std::sin(st.alpha), -g_term(st.x, st.y, st.alpha, params) / 3.0};
}

OrbitTrajectory integrate_orbit(const OrbitState& start, const Params& params,
                                const OrbitOptions& opt) {
  params.validate();
  require_interior(start, params);
  if (!(opt.max_arclen > 0.0)) throw ValidationError("max_arclen must be positive");

  const double alpha_start =
      opt.direction == Direction::Backward ? start.alpha + kPi : start.alpha;
  const bool doubly = params.q > 0;

  // Outside the orbit space the field is NaN, which the stepper rejects.
  auto rhs = [&](double, const std::array<double, 3>& u) -> std::array<double, 3> {
    if (!(u[0] > 0.0) || (doubly && !(u[1] > 0.0))) return {kNaN, kNaN, kNaN};
    return {std::cos(u[2]), std::sin(u[2]), -g_term(u[0], u[1], u[2], params) / 3.0};
  };

  ode::StepperOptions so;
  so.rel_tol = opt.tolerances.rel;
  so.abs_tol = opt.tolerances.abs;
  ode::Dopri5<3> stepper(rhs, 0.0, {start.x, start.y, alpha_start}, so);

  OrbitTrajectory out;
  out.params = params;
  out.source = CurveSource::BiconservativeOde;
  out.tolerances = opt.tolerances;
  out.termination = Termination::MaxLength;

  auto push = [&]() {
    const auto& u = stepper.y();
    out.samples.push_back({stepper.t(), u[0], u[1], u[2], stepper.dydt()[2]});
  };
  push();

  while (stepper.t() < opt.max_arclen) {
    if (stepper.step(opt.max_arclen) == ode::StepStatus::Underflow) {
      out.termination = Termination::StepUnderflow;
      break;
    }
    push();
    const auto& last = out.samples.back();
    if (std::hypot(last.x, last.y) < opt.origin_radius) {
      out.termination = Termination::HitOrigin;
      break;
    }
    if (last.x < opt.axis_threshold || (doubly && last.y < opt.axis_threshold)) {
      out.termination = Termination::HitAxis;
      break;
    }
  }
  return out;
}

double fractional_power(double base, double exponent) {
  if (base < 0.0) {
    throw DomainError("negative base " + std::to_string(base) + " with fractional exponent");
  }
  if (base == 0.0) return exponent == 0.0 ? 1.0 : 0.0;
  return std::exp(exponent * std::log(base));
}

PrimeIntegrals prime_integrals(const OrbitState& st, const Params& params) {
  if (!(st.x > 0.0)) throw DomainError("x must be positive (got " + std::to_string(st.x) + ")");
  PrimeIntegrals out;
  out.J = fractional_power(st.x, params.p / 3.0) * std::sin(st.alpha);
  if (params.q > 0) {
    out.I = fractional_power(st.y, params.q / 3.0) * std::cos(st.alpha);
  } else {
    out.I = std::cos(st.alpha);
    out.I_applicable = false;
  }
  return out;
}

PrimeIntegralRates prime_integral_rates(const OrbitState& st, const Params& params) {
  if (!(st.x > 0.0)) throw DomainError("x must be positive (got " + std::to_string(st.x) + ")");
  const double sa = std::sin(st.alpha);
  const double ca = std::cos(st.alpha);
  PrimeIntegralRates out;
  if (params.q > 0) {
    if (!(st.y > 0.0)) throw DomainError("y must be positive when q >= 1");
    out.I_dot = params.p / 3.0 * sa * sa / st.x * fractional_power(st.y, params.q / 3.0);
    out.J_dot = params.q / 3.0 * ca * ca / st.y * fractional_power(st.x, params.p / 3.0);
  } else {
    // I degenerates to cos a; J is conserved.
    out.I_dot = params.p / 3.0 * sa * sa / st.x;
  }
  return out;
}

PhaseState to_phase(const OrbitState& st) { return {std::atan2(st.y, st.x), st.alpha}; }

OrbitTrajectory lift_phase_to_orbit(const PhaseTrajectory& phase, double r0) {
  if (!(r0 > 0.0)) throw ValidationError("r0 must be positive");
  if (phase.samples.empty()) throw InsufficientSamples("empty phase trajectory");
  const Params& params = phase.params;
  const double dir = phase.backward ? -1.0 : 1.0;
  // A backward run is lifted as the reversed curve, whose tangent angle is
  // alpha + pi.
  const double flip = phase.backward ? kPi : 0.0;

  // (theta, alpha, log(r / r_i), (s - s_i) / r_i) over phase time.
  auto rhs = [&](double, const std::array<double, 4>& u) -> std::array<double, 4> {
    const auto f = vector_field({u[0], u[1]}, params);
    const double sc = std::sin(u[0]) * std::cos(u[0]);
    const double rho = std::exp(u[2]);
    return {dir * f.dtheta, dir * f.dalpha, 3.0 * sc * std::cos(u[1] + flip - u[0]),
            3.0 * rho * sc};
  };
  ode::StepperOptions so;
  so.rel_tol = 1e-12;
  so.abs_tol = 1e-14;

  OrbitTrajectory out;
  out.params = params;
  out.source = CurveSource::BiconservativeOde;
  out.termination = phase.termination;
  out.tolerances = phase.tolerances;

  double r = r0;
  double s = 0.0;
  auto emit = [&](const PhaseSample& ps) {
    const double alpha = ps.alpha + flip;
    const double x = r * std::cos(ps.theta);
    const double y = r * std::sin(ps.theta);
    out.samples.push_back(make_sample(s, x, y, alpha, params));
  };
  emit(phase.samples.front());

  for (std::size_t i = 0; i + 1 < phase.samples.size(); ++i) {
    const auto& a = phase.samples[i];
    const auto& b = phase.samples[i + 1];
    ode::Dopri5<4> stepper(rhs, a.s, {a.theta, a.alpha, 0.0, 0.0}, so);
    while (stepper.t() < b.s) {
      if (stepper.step(b.s) == ode::StepStatus::Underflow) {
        throw DomainError("lift: step underflow between phase samples");
      }
    }
    const double sigma = stepper.y()[3];
    if (!(sigma > 0.0)) {
      throw DomainError("lift: arc length does not advance (phase trajectory on theta = 0 or pi/2?)");
    }
    s += r * sigma;
    r *= std::exp(stepper.y()[2]);
    emit(b);
  }
  return out;
}

OrbitTrajectory reverse_orientation(const OrbitTrajectory& traj) {
  OrbitTrajectory out = traj;
  out.samples.assign(traj.samples.rbegin(), traj.samples.rend());
  const double s_end = traj.samples.empty() ? 0.0 : traj.samples.back().s;
  for (auto& smp : out.samples) {
    smp.s = s_end - smp.s;
    smp.alpha += kPi;
    smp.alpha_dot = -smp.alpha_dot;
  }
  return out;
}

OrbitTrajectory homothety(const OrbitTrajectory& traj, double c) {
  if (c == 0.0 || !std::isfinite(c)) throw ValidationError("homothety factor must be nonzero");
  const double m = std::abs(c);
  OrbitTrajectory out = traj;
  for (auto& smp : out.samples) {
    smp.s /= m;
    smp.x /= m;
    smp.y /= m;
    smp.alpha_dot *= m;
  }
  return c > 0 ? out : reverse_orientation(out);
}

OrbitTrajectory catenary_profile(double C, int p, double x_max, std::size_t n_samples, double y0) {
  if (!(C > 0.0)) throw ValidationError("C must be positive");
  if (p < 1) throw ValidationError("p must be >= 1 (got " + std::to_string(p) + ")");
  if (n_samples < 2) throw ValidationError("n_samples must be >= 2");
  const double x_min = std::pow(C, 3.0 / p);
  if (!(x_max > x_min)) {
    throw ValidationError("x_max must exceed C^(3/p) = " + std::to_string(x_min));
  }
  const double pd = p;
  // u^2 = x^(2p/3) - C^2 removes the square-root singularity at the vertical tangent.
  const double u_max = std::sqrt(std::max(0.0, std::pow(x_max, 2.0 * pd / 3.0) - C * C));
  auto big_x = [C](double u) { return u * u + C * C; };
  auto dy_du = [&](double u) { return 3.0 * C / pd * std::pow(big_x(u), 1.5 / pd - 1.0); };
  auto ds_du = [&](double u) { return 3.0 / pd * std::pow(big_x(u), 1.5 / pd - 0.5); };

  using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  const Params params{p, 0};
  OrbitTrajectory out;
  out.params = params;
  out.source = CurveSource::BiconservativeOde;
  out.termination = Termination::MaxLength;

  double y = y0;
  double s = 0.0;
  double u_prev = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double u = u_max * static_cast<double>(i) / static_cast<double>(n_samples - 1);
    if (i > 0) {
      y += Quad::integrate(dy_du, u_prev, u, 10, 1e-13);
      s += Quad::integrate(ds_du, u_prev, u, 10, 1e-13);
    }
    const double x = std::pow(big_x(u), 1.5 / pd);
    const double alpha = std::atan2(C, u);
    out.samples.push_back(make_sample(s, x, y, alpha, params));
    u_prev = u;
  }
  return out;
}

OrbitTrajectory extend_catenary(const OrbitTrajectory& half) {
  if (half.samples.size() < 2 || half.params.q != 0) {
    throw ValidationError("extend_catenary expects a catenary half profile");
  }
  const auto& first = half.samples.front();
  if (std::abs(first.alpha - kHalfPi) > 1e-12 || first.s != 0.0) {
    throw ValidationError("half profile must start at the vertical tangent with s = 0");
  }
  const double y0 = first.y;
  OrbitTrajectory out = half;
  out.samples.clear();
  // Mirror across y = y0, then reverse so the tangent stays continuous.
  for (std::size_t k = half.samples.size(); k-- > 1;) {
    const auto& h = half.samples[k];
    out.samples.push_back({-h.s, h.x, 2 * y0 - h.y, kPi - h.alpha, h.alpha_dot});
  }
  out.samples.insert(out.samples.end(), half.samples.begin(), half.samples.end());
  return out;
}

OrbitTrajectory minimal_cone_profile(const Params& params, double s_max, std::size_t n_samples) {
  params.validate();
  if (params.q < 1) throw UnsupportedCase("the minimal cone needs q >= 1");
  if (!(s_max > 0.0)) throw ValidationError("s_max must be positive");
  if (n_samples < 1) throw ValidationError("n_samples must be >= 1");
  const double a0 = alpha0(params);
  OrbitTrajectory out;
  out.params = params;
  out.source = CurveSource::BiconservativeOde;
  out.termination = Termination::MaxLength;
  for (std::size_t i = 1; i <= n_samples; ++i) {
    const double s = s_max * static_cast<double>(i) / static_cast<double>(n_samples);
    out.samples.push_back({s, std::cos(a0) * s, std::sin(a0) * s, a0, 0.0});
  }
  return out;
}

double biconservative_defect(const OrbitTrajectory& traj, const Params& params) {
  double worst = 0.0;
  for (const auto& smp : traj.samples) {
    const double r = 3.0 * smp.alpha_dot + g_term(smp.x, smp.y, smp.alpha, params);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

bool triple_cover_check(const Params& params3, const OrbitTrajectory& base, double tol) {
  const Params expected{3 * base.params.p, 3 * base.params.q};
  if (!(params3 == expected)) {
    throw ParameterMismatch("expected (" + std::to_string(expected.p) + ", " +
                            std::to_string(expected.q) + ") for a base with (" +
                            std::to_string(base.params.p) + ", " + std::to_string(base.params.q) +
                            ")");
  }
  for (const auto& smp : base.samples) {
    if (std::abs(mean_curvature_f(smp.state(), smp.alpha_dot, base.params)) > tol) return false;
  }
  return biconservative_defect(base, params3) <= tol;
}

}  // namespace eqflow
