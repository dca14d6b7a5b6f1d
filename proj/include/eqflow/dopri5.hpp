#pragma once

// Dormand-Prince 5(4) embedded Runge-Kutta stepper with FSAL reuse and
// cubic Hermite dense output over the most recent accepted step.
//
// The stepper is driven one accepted step at a time so that callers can
// inspect, rescale or terminate between steps (event location, renormalised
// coordinates, domain monitors).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>

#include "eqflow/errors.hpp"

namespace eqflow::ode {

struct StepperOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double initial_step = 0.0;  // 0 selects a step from the local scale
  double max_step = std::numeric_limits<double>::infinity();
  double min_step = 1e-14;
};

enum class StepStatus { Ok, Underflow };

template <std::size_t N>
class Dopri5 {
 public:
  using State = std::array<double, N>;
  using Rhs = std::function<State(double, const State&)>;

  Dopri5(Rhs rhs, double t0, const State& y0, StepperOptions options = {})
      : rhs_(std::move(rhs)), opt_(options), t_(t0), y_(y0) {
    f_ = rhs_(t_, y_);
    if (!finite(f_)) throw DomainError("right-hand side is not finite at the initial state");
    t_prev_ = t_;
    y_prev_ = y_;
    f_prev_ = f_;
    h_ = opt_.initial_step > 0 ? opt_.initial_step : initial_step();
  }

  [[nodiscard]] double t() const { return t_; }
  [[nodiscard]] const State& y() const { return y_; }
  [[nodiscard]] const State& dydt() const { return f_; }
  [[nodiscard]] double t_prev() const { return t_prev_; }
  [[nodiscard]] const State& y_prev() const { return y_prev_; }
  [[nodiscard]] const State& dydt_prev() const { return f_prev_; }
  [[nodiscard]] double proposed_step() const { return h_; }
  [[nodiscard]] std::size_t accepted_steps() const { return accepted_; }
  [[nodiscard]] std::size_t rejected_steps() const { return rejected_; }

  /// Replaces the current state (same t) and re-evaluates the derivative.
  void reset(const State& y) {
    y_ = y;
    f_ = rhs_(t_, y_);
    if (!finite(f_)) throw DomainError("right-hand side is not finite after reset");
  }

  /// Performs one accepted step that does not pass t_limit.
  StepStatus step(double t_limit) {
    for (;;) {
      double h = std::min(h_, opt_.max_step);
      bool clipped = false;
      if (t_ + h >= t_limit) {
        h = t_limit - t_;
        clipped = true;
      }
      const double floor = std::max(opt_.min_step, 16 * std::numeric_limits<double>::epsilon() * std::abs(t_));
      if (h < floor) return StepStatus::Underflow;

      State y_new;
      State f_new;
      const double err = attempt(h, y_new, f_new);
      if (err <= 1.0) {
        t_prev_ = t_;
        y_prev_ = y_;
        f_prev_ = f_;
        t_ = clipped ? t_limit : t_ + h;
        y_ = y_new;
        f_ = f_new;
        ++accepted_;
        const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (!clipped || fac < 1.0) h_ = h * (last_rejected_ ? std::min(fac, 1.0) : fac);
        last_rejected_ = false;
        return StepStatus::Ok;
      }
      ++rejected_;
      last_rejected_ = true;
      h_ = std::isfinite(err) ? h * std::max(0.2, 0.9 * std::pow(err, -0.2)) : h * 0.25;
    }
  }

  /// Cubic Hermite interpolant of the last accepted step at time t.
  [[nodiscard]] State dense(double t) const {
    const double h = t_ - t_prev_;
    if (h == 0.0) return y_;
    const double th = (t - t_prev_) / h;
    const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
    const double h10 = th * (1 - th) * (1 - th);
    const double h01 = th * th * (3 - 2 * th);
    const double h11 = th * th * (th - 1);
    State out;
    for (std::size_t i = 0; i < N; ++i) {
      out[i] = h00 * y_prev_[i] + h10 * h * f_prev_[i] + h01 * y_[i] + h11 * h * f_[i];
    }
    return out;
  }

 private:
  static bool finite(const State& s) {
    return std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); });
  }

  double scaled_norm(const State& e, const State& a, const State& b) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt_.abs_tol + opt_.rel_tol * std::max(std::abs(a[i]), std::abs(b[i]));
      const double r = e[i] / sc;
      acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(N));
  }

  double initial_step() const {
    const double d0 = scaled_norm(y_, y_, y_);
    const double d1 = scaled_norm(f_, y_, y_);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, opt_.max_step);
    State y1;
    for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + h0 * f_[i];
    const State f1 = rhs_(t_ + h0, y1);
    if (!finite(f1)) return h0 * 1e-3;
    State df;
    for (std::size_t i = 0; i < N; ++i) df[i] = f1[i] - f_[i];
    const double d2 = scaled_norm(df, y_, y_) / h0;
    const double m = std::max(d1, d2);
    const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 0.2);
    return std::min({100 * h0, h1, opt_.max_step});
  }

  double attempt(double h, State& y_new, State& f_new) const {
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

    const State& k1 = f_;
    State tmp;
    auto stage = [&](double c, auto&& combine) {
      for (std::size_t i = 0; i < N; ++i) tmp[i] = y_[i] + h * combine(i);
      return rhs_(t_ + c * h, tmp);
    };
    const State k2 = stage(c2, [&](std::size_t i) { return a21 * k1[i]; });
    const State k3 = stage(c3, [&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; });
    const State k4 =
        stage(c4, [&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; });
    const State k5 = stage(c5, [&](std::size_t i) {
      return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
    });
    const State k6 = stage(1.0, [&](std::size_t i) {
      return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
    });
    for (std::size_t i = 0; i < N; ++i) {
      y_new[i] = y_[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    }
    if (!finite(k2) || !finite(k3) || !finite(k4) || !finite(k5) || !finite(k6) || !finite(y_new)) {
      return std::numeric_limits<double>::infinity();
    }
    f_new = rhs_(t_ + h, y_new);
    if (!finite(f_new)) return std::numeric_limits<double>::infinity();
    State err;
    for (std::size_t i = 0; i < N; ++i) {
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * f_new[i]);
    }
    return scaled_norm(err, y_, y_new);
  }

  Rhs rhs_;
  StepperOptions opt_;
  double t_;
  State y_;
  State f_;
  double t_prev_;
  State y_prev_;
  State f_prev_;
  double h_ = 0.0;
  bool last_rejected_ = false;
  std::size_t accepted_ = 0;
  std::size_t rejected_ = 0;
};

}  // namespace eqflow::ode
