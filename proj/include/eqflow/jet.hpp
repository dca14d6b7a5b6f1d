#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace eqflow {

/// Truncated Taylor series c[0] + c[1] t + ... + c[K] t^K.
///
/// Arithmetic follows the usual Taylor-mode recurrences, so composing jets
/// through a closed-form right-hand side yields exact higher derivatives of
/// the generating ODE (no differencing of samples).
template <std::size_t K>
struct Jet {
  std::array<double, K + 1> c{};

  static Jet constant(double v) {
    Jet j;
    j.c[0] = v;
    return j;
  }

  /// k-th derivative at t = 0.
  [[nodiscard]] double derivative(std::size_t k) const {
    double fact = 1.0;
    for (std::size_t i = 2; i <= k; ++i) fact *= static_cast<double>(i);
    return c[k] * fact;
  }

  /// d/dt of the series; the top coefficient is lost.
  [[nodiscard]] Jet differentiated() const {
    Jet d;
    for (std::size_t k = 0; k < K; ++k) d.c[k] = static_cast<double>(k + 1) * c[k + 1];
    return d;
  }

  Jet& operator+=(const Jet& o) {
    for (std::size_t k = 0; k <= K; ++k) c[k] += o.c[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (std::size_t k = 0; k <= K; ++k) c[k] -= o.c[k];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& v : c) v *= s;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator-(Jet a) { return a *= -1.0; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (std::size_t k = 0; k <= K; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= k; ++j) acc += a.c[j] * b.c[k - j];
      r.c[k] = acc;
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet q;
    for (std::size_t k = 0; k <= K; ++k) {
      double acc = a.c[k];
      for (std::size_t j = 1; j <= k; ++j) acc -= b.c[j] * q.c[k - j];
      q.c[k] = acc / b.c[0];
    }
    return q;
  }
};

template <std::size_t K>
struct SinCos {
  Jet<K> sin;
  Jet<K> cos;
};

template <std::size_t K>
SinCos<K> sincos(const Jet<K>& a) {
  SinCos<K> r;
  r.sin.c[0] = std::sin(a.c[0]);
  r.cos.c[0] = std::cos(a.c[0]);
  for (std::size_t k = 1; k <= K; ++k) {
    double s = 0.0;
    double co = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      const double w = static_cast<double>(j) * a.c[j];
      s += w * r.cos.c[k - j];
      co -= w * r.sin.c[k - j];
    }
    r.sin.c[k] = s / static_cast<double>(k);
    r.cos.c[k] = co / static_cast<double>(k);
  }
  return r;
}

}  // namespace eqflow
