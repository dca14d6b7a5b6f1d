#pragma once
// Independent reference computations used only by the tests. Nothing here
// calls into the library's numerical code paths.

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include <gmpxx.h>

namespace oracle {

// Sparse polynomial in x, y, t keyed by exponents.
using Key = std::array<int, 3>;
using Poly3 = std::map<Key, mpq_class>;

inline void add_term(Poly3& p, Key k, const mpq_class& c) {
  p[k] += c;
  if (p[k] == 0) p.erase(k);
}

inline Poly3 operator+(Poly3 a, const Poly3& b) {
  for (const auto& [k, c] : b) add_term(a, k, c);
  return a;
}

inline Poly3 operator*(const Poly3& a, const Poly3& b) {
  Poly3 out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      add_term(out, {ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}, ca * cb);
    }
  }
  return out;
}

inline Poly3 mono(int a, int b, int c, const mpq_class& coef) {
  Poly3 p;
  if (coef != 0) p[{a, b, c}] = coef;
  return p;
}

// Partial derivative in variable `var` (0 = x, 1 = y, 2 = t).
inline Poly3 diff(const Poly3& p, int var) {
  Poly3 out;
  for (const auto& [k, c] : p) {
    if (k[var] == 0) continue;
    Key nk = k;
    --nk[var];
    add_term(out, nk, c * k[var]);
  }
  return out;
}

// A, B, C, D of the profile condition, typed in from their printed form.
struct Abcd {
  Poly3 A, B, C, D;
};

inline Abcd abcd(long p, long q) {
  Abcd f;
  f.A = mono(0, 3, 0, 3 * p * (3 + 2 * p)) + mono(2, 1, 0, -6 * p * q);
  f.B = mono(3, 0, 0, -3 * q * (3 + 2 * q)) + mono(1, 2, 0, 6 * p * q);
  f.C = mono(3, 0, 0, q * q * (6 + q)) + mono(1, 2, 0, p * q * (p - 3));
  f.D = mono(0, 3, 0, -p * p * (p + 6)) + mono(2, 1, 0, -p * q * (q - 3));
  return f;
}

// Cubic in t as a single polynomial: sum_i A_i t^i with (A0..A3) = (C, A+D, B+C, D).
inline Poly3 cubic(long p, long q) {
  const auto f = abcd(p, q);
  return f.C + (f.A + f.D) * mono(0, 0, 1, 1) + (f.B + f.C) * mono(0, 0, 2, 1) +
         f.D * mono(0, 0, 3, 1);
}

// Total x-derivative of the cubic along a graph y(x) with y' = t and
// y'' = (1 + t^2)(q x - p y t) / (3 x y), multiplied through by 3 x y.
inline Poly3 quintic_by_differentiation(long p, long q) {
  const Poly3 P = cubic(p, q);
  const Poly3 t = mono(0, 0, 1, 1);
  const Poly3 total = diff(P, 0) + t * diff(P, 1);
  const Poly3 ypp_num = (mono(0, 0, 0, 1) + mono(0, 0, 2, 1)) *
                        (mono(1, 0, 0, q) + mono(0, 1, 1, -p));
  return mono(1, 1, 0, 3) * total + diff(P, 2) * ypp_num;
}

// Coefficient of x^a y^b t^i.
inline mpq_class coeff(const Poly3& p, int a, int b, int i) {
  const auto it = p.find({a, b, i});
  return it == p.end() ? mpq_class(0) : it->second;
}

// Determinant by Gaussian elimination over Q.
inline mpq_class determinant(std::vector<std::vector<mpq_class>> m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const mpq_class factor = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= factor * m[c][k];
    }
  }
  return det;
}

// Textbook Sylvester matrix: coefficient lists in decreasing powers.
inline std::vector<std::vector<mpq_class>> sylvester(const std::vector<mpq_class>& f,
                                                     const std::vector<mpq_class>& g) {
  const std::size_t m = f.size() - 1;
  const std::size_t n = g.size() - 1;
  std::vector<std::vector<mpq_class>> s(m + n, std::vector<mpq_class>(m + n, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = f[k];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = g[k];
  }
  return s;
}

// Coefficients in t (decreasing powers) of a Poly3 evaluated at (x, y).
inline std::vector<mpq_class> t_coeffs_at(const Poly3& p, int degree, const mpq_class& x,
                                          const mpq_class& y) {
  std::vector<mpq_class> out(degree + 1, 0);
  for (const auto& [k, c] : p) {
    mpq_class v = c;
    for (int i = 0; i < k[0]; ++i) v *= x;
    for (int i = 0; i < k[1]; ++i) v *= y;
    out[degree - k[2]] += v;
  }
  return out;
}

// Classical RK4 with a fixed step, for reference trajectories.
template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
Vec<N> rk4(const std::function<Vec<N>(const Vec<N>&)>& rhs, Vec<N> y, double length,
           int steps) {
  const double h = length / steps;
  auto axpy = [](const Vec<N>& a, double s, const Vec<N>& b) {
    Vec<N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  for (int k = 0; k < steps; ++k) {
    const auto k1 = rhs(y);
    const auto k2 = rhs(axpy(y, h / 2, k1));
    const auto k3 = rhs(axpy(y, h / 2, k2));
    const auto k4 = rhs(axpy(y, h, k3));
    for (std::size_t i = 0; i < N; ++i) y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return y;
}

// Profile equation written out directly: (x, y, alpha).
inline std::function<Vec<3>(const Vec<3>&)> profile_rhs(int p, int q) {
  return [p, q](const Vec<3>& s) {
    double g = p * std::sin(s[2]) / s[0];
    if (q > 0) g -= q * std::cos(s[2]) / s[1];
    return Vec<3>{std::cos(s[2]), std::sin(s[2]), -g / 3.0};
  };
}

}  // namespace oracle
