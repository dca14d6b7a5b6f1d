#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

namespace eqflow {

/// Homogeneous polynomial in (x, y) with big-integer coefficients.
/// coeffs[k] multiplies x^(degree-k) y^k.
///
/// Zero polynomials still carry a degree, so that rows of a polynomial
/// matrix keep a uniform degree through elimination; adding a zero of any
/// degree is the identity.
class HomoPoly2 {
 public:
  HomoPoly2() : coeffs_(1) {}
  explicit HomoPoly2(int degree);
  HomoPoly2(int degree, std::vector<mpz_class> coeffs);

  static HomoPoly2 constant(const mpz_class& c);
  /// c x^a y^b
  static HomoPoly2 monomial(int a, int b, const mpz_class& c);

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  /// Coefficient of x^a y^b (a + b must equal degree).
  [[nodiscard]] const mpz_class& coeff(int a, int b) const;
  [[nodiscard]] bool is_zero() const;

  HomoPoly2& operator+=(const HomoPoly2& o);
  HomoPoly2& operator-=(const HomoPoly2& o);
  friend HomoPoly2 operator+(HomoPoly2 a, const HomoPoly2& b) { return a += b; }
  friend HomoPoly2 operator-(HomoPoly2 a, const HomoPoly2& b) { return a -= b; }
  friend HomoPoly2 operator-(const HomoPoly2& a);
  friend HomoPoly2 operator*(const HomoPoly2& a, const HomoPoly2& b);
  friend HomoPoly2 operator*(const mpz_class& s, const HomoPoly2& a);
  friend bool operator==(const HomoPoly2& a, const HomoPoly2& b);

  /// Quotient when `divisor` divides this exactly; throws std::domain_error otherwise.
  [[nodiscard]] HomoPoly2 exact_div(const HomoPoly2& divisor) const;

  [[nodiscard]] long double evaluate(long double x, long double y) const;
  [[nodiscard]] mpq_class evaluate(const mpq_class& x, const mpq_class& y) const;

  /// Coefficients of P(1, m) in increasing powers of m.
  [[nodiscard]] std::vector<mpz_class> dehomogenize() const { return coeffs_; }

  /// Human-readable form, e.g. "-6*x^2*y + 15*y^3".
  [[nodiscard]] std::string to_string() const;

 private:
  int degree_ = 0;
  std::vector<mpz_class> coeffs_;
};

/// Determinant by fraction-free (Bareiss) elimination. Each row must have a
/// uniform degree; the result has degree equal to the sum of the row degrees.
HomoPoly2 bareiss_determinant(std::vector<std::vector<HomoPoly2>> m);

/// Sylvester matrix of f = sum f[i] t^i and g = sum g[i] t^i (coefficients in
/// increasing powers of t, leading last). Rows of f come first.
std::vector<std::vector<HomoPoly2>> sylvester_matrix(const std::vector<HomoPoly2>& f,
                                                     const std::vector<HomoPoly2>& g);

}  // namespace eqflow
