#pragma once

#include <vector>

#include <gmpxx.h>

namespace eqflow {

/// Integer polynomial, coefficients in increasing powers.
using IntPoly = std::vector<mpz_class>;

/// Square-free decomposition f = c * prod f_i^i (Yun). Returns (f_i, i) for
/// the non-constant factors; factors are primitive with positive leading term.
std::vector<std::pair<IntPoly, int>> square_free_factors(const IntPoly& f);

/// Number of sign changes in the coefficient sequence (zeros skipped).
int sign_variations(const IntPoly& f);

/// f(x + 1).
IntPoly taylor_shift_one(const IntPoly& f);

struct RootInterval {
  mpq_class lo;
  mpq_class hi;
  bool exact = false;  // lo == hi is a root
  int multiplicity = 1;

  [[nodiscard]] double midpoint() const;
};

/// Positive real roots of f, each isolated in an interval no wider than
/// width * max(1, lo). Uses Descartes' rule of signs on dyadic subdivisions of
/// (0, 2^k] with 2^k above the Cauchy bound, so every root is found exactly
/// once. Multiplicities come from the square-free decomposition.
std::vector<RootInterval> positive_real_roots(const IntPoly& f, double width = 1e-14);

}  // namespace eqflow
