#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "eqflow/homo_poly.hpp"
#include "eqflow/params.hpp"

namespace eqflow {

/// The four cubic forms A, B, C, D of the biharmonic profile condition.
struct AbcdForms {
  HomoPoly2 A, B, C, D;
};

/// Coefficients of the cubic in t = dy/dx, index i multiplying t^i.
using CubicForms = std::array<HomoPoly2, 4>;
/// Coefficients of the quintic in t, index i multiplying t^i.
using QuinticForms = std::array<HomoPoly2, 6>;

/// Throws ValidationError unless 1 <= p, q <= 50.
void validate_certifier_params(const Params& params);

AbcdForms build_ABCD(const Params& params);

/// (A0, A1, A2, A3) = (C, A + D, B + C, D).
CubicForms build_cubic(const Params& params);

QuinticForms build_quintic(const Params& params);

/// Resultant in t of the cubic and the quintic: an 8 x 8 Sylvester
/// determinant with homogeneous entries, evaluated by Bareiss elimination.
/// Throws DegenerateResultant when both leading forms vanish.
HomoPoly2 sylvester_resultant(const CubicForms& cubic, const QuinticForms& quintic);

/// d^2y/dx^2 of a biconservative graph y(x): (1/3)(1 + t^2)(q/y - (p/x) t).
double reduced_second_order(const Params& params, double x, double y, double slope);

/// sum_i A_i(1, m) m^i in exact arithmetic.
mpq_class cubic_at_slope(const CubicForms& cubic, const mpq_class& m);

struct LineTest {
  double residual = 0.0;  // |P(m)| / sum_i |A_i(1, m) m^i|
  bool passes = false;
};

/// Scale-free test of the line y = m x against the cubic, threshold 1e-10.
LineTest line_test(const CubicForms& cubic, double m, double tol = 1e-10);

struct CandidateSlope {
  double m = 0.0;
  int multiplicity = 1;
  bool satisfies_line_test = false;
  double residual = 0.0;
};

/// Positive real roots of R(1, m), isolated rigorously and refined to 1e-14.
std::vector<CandidateSlope> candidate_lines(const Params& params);

enum class Conclusion { BiharmonicImpliesMinimal, Inconclusive };

std::string_view to_string(Conclusion c);

struct CertificateReport {
  Params params;
  int resultant_degree = 0;
  bool resultant_nonzero = false;
  std::vector<CandidateSlope> candidate_slopes;
  bool minimal_line_found = false;
  Conclusion conclusion = Conclusion::Inconclusive;
  std::string diagnostics;
};

CertificateReport certify_minimality(const Params& params);

}  // namespace eqflow
