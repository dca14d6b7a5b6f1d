#include "eqflow/certifier.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "eqflow/real_roots.hpp"

namespace eqflow {

namespace {

// c x^a y^b
HomoPoly2 term(int a, int b, long c) { return HomoPoly2::monomial(a, b, mpz_class(c)); }

std::vector<CandidateSlope> slopes_of(const HomoPoly2& res, const CubicForms& cubic) {
  std::vector<CandidateSlope> out;
  if (res.is_zero()) return out;
  for (const auto& root : positive_real_roots(res.dehomogenize(), 1e-14)) {
    CandidateSlope c;
    c.m = root.midpoint();
    c.multiplicity = root.multiplicity;
    const auto t = line_test(cubic, c.m);
    c.residual = t.residual;
    c.satisfies_line_test = t.passes;
    out.push_back(c);
  }
  return out;
}

}  // namespace

void validate_certifier_params(const Params& params) {
  if (params.p < 1 || params.p > 50 || params.q < 1 || params.q > 50) {
    throw ValidationError("certifier needs integers 1 <= p, q <= 50 (got p = " +
                          std::to_string(params.p) + ", q = " + std::to_string(params.q) + ")");
  }
}

AbcdForms build_ABCD(const Params& params) {
  validate_certifier_params(params);
  const long p = params.p;
  const long q = params.q;
  AbcdForms f;
  f.A = term(0, 3, 3 * p * (3 + 2 * p)) + term(2, 1, -6 * p * q);
  f.B = term(3, 0, -3 * q * (3 + 2 * q)) + term(1, 2, 6 * p * q);
  f.C = term(3, 0, q * q * (6 + q)) + term(1, 2, p * q * (p - 3));
  f.D = term(0, 3, -p * p * (p + 6)) + term(2, 1, -p * q * (q - 3));
  return f;
}

CubicForms build_cubic(const Params& params) {
  const auto f = build_ABCD(params);
  return {f.C, f.A + f.D, f.B + f.C, f.D};
}

QuinticForms build_quintic(const Params& params) {
  validate_certifier_params(params);
  const long p = params.p;
  const long q = params.q;
  QuinticForms b;
  b[5] = term(2, 2, 3 * p * p * q * (q - 3)) + term(0, 4, 3 * p * p * p * (p + 6));
  b[4] = term(3, 1, -p * q * (5 * q * q - 6 * q - 27)) +
         term(1, 3, -p * p * (5 * p * q + 9 * p + 24 * q + 54));
  b[3] = term(4, 0, 2 * q * q * (q * q - 9)) + term(2, 2, 6 * p * q * (p * q + 6)) +
         term(0, 4, p * p * (4 * p * p + 18 * p - 9));
  b[2] = term(3, 1, 3 * q * (p * (-2 * q * q + q + 3) + 3 * (q * q - 9))) +
         term(1, 3, 3 * p * (-p * p * (2 * q + 3) - 7 * p * q + 6 * q + 27));
  b[1] = term(4, 0, 2 * q * q * (q * q - 9)) + term(2, 2, 3 * p * q * (p * (q + 3) - 12)) +
         term(0, 4, p * p * (p * p - 9));
  b[0] = term(3, 1, -q * q * (p * (q + 3) - 9 * (q + 6))) + term(1, 3, -p * p * q * (p - 3));
  return b;
}

HomoPoly2 sylvester_resultant(const CubicForms& cubic, const QuinticForms& quintic) {
  if (cubic[3].is_zero() && quintic[5].is_zero()) {
    throw DegenerateResultant("both leading forms vanish identically");
  }
  const std::vector<HomoPoly2> f(cubic.begin(), cubic.end());
  const std::vector<HomoPoly2> g(quintic.begin(), quintic.end());
  return bareiss_determinant(sylvester_matrix(f, g));
}

double reduced_second_order(const Params& params, double x, double y, double slope) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("reduced_second_order needs x > 0 and y > 0");
  return (1.0 + slope * slope) * (params.q / y - params.p / x * slope) / 3.0;
}

mpq_class cubic_at_slope(const CubicForms& cubic, const mpq_class& m) {
  mpq_class acc = 0;
  mpq_class mp = 1;
  for (const auto& a : cubic) {
    acc += a.evaluate(mpq_class(1), m) * mp;
    mp *= m;
  }
  return acc;
}

LineTest line_test(const CubicForms& cubic, double m, double tol) {
  long double sum = 0.0L;
  long double scale = 0.0L;
  const long double lm = m;
  for (std::size_t i = 0; i < cubic.size(); ++i) {
    const auto& c = cubic[i].coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      const long double t = std::stold(c[k].get_str()) * std::pow(lm, static_cast<long double>(k + i));
      sum += t;
      scale += std::fabs(t);
    }
  }
  LineTest out;
  out.residual = scale > 0 ? static_cast<double>(std::fabs(sum) / scale) : 0.0;
  out.passes = out.residual <= tol;
  return out;
}

std::vector<CandidateSlope> candidate_lines(const Params& params) {
  const auto cubic = build_cubic(params);
  return slopes_of(sylvester_resultant(cubic, build_quintic(params)), cubic);
}

std::string_view to_string(Conclusion c) {
  return c == Conclusion::BiharmonicImpliesMinimal ? "BiharmonicImpliesMinimal" : "Inconclusive";
}

CertificateReport certify_minimality(const Params& params) {
  validate_certifier_params(params);
  CertificateReport rep;
  rep.params = params;
  const auto cubic = build_cubic(params);
  const auto res = sylvester_resultant(cubic, build_quintic(params));
  rep.resultant_degree = res.degree();
  rep.resultant_nonzero = !res.is_zero();
  const double target = std::sqrt(static_cast<double>(params.q) / params.p);

  std::ostringstream diag;
  bool stray = false;
  if (rep.resultant_nonzero) {
    for (const auto& c : slopes_of(res, cubic)) {
      if (c.satisfies_line_test) {
        if (std::abs(c.m - target) <= 1e-10) {
          rep.minimal_line_found = true;
        } else {
          stray = true;
          diag << "slope " << c.m << " passes the line test; ";
        }
      }
      rep.candidate_slopes.push_back(c);
    }
  } else {
    diag << "resultant vanishes identically; ";
  }
  if (!rep.minimal_line_found) diag << "line y = sqrt(q/p) x not among the roots; ";
  rep.conclusion = rep.resultant_nonzero && !stray ? Conclusion::BiharmonicImpliesMinimal
                                                   : Conclusion::Inconclusive;
  rep.diagnostics = diag.str();
  return rep;
}

}  // namespace eqflow
