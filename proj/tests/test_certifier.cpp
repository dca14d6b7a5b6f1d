#include <doctest.h>

#include <cmath>
#include <random>

#include "eqflow/certifier.hpp"
#include "eqflow/homo_poly.hpp"
#include "eqflow/profile.hpp"
#include "eqflow/real_roots.hpp"
#include "oracles.hpp"

using namespace eqflow;

namespace {

const std::vector<Params> kCertifiedPairs = {{1, 1}, {1, 2}, {2, 3}, {3, 3}, {7, 4}, {9, 9}};

mpz_class Z(const char* s) { return mpz_class(s); }

// Oracle polynomial restricted to t^i, as a HomoPoly2 of the given degree.
HomoPoly2 t_slice(const oracle::Poly3& p, int i, int degree) {
  std::vector<mpz_class> c(degree + 1, 0);
  for (const auto& [k, v] : p) {
    if (k[2] != i) continue;
    REQUIRE(k[0] + k[1] == degree);
    REQUIRE(v.get_den() == 1);
    c[k[1]] = v.get_num();
  }
  return HomoPoly2(degree, c);
}

}  // namespace

TEST_CASE("ABCD forms for (1,1)") {
  const auto f = build_ABCD({1, 1});
  CHECK(f.A == HomoPoly2::monomial(0, 3, 15) + HomoPoly2::monomial(2, 1, -6));
  CHECK(f.D == HomoPoly2::monomial(0, 3, -7) + HomoPoly2::monomial(2, 1, 2));
  CHECK(f.A.to_string() == "-6*x^2*y + 15*y^3");

  // Monomial-by-monomial evaluation at (1, 1) is the coefficient sum.
  auto sum = [](const HomoPoly2& h) {
    mpz_class s = 0;
    for (const auto& c : h.coeffs()) s += c;
    return s;
  };
  CHECK(sum(f.A) == 9);
  CHECK(sum(f.B) == -9);
  CHECK(sum(f.C) == 5);
  CHECK(sum(f.D) == -5);
  CHECK(f.B.evaluate(mpq_class(1), mpq_class(1)) == -9);
}

TEST_CASE("ABCD agree with the independently typed forms") {
  for (int p = 1; p <= 6; ++p) {
    for (int q = 1; q <= 6; ++q) {
      const auto f = build_ABCD({p, q});
      const auto o = oracle::abcd(p, q);
      const std::pair<const HomoPoly2*, const oracle::Poly3*> pairs[] = {
          {&f.A, &o.A}, {&f.B, &o.B}, {&f.C, &o.C}, {&f.D, &o.D}};
      for (const auto& [lib, ref] : pairs) CHECK(*lib == t_slice(*ref, 0, 3));
    }
  }
}

TEST_CASE("cubic coefficients at (1,1)") {
  const auto c = build_cubic({1, 1});
  const mpq_class one(1);
  CHECK(c[3].evaluate(one, one) == -5);
  CHECK(c[2].evaluate(one, one) == -4);
  CHECK(c[1].evaluate(one, one) == 4);
  CHECK(c[0].evaluate(one, one) == 5);
  CHECK(cubic_at_slope(c, mpq_class(1)) == 0);
}

TEST_CASE("the minimal line solves the cubic") {
  // Exact when q/p is a rational square.
  const std::vector<std::pair<Params, mpq_class>> squares = {
      {{1, 1}, mpq_class(1)},    {{1, 4}, mpq_class(2)},    {{4, 1}, mpq_class(1, 2)},
      {{4, 9}, mpq_class(3, 2)}, {{2, 8}, mpq_class(2)},    {{9, 4}, mpq_class(2, 3)},
      {{8, 2}, mpq_class(1, 2)}, {{25, 1}, mpq_class(1, 5)}};
  for (const auto& [params, m] : squares) {
    CHECK(cubic_at_slope(build_cubic(params), m) == 0);
  }
  for (int p = 1; p <= 12; ++p) {
    for (int q = 1; q <= 12; ++q) {
      const double m = std::sqrt(static_cast<double>(q) / p);
      CHECK(line_test(build_cubic({p, q}), m).residual <= 1e-12);
    }
  }
}

TEST_CASE("quintic examples for (1,1)") {
  const auto b = build_quintic({1, 1});
  CHECK(b[5] == HomoPoly2::monomial(2, 2, -6) + HomoPoly2::monomial(0, 4, 21));
  CHECK(b[0] == HomoPoly2::monomial(3, 1, 59) + HomoPoly2::monomial(1, 3, 2));
}

TEST_CASE("quintic transcription matches differentiation of the cubic") {
  std::vector<Params> pairs = kCertifiedPairs;
  pairs.push_back({5, 2});
  pairs.push_back({1, 7});
  pairs.push_back({12, 5});
  for (const auto& params : pairs) {
    CAPTURE(params.p);
    CAPTURE(params.q);
    const auto b = build_quintic(params);
    const auto ref = oracle::quintic_by_differentiation(params.p, params.q);
    for (int i = 0; i <= 5; ++i) {
      CAPTURE(i);
      CHECK(b[i] == t_slice(ref, i, 4));
    }
  }
}

TEST_CASE("Sylvester machinery on tiny inputs") {
  // det Syl(t - a, t - b) = a - b; swapping the arguments gives b - a.
  const auto a = HomoPoly2::monomial(1, 0, 2);
  const auto b = HomoPoly2::monomial(0, 1, 5);
  const auto one = HomoPoly2::constant(1);
  CHECK(bareiss_determinant(sylvester_matrix({-a, one}, {-b, one})) == a - b);
  CHECK(bareiss_determinant(sylvester_matrix({-b, one}, {-a, one})) == b - a);

  // Constant entries against a cofactor expansion.
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<HomoPoly2>> m(4, std::vector<HomoPoly2>(4));
    std::vector<std::vector<mpq_class>> q(4, std::vector<mpq_class>(4));
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const int v = trial % 5 == 0 && j == 0 ? 0 : d(rng);
        m[i][j] = HomoPoly2::constant(v);
        q[i][j] = v;
      }
    }
    CHECK(bareiss_determinant(m) == HomoPoly2::constant(oracle::determinant(q).get_num()));
  }
}

TEST_CASE("resultant has degree 27 and is nonzero") {
  for (const auto& params : kCertifiedPairs) {
    const auto r = sylvester_resultant(build_cubic(params), build_quintic(params));
    CHECK(r.degree() == 27);
    CHECK_FALSE(r.is_zero());
  }
}

// Determinants of the symbolic Sylvester matrix, computed once with sympy
// (Matrix.det, not sympy.resultant, which uses the opposite sign here).
TEST_CASE("resultant values frozen from a computer algebra run") {
  const auto r11 = sylvester_resultant(build_cubic({1, 1}), build_quintic({1, 1}));
  CHECK(r11.evaluate(mpq_class(1), mpq_class(1)) == 0);
  CHECK(r11.evaluate(mpq_class(1), mpq_class(2)) == Z("7590705630183936"));
  CHECK(r11.evaluate(mpq_class(2), mpq_class(1)) == Z("145975108272768"));

  const auto r23 = sylvester_resultant(build_cubic({2, 3}), build_quintic({2, 3}));
  CHECK(r23.evaluate(mpq_class(1), mpq_class(1)) == Z("32218256589520896"));
  CHECK(r23.evaluate(mpq_class(1), mpq_class(2)) == Z("-4491301449578273832960"));
  CHECK(r23.evaluate(mpq_class(2), mpq_class(1)) == Z("3322317697431852810240"));
}

TEST_CASE("resultant agrees with rational elimination at rational points") {
  const std::vector<std::pair<mpq_class, mpq_class>> points = {
      {1, 3}, {mpq_class(2, 3), mpq_class(5, 7)}, {7, mpq_class(1, 2)}, {mpq_class(-3, 4), 2}};
  for (const auto& params : {Params{1, 1}, Params{2, 3}, Params{7, 4}}) {
    const auto r = sylvester_resultant(build_cubic(params), build_quintic(params));
    const auto P = oracle::cubic(params.p, params.q);
    const auto Q = oracle::quintic_by_differentiation(params.p, params.q);
    for (const auto& [x, y] : points) {
      const auto m = oracle::sylvester(oracle::t_coeffs_at(P, 3, x, y), oracle::t_coeffs_at(Q, 5, x, y));
      CHECK(r.evaluate(x, y) == oracle::determinant(m));
    }
  }
}

TEST_CASE("resultant homogeneity") {
  const auto r = sylvester_resultant(build_cubic({1, 1}), build_quintic({1, 1}));
  CHECK(r.evaluate(mpq_class(2), mpq_class(6)) == (mpz_class(1) << 27) * r.evaluate(mpq_class(1), mpq_class(3)));
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (const auto& params : {Params{1, 1}, Params{3, 3}, Params{9, 9}}) {
    const auto res = sylvester_resultant(build_cubic(params), build_quintic(params));
    for (int i = 0; i < 10; ++i) {
      const long double x = u(rng);
      const long double y = u(rng);
      const long double lhs = res.evaluate(2 * x, 2 * y);
      const long double rhs = std::ldexp(res.evaluate(x, y), 27);
      CHECK(std::fabs(lhs - rhs) <= 1e-10L * std::fabs(rhs));
    }
  }
}

TEST_CASE("degenerate leading forms are reported") {
  CubicForms c{HomoPoly2(3), HomoPoly2(3), HomoPoly2(3), HomoPoly2(3)};
  QuinticForms q;
  for (auto& b : q) b = HomoPoly2(4);
  CHECK_THROWS_AS(sylvester_resultant(c, q), DegenerateResultant);
}

TEST_CASE("real root isolation") {
  // (m - 1)^2 (m - 2)(m + 3)
  const IntPoly f{-6, 13, -7, -1, 1};
  CHECK(sign_variations(f) == 3);
  CHECK(taylor_shift_one(IntPoly{0, 0, 1}) == IntPoly{1, 2, 1});
  const auto roots = positive_real_roots(f);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].midpoint() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(roots[0].multiplicity == 2);
  CHECK(roots[1].midpoint() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(roots[1].multiplicity == 1);

  CHECK(positive_real_roots(IntPoly{1, 0, 1}).empty());
  CHECK(positive_real_roots(IntPoly{2, 3, 1}).empty());  // roots -1, -2

  // m^2 - 2: irrational root refined to the requested width.
  const auto s2 = positive_real_roots(IntPoly{-2, 0, 1}, 1e-14);
  REQUIRE(s2.size() == 1);
  CHECK(std::abs(s2[0].midpoint() - std::sqrt(2.0)) <= 2e-14);
  CHECK(mpq_class(s2[0].hi - s2[0].lo).get_d() <= 1e-14 * 1.5);

  const auto sq = square_free_factors(f);
  int total = 0;
  for (const auto& [fac, mult] : sq) total += static_cast<int>(fac.size() - 1) * mult;
  CHECK(total == 4);
}

TEST_CASE("candidate slopes frozen from a computer algebra run") {
  const auto c11 = candidate_lines({1, 1});
  const std::vector<double> r11 = {0.53452248382484877, 0.73812930309330906, 1.0,
                                   1.3547761832639059};
  REQUIRE(c11.size() == r11.size());
  for (std::size_t i = 0; i < r11.size(); ++i) {
    CHECK(std::abs(c11[i].m - r11[i]) <= 1e-13 * r11[i]);
    CHECK(c11[i].satisfies_line_test == (i == 2));
  }
  const auto c23 = candidate_lines({2, 3});
  const std::vector<double> r23 = {1.2247448713915890, 3.6856294980180077};
  REQUIRE(c23.size() == r23.size());
  for (std::size_t i = 0; i < r23.size(); ++i) {
    CHECK(std::abs(c23[i].m - r23[i]) <= 1e-13 * r23[i]);
  }
  CHECK(c23[0].satisfies_line_test);
  CHECK_FALSE(c23[1].satisfies_line_test);
}

TEST_CASE("line filter soundness") {
  for (const auto& params : {Params{1, 1}, Params{1, 2}, Params{2, 3}, Params{3, 3}, Params{7, 4},
                             Params{2, 1}, Params{5, 3}}) {
    const double target = std::sqrt(static_cast<double>(params.q) / params.p);
    int passing = 0;
    for (const auto& c : candidate_lines(params)) {
      CHECK(c.m > 0);
      if (c.satisfies_line_test) {
        ++passing;
        CHECK(std::abs(c.m - target) <= 1e-10);
      }
    }
    CHECK(passing == 1);
  }
}

TEST_CASE("certificate for the theorem pairs") {
  for (const auto& params : kCertifiedPairs) {
    const auto rep = certify_minimality(params);
    CHECK(rep.conclusion == Conclusion::BiharmonicImpliesMinimal);
    CHECK(rep.resultant_degree == 27);
    CHECK(rep.resultant_nonzero);
    CHECK(rep.minimal_line_found);
  }
}

TEST_CASE("certifier parameter range") {
  CHECK_THROWS_AS(certify_minimality({0, 1}), ValidationError);
  CHECK_THROWS_AS(certify_minimality({1, 51}), ValidationError);
  CHECK_THROWS_AS(build_ABCD({-2, 3}), ValidationError);
  CHECK_NOTHROW(build_quintic({50, 50}));
}

TEST_CASE("reduced second-order equation") {
  CHECK(reduced_second_order({1, 1}, 1, 1, 0) == doctest::Approx(1.0 / 3.0));
  for (const auto& params : kCertifiedPairs) {
    const double m = std::sqrt(static_cast<double>(params.q) / params.p);
    CHECK(std::abs(reduced_second_order(params, 2.0, 2.0 * m, m)) <= 1e-15);
  }
  CHECK_THROWS_AS(reduced_second_order({1, 1}, 0, 1, 0), DomainError);
  CHECK_THROWS_AS(reduced_second_order({1, 1}, 1, -1, 0), DomainError);
}

TEST_CASE("graph equation reproduces an orbit arc") {
  // Arc of a (1,1) solution on which the tangent stays away from vertical.
  const Params params{1, 1};
  OrbitOptions opt;
  opt.max_arclen = 0.8;
  opt.tolerances = {1e-12, 1e-14};
  const auto traj = integrate_orbit({1.0, 1.5, 0.2, 0.0}, params, opt);
  const auto& a = traj.samples.front();
  const auto& b = traj.samples.back();
  REQUIRE(std::abs(b.alpha) < 1.2);

  // Integrate (y, y') in x with a test-side RK4 and x as the independent variable.
  const double x0 = a.x;
  const double x1 = b.x;
  const int steps = 4000;
  const double h = (x1 - x0) / steps;
  double x = x0;
  oracle::Vec<2> st{a.y, std::tan(a.alpha)};
  auto f = [&](double xx, const oracle::Vec<2>& v) {
    return oracle::Vec<2>{v[1], reduced_second_order(params, xx, v[0], v[1])};
  };
  for (int k = 0; k < steps; ++k) {
    const auto k1 = f(x, st);
    const auto k2 = f(x + h / 2, {st[0] + h / 2 * k1[0], st[1] + h / 2 * k1[1]});
    const auto k3 = f(x + h / 2, {st[0] + h / 2 * k2[0], st[1] + h / 2 * k2[1]});
    const auto k4 = f(x + h, {st[0] + h * k3[0], st[1] + h * k3[1]});
    for (int i = 0; i < 2; ++i) st[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    x += h;
  }
  CHECK(std::abs(st[0] - b.y) <= 1e-6);
  CHECK(std::abs(st[1] - std::tan(b.alpha)) <= 1e-6);
}
