#include "eqflow/real_roots.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace eqflow {

namespace {

using RatPoly = std::vector<mpq_class>;

void trim(RatPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const RatPoly& f) { return static_cast<int>(f.size()) - 1; }

RatPoly derivative(const RatPoly& f) {
  RatPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<long>(i));
  trim(d);
  return d;
}

RatPoly subtract(RatPoly a, const RatPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// a = q b + r
std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  trim(a);
  RatPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const mpq_class f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

RatPoly monic(RatPoly f) {
  trim(f);
  if (f.empty()) return f;
  const mpq_class lead = f.back();
  for (auto& c : f) c /= lead;
  return f;
}

RatPoly gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly r = divmod(a, b).second;
    a = std::move(b);
    b = monic(std::move(r));
  }
  return monic(a);
}

IntPoly primitive(const RatPoly& f) {
  mpz_class den = 1;
  for (const auto& c : f) den = ::lcm(den, c.get_den());
  IntPoly out;
  for (const auto& c : f) out.push_back(mpz_class(c * den));
  mpz_class g = 0;
  for (const auto& c : out) g = ::gcd(g, c);
  if (g != 0) {
    if (out.back() < 0) g = -g;
    for (auto& c : out) c /= g;
  }
  return out;
}

void remove_content(IntPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f) g = ::gcd(g, c);
  if (g > 1) {
    for (auto& c : f) c /= g;
  }
}

// Descartes bound on the number of roots in (0, 1).
int roots_in_unit_interval(const IntPoly& g) {
  IntPoly r(g.rbegin(), g.rend());
  return sign_variations(taylor_shift_one(r));
}

void isolate(IntPoly f, int multiplicity, double width, std::vector<RootInterval>& out) {
  trim(f);
  // drop roots at 0
  std::size_t zeros = 0;
  while (zeros < f.size() && f[zeros] == 0) ++zeros;
  f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(zeros));
  if (f.size() < 2) return;

  // 2^k above the Cauchy bound 1 + max |a_i / a_n|
  std::size_t max_bits = 0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    max_bits = std::max(max_bits, mpz_sizeinbase(f[i].get_mpz_t(), 2));
  }
  const std::size_t lead_bits = mpz_sizeinbase(f.back().get_mpz_t(), 2);
  const long k = std::max<long>(0, static_cast<long>(max_bits) - static_cast<long>(lead_bits) + 2);

  IntPoly g = f;
  for (std::size_t j = 0; j < g.size(); ++j) {
    mpz_mul_2exp(g[j].get_mpz_t(), g[j].get_mpz_t(), static_cast<mp_bitcnt_t>(k * static_cast<long>(j)));
  }
  mpq_class hi_bound;
  mpz_class two_k;
  mpz_ui_pow_ui(two_k.get_mpz_t(), 2, static_cast<unsigned long>(k));
  hi_bound = two_k;

  struct Node {
    IntPoly g;
    mpq_class lo, hi;
  };
  std::vector<Node> stack;
  stack.push_back({g, mpq_class(0), hi_bound});
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    const int v = roots_in_unit_interval(node.g);
    if (v == 0) continue;
    const mpq_class span = node.hi - node.lo;
    const double limit = width * std::max(1.0, node.lo.get_d());
    if (v == 1 && span.get_d() <= limit) {
      out.push_back({node.lo, node.hi, false, multiplicity});
      continue;
    }
    const std::size_t n = node.g.size() - 1;
    IntPoly left = node.g;
    for (std::size_t j = 0; j <= n; ++j) {
      mpz_mul_2exp(left[j].get_mpz_t(), left[j].get_mpz_t(), static_cast<mp_bitcnt_t>(n - j));
    }
    IntPoly right = taylor_shift_one(left);
    mpq_class mid = (node.lo + node.hi) / 2;
    mid.canonicalize();
    if (right[0] == 0) {
      out.push_back({mid, mid, true, multiplicity});
      right.erase(right.begin());
    }
    remove_content(left);
    remove_content(right);
    stack.push_back({std::move(right), mid, node.hi});
    stack.push_back({std::move(left), node.lo, mid});
  }
}

}  // namespace

int sign_variations(const IntPoly& f) {
  int count = 0;
  int last = 0;
  for (const auto& c : f) {
    const int s = sgn(c);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

IntPoly taylor_shift_one(const IntPoly& f) {
  IntPoly a = f;
  const std::size_t n = a.empty() ? 0 : a.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = n; j-- > i;) a[j] += a[j + 1];
  }
  return a;
}

double RootInterval::midpoint() const {
  mpq_class m = (lo + hi) / 2;
  m.canonicalize();
  return m.get_d();
}

std::vector<std::pair<IntPoly, int>> square_free_factors(const IntPoly& f_in) {
  RatPoly f(f_in.begin(), f_in.end());
  trim(f);
  std::vector<std::pair<IntPoly, int>> out;
  if (degree(f) < 1) return out;
  const RatPoly df = derivative(f);
  const RatPoly b = gcd(f, df);
  RatPoly c = divmod(f, b).first;
  RatPoly d = subtract(divmod(df, b).first, derivative(c));
  int i = 1;
  while (degree(c) > 0) {
    const RatPoly a = gcd(c, d);
    if (degree(a) > 0) out.emplace_back(primitive(a), i);
    c = divmod(c, a).first;
    d = subtract(divmod(d, a).first, derivative(c));
    ++i;
  }
  return out;
}

std::vector<RootInterval> positive_real_roots(const IntPoly& f, double width) {
  std::vector<RootInterval> out;
  for (const auto& [factor, mult] : square_free_factors(f)) isolate(factor, mult, width, out);
  std::sort(out.begin(), out.end(),
            [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

}  // namespace eqflow
