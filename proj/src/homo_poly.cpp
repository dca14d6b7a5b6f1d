#include "eqflow/homo_poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace eqflow {

HomoPoly2::HomoPoly2(int degree) : degree_(degree), coeffs_(static_cast<std::size_t>(degree) + 1) {
  if (degree < 0) throw std::invalid_argument("negative degree");
}

HomoPoly2::HomoPoly2(int degree, std::vector<mpz_class> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  if (coeffs_.size() != static_cast<std::size_t>(degree) + 1) {
    throw std::invalid_argument("coefficient count must be degree + 1");
  }
}

HomoPoly2 HomoPoly2::constant(const mpz_class& c) { return HomoPoly2(0, {c}); }

HomoPoly2 HomoPoly2::monomial(int a, int b, const mpz_class& c) {
  HomoPoly2 out(a + b);
  out.coeffs_[static_cast<std::size_t>(b)] = c;
  return out;
}

const mpz_class& HomoPoly2::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a + b != degree_) throw std::out_of_range("monomial not of this degree");
  return coeffs_[static_cast<std::size_t>(b)];
}

bool HomoPoly2::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c == 0; });
}

HomoPoly2& HomoPoly2::operator+=(const HomoPoly2& o) {
  if (o.is_zero()) {
    if (is_zero() && o.degree_ > degree_) *this = HomoPoly2(o.degree_);
    return *this;
  }
  if (is_zero()) return *this = o;
  if (o.degree_ != degree_) throw std::logic_error("adding homogeneous polynomials of different degree");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

HomoPoly2& HomoPoly2::operator-=(const HomoPoly2& o) { return *this += -o; }

HomoPoly2 operator-(const HomoPoly2& a) {
  HomoPoly2 out = a;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

HomoPoly2 operator*(const HomoPoly2& a, const HomoPoly2& b) {
  HomoPoly2 out(a.degree_ + b.degree_);
  if (a.is_zero() || b.is_zero()) return out;
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

HomoPoly2 operator*(const mpz_class& s, const HomoPoly2& a) {
  HomoPoly2 out = a;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

bool operator==(const HomoPoly2& a, const HomoPoly2& b) {
  if (a.is_zero() && b.is_zero()) return true;
  return a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
}

HomoPoly2 HomoPoly2::exact_div(const HomoPoly2& d) const {
  if (d.is_zero()) throw std::domain_error("division by the zero polynomial");
  const int dq = degree_ - d.degree_;
  if (dq < 0) throw std::domain_error("divisor degree exceeds dividend degree");
  HomoPoly2 q(dq);
  if (is_zero()) return q;
  // Work on the dehomogenisation P(1, m): a bijection for fixed degree.
  std::size_t top = d.coeffs_.size();
  while (d.coeffs_[top - 1] == 0) --top;
  const std::size_t tb = top - 1;
  std::vector<mpz_class> r = coeffs_;
  for (std::size_t i = r.size(); i-- > tb;) {
    if (r[i] == 0) continue;
    const std::size_t qi = i - tb;
    if (qi > static_cast<std::size_t>(dq) || !mpz_divisible_p(r[i].get_mpz_t(), d.coeffs_[tb].get_mpz_t())) {
      throw std::domain_error("inexact polynomial division");
    }
    const mpz_class f = r[i] / d.coeffs_[tb];
    q.coeffs_[qi] = f;
    for (std::size_t j = 0; j <= tb; ++j) r[qi + j] -= f * d.coeffs_[j];
  }
  if (!std::all_of(r.begin(), r.end(), [](const mpz_class& c) { return c == 0; })) {
    throw std::domain_error("inexact polynomial division");
  }
  return q;
}

long double HomoPoly2::evaluate(long double x, long double y) const {
  long double acc = 0.0L;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    // mpz -> long double through the decimal string keeps the full 64-bit mantissa
    const long double c = std::stold(coeffs_[k].get_str());
    acc += c * std::pow(x, static_cast<long double>(degree_ - static_cast<int>(k))) *
           std::pow(y, static_cast<long double>(k));
  }
  return acc;
}

mpq_class HomoPoly2::evaluate(const mpq_class& x, const mpq_class& y) const {
  mpq_class acc = 0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    mpq_class term = coeffs_[k];
    for (int i = 0; i < degree_ - static_cast<int>(k); ++i) term *= x;
    for (std::size_t i = 0; i < k; ++i) term *= y;
    acc += term;
  }
  return acc;
}

std::string HomoPoly2::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const mpz_class& c = coeffs_[k];
    if (c == 0) continue;
    const int a = degree_ - static_cast<int>(k);
    const int b = static_cast<int>(k);
    const mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    const bool bare = a == 0 && b == 0;
    if (mag != 1 || bare) {
      os << mag.get_str();
      if (!bare) os << "*";
    }
    bool wrote = false;
    if (a > 0) {
      os << "x";
      if (a > 1) os << "^" << a;
      wrote = true;
    }
    if (b > 0) {
      if (wrote) os << "*";
      os << "y";
      if (b > 1) os << "^" << b;
    }
  }
  if (first) os << "0";
  return os.str();
}

HomoPoly2 bareiss_determinant(std::vector<std::vector<HomoPoly2>> m) {
  const std::size_t n = m.size();
  if (n == 0) return HomoPoly2::constant(1);
  int total = 0;
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("matrix must be square");
    int deg = 0;
    for (const auto& e : row) deg = std::max(deg, e.degree());
    total += deg;
  }
  int sign = 1;
  HomoPoly2 prev = HomoPoly2::constant(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].is_zero()) ++piv;
      if (piv == n) return HomoPoly2(total);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).exact_div(prev);
      }
      m[i][k] = HomoPoly2(m[i][k].degree());
    }
    prev = m[k][k];
  }
  HomoPoly2 det = m[n - 1][n - 1];
  if (det.is_zero()) return HomoPoly2(total);
  return sign > 0 ? det : -det;
}

std::vector<std::vector<HomoPoly2>> sylvester_matrix(const std::vector<HomoPoly2>& f,
                                                     const std::vector<HomoPoly2>& g) {
  if (f.size() < 2 || g.size() < 2) throw std::invalid_argument("polynomials must have degree >= 1");
  const std::size_t df = f.size() - 1;
  const std::size_t dg = g.size() - 1;
  const std::size_t n = df + dg;
  std::vector<std::vector<HomoPoly2>> m;
  auto add_rows = [&](const std::vector<HomoPoly2>& p, std::size_t count) {
    const std::size_t d = p.size() - 1;
    int row_degree = 0;
    for (const auto& c : p) row_degree = std::max(row_degree, c.degree());
    for (std::size_t r = 0; r < count; ++r) {
      std::vector<HomoPoly2> row(n, HomoPoly2(row_degree));
      for (std::size_t i = 0; i <= d; ++i) row[r + i] = p[d - i];
      m.push_back(std::move(row));
    }
  };
  add_rows(f, dg);
  add_rows(g, df);
  return m;
}

}  // namespace eqflow
