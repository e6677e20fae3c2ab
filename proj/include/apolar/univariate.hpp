#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "apolar/errors.hpp"
#include "apolar/rational.hpp"

namespace apolar {

/// Dense univariate polynomial over Q, coefficients stored from the constant term up.
/// The zero polynomial has no coefficients and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c_.emplace_back(v);
    trim();
  }

  static UniPoly constant(const Rational& a) { return UniPoly(std::vector<Rational>{a}); }
  /// The monomial a * u^k.
  static UniPoly term(const Rational& a, std::size_t k) {
    std::vector<Rational> c(k + 1);
    c[k] = a;
    return UniPoly(std::move(c));
  }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / leading());
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return UniPoly(std::move(d));
  }

  Rational evaluate(const Rational& x) const {
    Rational r = 0;
    for (std::size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
    return r;
  }

  UniPoly operator+(const UniPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < c_.size(); ++k) r[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) r[k] += o.c_[k];
    return UniPoly(std::move(r));
  }
  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  UniPoly operator-(const UniPoly& o) const { return *this + (-o); }
  UniPoly operator*(const Rational& s) const {
    if (s == 0) return {};
    UniPoly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  UniPoly operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    }
    return UniPoly(std::move(r));
  }
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw InputError("polynomial division by zero");
    std::vector<Rational> rem = c_;
    const int dd = d.degree();
    if (degree() < dd) return {UniPoly{}, *this};
    std::vector<Rational> q(degree() - dd + 1);
    const Rational lead = d.leading();
    for (int k = degree(); k >= dd; --k) {
      const Rational f = rem[k] / lead;
      q[k - dd] = f;
      if (f == 0) continue;
      for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= f * d.c_[j];
    }
    rem.resize(dd);
    return {UniPoly(std::move(q)), UniPoly(std::move(rem))};
  }

  UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k] == 0) continue;
      if (!s.empty()) s += " + ";
      s += "(" + apolar::to_string(c_[k]) + ")";
      if (k > 0) s += "*u^" + std::to_string(k);
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Monic greatest common divisor.
inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline bool is_squarefree(const UniPoly& p) {
  if (p.degree() <= 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

/// Inverse of a modulo m, or an empty polynomial when gcd(a, m) is nontrivial.
inline UniPoly inverse_mod(const UniPoly& a, const UniPoly& m) {
  UniPoly r0 = m, r1 = a % m;
  UniPoly s0, s1 = UniPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    UniPoly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) return {};
  return (s0 * (Rational(1) / r0.leading())) % m;
}

/// The polynomial of degree < xs.size() through the points (xs[i], ys[i]);
/// abscissae must be distinct.
inline UniPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size()) throw InputError("interpolation: size mismatch");
  // Newton divided differences.
  std::vector<Rational> c = ys;
  for (std::size_t j = 1; j < xs.size(); ++j)
    for (std::size_t i = xs.size() - 1; i >= j; --i) {
      c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  UniPoly r;
  for (std::size_t i = xs.size(); i-- > 0;) r = r * UniPoly{0, 1} - r * UniPoly::constant(xs[i]) + UniPoly::constant(c[i]);
  return r;
}

/// Binary form of degree d with coefficients listed by descending power of s:
/// c_0 s^d + c_1 s^(d-1) t + ... + c_d t^d.
struct BinaryForm {
  unsigned degree = 0;
  std::vector<Rational> coeffs;  // size degree + 1

  static BinaryForm zero(unsigned d) { return BinaryForm{d, std::vector<Rational>(d + 1)}; }

  /// Dehomogenization at s = 1, as a polynomial in t.
  UniPoly affine() const {
    return UniPoly(std::vector<Rational>(coeffs.begin(), coeffs.end()));
  }

  bool operator==(const BinaryForm&) const = default;
};

}  // namespace apolar
