#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "apolar/errors.hpp"
#include "apolar/exact_matrix.hpp"
#include "apolar/rational.hpp"

namespace apolar {

/// Exponent vector x_0^{e_0} ... x_{n-1}^{e_{n-1}}.
struct Monomial {
  std::vector<unsigned> exps;

  Monomial() = default;
  explicit Monomial(std::vector<unsigned> e) : exps(std::move(e)) {}

  static Monomial zero(std::size_t nvars) { return Monomial(std::vector<unsigned>(nvars, 0)); }
  static Monomial variable(std::size_t nvars, std::size_t i, unsigned power = 1) {
    Monomial m = zero(nvars);
    m.exps.at(i) = power;
    return m;
  }

  std::size_t nvars() const noexcept { return exps.size(); }
  unsigned degree() const noexcept { return std::accumulate(exps.begin(), exps.end(), 0u); }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > o.exps[i]) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial m = *this;
    for (std::size_t i = 0; i < exps.size(); ++i) m.exps[i] += o.exps[i];
    return m;
  }

  /// Multi-index factorial a! = prod a_i!.
  Integer factorial() const {
    Integer r = 1;
    for (auto e : exps) r *= apolar::factorial(e);
    return r;
  }

  bool operator==(const Monomial&) const = default;
};

/// Graded lexicographic order, largest first: x0^3 precedes x0^2 x1 precedes ... x1^3.
struct GrlexFirst {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const unsigned da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    return std::lexicographical_compare(b.exps.begin(), b.exps.end(), a.exps.begin(), a.exps.end());
  }
};

/// All monomials of degree d in nvars variables, in graded lexicographic order.
inline std::vector<Monomial> monomial_basis(std::size_t nvars, unsigned d) {
  if (nvars == 0) throw InputError("monomial basis needs at least one variable");
  std::vector<Monomial> out;
  std::vector<unsigned> e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

/// Position of each monomial inside a basis.
class MonomialIndex {
 public:
  explicit MonomialIndex(std::vector<Monomial> basis) : basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  }
  MonomialIndex(std::size_t nvars, unsigned d) : MonomialIndex(monomial_basis(nvars, d)) {}

  std::size_t size() const noexcept { return basis_.size(); }
  const std::vector<Monomial>& basis() const noexcept { return basis_; }
  const Monomial& operator[](std::size_t i) const { return basis_[i]; }
  std::size_t at(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) throw InputError("monomial outside the basis");
    return it->second;
  }

 private:
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t, GrlexFirst> index_;
};

/// Homogeneous form with exact rational coefficients.
///
/// The same type represents forms f in S = Q[x_0..x_n] and dual forms D in
/// T = Q[d_0..d_n]; which role a value plays is decided by the operation
/// (contract(D, f) reads its first argument as a differential operator).
/// The zero form keeps its degree tag.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexFirst>;

  Polynomial() = default;
  Polynomial(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree) {
    if (nvars == 0) throw InputError("polynomial needs at least one variable");
  }

  static Polynomial monomial(const Monomial& m, const Rational& c = 1) {
    Polynomial p(m.nvars(), m.degree());
    p.add_term(m, c);
    return p;
  }

  static Polynomial constant(std::size_t nvars, const Rational& c) {
    return monomial(Monomial::zero(nvars), c);
  }

  static Polynomial variable(std::size_t nvars, std::size_t i) {
    return monomial(Monomial::variable(nvars, i));
  }

  static Polynomial linear(std::span<const Rational> coefs) {
    Polynomial p(coefs.size(), 1);
    for (std::size_t i = 0; i < coefs.size(); ++i)
      p.add_term(Monomial::variable(coefs.size(), i), coefs[i]);
    return p;
  }

  /// Inverse of coefficients(): builds the form from a coordinate vector over a basis.
  static Polynomial from_coefficients(const MonomialIndex& basis, std::span<const Rational> c) {
    if (c.size() != basis.size()) throw InputError("coefficient vector does not match basis");
    if (basis.size() == 0) throw InputError("empty basis");
    Polynomial p(basis[0].nvars(), basis[0].degree());
    for (std::size_t i = 0; i < c.size(); ++i) p.add_term(basis[i], c[i]);
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  unsigned degree() const noexcept { return degree_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (m.nvars() != nvars_) throw InputError("monomial has the wrong number of variables");
    if (m.degree() != degree_) throw InputError("polynomial must stay homogeneous");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  RationalVector coefficients(const MonomialIndex& basis) const {
    RationalVector v(basis.size());
    for (const auto& [m, c] : terms_) v[basis.at(m)] = c;
    return v;
  }

  /// Leading coefficient in graded lexicographic order (0 for the zero form).
  Rational leading_coefficient() const { return terms_.empty() ? Rational(0) : terms_.begin()->second; }

  /// Scales so that the first nonzero coefficient is 1.
  Polynomial normalized() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / leading_coefficient());
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars_) throw InputError("evaluation point has wrong dimension");
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < m.exps[i]; ++k) t *= point[i];
      sum += t;
    }
    return sum;
  }

  Polynomial operator+(const Polynomial& o) const {
    check_same_space(o);
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Rational& s) const {
    Polynomial r(nvars_, degree_);
    if (s == 0) return r;
    r.terms_ = terms_;
    for (auto& [m, c] : r.terms_) c *= s;
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw InputError("variable-count mismatch in product");
    Polynomial r(nvars_, degree_ + o.degree_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }

  bool operator==(const Polynomial& o) const {
    return nvars_ == o.nvars_ && degree_ == o.degree_ && terms_ == o.terms_;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += c > 0 ? " + " : " - ";
      else if (c < 0) s += "-";
      std::string factors;
      for (std::size_t i = 0; i < m.nvars(); ++i) {
        if (m.exps[i] == 0) continue;
        if (!factors.empty()) factors += "*";
        factors += "x" + std::to_string(i);
        if (m.exps[i] > 1) factors += "^" + std::to_string(m.exps[i]);
      }
      const Rational a = abs(c);
      if (factors.empty()) s += apolar::to_string(a);
      else if (a == 1) s += factors;
      else s += apolar::to_string(a) + "*" + factors;
    }
    return s;
  }

 private:
  void check_same_space(const Polynomial& o) const {
    if (nvars_ != o.nvars_) throw InputError("variable-count mismatch");
    if (degree_ != o.degree_) throw InputError("degree mismatch in sum");
  }

  std::size_t nvars_ = 1;
  unsigned degree_ = 0;
  Terms terms_;
};

inline Polynomial operator*(const Rational& s, const Polynomial& p) { return p * s; }

/// Apolarity action D . f: d^a . x^b = a! binom(b, a) x^(b-a) for b >= a, else 0.
inline Polynomial contract(const Polynomial& dual, const Polynomial& f) {
  if (dual.nvars() != f.nvars()) throw InputError("contract: variable-count mismatch");
  if (dual.degree() > f.degree()) return Polynomial(f.nvars(), 0);
  Polynomial out(f.nvars(), f.degree() - dual.degree());
  for (const auto& [a, ca] : dual.terms()) {
    for (const auto& [b, cb] : f.terms()) {
      if (!a.divides(b)) continue;
      Integer coef = 1;
      Monomial rest = b;
      for (std::size_t i = 0; i < b.nvars(); ++i) {
        for (unsigned k = 0; k < a.exps[i]; ++k) coef *= b.exps[i] - k;
        rest.exps[i] -= a.exps[i];
      }
      out.add_term(rest, ca * cb * Rational(coef));
    }
  }
  return out;
}

/// Perfect pairing S_d x T_d -> Q.
inline Rational pair(const Polynomial& f, const Polynomial& dual) {
  if (f.nvars() != dual.nvars()) throw InputError("pair: variable-count mismatch");
  if (f.degree() != dual.degree()) throw InputError("pair: degree mismatch");
  return contract(dual, f).coefficient(Monomial::zero(f.nvars()));
}

/// Substitutes x_i -> sum_j M(i, j) y_j; the result lives in M.cols() variables.
inline Polynomial substitute_linear(const Polynomial& f, const ExactMatrix& m) {
  if (m.rows() != f.nvars()) throw InputError("substitution matrix has wrong row count");
  const std::size_t out_vars = m.cols();
  std::vector<std::vector<Polynomial>> powers(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) {
    powers[i].push_back(Polynomial::constant(out_vars, 1));
    powers[i].push_back(Polynomial::linear(m.row(i)));
  }
  auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
    while (powers[i].size() <= e) powers[i].push_back(powers[i].back() * powers[i][1]);
    return powers[i][e];
  };
  Polynomial out(out_vars, f.degree());
  for (const auto& [mono, c] : f.terms()) {
    Polynomial t = Polynomial::constant(out_vars, c);
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (mono.exps[i] > 0) t = t * power(i, mono.exps[i]);
    for (const auto& [mm, cc] : t.terms()) out.add_term(mm, cc);
  }
  return out;
}

/// f(M x) for an invertible M; change(change(f, M), M') = change(f, M M').
inline Polynomial change_coordinates(const Polynomial& f, const ExactMatrix& m) {
  if (m.rows() != m.cols() || m.rows() != f.nvars())
    throw InputError("coordinate change must be a square matrix on the form's variables");
  if (m.rank() != m.rows()) throw InputError("coordinate change matrix is singular");
  return substitute_linear(f, m);
}

}  // namespace apolar
