#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "apolar/errors.hpp"
#include "apolar/polynomial.hpp"
#include "apolar/rational.hpp"

namespace apolar {

/// Rational normal scroll S(a_1, ..., a_k) in P^N, N = sum a_i + k - 1.
class Scroll {
 public:
  explicit Scroll(std::vector<int> type) : type_(std::move(type)) {
    if (type_.empty()) throw InputError("scroll type must be nonempty");
    for (int a : type_)
      if (a < 0) throw InputError("scroll type entries must be non-negative");
    if (degree() < 1) throw InputError("scroll type must not be all zero");
  }

  const std::vector<int>& type() const noexcept { return type_; }
  int k() const noexcept { return static_cast<int>(type_.size()); }
  int degree() const { return std::accumulate(type_.begin(), type_.end(), 0); }
  int N() const { return degree() + k() - 1; }
  int min_entry() const { return *std::min_element(type_.begin(), type_.end()); }
  bool smooth() const { return min_entry() > 0; }

  /// Balanced for an n-gonal genus-g curve: smallest entry floor(g/(n-1)) - 1.
  bool balanced_for(int g, int n) const { return min_entry() == g / (n - 1) - 1; }

  bool operator==(const Scroll&) const = default;

 private:
  std::vector<int> type_;
};

/// The class hH + fF in the Chow ring of a scroll.
struct DivisorClass {
  long h = 0;
  long f = 0;

  bool operator==(const DivisorClass&) const = default;
  DivisorClass operator+(const DivisorClass& o) const { return {h + o.h, f + o.f}; }
};

inline DivisorClass hyperplane_class() { return {1, 0}; }
inline DivisorClass fiber_class() { return {0, 1}; }

/// Intersection number of exactly k divisor classes, using
/// H^k = N - k + 1, H^(k-1) F = 1, F^2 = 0.
inline long chow_product(const Scroll& s, std::span<const DivisorClass> classes) {
  if (static_cast<int>(classes.size()) != s.k())
    throw InputError("chow product needs exactly " + std::to_string(s.k()) + " factors");
  long all_h = 1;
  for (const auto& c : classes) all_h *= c.h;
  long one_f = 0;
  for (std::size_t j = 0; j < classes.size(); ++j) {
    long term = classes[j].f;
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (i != j) term *= classes[i].h;
    one_f += term;
  }
  return all_h * (s.N() - s.k() + 1) + one_f;
}

inline long chow_product(const Scroll& s, std::initializer_list<DivisorClass> classes) {
  return chow_product(s, std::span<const DivisorClass>(classes.begin(), classes.size()));
}

/// K = -kH + (N - k - 1)F.
inline DivisorClass canonical_class(const Scroll& s) { return {-s.k(), s.N() - s.k() - 1}; }

/// D . H^(k-1).
inline long divisor_degree(const Scroll& s, const DivisorClass& d) {
  std::vector<DivisorClass> cs(static_cast<std::size_t>(s.k()), hyperplane_class());
  cs[0] = d;
  return chow_product(s, cs);
}

/// One summand of a section of O(cH + mF): a fiber monomial times a binary form
/// of the given degree in the base coordinates (s, t).
struct SectionTemplate {
  Monomial fiber;
  int base_degree = 0;
};

inline std::vector<SectionTemplate> section_templates(const Scroll& s, const DivisorClass& c) {
  if (c.h < 0) throw InputError("section templates need a non-negative H coefficient");
  std::vector<SectionTemplate> out;
  for (const auto& m : monomial_basis(static_cast<std::size_t>(s.k()), static_cast<unsigned>(c.h))) {
    long deg = c.f;
    for (int i = 0; i < s.k(); ++i) deg += static_cast<long>(m.exps[i]) * s.type()[i];
    if (deg >= 0) out.push_back({m, static_cast<int>(deg)});
  }
  return out;
}

inline long section_count(const std::vector<SectionTemplate>& ts) {
  long n = 0;
  for (const auto& t : ts) n += t.base_degree + 1;
  return n;
}

struct ScrollPoint {
  std::vector<Rational> base;   // (s, t)
  std::vector<Rational> fiber;  // (y_1, ..., y_k)
  std::vector<Rational> image;  // N + 1 coordinates
};

/// Image coordinates s^(a_i - j) t^j y_i, blocks by fiber index, descending power of s.
/// Works over any commutative ring type T constructible from Rational.
template <class T>
std::vector<T> scroll_coordinates(const Scroll& sc, const T& s, const T& t, const std::vector<T>& fiber) {
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(sc.N() + 1));
  for (int i = 0; i < sc.k(); ++i) {
    const int a = sc.type()[i];
    for (int j = 0; j <= a; ++j) {
      T v = fiber[i];
      for (int e = 0; e < a - j; ++e) v = v * s;
      for (int e = 0; e < j; ++e) v = v * t;
      out.push_back(v);
    }
  }
  return out;
}

inline ScrollPoint embed_point(const Scroll& sc, const std::vector<Rational>& base, const std::vector<Rational>& fiber) {
  if (base.size() != 2) throw InputError("base point needs two coordinates");
  if (fiber.size() != static_cast<std::size_t>(sc.k())) throw InputError("fiber point has the wrong dimension");
  auto nonzero = [](const std::vector<Rational>& v) {
    return std::any_of(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
  };
  if (!nonzero(base) || !nonzero(fiber)) throw InputError("point coordinates must not all vanish");
  return {base, fiber, scroll_coordinates<Rational>(sc, base[0], base[1], fiber)};
}

/// The 2 x (N + 1 - k) matrix whose 2 x 2 minors cut out the scroll: for each
/// block the columns (z_{i,j}, z_{i,j+1}).
template <class T>
std::vector<std::pair<T, T>> scroll_matrix_columns(const Scroll& sc, const std::vector<T>& z) {
  if (z.size() != static_cast<std::size_t>(sc.N() + 1)) throw InputError("point has the wrong dimension");
  std::vector<std::pair<T, T>> cols;
  std::size_t off = 0;
  for (int a : sc.type()) {
    for (int j = 0; j < a; ++j) cols.emplace_back(z[off + j], z[off + j + 1]);
    off += static_cast<std::size_t>(a) + 1;
  }
  return cols;
}

inline bool on_scroll(const Scroll& sc, const std::vector<Rational>& z) {
  const auto cols = scroll_matrix_columns(sc, z);
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = i + 1; j < cols.size(); ++j)
      if (cols[i].first * cols[j].second - cols[i].second * cols[j].first != 0) return false;
  return true;
}

/// The 2 x 2 minors of the scroll matrix, as quadrics in the N + 1 coordinates.
inline std::vector<Polynomial> scroll_quadrics(const Scroll& sc) {
  const auto n = static_cast<std::size_t>(sc.N() + 1);
  std::vector<Polynomial> z;
  for (std::size_t i = 0; i < n; ++i) z.push_back(Polynomial::variable(n, i));
  const auto cols = scroll_matrix_columns(sc, z);
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = i + 1; j < cols.size(); ++j)
      out.push_back(cols[i].first * cols[j].second - cols[i].second * cols[j].first);
  return out;
}

/// Type of the projection from a point of the i-th directrix curve: a_i drops by
/// one, and an entry that would become -1 is removed.
inline Scroll project_type(const Scroll& sc, int i) {
  if (i < 0 || i >= sc.k()) throw InputError("projection index out of range");
  std::vector<int> t = sc.type();
  if (t[i] == 0) {
    t.erase(t.begin() + i);
  } else {
    --t[i];
  }
  return Scroll(std::move(t));
}

}  // namespace apolar
