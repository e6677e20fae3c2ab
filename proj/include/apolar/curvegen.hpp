#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "apolar/apolarity.hpp"
#include "apolar/errors.hpp"
#include "apolar/exact_matrix.hpp"
#include "apolar/polynomial.hpp"
#include "apolar/rng.hpp"
#include "apolar/scroll.hpp"
#include "apolar/univariate.hpp"

namespace apolar {

/// A section of O(cH + mF) on a scroll: sum over fiber monomials y^e of a binary
/// form B_e(s, t) of degree sum e_i a_i + m.
struct BihomogeneousForm {
  DivisorClass cls;
  std::vector<std::pair<Monomial, BinaryForm>> terms;

  /// The form restricted to the fiber over (s : t), as a polynomial in the fiber coordinates.
  Polynomial on_fiber(const Rational& s, const Rational& t) const {
    Polynomial out(terms.empty() ? 1 : terms.front().first.nvars(), static_cast<unsigned>(cls.h));
    for (const auto& [mono, b] : terms) {
      Rational v = 0, tp = 1;
      std::vector<Rational> spow(b.degree + 1, Rational(1));
      for (unsigned i = 1; i <= b.degree; ++i) spow[i] = spow[i - 1] * s;
      for (unsigned j = 0; j <= b.degree; ++j) {
        v += b.coeffs[j] * spow[b.degree - j] * tp;
        tp *= t;
      }
      out.add_term(mono, v);
    }
    return out;
  }
};

inline BihomogeneousForm random_section(const Scroll& sc, const DivisorClass& c, Rng& rng, long bound = 5) {
  BihomogeneousForm f{c, {}};
  for (const auto& tpl : section_templates(sc, c)) {
    BinaryForm b = BinaryForm::zero(static_cast<unsigned>(tpl.base_degree));
    for (auto& x : b.coeffs) x = Rational(rng.uniform(-bound, bound));
    f.terms.emplace_back(tpl.fiber, std::move(b));
  }
  return f;
}

struct CurveSpec {
  int genus = 0;
  int gonality = 0;
  Scroll scroll{std::vector<int>{1}};
  std::vector<DivisorClass> classes;
  std::vector<BihomogeneousForm> equations;
  std::vector<int> split;  // (b1, b2) for tetragonal curves
  std::uint64_t seed = 0;
};

/// g = 1 + C.(C + K)/2 on a surface scroll.
inline int genus_adjunction(const Scroll& sc, const DivisorClass& c) {
  if (sc.k() != 2) throw InputError("adjunction genus needs a surface scroll");
  const DivisorClass k = canonical_class(sc);
  const long two_g_minus_2 = chow_product(sc, {c, c + k});
  if (two_g_minus_2 % 2 != 0) throw InputError("class has odd C.(C+K); not a curve class");
  return static_cast<int>(two_g_minus_2 / 2 + 1);
}

inline Scroll balanced_surface_scroll(int g) { return Scroll({(g - 2) / 2, (g - 1) / 2}); }

/// Balanced threefold scroll of degree g - 3.
inline Scroll balanced_threefold_scroll(int g) {
  const int q = (g - 3) / 3, r = (g - 3) % 3;
  std::vector<int> t(3, q);
  for (int i = 0; i < r; ++i) ++t[2 - i];
  return Scroll(std::move(t));
}

inline DivisorClass trigonal_class(int g) { return {3, -(g - 4)}; }

namespace detail {

/// The fiber cubic in affine coordinate u = y_2 / y_1 over base (1 : t).
inline UniPoly fiber_cubic(const BihomogeneousForm& e, const Rational& t) {
  const Polynomial p = e.on_fiber(1, t);
  std::vector<Rational> c(4);
  for (const auto& [m, v] : p.terms()) c[m.exps[1]] = v;
  return UniPoly(std::move(c));
}

/// A fiber conic alpha y2^2 + beta(y1) y2 + gamma(y1) in affine coordinates y0 = 1.
struct FiberConic {
  Rational alpha;
  UniPoly beta, gamma;
};

inline FiberConic fiber_conic(const BihomogeneousForm& e, const Rational& t) {
  const Polynomial p = e.on_fiber(1, t);
  FiberConic c;
  std::vector<Rational> beta(2), gamma(3);
  for (const auto& [m, v] : p.terms()) {
    if (m.exps[2] == 2) c.alpha = v;
    else if (m.exps[2] == 1) beta[m.exps[1]] = v;
    else gamma[m.exps[1]] = v;
  }
  c.beta = UniPoly(beta);
  c.gamma = UniPoly(gamma);
  return c;
}

inline UniPoly conic_resultant(const FiberConic& a, const FiberConic& b) {
  const UniPoly ag = a.gamma * b.alpha - b.gamma * a.alpha;  // alpha1 gamma2 - alpha2 gamma1, negated
  const UniPoly ab = b.beta * a.alpha - a.beta * b.alpha;    // alpha1 beta2 - alpha2 beta1
  const UniPoly bg = a.beta * b.gamma - b.beta * a.gamma;    // beta1 gamma2 - beta2 gamma1
  return ag * ag - ab * bg;
}

inline bool good_fiber_quartic(const UniPoly& r) { return r.degree() == 4 && is_squarefree(r); }

}  // namespace detail

inline CurveSpec trigonal_curve(int g, std::uint64_t seed) {
  if (g < 5) throw InputError("trigonal curves need g >= 5");
  CurveSpec c;
  c.genus = g;
  c.gonality = 3;
  c.scroll = balanced_surface_scroll(g);
  c.classes = {trigonal_class(g)};
  c.seed = seed;
  if (genus_adjunction(c.scroll, c.classes[0]) != g) throw CertificateError("adjunction genus mismatch");
  if (chow_product(c.scroll, {c.classes[0], fiber_class()}) != 3) throw CertificateError("class is not trigonal");
  Rng rng(seed);
  for (int attempt = 0; attempt < 10; ++attempt) {
    BihomogeneousForm e = random_section(c.scroll, c.classes[0], rng);
    bool good = true;
    for (int i = 0; i < 5 && good; ++i) {
      const UniPoly f = detail::fiber_cubic(e, ratio(rng.uniform(-50, 50), rng.uniform(1, 9)));
      good = f.degree() == 3 && is_squarefree(f);
    }
    if (good) {
      c.equations = {std::move(e)};
      return c;
    }
  }
  throw CertificateError("no section with three distinct points on test fibers after 10 draws");
}

inline CurveSpec tetragonal_curve(int g, int b1, int b2, std::uint64_t seed) {
  if (g < 6) throw InputError("tetragonal curves need g >= 6");
  if (b1 < 0 || b2 < 0 || b1 + b2 != g - 5)
    throw InputError("split must satisfy b1, b2 >= 0 and b1 + b2 = g - 5 = " + std::to_string(g - 5));
  CurveSpec c;
  c.genus = g;
  c.gonality = 4;
  c.scroll = balanced_threefold_scroll(g);
  c.classes = {{2, -b1}, {2, -b2}};
  c.split = {b1, b2};
  c.seed = seed;
  const long deg = chow_product(c.scroll, {c.classes[0], c.classes[1], hyperplane_class()});
  if (deg != 2 * g - 2) throw CertificateError("complete intersection has degree " + std::to_string(deg));
  const DivisorClass adj = canonical_class(c.scroll) + c.classes[0] + c.classes[1];
  if (!(adj == hyperplane_class())) throw CertificateError("complete intersection is not canonically embedded");
  for (const auto& cl : c.classes)
    if (section_templates(c.scroll, cl).empty()) throw InputError("class has no sections");
  Rng rng(seed);
  for (int attempt = 0; attempt < 10; ++attempt) {
    BihomogeneousForm y1 = random_section(c.scroll, c.classes[0], rng);
    BihomogeneousForm y2 = random_section(c.scroll, c.classes[1], rng);
    bool good = true;
    for (int i = 0; i < 5 && good; ++i) {
      const Rational t = ratio(rng.uniform(-50, 50), rng.uniform(1, 9));
      good = detail::good_fiber_quartic(
          detail::conic_resultant(detail::fiber_conic(y1, t), detail::fiber_conic(y2, t)));
    }
    if (good) {
      c.equations = {std::move(y1), std::move(y2)};
      return c;
    }
  }
  throw CertificateError("no complete intersection with four distinct points on test fibers after 10 draws");
}

/// The points of C over one base value (1 : t): all roots of a squarefree
/// polynomial `modulus` at once. Every coordinate is an element of
/// Q[u]/(modulus), so one packet stands for deg(modulus) points, possibly
/// irrational, and evaluating a form at the packet is exact.
struct PointPacket {
  Rational t;
  UniPoly modulus;
  std::vector<UniPoly> fiber;   // affine fiber coordinates
  std::vector<UniPoly> coords;  // coordinates in P^(g-1)

  std::size_t size() const { return static_cast<std::size_t>(modulus.degree()); }
};

namespace detail {

inline UniPoly mulmod(const UniPoly& a, const UniPoly& b, const UniPoly& m) { return (a * b) % m; }

/// Value of a homogeneous polynomial at a point with coordinates in Q[u]/(m).
inline UniPoly evaluate_mod(const Polynomial& f, const std::vector<UniPoly>& x, const UniPoly& m) {
  UniPoly acc;
  for (const auto& [mono, c] : f.terms()) {
    UniPoly v = UniPoly::constant(c);
    for (std::size_t i = 0; i < mono.nvars(); ++i)
      for (unsigned k = 0; k < mono.exps[i]; ++k) v = mulmod(v, x[i], m);
    acc = acc + v;
  }
  return acc % m;
}

}  // namespace detail

/// True when every equation of the curve vanishes on the packet.
inline bool packet_on_curve(const CurveSpec& c, const PointPacket& p) {
  for (const auto& e : c.equations)
    if (!detail::evaluate_mod(e.on_fiber(1, p.t), p.fiber, p.modulus).is_zero()) return false;
  return true;
}

/// Exact sample of at least `count` points of C, grouped in fiber packets and
/// ordered by draw. Base values are small rationals from a seeded sequence;
/// fibers with repeated or infinite points are skipped.
inline std::vector<PointPacket> sample_points(const CurveSpec& c, std::size_t count, std::uint64_t seed,
                                              int budget = 400) {
  std::vector<PointPacket> out;
  if (count == 0) return out;
  Rng rng(seed);
  std::set<Rational> used;
  std::size_t have = 0;
  const UniPoly u{0, 1};
  for (int tries = 0; tries < budget && have < count; ++tries) {
    const Rational t = ratio(rng.uniform(-40, 40), rng.uniform(1, 8));
    if (!used.insert(t).second) continue;
    PointPacket p;
    p.t = t;
    if (c.gonality == 3) {
      p.modulus = detail::fiber_cubic(c.equations[0], t);
      if (p.modulus.degree() != 3 || !is_squarefree(p.modulus)) continue;
      p.fiber = {UniPoly::constant(1), u};
    } else {
      const auto c1 = detail::fiber_conic(c.equations[0], t);
      const auto c2 = detail::fiber_conic(c.equations[1], t);
      p.modulus = detail::conic_resultant(c1, c2);
      if (!detail::good_fiber_quartic(p.modulus)) continue;
      // Eliminating y2^2: (alpha2 beta1 - alpha1 beta2) y2 = alpha1 gamma2 - alpha2 gamma1.
      const UniPoly den = (c1.beta * c2.alpha - c2.beta * c1.alpha) % p.modulus;
      const UniPoly inv = inverse_mod(den, p.modulus);
      if (inv.is_zero()) continue;
      const UniPoly num = c2.gamma * c1.alpha - c1.gamma * c2.alpha;
      p.fiber = {UniPoly::constant(1), u, detail::mulmod(num, inv, p.modulus)};
    }
    p.coords = scroll_coordinates<UniPoly>(c.scroll, UniPoly::constant(1), UniPoly::constant(t), p.fiber);
    for (auto& x : p.coords) x = x % p.modulus;
    if (!packet_on_curve(c, p)) throw CertificateError("sampled fiber points fail the curve equations");
    have += p.size();
    out.push_back(std::move(p));
  }
  if (have < count)
    throw CertificateError("found only " + std::to_string(have) + " of " + std::to_string(count) +
                           " points within the sampling budget");
  return out;
}

struct IdealReconstruction {
  int genus = 0;
  GradedIdealPiece degree2{1, 2};
  GradedIdealPiece degree3{1, 3};
  std::size_t point_count = 0;
  bool rank_saturated = false;
  long expected_dim2 = 0;
  long expected_dim3 = 0;

  bool dims_as_expected() const {
    return static_cast<long>(degree2.dim()) == expected_dim2 && static_cast<long>(degree3.dim()) == expected_dim3;
  }
};

inline long expected_quadric_dim(int g) { return static_cast<long>(g - 2) * (g - 3) / 2; }
inline long expected_cubic_dim(int g) {
  return static_cast<long>(count_binomial(static_cast<unsigned>(g + 2), 3)) - (5L * g - 5);
}

inline std::size_t default_sample_size(int g, std::size_t margin = 10) {
  return count_binomial(static_cast<unsigned>(g + 2), 3) + 2 * margin;
}

namespace detail {

/// Kernel of the degree-d evaluation map at the packets, plus the rank reached
/// by the packets before `prefix`.
inline std::pair<GradedIdealPiece, bool> evaluation_kernel(const std::vector<PointPacket>& packets, std::size_t nvars,
                                                           unsigned d, std::size_t prefix) {
  const MonomialIndex idx(nvars, d);
  IncrementalEchelon ech(idx.size());
  std::size_t prefix_rank = 0;
  for (std::size_t pi = 0; pi < packets.size(); ++pi) {
    if (pi == prefix) prefix_rank = ech.rank();
    const auto& p = packets[pi];
    // Monomial values built from lower-degree ones.
    std::vector<std::vector<UniPoly>> vals(d + 1);
    vals[0] = {UniPoly::constant(1)};
    std::vector<MonomialIndex> lower;
    for (unsigned e = 0; e <= d; ++e) lower.emplace_back(nvars, e);
    for (unsigned e = 1; e <= d; ++e) {
      for (const auto& m : lower[e].basis()) {
        std::size_t i = 0;
        while (m.exps[i] == 0) ++i;
        Monomial rest = m;
        --rest.exps[i];
        vals[e].push_back(mulmod(vals[e - 1][lower[e - 1].at(rest)], p.coords[i], p.modulus));
      }
    }
    for (std::size_t j = 0; j < p.size(); ++j) {
      RationalVector row(idx.size());
      for (std::size_t m = 0; m < idx.size(); ++m) row[m] = vals[d][m].coeff(j);
      ech.insert(std::move(row));
    }
  }
  if (prefix >= packets.size()) prefix_rank = ech.rank();
  std::vector<Polynomial> basis;
  for (const auto& v : ech.kernel()) basis.push_back(Polynomial::from_coefficients(idx, v));
  GradedIdealPiece piece = GradedIdealPiece::span(nvars, d, basis);
  return {std::move(piece), prefix_rank == ech.rank()};
}

}  // namespace detail

/// Degree 2 and 3 pieces of the ideal of C from exact point samples. The last
/// `margin` (or more) points serve as the saturation check.
inline IdealReconstruction ideal_pieces(const CurveSpec& c, const std::vector<PointPacket>& packets,
                                        std::size_t margin = 10, bool strict = true) {
  const auto n = static_cast<std::size_t>(c.genus);
  std::size_t total = 0;
  for (const auto& p : packets) total += p.size();
  const std::size_t needed = count_binomial(static_cast<unsigned>(n + 2), 3) + margin;
  if (total < needed)
    throw InputError("ideal reconstruction needs at least " + std::to_string(needed) + " points, got " +
                     std::to_string(total));
  // First packet index whose points all lie in the last `margin` points.
  std::size_t prefix = packets.size(), tail = 0;
  while (prefix > 0 && tail < margin) tail += packets[--prefix].size();

  IdealReconstruction r;
  r.genus = c.genus;
  r.point_count = total;
  r.expected_dim2 = expected_quadric_dim(c.genus);
  r.expected_dim3 = expected_cubic_dim(c.genus);
  auto [q2, sat2] = detail::evaluation_kernel(packets, n, 2, prefix);
  auto [q3, sat3] = detail::evaluation_kernel(packets, n, 3, prefix);
  r.degree2 = std::move(q2);
  r.degree3 = std::move(q3);
  r.rank_saturated = sat2 && sat3;
  if (strict) {
    if (!r.rank_saturated) throw CertificateError("evaluation ranks still growing in the last points");
    if (!r.dims_as_expected())
      throw CertificateError("ideal dimensions " + std::to_string(r.degree2.dim()) + ", " +
                             std::to_string(r.degree3.dim()) + " differ from the expected " +
                             std::to_string(r.expected_dim2) + ", " + std::to_string(r.expected_dim3));
  }
  return r;
}

}  // namespace apolar
