// Seeded property suites shared by the unit tests and the acceptance runner.
// Each check runs `instances` generated cases and returns one message per failed assertion.
#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "apolar/apolarity.hpp"
#include "apolar/curvegen.hpp"
#include "apolar/waring.hpp"
#include "oracles.hpp"

namespace props {

using namespace apolar;

using Failures = std::vector<std::string>;

namespace detail {

inline Polynomial random_shaped(Rng& rng, std::size_t n, unsigned d) { return oracle::random_form(n, d, rng, 6, 70); }

inline void require(Failures& out, bool ok, const char* what, int instance) {
  if (ok) return;
  std::ostringstream s;
  s << what << " (instance " << instance << ")";
  out.push_back(s.str());
}

}  // namespace detail

inline Failures contraction_bilinear(int instances) {
  Failures out;
  for (int s = 0; s < instances; ++s) {
    Rng rng(Rng::derive(1000, static_cast<std::uint64_t>(s)));
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto d = static_cast<unsigned>(rng.uniform(1, 5));
    const auto e = static_cast<unsigned>(rng.uniform(0, d));
    const auto f1 = detail::random_shaped(rng, n, d), f2 = detail::random_shaped(rng, n, d);
    const auto g1 = detail::random_shaped(rng, n, e), g2 = detail::random_shaped(rng, n, e);
    const Rational a = ratio(rng.uniform(-7, 7), rng.uniform(1, 5)), b = ratio(rng.uniform(-7, 7), rng.uniform(1, 5));
    detail::require(out, contract(g1, a * f1 + b * f2) == a * contract(g1, f1) + b * contract(g1, f2),
                    "linear in the form", s);
    detail::require(out, contract(a * g1 + b * g2, f1) == a * contract(g1, f1) + b * contract(g2, f1),
                    "linear in the operator", s);
  }
  return out;
}

inline Failures contraction_composes(int instances) {
  Failures out;
  for (int s = 0; s < instances; ++s) {
    Rng rng(Rng::derive(2000, static_cast<std::uint64_t>(s)));
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto d = static_cast<unsigned>(rng.uniform(2, 6));
    const auto e1 = static_cast<unsigned>(rng.uniform(0, d / 2));
    const auto e2 = static_cast<unsigned>(rng.uniform(0, d - e1));
    const auto f = detail::random_shaped(rng, n, d);
    const auto g = detail::random_shaped(rng, n, e1), h = detail::random_shaped(rng, n, e2);
    detail::require(out, contract(g * h, f) == contract(g, contract(h, f)), "gh . f = g . (h . f)", s);
    detail::require(out, contract(g * h, f) == contract(h, contract(g, f)), "gh . f = h . (g . f)", s);
  }
  return out;
}

inline Failures pairing_perfect(int instances) {
  Failures out;
  for (int s = 0; s < instances; ++s) {
    Rng rng(Rng::derive(3000, static_cast<std::uint64_t>(s)));
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto d = static_cast<unsigned>(rng.uniform(1, 4));
    const auto f = detail::random_shaped(rng, n, d);
    // <f, f> is a sum of a! c_a^2 > 0, so no nonzero form pairs to zero with everything.
    detail::require(out, pair(f, f) > 0, "<f, f> > 0", s);
    // The Gram matrix on monomials is diagonal with entries a!, hence nonsingular.
    const MonomialIndex idx(n, d);
    std::vector<RationalVector> gram;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      RationalVector row;
      for (std::size_t j = 0; j < idx.size(); ++j)
        row.push_back(pair(Polynomial::monomial(idx[i]), Polynomial::monomial(idx[j])));
      gram.push_back(row);
    }
    detail::require(out, oracle::rank(gram) == idx.size(), "monomial Gram matrix nonsingular", s);
    // Values match the iterated-derivative route.
    const auto g = detail::random_shaped(rng, n, d);
    detail::require(out, pair(f, g) == oracle::differentiate(g, f).coefficient(Monomial::zero(n)),
                    "pairing equals differentiation", s);
  }
  return out;
}

inline Failures catalecticant_symmetric(int instances) {
  Failures out;
  for (int s = 0; s < instances; ++s) {
    Rng rng(Rng::derive(4000, static_cast<std::uint64_t>(s)));
    const auto n = static_cast<std::size_t>(rng.uniform(2, 4));
    const auto d = static_cast<unsigned>(rng.uniform(2, 5));
    // Sums of few powers give ranks below the generic value.
    Polynomial f(n, d);
    const int terms = static_cast<int>(rng.uniform(1, 5));
    for (int t = 0; t < terms; ++t) {
      std::vector<Rational> l(n);
      for (auto& c : l) c = Rational(rng.uniform(-3, 3));
      Polynomial p = Polynomial::constant(n, 1);
      for (unsigned k = 0; k < d; ++k) p = p * Polynomial::linear(l);
      if (!p.is_zero()) f = f + p;
    }
    if (f.is_zero()) f = oracle::fermat(n, d);
    for (unsigned k = 0; k <= d; ++k) {
      const auto ck = catalecticant(f, k), cd = catalecticant(f, d - k);
      detail::require(out, ck.rank() == cd.rank(), "rank Cat_k = rank Cat_(d-k)", s);
      // Entrywise: Cat_k(a, b) a! = Cat_(d-k)(b, a) b!.
      const MonomialIndex rows(n, d - k), cols(n, k);
      bool entries = true;
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
          entries = entries && ck(i, j) * Rational(rows[i].factorial()) == cd(j, i) * Rational(cols[j].factorial());
      detail::require(out, entries, "catalecticant entries transpose", s);
    }
    detail::require(out, hilbert_function(f).symmetric(), "Hilbert function symmetric", s);
  }
  return out;
}

inline Failures fermat_coordinate_invariant(int instances) {
  Failures out;
  PrecisionGuard prec(128);
  for (int s = 0; s < instances; ++s) {
    Rng rng(Rng::derive(5000, static_cast<std::uint64_t>(s)));
    const auto n = static_cast<std::size_t>(rng.uniform(2, 6));
    const auto m = oracle::random_invertible(n, rng);
    const auto f = change_coordinates(oracle::fermat(n), m);
    Rng draw(Rng::derive(5001, static_cast<std::uint64_t>(s)));
    const auto r = fermat_detect(f, draw, Real(1e-10));
    detail::require(out, static_cast<bool>(r), "transformed Fermat detected", s);
    if (!r) continue;
    detail::require(out, r.decomposition->rank() == n, "Fermat rank n", s);
    // The same cubic in other coordinates: each form l becomes M2^T l.
    const auto m2 = oracle::random_invertible(n, rng);
    const auto f2 = change_coordinates(f, m2);
    const auto r2 = fermat_detect(f2, draw, Real(1e-10));
    detail::require(out, static_cast<bool>(r2), "moved Fermat detected", s);
    if (!r2) continue;
    const bool both_exact = r.decomposition->exact() && r2.decomposition->exact();
    detail::require(out, both_exact, "rational forms recovered exactly", s);
    if (!both_exact) continue;
    for (const auto& l : *r.decomposition->exact_forms) {
      const auto moved = m2.transpose().apply(l);
      bool found = false;
      for (const auto& l2 : *r2.decomposition->exact_forms)
        found = found || ExactMatrix::from_rows({moved, l2}).rank() == 1;
      detail::require(out, found, "forms transform with the coordinates", s);
    }
    // Whether a random cubic is Fermat does not depend on coordinates.
    const auto g = oracle::random_form(n, 3, rng, 9);
    const auto g2 = change_coordinates(g, m2);
    detail::require(out,
                    static_cast<bool>(fermat_detect(g, draw, Real(1e-10))) ==
                        static_cast<bool>(fermat_detect(g2, draw, Real(1e-10))),
                    "random cubic verdict invariant", s);
    detail::require(out, hilbert_function(g).hilbert == hilbert_function(g2).hilbert, "Hilbert function invariant", s);
  }
  return out;
}

inline Failures curve_points_exact(int instances) {
  Failures out;
  for (int s = 0; s < instances; ++s) {
    const auto seed = Rng::derive(6000, static_cast<std::uint64_t>(s));
    const CurveSpec c = (s % 2 == 0) ? trigonal_curve(5 + s % 4, seed)
                                     : tetragonal_curve(7, s % 3 == 0 ? 0 : 1, s % 3 == 0 ? 2 : 1, seed);
    const auto packets = sample_points(c, 12, Rng::derive(seed, 1));
    const auto quadrics = scroll_quadrics(c.scroll);
    for (const auto& p : packets) {
      detail::require(out, packet_on_curve(c, p), "packet satisfies the curve equations", s);
      bool on_scroll = true;
      for (const auto& q : quadrics) on_scroll = on_scroll && apolar::detail::evaluate_mod(q, p.coords, p.modulus).is_zero();
      detail::require(out, on_scroll, "packet satisfies the scroll quadrics", s);
      detail::require(out, oracle::packet_residual(c, p) < 1e-9, "complex residual below 1e-9", s);
    }
  }
  return out;
}

}  // namespace props
