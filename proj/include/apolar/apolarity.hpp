#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apolar/bigfloat.hpp"
#include "apolar/errors.hpp"
#include "apolar/exact_matrix.hpp"
#include "apolar/numeric.hpp"
#include "apolar/polynomial.hpp"

namespace apolar {

/// One graded component (F-perp)_k, or any ideal component, stored as a basis
/// of dual forms in canonical (reduced row echelon) coordinates.
class GradedIdealPiece {
 public:
  GradedIdealPiece(std::size_t nvars, unsigned degree) : nvars_(nvars), degree_(degree) {}

  /// Builds the piece spanned by `gens`; dependent generators are allowed and dropped.
  static GradedIdealPiece span(std::size_t nvars, unsigned degree, std::span<const Polynomial> gens) {
    GradedIdealPiece p(nvars, degree);
    const MonomialIndex idx(nvars, degree);
    IncrementalEchelon e(idx.size());
    for (const auto& g : gens) {
      p.check_member_shape(g);
      e.insert(g.coefficients(idx));
    }
    for (const auto& row : e.rows()) p.basis_.push_back(Polynomial::from_coefficients(idx, row));
    return p;
  }

  /// Builds the piece from a basis, rejecting linearly dependent input.
  static GradedIdealPiece from_basis(std::size_t nvars, unsigned degree, std::vector<Polynomial> basis) {
    GradedIdealPiece p = span(nvars, degree, basis);
    if (p.dim() != basis.size()) throw InputError("ideal piece basis is linearly dependent");
    return p;
  }

  static GradedIdealPiece full(std::size_t nvars, unsigned degree) {
    GradedIdealPiece p(nvars, degree);
    for (const auto& m : monomial_basis(nvars, degree)) p.basis_.push_back(Polynomial::monomial(m));
    return p;
  }

  std::size_t nvars() const noexcept { return nvars_; }
  unsigned degree() const noexcept { return degree_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t ambient_dim() const { return count_binomial(static_cast<unsigned>(nvars_ + degree_ - 1), degree_); }
  const std::vector<Polynomial>& basis() const noexcept { return basis_; }

  IncrementalEchelon echelon() const {
    const MonomialIndex idx(nvars_, degree_);
    IncrementalEchelon e(idx.size());
    for (const auto& b : basis_) e.insert(b.coefficients(idx));
    return e;
  }

  bool contains(const Polynomial& d) const {
    check_member_shape(d);
    const MonomialIndex idx(nvars_, degree_);
    return echelon().contains(d.coefficients(idx));
  }

  bool operator==(const GradedIdealPiece& o) const {
    return nvars_ == o.nvars_ && degree_ == o.degree_ && basis_ == o.basis_;
  }

 private:
  void check_member_shape(const Polynomial& g) const {
    if (g.nvars() != nvars_) throw InputError("ideal piece: variable-count mismatch");
    if (g.degree() != degree_) throw InputError("ideal piece: degree mismatch");
  }

  std::size_t nvars_;
  unsigned degree_;
  std::vector<Polynomial> basis_;
};

struct ApolarAlgebraProfile {
  unsigned socle_degree = 0;
  std::vector<long> hilbert;  // dims of A in degrees 0..socle_degree
  std::vector<long> socle;    // socle dims in degrees 0..socle_degree
  long socle_dim = 0;

  bool symmetric() const {
    for (std::size_t i = 0; i < hilbert.size(); ++i)
      if (hilbert[i] != hilbert[hilbert.size() - 1 - i]) return false;
    return true;
  }
};

/// Matrix of D -> D.f from degree-k dual forms (columns) to degree-(d-k) forms (rows).
inline ExactMatrix catalecticant(const Polynomial& f, unsigned k) {
  if (k > f.degree()) throw InputError("catalecticant degree out of range");
  const MonomialIndex cols(f.nvars(), k);
  const MonomialIndex rows(f.nvars(), f.degree() - k);
  ExactMatrix m(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Polynomial image = contract(Polynomial::monomial(cols[j]), f);
    for (const auto& [mono, c] : image.terms()) m(rows.at(mono), j) = c;
  }
  return m;
}

/// (F-perp)_k; for k > deg f the whole space of dual forms.
inline GradedIdealPiece apolar_ideal_piece(const Polynomial& f, int k) {
  if (k < 0) throw InputError("apolar ideal piece: negative degree");
  const auto uk = static_cast<unsigned>(k);
  if (uk > f.degree()) return GradedIdealPiece::full(f.nvars(), uk);
  const MonomialIndex idx(f.nvars(), uk);
  std::vector<Polynomial> basis;
  for (const auto& v : catalecticant(f, uk).kernel()) basis.push_back(Polynomial::from_coefficients(idx, v));
  return GradedIdealPiece::span(f.nvars(), uk, basis);
}

namespace detail {

/// Socle dimension of T/I in each degree 0..d, where pieces[k] spans I_k for
/// k = 0..d and I_{d+1} is everything.
inline std::vector<long> socle_dimensions(std::size_t nvars, const std::vector<IncrementalEchelon>& pieces) {
  const std::size_t d = pieces.size() - 1;
  std::vector<long> socle(d + 1, 0);
  for (std::size_t k = 0; k <= d; ++k) {
    const MonomialIndex src(nvars, static_cast<unsigned>(k));
    if (k == d) {
      socle[k] = static_cast<long>(src.size() - pieces[k].rank());
      continue;
    }
    const MonomialIndex dst(nvars, static_cast<unsigned>(k + 1));
    // Map D -> (x_i D mod I_{k+1})_i; its kernel contains I_k.
    IncrementalEchelon image_rows(src.size());
    std::vector<RationalVector> columns;
    for (std::size_t j = 0; j < src.size(); ++j) {
      RationalVector col;
      for (std::size_t i = 0; i < nvars; ++i) {
        RationalVector v(dst.size());
        v[dst.at(src[j] * Monomial::variable(nvars, i))] = 1;
        v = pieces[k + 1].reduce(std::move(v));
        col.insert(col.end(), v.begin(), v.end());
      }
      columns.push_back(std::move(col));
    }
    // rank of the map = rank of the column set
    IncrementalEchelon colspace(columns.empty() ? 0 : columns[0].size());
    for (auto& c : columns) colspace.insert(std::move(c));
    const long kernel_dim = static_cast<long>(src.size() - colspace.rank());
    socle[k] = kernel_dim - static_cast<long>(pieces[k].rank());
  }
  return socle;
}

}  // namespace detail

/// Hilbert function and socle of the apolar algebra T / F-perp.
inline ApolarAlgebraProfile hilbert_function(const Polynomial& f) {
  if (f.is_zero()) throw InputError("hilbert function of the zero form");
  const unsigned d = f.degree();
  ApolarAlgebraProfile prof;
  prof.socle_degree = d;
  std::vector<IncrementalEchelon> pieces;
  for (unsigned k = 0; k <= d; ++k) {
    pieces.push_back(apolar_ideal_piece(f, static_cast<int>(k)).echelon());
    prof.hilbert.push_back(static_cast<long>(count_binomial(static_cast<unsigned>(f.nvars() + k - 1), k) -
                                             pieces.back().rank()));
  }
  prof.socle = detail::socle_dimensions(f.nvars(), pieces);
  for (auto s : prof.socle) prof.socle_dim += s;
  return prof;
}

/// Recovers F (first nonzero coefficient 1) from the graded pieces I_1..I_d of an
/// Artinian Gorenstein ideal with socle degree d. Missing degrees count as zero.
inline Polynomial macaulay_inverse(std::span<const GradedIdealPiece> pieces, unsigned d) {
  if (pieces.empty()) throw InputError("macaulay inverse needs at least one piece");
  if (d == 0) throw InputError("socle degree must be positive");
  const std::size_t n = pieces.front().nvars();
  std::vector<std::optional<GradedIdealPiece>> by_degree(d + 1);
  for (const auto& p : pieces) {
    if (p.nvars() != n) throw InputError("pieces disagree on the number of variables");
    if (p.degree() == 0 || p.degree() > d) throw InputError("piece degree outside 1..d");
    if (by_degree[p.degree()]) throw InputError("duplicate piece for one degree");
    by_degree[p.degree()] = p;
  }
  for (unsigned k = 0; k <= d; ++k)
    if (!by_degree[k]) by_degree[k] = GradedIdealPiece(n, k);

  std::vector<IncrementalEchelon> ech;
  for (unsigned k = 0; k <= d; ++k) ech.push_back(by_degree[k]->echelon());

  // Closure under multiplication by variables.
  for (unsigned k = 1; k < d; ++k) {
    const MonomialIndex dst(n, k + 1);
    for (const auto& b : by_degree[k]->basis())
      for (std::size_t i = 0; i < n; ++i)
        if (!ech[k + 1].contains((b * Polynomial::variable(n, i)).coefficients(dst)))
          throw InputError("inconsistent pieces: degree " + std::to_string(k) +
                           " piece times a variable leaves the degree " + std::to_string(k + 1) + " piece");
  }

  std::vector<long> hilbert;
  for (unsigned k = 0; k <= d; ++k)
    hilbert.push_back(static_cast<long>(by_degree[k]->ambient_dim() - by_degree[k]->dim()));
  std::vector<long> socle = detail::socle_dimensions(n, ech);
  long total = 0;
  for (auto s : socle) total += s;
  if (total != 1 || socle[d] != 1) {
    throw SocleError("quotient is not Gorenstein of socle degree " + std::to_string(d) +
                         " (socle dimension " + std::to_string(total) + ")",
                     hilbert, socle);
  }

  // F is orthogonal to I_d under the pairing, which is diagonal with entries m!.
  const MonomialIndex top(n, d);
  ExactMatrix m(by_degree[d]->dim(), top.size());
  for (std::size_t r = 0; r < by_degree[d]->dim(); ++r) {
    const RationalVector c = by_degree[d]->basis()[r].coefficients(top);
    for (std::size_t j = 0; j < top.size(); ++j)
      if (c[j] != 0) m(r, j) = c[j] * Rational(top[j].factorial());
  }
  const auto ker = m.kernel();
  if (ker.size() != 1) throw SocleError("degree-d piece does not have codimension one", hilbert, socle);
  const Polynomial f = Polynomial::from_coefficients(top, ker[0]).normalized();

  for (unsigned k = 1; k <= d; ++k)
    for (const auto& b : by_degree[k]->basis())
      if (!contract(b, f).is_zero())
        throw InputError("inconsistent pieces: a degree " + std::to_string(k) + " element does not annihilate F");
  return f;
}

/// Coefficients of l^d on the degree-d monomial basis, l = sum c_i x_i.
template <class Scalar>
std::vector<Scalar> power_coefficients(const std::vector<Scalar>& l, const MonomialIndex& basis, unsigned d) {
  std::vector<Scalar> out;
  out.reserve(basis.size());
  const Integer dfact = factorial(d);
  for (const auto& m : basis.basis()) {
    Scalar v(Rational(dfact / m.factorial()));
    for (std::size_t i = 0; i < m.nvars(); ++i)
      for (unsigned k = 0; k < m.exps[i]; ++k) v *= l[i];
    out.push_back(std::move(v));
  }
  return out;
}

/// Result of testing a reduced point set against F by the apolarity criterion.
struct ApolarityCertificate {
  bool apolar = false;
  std::vector<Rational> exact_weights;  // exact path
  ComplexVector weights;                // numeric path (also filled on the exact path)
  Real residual{0L};
};

namespace detail {

template <class Scalar>
bool proportional(const std::vector<Scalar>& a, const std::vector<Scalar>& b);

template <>
inline bool proportional<Rational>(const RationalVector& a, const RationalVector& b) {
  return ExactMatrix::from_rows({a, b}).rank() < 2;
}

template <>
inline bool proportional<Complex>(const ComplexVector& a, const ComplexVector& b) {
  // |<a,b>|^2 vs |a|^2 |b|^2
  Complex dot(0L);
  Real na(0L), nb(0L);
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i].conj() * b[i];
    na += a[i].norm();
    nb += b[i].norm();
  }
  const Real gap = na * nb - dot.norm();
  return gap <= na * nb * Real::exp2(-PrecisionGuard::current() / 2);
}

template <class Scalar>
void check_points(const std::vector<std::vector<Scalar>>& points, std::size_t nvars) {
  if (points.empty()) throw InputError("apolar scheme: empty point list");
  for (const auto& p : points) {
    if (p.size() != nvars) throw InputError("apolar scheme: point has the wrong dimension");
  }
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (proportional(points[i], points[j]))
        throw InputError("apolar scheme: points " + std::to_string(i) + " and " + std::to_string(j) +
                         " coincide");
}

}  // namespace detail

/// Exact test: F lies in the span of the l_i^d (reduced point sets only).
inline ApolarityCertificate is_apolar_scheme(const std::vector<RationalVector>& points, const Polynomial& f) {
  detail::check_points(points, f.nvars());
  const MonomialIndex idx(f.nvars(), f.degree());
  ExactMatrix a(idx.size(), points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto col = power_coefficients(points[j], idx, f.degree());
    for (std::size_t i = 0; i < idx.size(); ++i) a(i, j) = col[i];
  }
  ApolarityCertificate cert;
  const auto sol = a.solve(f.coefficients(idx));
  if (!sol) return cert;
  cert.apolar = true;
  cert.exact_weights = *sol;
  cert.weights = to_complex(*sol);
  cert.residual = Real(0L);
  return cert;
}

/// Numeric test with residual certification: max coefficient error of
/// sum w_i l_i^d - F, relative to the largest coefficient of F, must be <= tolerance.
inline ApolarityCertificate is_apolar_scheme(const std::vector<ComplexVector>& points, const Polynomial& f,
                                             const Real& tolerance) {
  detail::check_points(points, f.nvars());
  const MonomialIndex idx(f.nvars(), f.degree());
  // Points are scaled to unit size first so that the columns are comparable.
  ComplexMatrix a(idx.size(), ComplexVector(points.size()));
  std::vector<ComplexVector> cols;
  std::vector<Real> scale;
  for (std::size_t j = 0; j < points.size(); ++j) {
    scale.push_back(max_abs(points[j]));
    if (scale.back().is_zero()) throw InputError("apolar scheme: zero point");
    ComplexVector unit = points[j];
    for (auto& c : unit) c /= Complex(scale.back());
    cols.push_back(power_coefficients(unit, idx, f.degree()));
    for (std::size_t i = 0; i < idx.size(); ++i) a[i][j] = cols.back()[i];
  }
  const ComplexVector rhs = to_complex(f.coefficients(idx));
  ApolarityCertificate cert;
  cert.weights = least_squares(a, rhs);
  Real worst(0L);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    Complex s = -rhs[i];
    for (std::size_t j = 0; j < points.size(); ++j) s += cert.weights[j] * cols[j][i];
    Real e = abs(s);
    if (e > worst) worst = e;
  }
  Real size = max_abs(rhs);
  if (size.is_zero()) size = Real(1L);
  cert.residual = worst / size;
  cert.apolar = cert.residual <= tolerance;
  for (std::size_t j = 0; j < points.size(); ++j) {
    Real sd(1L);
    for (unsigned k = 0; k < f.degree(); ++k) sd *= scale[j];
    cert.weights[j] /= Complex(sd);
  }
  return cert;
}

}  // namespace apolar
