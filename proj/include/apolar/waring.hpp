#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "apolar/apolarity.hpp"
#include "apolar/bigfloat.hpp"
#include "apolar/errors.hpp"
#include "apolar/exact_matrix.hpp"
#include "apolar/numeric.hpp"
#include "apolar/polynomial.hpp"
#include "apolar/rng.hpp"
#include "apolar/univariate.hpp"

namespace apolar {

/// f = sum w_i l_i^3. `forms` holds the coefficient vectors of the l_i; on the
/// exact path `exact_forms`/`exact_weights` are set as well and residual is 0.
struct Decomposition {
  std::vector<ComplexVector> forms;
  ComplexVector weights;
  std::optional<std::vector<RationalVector>> exact_forms;
  std::optional<std::vector<Rational>> exact_weights;
  Real residual{0L};

  std::size_t rank() const noexcept { return forms.size(); }
  bool exact() const noexcept { return exact_forms.has_value(); }
};

inline void require_cubic(const Polynomial& f) {
  if (f.degree() != 3) throw InputError("expected a cubic, got degree " + std::to_string(f.degree()));
}

/// Rank of the first catalecticant; the Waring rank is at least this.
inline std::size_t rank_lower_bound(const Polynomial& f) {
  require_cubic(f);
  return catalecticant(f, 1).rank();
}

inline std::optional<Decomposition> power_sum_fit(const std::vector<RationalVector>& points, const Polynomial& f) {
  require_cubic(f);
  auto cert = is_apolar_scheme(points, f);
  if (!cert.apolar) return std::nullopt;
  Decomposition d;
  for (const auto& p : points) d.forms.push_back(to_complex(p));
  d.weights = cert.weights;
  d.exact_forms = points;
  d.exact_weights = cert.exact_weights;
  return d;
}

inline std::optional<Decomposition> power_sum_fit(const std::vector<ComplexVector>& points, const Polynomial& f,
                                                  const Real& tolerance) {
  require_cubic(f);
  auto cert = is_apolar_scheme(points, f, tolerance);
  if (!cert.apolar) return std::nullopt;
  Decomposition d;
  d.forms = points;
  d.weights = cert.weights;
  d.residual = cert.residual;
  return d;
}

/// Gram matrix of a quadric: Q = x^T A x.
inline ExactMatrix gram_matrix(const Polynomial& q) {
  if (q.degree() != 2) throw InputError("expected a quadric");
  const std::size_t n = q.nvars();
  ExactMatrix a(n, n);
  for (const auto& [m, c] : q.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned k = 0; k < m.exps[i]; ++k) idx.push_back(i);
    if (idx[0] == idx[1]) {
      a(idx[0], idx[0]) = c;
    } else {
      a(idx[0], idx[1]) = c / 2;
      a(idx[1], idx[0]) = c / 2;
    }
  }
  return a;
}

enum class PencilStatus { ok, singular_pencil, non_simple_spectrum };

inline const char* to_string(PencilStatus s) {
  switch (s) {
    case PencilStatus::ok: return "ok";
    case PencilStatus::singular_pencil: return "singular pencil";
    case PencilStatus::non_simple_spectrum: return "non-simple spectrum";
  }
  return "?";
}

struct PencilResult {
  PencilStatus status = PencilStatus::ok;
  std::vector<ComplexVector> points;
  std::optional<std::vector<RationalVector>> exact_points;  // when every eigenvalue is rational
  UniPoly characteristic;                                     // det(A' - x B)
};

namespace detail {

/// Scales v so that its first coefficient of significant size is 1.
inline ComplexVector normalize_form(ComplexVector v) {
  const Real cut = max_abs(v) * Real::exp2(-PrecisionGuard::current() / 2);
  for (const auto& c : v) {
    if (abs(c) > cut) {
      const Complex s = c;
      for (auto& x : v) x /= s;
      break;
    }
  }
  return v;
}

inline RationalVector normalize_form(RationalVector v) {
  for (const auto& c : v) {
    if (c != 0) {
      const Rational s = c;
      for (auto& x : v) x /= s;
      break;
    }
  }
  return v;
}

inline bool form_less(const ComplexVector& a, const ComplexVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].re != b[i].re) return a[i].re > b[i].re;
    if (a[i].im != b[i].im) return a[i].im > b[i].im;
  }
  return false;
}

}  // namespace detail

/// Common diagonalizing forms of the pencil spanned by two quadrics. Returns
/// the linear forms l_i with Q, Q' both in span{l_i^2}.
inline PencilResult simultaneous_diagonalize(const Polynomial& q, const Polynomial& q2) {
  if (q.nvars() != q2.nvars()) throw InputError("quadrics live in different variable sets");
  const ExactMatrix a = gram_matrix(q);
  const ExactMatrix a2 = gram_matrix(q2);
  const std::size_t n = a.rows();
  PencilResult res;

  // A nonsingular member B = A + mu A' (det is a polynomial of degree <= n in mu,
  // so n + 1 failures mean the pencil is singular).
  std::optional<ExactMatrix> b;
  for (std::size_t t = 0; t <= n && !b; ++t) {
    const long mu = (t % 2 == 1) ? static_cast<long>((t + 1) / 2) : -static_cast<long>(t / 2);
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j) + Rational(mu) * a2(i, j);
    if (m.determinant() != 0) b = std::move(m);
  }
  if (!b) {
    res.status = PencilStatus::singular_pencil;
    return res;
  }
  auto shifted = [&](const Rational& x) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = a2(i, j) - x * (*b)(i, j);
    return m;
  };
  std::vector<Rational> xs, ys;
  for (std::size_t t = 0; t <= n; ++t) {
    xs.emplace_back(static_cast<long>(t));
    ys.push_back(shifted(xs.back()).determinant());
  }
  res.characteristic = interpolate(xs, ys);
  if (!is_squarefree(res.characteristic)) {
    res.status = PencilStatus::non_simple_spectrum;
    return res;
  }

  const auto roots = polynomial_roots(res.characteristic);
  bool all_exact = true;
  std::vector<RationalVector> exact;
  for (const auto& r : roots) {
    if (r.exact) {
      const auto ker = shifted(*r.exact).kernel();
      RationalVector l = b->apply(ker.at(0));
      l = detail::normalize_form(std::move(l));
      exact.push_back(l);
      res.points.push_back(to_complex(l));
      continue;
    }
    all_exact = false;
    ComplexMatrix m(n, ComplexVector(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m[i][j] = Complex(a2(i, j)) - r.value * Complex((*b)(i, j));
    const ComplexVector v = null_vector(std::move(m));
    ComplexVector l(n, Complex(0L));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) l[i] += Complex((*b)(i, j)) * v[j];
    res.points.push_back(detail::normalize_form(std::move(l)));
  }
  if (all_exact) {
    std::sort(exact.begin(), exact.end(), [](const RationalVector& x, const RationalVector& y) {
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i]) return x[i] > y[i];
      return false;
    });
    res.points.clear();
    for (const auto& l : exact) res.points.push_back(to_complex(l));
    res.exact_points = std::move(exact);
  } else {
    std::sort(res.points.begin(), res.points.end(), detail::form_less);
  }
  return res;
}

enum class FermatFailure { none, degenerate, non_simple_spectrum, singular_pencil, residual };

inline const char* to_string(FermatFailure f) {
  switch (f) {
    case FermatFailure::none: return "none";
    case FermatFailure::degenerate: return "catalecticant rank below the number of variables";
    case FermatFailure::non_simple_spectrum: return "pencil has a repeated eigenvalue";
    case FermatFailure::singular_pencil: return "pencil is singular";
    case FermatFailure::residual: return "power-sum fit residual above tolerance";
  }
  return "?";
}

struct FermatResult {
  std::optional<Decomposition> decomposition;
  FermatFailure failure = FermatFailure::none;
  int attempts = 0;
  Real best_residual{0L};  // smallest residual seen when failing on the fit

  explicit operator bool() const noexcept { return decomposition.has_value(); }
};

/// Decides whether f is a sum of nvars cubes of independent linear forms and, if
/// so, returns those forms. The two contracting dual forms are drawn from `rng`.
inline FermatResult fermat_detect(const Polynomial& f, Rng& rng, const Real& tolerance, int max_draws = 5) {
  require_cubic(f);
  const std::size_t n = f.nvars();
  FermatResult out;
  if (rank_lower_bound(f) < n) {
    out.failure = FermatFailure::degenerate;
    return out;
  }
  bool fit_failed = false;
  for (int draw = 0; draw < max_draws; ++draw) {
    out.attempts = draw + 1;
    Polynomial eta(n, 1), eta2(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
      eta.add_term(Monomial::variable(n, i), Rational(rng.uniform(-20, 20)));
      eta2.add_term(Monomial::variable(n, i), Rational(rng.uniform(-20, 20)));
    }
    if (eta.is_zero() || eta2.is_zero()) continue;
    const PencilResult pencil = simultaneous_diagonalize(contract(eta, f), contract(eta2, f));
    if (pencil.status == PencilStatus::singular_pencil) {
      out.failure = FermatFailure::singular_pencil;
      continue;
    }
    if (pencil.status == PencilStatus::non_simple_spectrum) {
      out.failure = FermatFailure::non_simple_spectrum;
      continue;
    }
    std::optional<Decomposition> d;
    if (pencil.exact_points) {
      d = power_sum_fit(*pencil.exact_points, f);
    } else {
      d = power_sum_fit(pencil.points, f, tolerance);
    }
    if (d) {
      out.decomposition = std::move(d);
      out.failure = FermatFailure::none;
      return out;
    }
    // The pencil diagonalized but the forms do not reproduce f: f is not Fermat.
    // A different draw cannot change that, except through numerical trouble.
    if (!pencil.exact_points) {
      const auto cert = is_apolar_scheme(pencil.points, f, tolerance);
      if (!fit_failed || cert.residual < out.best_residual) out.best_residual = cert.residual;
    }
    fit_failed = true;
    out.failure = FermatFailure::residual;
    if (pencil.exact_points) break;
  }
  if (fit_failed) out.failure = FermatFailure::residual;
  return out;
}

}  // namespace apolar
