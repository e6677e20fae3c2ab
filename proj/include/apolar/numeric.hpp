#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "apolar/bigfloat.hpp"
#include "apolar/errors.hpp"
#include "apolar/univariate.hpp"

namespace apolar {

using ComplexMatrix = std::vector<ComplexVector>;  // row major

struct PolynomialRoot {
  Complex value;
  std::optional<Rational> exact;  // set when a rational root was confirmed exactly
};

inline Complex evaluate(const std::vector<Complex>& coeffs, const Complex& z) {
  Complex r(0L);
  for (std::size_t k = coeffs.size(); k-- > 0;) r = r * z + coeffs[k];
  return r;
}

/// All complex roots of a squarefree rational polynomial (Aberth-Ehrlich iteration
/// at the current working precision). Rational roots are recognized and confirmed
/// by exact evaluation.
inline std::vector<PolynomialRoot> polynomial_roots(const UniPoly& p) {
  if (p.is_zero()) throw InputError("roots of the zero polynomial");
  const int n = p.degree();
  std::vector<PolynomialRoot> out;
  if (n <= 0) return out;
  if (!is_squarefree(p)) throw CertificateError("polynomial has repeated roots");

  std::vector<Complex> a;
  for (const auto& c : p.coeffs()) a.emplace_back(c);
  std::vector<Complex> da;
  for (int k = 1; k <= n; ++k) da.push_back(a[k] * Complex(static_cast<long>(k)));

  std::vector<Complex> z(n);
  if (n == 1) {
    z[0] = -a[0] / a[1];
  } else {
    // Cauchy bound on the root moduli.
    Real bound(0L);
    const Real lead = abs(a[n]);
    for (int k = 0; k < n; ++k) {
      Real r = abs(a[k]) / lead;
      if (r > bound) bound = r;
    }
    bound += Real(1L);
    const Real two_pi = Real::pi() * Real(2L);
    for (int k = 0; k < n; ++k) {
      Real theta = two_pi * Real(static_cast<long>(k)) / Real(static_cast<long>(n)) + Real(0.4);
      z[k] = Complex::polar(bound * Real(0.5), theta);
    }
    const long bits = PrecisionGuard::current();
    const Real tiny = Real::exp2(-bits + 8);
    for (int iter = 0; iter < 2000; ++iter) {
      Real worst(0L);
      for (int k = 0; k < n; ++k) {
        const Complex pz = evaluate(a, z[k]);
        const Complex dpz = evaluate(da, z[k]);
        if (pz.norm().is_zero()) continue;
        const Complex w = pz / dpz;
        Complex s(0L);
        for (int j = 0; j < n; ++j)
          if (j != k) s += Complex(1L) / (z[k] - z[j]);
        const Complex step = w / (Complex(1L) - w * s);
        z[k] -= step;
        const Real scale = abs(z[k]) + Real(1L);
        const Real rel = abs(step) / scale;
        if (rel > worst) worst = rel;
      }
      if (worst <= tiny) break;
    }
  }
  // Newton polish.
  for (auto& root : z) {
    for (int it = 0; it < 3; ++it) {
      const Complex dpz = evaluate(da, root);
      if (dpz.norm().is_zero()) break;
      root -= evaluate(a, root) / dpz;
    }
  }
  const long bits = PrecisionGuard::current();
  const Integer max_den = Integer(1) << static_cast<unsigned>(std::min<long>(bits / 4, 64));
  for (auto& root : z) {
    PolynomialRoot r{root, std::nullopt};
    if (abs(root.im) <= (abs(root.re) + Real(1L)) * Real::exp2(-bits / 2)) {
      const Rational q = root.re.to_rational_approx(max_den);
      if (p.evaluate(q) == 0) {
        r.exact = q;
        r.value = Complex(q);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// Relative residual max |p(z)| / sum |a_k| |z|^k over the given roots.
inline Real root_residual(const UniPoly& p, const std::vector<PolynomialRoot>& roots) {
  std::vector<Complex> a;
  for (const auto& c : p.coeffs()) a.emplace_back(c);
  Real worst(0L);
  for (const auto& r : roots) {
    Real scale(0L), zk(1L);
    const Real az = abs(r.value);
    for (const auto& c : a) {
      scale += abs(c) * zk;
      zk *= az;
    }
    Real res = abs(evaluate(a, r.value)) / scale;
    if (res > worst) worst = res;
  }
  return worst;
}

/// Nonzero vector v with A v ~ 0 for a square matrix of (numerical) nullity one.
/// Gaussian elimination with complete pivoting; the last pivot is taken as zero.
inline ComplexVector null_vector(ComplexMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  std::vector<std::size_t> col(n);
  for (std::size_t j = 0; j < n; ++j) col[j] = j;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t br = k, bc = k;
    Real best(-1L);
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j) {
        Real m = a[i][col[j]].norm();
        if (m > best) { best = m; br = i; bc = j; }
      }
    std::swap(a[k], a[br]);
    std::swap(col[k], col[bc]);
    const Complex piv = a[k][col[k]];
    if (piv.norm().is_zero()) break;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a[i][col[k]] / piv;
      if (f.norm().is_zero()) continue;
      for (std::size_t j = k; j < n; ++j) a[i][col[j]] -= f * a[k][col[j]];
    }
  }
  ComplexVector x(n, Complex(0L));
  x[col[n - 1]] = Complex(1L);
  for (std::size_t k = n - 1; k-- > 0;) {
    Complex s(0L);
    for (std::size_t j = k + 1; j < n; ++j) s += a[k][col[j]] * x[col[j]];
    const Complex piv = a[k][col[k]];
    x[col[k]] = piv.norm().is_zero() ? Complex(0L) : -s / piv;
  }
  return x;
}

/// Minimizes |A x - b| by QR with re-orthogonalized Gram-Schmidt. Columns whose
/// remaining norm is negligible relative to their own norm are treated as
/// dependent and get x_j = 0.
inline ComplexVector least_squares(const ComplexMatrix& a, const ComplexVector& b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw InputError("least squares: right-hand side length mismatch");
  const std::size_t s = m == 0 ? 0 : a[0].size();
  std::vector<ComplexVector> q;       // orthonormal columns
  std::vector<std::size_t> used;      // which original column each q came from
  std::vector<ComplexVector> r(s, ComplexVector(s, Complex(0L)));
  const Real rel = Real::exp2(-PrecisionGuard::current() + 16);
  std::vector<bool> dependent(s, false);
  for (std::size_t j = 0; j < s; ++j) {
    ComplexVector v(m);
    Real orig(0L);
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = a[i][j];
      orig += v[i].norm();
    }
    const Real cutoff = orig * rel;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t t = 0; t < q.size(); ++t) {
        Complex dot(0L);
        for (std::size_t i = 0; i < m; ++i) dot += q[t][i].conj() * v[i];
        for (std::size_t i = 0; i < m; ++i) v[i] -= dot * q[t][i];
        r[t][j] += dot;
      }
    }
    Real nrm2(0L);
    for (const auto& z : v) nrm2 += z.norm();
    if (nrm2 <= cutoff) {
      dependent[j] = true;
      continue;
    }
    const Real nrm = sqrt(nrm2);
    for (auto& z : v) z /= Complex(nrm);
    r[q.size()][j] = Complex(nrm);
    q.push_back(std::move(v));
    used.push_back(j);
  }
  // y = Q^H b, then back substitution on the independent columns.
  const std::size_t k = q.size();
  ComplexVector y(k, Complex(0L));
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t i = 0; i < m; ++i) y[t] += q[t][i].conj() * b[i];
  ComplexVector x(s, Complex(0L));
  for (std::size_t t = k; t-- > 0;) {
    Complex acc = y[t];
    for (std::size_t u = t + 1; u < k; ++u) acc -= r[t][used[u]] * x[used[u]];
    x[used[t]] = acc / r[t][used[t]];
  }
  return x;
}

}  // namespace apolar
