#include <gtest/gtest.h>

#include "apolar/exact_matrix.hpp"
#include "apolar/numeric.hpp"
#include "apolar/polynomial.hpp"
#include "apolar/rational.hpp"
#include "apolar/univariate.hpp"
#include "oracles.hpp"

using namespace apolar;

TEST(Rational, ParsesAndPrints) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("+2/3"), Rational(2, 3));
  EXPECT_EQ(to_string(Rational(-3, 2)), "-3/2");
  EXPECT_EQ(to_string(Rational(4)), "4");
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(ExactMatrix, RankMatchesBareissOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto r = static_cast<std::size_t>(rng.uniform(1, 6));
    const auto c = static_cast<std::size_t>(rng.uniform(1, 6));
    // Low-rank products hit the interesting cases.
    const auto inner = static_cast<std::size_t>(rng.uniform(1, 6));
    ExactMatrix a(r, inner), b(inner, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < inner; ++j) a(i, j) = ratio(rng.uniform(-3, 3), rng.uniform(1, 3));
    for (std::size_t i = 0; i < inner; ++i)
      for (std::size_t j = 0; j < c; ++j) b(i, j) = Rational(rng.uniform(-3, 3));
    const ExactMatrix m = a * b;
    std::vector<RationalVector> rows;
    for (std::size_t i = 0; i < r; ++i) rows.push_back(m.row(i));
    EXPECT_EQ(m.rank(), oracle::rank(rows));
    EXPECT_EQ(m.rank(), m.transpose().rank());
    for (const auto& k : m.kernel()) {
      const auto img = m.apply(k);
      for (const auto& x : img) EXPECT_EQ(x, 0);
    }
    EXPECT_EQ(m.kernel().size(), c - m.rank());
  }
}

TEST(ExactMatrix, InverseDeterminantSolve) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 5));
    const ExactMatrix m = oracle::random_invertible(n, rng);
    const auto inv_opt = m.inverse();
    ASSERT_TRUE(inv_opt.has_value());
    const ExactMatrix& inv = *inv_opt;
    EXPECT_EQ(m * inv, ExactMatrix::identity(n));
    // Row scalings by 1 and 2 on a unimodular product.
    EXPECT_EQ(abs(m.determinant()), Rational(1L << (n / 2)));
    RationalVector b(n);
    for (auto& x : b) x = Rational(rng.uniform(-9, 9));
    const auto x = m.solve(b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(m.apply(*x), b);
  }
  const ExactMatrix singular = ExactMatrix::from_rows({{1, 2}, {2, 4}});
  EXPECT_EQ(singular.determinant(), 0);
  EXPECT_FALSE(singular.solve(RationalVector{1, 0}).has_value());
  EXPECT_TRUE(singular.solve(RationalVector{1, 2}).has_value());
}

TEST(Polynomial, MonomialBasisSizesAndOrder) {
  EXPECT_EQ(monomial_basis(3, 2).size(), 6u);
  EXPECT_EQ(monomial_basis(5, 3).size(), 35u);
  const auto b = monomial_basis(2, 2);
  EXPECT_EQ(b[0].exps, (std::vector<unsigned>{2, 0}));
  EXPECT_EQ(b[2].exps, (std::vector<unsigned>{0, 2}));
  const MonomialIndex idx(4, 3);
  for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(idx.at(idx[i]), i);
}

TEST(Polynomial, ArithmeticAndEvaluation) {
  const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const Polynomial s = x + y;
  const Polynomial cube = s * s * s;
  EXPECT_EQ(cube.coefficient(Monomial({2, 1})), 3);
  EXPECT_EQ(cube.evaluate(std::vector<Rational>{Rational(1, 2), Rational(3, 2)}), 8);
  EXPECT_TRUE((cube - cube).is_zero());
  EXPECT_THROW(x + x * y, InputError);
}

TEST(Polynomial, ContractMatchesIteratedPartials) {
  Rng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 4));
    const auto d = static_cast<unsigned>(rng.uniform(0, 5));
    const auto e = static_cast<unsigned>(rng.uniform(0, 5));
    const auto f = oracle::random_form(n, d, rng, 4, 60);
    const auto dual = oracle::random_form(n, e, rng, 4, 60);
    EXPECT_EQ(contract(dual, f), oracle::differentiate(dual, f));
  }
}

TEST(Polynomial, ContractSpecificValues) {
  // d0^2 . x0^3 = 6 x0; the pairing of x^a with itself is a!.
  const Polynomial f = Polynomial::monomial(Monomial({3, 0}));
  const Polynomial d = Polynomial::monomial(Monomial({2, 0}));
  EXPECT_EQ(contract(d, f), 6 * Polynomial::variable(2, 0));
  EXPECT_EQ(pair(Polynomial::monomial(Monomial({2, 1})), Polynomial::monomial(Monomial({2, 1}))), 2);
  EXPECT_EQ(pair(Polynomial::monomial(Monomial({2, 1})), Polynomial::monomial(Monomial({1, 2}))), 0);
  EXPECT_TRUE(contract(Polynomial::monomial(Monomial({0, 4})), f).is_zero());
}

TEST(Polynomial, CoordinateChangesCompose) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const auto n = static_cast<std::size_t>(rng.uniform(2, 4));
    const auto f = oracle::random_form(n, 3, rng);
    const auto a = oracle::random_invertible(n, rng), b = oracle::random_invertible(n, rng);
    EXPECT_EQ(change_coordinates(change_coordinates(f, a), b), change_coordinates(f, a * b));
    std::vector<Rational> pt(n);
    for (auto& v : pt) v = ratio(rng.uniform(-4, 4), rng.uniform(1, 3));
    EXPECT_EQ(change_coordinates(f, a).evaluate(pt), f.evaluate(a.apply(pt)));
  }
  EXPECT_THROW(change_coordinates(oracle::fermat(2), ExactMatrix::from_rows({{1, 1}, {1, 1}})), InputError);
}

TEST(Univariate, GcdSquarefreeInverseInterpolate) {
  const UniPoly p{-1, 0, 1};   // t^2 - 1
  const UniPoly q{1, 2, 1};    // (t + 1)^2
  EXPECT_EQ(gcd(p, q).monic(), (UniPoly{1, 1}));
  EXPECT_TRUE(is_squarefree(p));
  EXPECT_FALSE(is_squarefree(q));
  const UniPoly m{1, 0, 1, 1};
  const UniPoly a{2, 1};
  EXPECT_EQ((a * inverse_mod(a, m)) % m, UniPoly::constant(1));
  std::vector<Rational> xs{0, 1, 2, 3}, ys;
  const UniPoly target{5, -1, 0, 2};
  for (const auto& x : xs) ys.push_back(target.evaluate(x));
  EXPECT_EQ(interpolate(xs, ys), target);
}

TEST(Numeric, RootsOfKnownPolynomials) {
  PrecisionGuard prec(128);
  // (t - 1/2)(t + 3)(t^2 + 1)
  const UniPoly p = UniPoly{-1, 2} * UniPoly{3, 1} * UniPoly{1, 0, 1};
  const auto roots = polynomial_roots(p);
  ASSERT_EQ(roots.size(), 4u);
  int exact = 0;
  for (const auto& r : roots)
    if (r.exact) {
      ++exact;
      EXPECT_TRUE(*r.exact == Rational(1, 2) || *r.exact == Rational(-3));
    }
  EXPECT_EQ(exact, 2);
  EXPECT_LT(root_residual(p, roots), Real(1e-30));
}

TEST(Numeric, LeastSquaresRecoversConsistentSolution) {
  PrecisionGuard prec(128);
  // Columns of very different norms: the small one must not be dropped.
  ComplexMatrix a{{Complex(1L), Complex(Real(1e-6))},
                  {Complex(2L), Complex(Real(3e-6))},
                  {Complex(1L), Complex(Real(-1e-6))}};
  const ComplexVector x{Complex(3L), Complex(Real(2e6))};
  ComplexVector b(3, Complex(0L));
  for (std::size_t i = 0; i < 3; ++i) b[i] = a[i][0] * x[0] + a[i][1] * x[1];
  const auto sol = least_squares(a, b);
  EXPECT_LT(abs(sol[0] - x[0]), Real(1e-20));
  EXPECT_LT(abs(sol[1] - x[1]) / Real(2e6), Real(1e-20));
}
