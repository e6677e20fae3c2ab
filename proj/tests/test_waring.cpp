#include <gtest/gtest.h>

#include "apolar/waring.hpp"
#include "oracles.hpp"

using namespace apolar;

namespace {

bool proportional_rows(const RationalVector& a, const RationalVector& b) {
  return ExactMatrix::from_rows({a, b}).rank() == 1;
}

// Each row of m is proportional to exactly one form, and vice versa.
bool forms_match_rows(const std::vector<RationalVector>& forms, const ExactMatrix& m) {
  if (forms.size() != m.rows()) return false;
  std::vector<bool> used(forms.size(), false);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    bool hit = false;
    for (std::size_t i = 0; i < forms.size() && !hit; ++i)
      if (!used[i] && proportional_rows(forms[i], m.row(r))) used[i] = hit = true;
    if (!hit) return false;
  }
  return true;
}

}  // namespace

TEST(Gram, MatrixOfQuadric) {
  // x0^2 + 4 x0 x1 - x1^2
  Polynomial q(2, 2);
  q.add_term(Monomial({2, 0}), 1);
  q.add_term(Monomial({1, 1}), 4);
  q.add_term(Monomial({0, 2}), -1);
  EXPECT_EQ(gram_matrix(q), ExactMatrix::from_rows({{1, 2}, {2, -1}}));
  EXPECT_THROW(gram_matrix(oracle::fermat(2)), InputError);
}

TEST(Pencil, DiagonalPairGivesCoordinateForms) {
  Polynomial q(3, 2), q2(3, 2);
  for (std::size_t i = 0; i < 3; ++i) {
    q.add_term(Monomial::variable(3, i, 2), 1);
    q2.add_term(Monomial::variable(3, i, 2), static_cast<long>(i + 1));
  }
  const auto p = simultaneous_diagonalize(q, q2);
  ASSERT_EQ(p.status, PencilStatus::ok);
  ASSERT_TRUE(p.exact_points.has_value());
  EXPECT_TRUE(forms_match_rows(*p.exact_points, ExactMatrix::identity(3)));
  EXPECT_EQ(p.characteristic.degree(), 3);
}

TEST(Pencil, RepeatedEigenvalueAndSingularPencil) {
  // Q = x0^2, Q' = 3 x0^2: every member is singular.
  Polynomial q(2, 2), q2(2, 2);
  q.add_term(Monomial({2, 0}), 1);
  EXPECT_EQ(simultaneous_diagonalize(q, 3 * q).status, PencilStatus::singular_pencil);
  // Q = x0^2, Q' = x0 x1: nonsingular members exist but share a double eigenvalue.
  q2.add_term(Monomial({1, 1}), 1);
  EXPECT_EQ(simultaneous_diagonalize(q, q2).status, PencilStatus::non_simple_spectrum);
  // Q = x0^2 + x1^2, Q' = 2 Q: proportional pencil, double eigenvalue.
  Polynomial a(2, 2);
  a.add_term(Monomial({2, 0}), 1);
  a.add_term(Monomial({0, 2}), 1);
  EXPECT_EQ(simultaneous_diagonalize(a, 2 * a).status, PencilStatus::non_simple_spectrum);
}

TEST(Fermat, DetectsTransformedFermatExactly) {
  Rng rng(41);
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto m = oracle::random_invertible(n, rng);
    const auto f = change_coordinates(oracle::fermat(n), m);
    Rng draw(n);
    const auto r = fermat_detect(f, draw, Real(1e-10));
    ASSERT_TRUE(r) << "n=" << n << ": " << to_string(r.failure);
    EXPECT_EQ(r.decomposition->rank(), n);
    ASSERT_TRUE(r.decomposition->exact());
    EXPECT_TRUE(forms_match_rows(*r.decomposition->exact_forms, m));
    // Independent reconstruction from the returned forms and weights.
    Polynomial sum(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
      const auto l = Polynomial::linear((*r.decomposition->exact_forms)[i]);
      sum = sum + (*r.decomposition->exact_weights)[i] * (l * l * l);
    }
    EXPECT_EQ(sum, f);
  }
}

TEST(Fermat, RejectsNonFermatCubics) {
  PrecisionGuard prec(128);
  Rng draw(1);
  // x0^2 x1 has rank 3 in two variables: full catalecticant but not Fermat.
  const auto r1 = fermat_detect(Polynomial::monomial(Monomial({2, 1})), draw, Real(1e-10));
  EXPECT_FALSE(r1);
  EXPECT_EQ(r1.failure, FermatFailure::non_simple_spectrum);
  // Degenerate: a cube of a linear form in three variables.
  const auto l = Polynomial::linear(std::vector<Rational>{1, 1, 0});
  EXPECT_EQ(fermat_detect(l * l * l, draw, Real(1e-10)).failure, FermatFailure::degenerate);
  // A general ternary cubic has rank 4 > 3.
  Rng rng(7);
  int rejected = 0;
  for (int i = 0; i < 5; ++i) rejected += !fermat_detect(oracle::random_form(3, 3, rng, 9), draw, Real(1e-10));
  EXPECT_EQ(rejected, 5);
  EXPECT_THROW(fermat_detect(oracle::fermat(3, 4), draw, Real(1e-10)), InputError);
}

TEST(Fermat, IrrationalFormsFoundNumerically) {
  PrecisionGuard prec(128);
  // Hesse-pencil member: a sum of three cubes with forms over Q(sqrt(-3)).
  Polynomial f = oracle::fermat(3);
  f.add_term(Monomial({1, 1, 1}), 6);
  Rng draw(3);
  const auto r = fermat_detect(f, draw, Real(1e-10));
  ASSERT_TRUE(r);
  EXPECT_FALSE(r.decomposition->exact());
  EXPECT_EQ(r.decomposition->rank(), 3u);
  EXPECT_LT(r.decomposition->residual, Real(1e-30));
}

TEST(Waring, LowerBoundIsCatalecticantRank) {
  EXPECT_EQ(rank_lower_bound(oracle::fermat(4)), 4u);
  const auto l = Polynomial::linear(std::vector<Rational>{1, 2, 3});
  EXPECT_EQ(rank_lower_bound(l * l * l), 1u);
  EXPECT_THROW(rank_lower_bound(oracle::fermat(2, 2)), InputError);
}

TEST(Waring, PowerSumFitExactAndNumeric) {
  PrecisionGuard prec(128);
  const std::vector<RationalVector> pts{{1, 1}, {1, -1}, {0, 1}};
  const auto x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  const Polynomial f = x * x * y;  // in the span of the three cubes
  const auto d = power_sum_fit(pts, f);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->rank(), 3u);
  const auto dn = power_sum_fit(std::vector<ComplexVector>{to_complex(pts[0]), to_complex(pts[1]), to_complex(pts[2])},
                                f, Real(1e-10));
  ASSERT_TRUE(dn.has_value());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LT(abs(dn->weights[i] - Complex((*d->exact_weights)[i])), Real(1e-30));
  EXPECT_FALSE(power_sum_fit(std::vector<RationalVector>{pts[0], pts[1]}, f).has_value());
}
