#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "xalg/multivector.hpp"

namespace {

using namespace gformal;
using namespace gformal::xalg;
using gformal::testing::FormSampler;

QForm e(int n, std::initializer_list<int> one_based, long coef = 1) {
  std::vector<int> idx;
  for (int i : one_based) idx.push_back(i - 1);
  return QForm::from_indices(n, idx, Rational(coef));
}

std::vector<Rational> unit(int n, int one_based) {
  std::vector<Rational> v(n, Rational(0));
  v[one_based - 1] = 1;
  return v;
}

TEST(Wedge, DisjointBlades) { EXPECT_EQ(wedge(e(4, {1, 2}), e(4, {3, 4})), e(4, {1, 2, 3, 4})); }

TEST(Wedge, SquareOfSumDoublesCrossTerms) {
  QForm w = e(4, {1, 2}) + e(4, {3, 4});
  EXPECT_EQ(wedge(w, w), e(4, {1, 2, 3, 4}, 2));
}

TEST(Wedge, CubeOfStandardSymplecticFormMatchesBruteForce) {
  QForm x = e(6, {1, 2}) + e(6, {3, 4}) + e(6, {5, 6});
  QForm brute = gformal::testing::wedge_oracle(gformal::testing::wedge_oracle(x, x), x);
  EXPECT_EQ(brute, QForm::volume(6) * Rational(6));
  EXPECT_EQ(wedge(wedge(x, x), x), brute);
}

TEST(Wedge, DimensionMismatchThrows) {
  EXPECT_THROW(wedge(e(4, {1}), e(5, {1})), Error);
}

TEST(Wedge, UnsortedIndicesCarrySign) { EXPECT_EQ(e(3, {2, 1}), e(3, {1, 2}, -1)); }

TEST(Interior, Basics) {
  EXPECT_EQ(interior(unit(2, 1), e(2, {1, 2})), e(2, {2}));
  EXPECT_TRUE(interior(unit(3, 3), e(3, {1, 2})).is_zero());
  EXPECT_EQ(interior(unit(3, 2), e(3, {1, 2, 3})), e(3, {1, 3}, -1));
}

TEST(Interior, RejectsScalarsAndBadLength) {
  EXPECT_THROW(interior(unit(3, 1), QForm::scalar(3, Rational(2))), Error);
  EXPECT_THROW(interior(unit(4, 1), e(3, {1})), Error);
}

TEST(Evaluate, Basics) {
  EXPECT_EQ(evaluate(e(2, {1, 2}), {unit(2, 1), unit(2, 2)}), 1);
  EXPECT_EQ(evaluate(e(2, {1, 2}), {unit(2, 2), unit(2, 1)}), -1);
  std::vector<std::vector<Rational>> frame;
  for (int i = 1; i <= 6; ++i) frame.push_back(unit(6, i));
  EXPECT_EQ(evaluate(QForm::volume(6), frame), 1);
  EXPECT_THROW(evaluate(e(3, {1, 2}), {unit(3, 1)}), Error);
}

TEST(Evaluate, AgreesWithDeterminantExpansion) {
  FormSampler s(11);
  for (int t = 0; t < 300; ++t) {
    int n = s.integer(3, 7), k = s.integer(1, std::min(n, 4));
    QForm a = s.form(n, k, 5);
    std::vector<std::vector<Rational>> vs;
    for (int i = 0; i < k; ++i) vs.push_back(s.vector(n));
    EXPECT_EQ(evaluate(a, vs), gformal::testing::evaluate_oracle(a, vs));
  }
}

TEST(TwoForm, RankAndKernel) {
  EXPECT_EQ(two_form_rank(e(6, {1, 2})), 2);
  EXPECT_EQ(two_form_kernel(e(6, {1, 2})).size(), 4u);
  QForm w = e(6, {1, 2}) + e(6, {3, 4});
  EXPECT_EQ(two_form_rank(w), 4);
  auto k = two_form_kernel(w);
  ASSERT_EQ(k.size(), 2u);
  for (const auto& v : k) EXPECT_TRUE(interior(v, w).is_zero());
  EXPECT_EQ(two_form_rank(QForm(6, 2)), 0);
  EXPECT_THROW(two_form_rank(e(6, {1, 2, 3})), Error);
}

TEST(Hodge, EuclideanExamples) {
  auto g = FrameMetric::euclidean(6);
  EXPECT_EQ(hodge_star(e(6, {1, 2}), g), e(6, {3, 4, 5, 6}));
  EXPECT_EQ(hodge_star(QForm::scalar(6, Rational(1)), g), QForm::volume(6));
  EXPECT_EQ(hodge_star(hodge_star(e(6, {1, 2}), g), g), e(6, {1, 2}));
}

TEST(Hodge, WedgeWithStarIsNormTimesVolume) {
  FormSampler s(5);
  auto g = FrameMetric::diagonal({Rational(1), Rational(4), Rational(9), make_rational(1, 4)});
  for (int t = 0; t < 100; ++t) {
    int k = s.integer(0, 4);
    QForm a = s.form(4, k, 3);
    EXPECT_EQ(wedge(a, hodge_star(a, g)), volume_form(g) * inner_product(a, a, g));
  }
}

TEST(Hodge, RejectsBadMetrics) {
  QMatrix indefinite = QMatrix::identity(3);
  indefinite(2, 2) = -1;
  EXPECT_THROW(FrameMetric{indefinite}, Error);
  QMatrix skew = QMatrix::identity(2);
  skew(0, 1) = 1;
  EXPECT_THROW(FrameMetric{skew}, Error);
  QMatrix full = QMatrix::identity(2);
  full(0, 1) = full(1, 0) = make_rational(1, 2);
  EXPECT_THROW(hodge_star(e(2, {1}), FrameMetric(full)), Error);
}

TEST(Hodge, IrrationalVolumeNeedsUnnormalizedStar) {
  auto g = FrameMetric::diagonal({Rational(2), Rational(1)});
  EXPECT_THROW(hodge_star(e(2, {1}), g), Error);
  EXPECT_EQ(hodge_star_unnormalized(e(2, {1}), g), e(2, {2}, 1) * make_rational(1, 2));
}

TEST(Lefschetz, StandardFormIsInvertible) {
  QForm w = e(6, {1, 2}) + e(6, {3, 4}) + e(6, {5, 6});
  auto m = lefschetz_matrix(w);
  ASSERT_EQ(m.rows(), 15u);
  EXPECT_NE(determinant(m), 0);
  EXPECT_EQ(determinant(lefschetz_matrix(e(6, {1, 2}))), 0);
  EXPECT_TRUE(lefschetz_matrix(QForm(6, 2)).is_zero());
  EXPECT_THROW(lefschetz_matrix(e(4, {1, 2})), Error);
}

TEST(Pullback, FrameChangePreservesRank) {
  FormSampler s(3);
  QForm w = e(6, {1, 2}) + e(6, {3, 4});
  for (int t = 0; t < 20; ++t) {
    QMatrix g(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) g(i, j) = s.integer(-2, 2);
    if (determinant(g) == 0) continue;
    EXPECT_EQ(two_form_rank(pullback(w, g)), 4);
  }
}

TEST(Multivector, InvariantsHold) {
  EXPECT_THROW(QForm(17), Error);
  QForm a(4, 2);
  EXPECT_THROW(a.add(0b111, Rational(1)), Error);
  EXPECT_THROW(a.add(0b10000, Rational(1)), Error);
  a.add(0b11, Rational(1));
  a.add(0b11, Rational(-1));
  EXPECT_TRUE(a.is_zero());
  EXPECT_EQ((e(4, {1, 2}) + e(4, {2, 3}, 3)).str(), "e1^e2 + 3*e2^e3");
}

}  // namespace

#include "support/xalg_laws.hpp"

namespace {
using namespace gformal::testing;
TEST(Laws, Associativity) { EXPECT_EQ(check_associativity(500, 1), 0); }
TEST(Laws, GradedCommutativity) { EXPECT_EQ(check_graded_commutativity(500, 2), 0); }
TEST(Laws, Antiderivation) { EXPECT_EQ(check_antiderivation(500, 3), 0); }
TEST(Laws, Alternation) { EXPECT_EQ(check_alternation(500, 4), 0); }
TEST(Laws, StarSignLaw) { EXPECT_EQ(check_star_sign_law(200, 5), 0); }
TEST(Laws, LefschetzIffNondegenerate) { EXPECT_EQ(check_lefschetz_equivalence(200, 6), 0); }
}  // namespace
