#include <gtest/gtest.h>

#include <complex>

#include "liealg/lie_algebra.hpp"

namespace {

using namespace gformal;
using namespace gformal::liealg;

TEST(SuN, Dimensions) {
  EXPECT_EQ(su(2)->dimension(), 3);
  EXPECT_EQ(su(3)->dimension(), 8);
  EXPECT_EQ(su(4)->dimension(), 15);
  EXPECT_THROW(su(1), Error);
  EXPECT_THROW(su(5), Error);
}

TEST(SuN, KillingIsNegativeDefiniteAndInvariant) {
  for (int n = 2; n <= 4; ++n) {
    auto g = su(n);
    auto b = killing_form(*g);
    QMatrix neg = b;
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) neg(i, j) = -b(i, j);
    EXPECT_TRUE(positive_definite(neg)) << n;
    EXPECT_TRUE(is_ad_invariant(*g, b)) << n;
  }
}

// Oracle: Killing form of su(n) equals 2n * Re tr(XY) on explicit matrices.
TEST(SuN, KillingMatchesTraceFormula) {
  const int n = 3;
  auto g = su(n);
  using C = std::complex<double>;
  auto matrix_of = [&](const std::string& label) {
    std::vector<C> m(n * n);
    int j = label[1] - '1';
    if (label[0] == 'D') {
      m[j * n + j] = C(0, 1);
      m[(j + 1) * n + j + 1] = C(0, -1);
      return m;
    }
    int k = label[2] - '1';
    if (label[0] == 'A') {
      m[j * n + k] = 1;
      m[k * n + j] = -1;
    } else {
      m[j * n + k] = C(0, 1);
      m[k * n + j] = C(0, 1);
    }
    return m;
  };
  auto b = killing_form(*g);
  for (int p = 0; p < g->dimension(); ++p)
    for (int q = 0; q < g->dimension(); ++q) {
      auto x = matrix_of(g->labels()[p]), y = matrix_of(g->labels()[q]);
      C tr = 0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) tr += x[i * n + k] * y[k * n + i];
      EXPECT_DOUBLE_EQ(b(p, q).get_d(), 2 * n * tr.real()) << p << "," << q;
    }
}

TEST(Sl3, ChevalleyRelations) {
  auto g = sl3_chevalley();
  auto v = [&](const char* s) { return g->basis_vector(s); };
  auto scaled = [](QVector x, long s) {
    for (auto& c : x) c *= s;
    return x;
  };
  EXPECT_EQ(g->bracket(v("H1"), v("E1")), scaled(v("E1"), 2));
  EXPECT_EQ(g->bracket(v("H1"), v("F1")), scaled(v("F1"), -2));
  EXPECT_EQ(g->bracket(v("E1"), v("F1")), v("H1"));
  EXPECT_EQ(g->bracket(v("E2"), v("F2")), v("H2"));
  EXPECT_EQ(g->bracket(v("H1"), v("E2")), scaled(v("E2"), -1));
  EXPECT_EQ(g->bracket(v("H2"), v("E1")), scaled(v("E1"), -1));
  EXPECT_EQ(g->bracket(v("H2"), v("E2")), scaled(v("E2"), 2));
  EXPECT_EQ(g->bracket(v("E1"), v("E2")), v("E3"));
}

// Oracle: 6 tr(XY) on the defining 3x3 matrices.
TEST(Sl3, KillingValues) {
  auto g = sl3_chevalley();
  auto b = killing_form(*g);
  int e1 = g->require_index("E1"), f1 = g->require_index("F1"), h1 = g->require_index("H1");
  EXPECT_EQ(b(e1, f1), 6);
  EXPECT_EQ(b(e1, e1), 0);
  EXPECT_EQ(b(h1, h1), 12);
  EXPECT_EQ(b(h1, g->require_index("H2")), -6);
  EXPECT_TRUE(is_ad_invariant(*g, b));
}

TEST(Sl3, EtaIsClosedAndSatisfiesCaseFormulas) {
  auto g = sl3_chevalley();
  auto b = killing_form(*g);
  auto eta = biinvariant_three_form(*g, b);
  EXPECT_TRUE(ce_differential(g->structure(), eta).is_zero());
  const Rational bef = b(g->require_index("E1"), g->require_index("F1"));
  for (int a = -2; a <= 2; ++a)
    for (int bb = -2; bb <= 2; ++bb)
      for (int c = -2; c <= 2; ++c)
        for (int d = -2; d <= 2; ++d) {
          QVector x(8, Rational(0));
          x[0] = a;
          x[1] = bb;
          x[2] = c;
          x[5] = d;
          auto E1 = g->basis_vector("E1"), F1 = g->basis_vector("F1"), H1 = g->basis_vector("H1");
          EXPECT_EQ(xalg::evaluate(eta, {E1, H1, x}), -2 * d * bef);
          if (d == 0) EXPECT_EQ(xalg::evaluate(eta, {F1, H1, x}), 2 * c * bef);
          if (c == 0 && d == 0) EXPECT_EQ(xalg::evaluate(eta, {F1, x, E1}), (2 * a - bb) * bef);
        }
}

TEST(Torus, Elements) {
  auto t = torus_element(1, 1);
  EXPECT_EQ(t[0], 1);
  EXPECT_EQ(t[1], 2);  // i diag(1,1,-2) = D1 + 2 D2
  auto d = torus_element(1, -1, true);
  EXPECT_EQ(d[0], 1);
  EXPECT_EQ(d[1], 0);
  EXPECT_THROW(torus_element(1, -1), Error);
  EXPECT_THROW(torus_element(2, 4), Error);
  EXPECT_THROW(torus_element(0, 0, true), Error);
}

TEST(Split, Dimensions) {
  auto g3 = su(3);
  EXPECT_EQ(reductive_split(g3, Subalgebra(g3, {torus_element(1, 1)})).dim_m(), 7);
  EXPECT_EQ(reductive_split(g3, Subalgebra(g3, {g3->basis_vector("D1"), g3->basis_vector("D2")})).dim_m(), 6);
  auto g4 = su(4);
  Subalgebra block(g4, {g4->basis_vector("D1"), g4->basis_vector("A12"), g4->basis_vector("S12")});
  auto s = reductive_split(g4, block);
  EXPECT_EQ(s.dim_m(), 12);
  // Complement is -B-orthogonal.
  for (int i = 0; i < s.dim_m(); ++i)
    for (int j = 0; j < i; ++j) {
      Rational t(0);
      for (int p = 0; p < 15; ++p)
        for (int q = 0; q < 15; ++q) t += s.complement()[i][p] * s.form()(p, q) * s.complement()[j][q];
      EXPECT_EQ(t, 0);
    }
}

TEST(Split, RejectsNonSubalgebraAndNoncompact) {
  auto g3 = su(3);
  EXPECT_THROW(Subalgebra(g3, {g3->basis_vector("A12"), g3->basis_vector("A13")}), Error);
  auto sl = sl3_chevalley();
  EXPECT_THROW(reductive_split(sl, Subalgebra(sl, {sl->basis_vector("H1")})), Error);
}

TEST(Algebra, RejectsJacobiViolation) {
  StructureTensor t(3);
  t(0, 1, 2) = 1;
  t(1, 0, 2) = -1;
  t(1, 2, 0) = 1;
  t(2, 1, 0) = -1;
  t(0, 2, 0) = 1;
  t(2, 0, 0) = -1;
  EXPECT_THROW(LieAlgebra("bad", {"a", "b", "c"}, t), Error);
}

}  // namespace
