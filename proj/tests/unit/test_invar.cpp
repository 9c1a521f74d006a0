#include <gtest/gtest.h>

#include "invar/invariant_complex.hpp"

namespace {

using namespace gformal;
using namespace gformal::invar;

TEST(AloffWallach, InvariantBasisSmallDegrees) {
  auto s = aloff_wallach(1, 1);
  EXPECT_EQ(s.dim_m(), 7);
  auto c = InvariantComplex::build(s);
  EXPECT_EQ(c.dimension(0), 1);
  EXPECT_GE(c.dimension(2), 1);
  EXPECT_TRUE(c.d_squared_zero());
  EXPECT_TRUE(c.invariance_verified());
  EXPECT_TRUE(c.differential(7).rows() == 0);
}

TEST(AloffWallach, BettiAndNonFormality) {
  auto c = InvariantComplex::build(aloff_wallach(1, 1));
  EXPECT_EQ(betti(c), (std::vector<int>{1, 0, 1, 0, 0, 1, 0, 1}));
  auto h = harmonic_basis(c);
  EXPECT_EQ(h.dimension(2), 1);
  auto r = formality_probe(c, h);
  EXPECT_EQ(r.verdict, FormalityVerdict::NotFormal);
  bool square_of_two_form = false;
  for (const auto& f : r.failures)
    if (f.degree_a == 2 && f.degree_b == 2) square_of_two_form = sgn(f.norm_squared) > 0;
  EXPECT_TRUE(square_of_two_form);
}

TEST(AloffWallach, ConnectionFormIsHorizontal) {
  auto r = aw_connection_form(1, 1);
  EXPECT_FALSE(r.d_alpha.is_zero());
  EXPECT_TRUE(r.horizontal);
}

TEST(AloffWallach, DegenerateNeedsOverride) {
  EXPECT_THROW(aloff_wallach(1, -1), Error);
  auto c = InvariantComplex::build(aloff_wallach(1, -1, true));
  EXPECT_EQ(betti(c), (std::vector<int>{1, 0, 1, 0, 0, 1, 0, 1}));
  EXPECT_EQ(formality_probe(c, harmonic_basis(c)).verdict, FormalityVerdict::NotFormal);
}

TEST(Flag, Betti) {
  auto c = InvariantComplex::build(flag_su3());
  EXPECT_EQ(c.dimension(1), 0);
  EXPECT_EQ(betti(c), (std::vector<int>{1, 0, 2, 0, 2, 0, 1}));
}

TEST(PartialRange, DegreesZeroToThree) {
  auto c = InvariantComplex::build(aloff_wallach(1, 1), 0, 3);
  EXPECT_EQ(betti(c), (std::vector<int>{1, 0, 1, 0}));
  EXPECT_FALSE(c.built(5));
  EXPECT_THROW(c.dimension(6), Error);
}

TEST(TopDegree, Patterns) {
  EXPECT_EQ(formality_by_top_degree({1, 0, 0, 0, 1, 0, 0, 0, 1}).pattern, TopDegreePattern::AppliesP1);
  auto prod = formality_by_top_degree({1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1});
  EXPECT_EQ(prod.pattern, TopDegreePattern::AppliesProd);
  EXPECT_EQ(prod.p, 5);
  EXPECT_EQ(prod.q, 7);
  EXPECT_EQ(formality_by_top_degree({1, 0, 1, 0, 0, 1, 0, 1}).pattern, TopDegreePattern::NotApplicable);
  EXPECT_THROW(formality_by_top_degree({0, 1}), Error);
  EXPECT_THROW(formality_by_top_degree({1}), Error);
}

TEST(AwContraction, RankAndIdentities) {
  for (auto [k, l, deg] : {std::tuple{1, 1, false}, std::tuple{1, 2, false}, std::tuple{1, -1, true}}) {
    auto r = aw_contraction_check(k, l, deg);
    EXPECT_EQ(r.rank_on_l, 4);
    EXPECT_EQ(r.rank_on_g, 8);
    EXPECT_TRUE(r.eta_closed);
    EXPECT_EQ(r.dim_m, 7);
    for (const auto& id : r.identities) {
      EXPECT_TRUE(id.symbolic) << id.name;
      EXPECT_EQ(id.grid_failures, 0) << id.name;
      EXPECT_GT(id.grid_points, 0);
    }
    EXPECT_TRUE(r.dimension_contradiction);
  }
  EXPECT_THROW(aw_contraction_check(2, 4), Error);
}

TEST(Spaces, DisconnectedIsotropyRejected) {
  SpaceRequest req;
  req.name = "flag-su3";
  req.isotropy_connected = false;
  EXPECT_THROW(make_space(req), Error);
  req.isotropy_connected = true;
  req.name = "nope";
  EXPECT_THROW(make_space(req), Error);
}

TEST(Spaces, Spheres) {
  auto s2 = InvariantComplex::build(sphere_quotient(2));
  EXPECT_EQ(betti(s2), (std::vector<int>{1, 0, 1}));
  auto s5 = InvariantComplex::build(sphere_quotient(3));
  EXPECT_EQ(betti(s5), (std::vector<int>{1, 0, 0, 0, 0, 1}));
  EXPECT_EQ(formality_by_top_degree(betti(s5)).pattern, TopDegreePattern::AppliesP1);
}

TEST(Spaces, MetricRescalingKeepsBetti) {
  SpaceRequest req;
  req.name = "flag-su3";
  req.scales = {Rational(1), Rational(1), Rational(2), Rational(2), Rational(3), Rational(3)};
  auto c = InvariantComplex::build(make_space(req));
  EXPECT_EQ(betti(c), (std::vector<int>{1, 0, 2, 0, 2, 0, 1}));
  auto h = harmonic_basis(c);
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(h.dimension(k), betti(c)[k]);
}

}  // namespace

namespace {
TEST(Su4Su2, BettiAndFormality) {
  auto c = gformal::invar::InvariantComplex::build(gformal::invar::su4_mod_su2());
  auto b = gformal::invar::betti(c);
  std::vector<int> expected(13, 0);
  expected[0] = expected[5] = expected[7] = expected[12] = 1;
  EXPECT_EQ(b, expected);
  auto h = gformal::invar::harmonic_basis(c);
  EXPECT_EQ(h.dimension(6), 0);
  EXPECT_EQ(gformal::invar::formality_probe(c, h).verdict, gformal::invar::FormalityVerdict::FormalForThisMetric);
  EXPECT_EQ(gformal::invar::formality_by_top_degree(b).pattern, gformal::invar::TopDegreePattern::AppliesProd);
}
}  // namespace
