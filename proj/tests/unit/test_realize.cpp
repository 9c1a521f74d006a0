#include <gtest/gtest.h>

#include <random>

#include "realize/certificate.hpp"
#include "realize/form_expr.hpp"
#include "realize/problem.hpp"
#include "support/realize_oracles.hpp"

namespace {

using namespace gformal;
using namespace gformal::realize;
using gformal::testing::two_blade;
using xalg::QForm;

Rational q(long n, long d = 1) { return make_rational(n, d); }

RealizationProblem sphere(long c, bool independence = true) {
  return RealizationProblem::from_ring(grring::sphere_bundle_ring(q(c)), independence);
}

double residual_of(const RealizationProblem& p, const std::vector<QForm>& forms) {
  Layout lay(p);
  return residual(p, lay.pack(p, gformal::testing::to_float(forms)));
}

// ---- residual ---------------------------------------------------------------

TEST(Residual, TrivialBundleWitnessIsExact) {
  auto p = sphere(0);
  auto w = gformal::testing::trivial_bundle_witness();
  EXPECT_EQ(gformal::testing::exact_witness_volume(p, w), q(1));
  EXPECT_LT(residual_of(p, w), 1e-24);
}

TEST(Residual, ZeroAssignmentLeavesVolumeTerm) {
  auto p = sphere(0, false);
  EXPECT_DOUBLE_EQ(residual(p, std::vector<double>(Layout(p).size(), 0.0)), 1.0);
  // One independence term per grade group adds (t * 0 - 1)^2 = 1 at t = 0.
  auto pi = sphere(0, true);
  EXPECT_DOUBLE_EQ(residual(pi, std::vector<double>(Layout(pi).size(), 0.0)), 2.0);
}

TEST(Residual, NonNegativeAtRandomPoints) {
  std::mt19937_64 rng(11);
  auto p = RealizationProblem::from_ring(grring::named_ring("eschenburg-ex1"));
  for (int i = 0; i < 200; ++i) EXPECT_GE(residual(p, gformal::testing::random_point(Layout(p).size(), rng)), 0.0);
}

TEST(Residual, DependentWitnessIsPenalized) {
  // x = y satisfies no independence: the Gram determinant vanishes.
  auto p = sphere(0);
  QForm x = two_blade(6, 0, 1);
  EXPECT_GT(residual_of(p, {x, x}), 0.5);
}

TEST(Residual, RejectsWrongLength) { EXPECT_THROW(residual(sphere(1), {1.0, 2.0}), Error); }

TEST(Residual, TotaroDegenerateModelIsExact) {
  auto p = RealizationProblem::from_ring(grring::totaro_ring(q(0), q(0)));
  auto model = gformal::testing::totaro_degenerate_model();
  Rational v = gformal::testing::exact_witness_volume(p, model);
  ASSERT_NE(sgn(v), 0);
  // Rescale every variable by v^(-1/3) so the volume coefficient becomes 1.
  double s = std::cbrt(1.0 / v.get_d());
  auto f = gformal::testing::to_float(model);
  for (auto& form : f) form *= s;
  Layout lay(p);
  EXPECT_LT(residual(p, lay.pack(p, f)), 1e-20);
}

class GradientCheck : public ::testing::TestWithParam<std::string> {};

grring::RingPresentation builtin(const std::string& name) {
  if (name == "sphere0") return grring::sphere_bundle_ring(q(0));
  if (name == "sphere1") return grring::sphere_bundle_ring(q(1));
  if (name == "sphere-2") return grring::sphere_bundle_ring(q(-2));
  if (name == "totaro11") return grring::totaro_ring(q(1), q(1));
  if (name == "totaro00") return grring::totaro_ring(q(0), q(0));
  if (name == "wedge24") return grring::wedge_ring(2, 4);
  return grring::named_ring(name);
}

TEST_P(GradientCheck, MatchesCentralDifferences) {
  auto p = RealizationProblem::from_ring(builtin(GetParam()));
  std::mt19937_64 rng(7);
  double worst = 0;
  for (int i = 0; i < 1000; ++i)
    worst = std::max(worst, gformal::testing::fd_relative_error(p, gformal::testing::random_point(Layout(p).size(), rng)));
  EXPECT_LT(worst, 1e-6);
}

INSTANTIATE_TEST_SUITE_P(Builtins, GradientCheck,
                         ::testing::Values("sphere0", "sphere1", "sphere-2", "eschenburg-ex1", "eschenburg-ex2",
                                           "flag-su3", "totaro11", "totaro00", "wedge24"));

TEST(GradientCheck, DirectionalOnLargeProblem) {
  auto p = RealizationProblem::from_ring(grring::wedge_ring(5, 7));
  std::mt19937_64 rng(8);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    auto x = gformal::testing::random_point(Layout(p).size(), rng);
    worst = std::max(worst, gformal::testing::fd_directional_error(p, x, gformal::testing::random_direction(x.size(), rng)));
  }
  EXPECT_LT(worst, 1e-6);
}

// ---- search -----------------------------------------------------------------

TEST(Search, TrivialBundleIsFound) {
  auto out = search(sphere(0), SearchConfig{});
  EXPECT_EQ(out.status, SearchStatus::FeasibleFound);
  EXPECT_LT(out.best_residual, 1e-10);
  EXPECT_LE(out.best_residual, SearchConfig{}.feasibility_threshold);
}

TEST(Search, ProductRingIsFound) {
  auto out = search(RealizationProblem::from_ring(grring::wedge_ring(2, 4)), SearchConfig{});
  EXPECT_EQ(out.status, SearchStatus::FeasibleFound);
}

TEST(Search, NontrivialBundleStaysAwayFromZero) {
  SearchConfig cfg;
  cfg.restarts = 16;
  auto out = search(sphere(1), cfg);
  EXPECT_EQ(out.status, SearchStatus::NoSolutionFound);
  EXPECT_GT(out.best_residual, 1e-3);
  EXPECT_EQ(out.restarts_run, 16);
}

TEST(Search, DeterministicGivenSeed) {
  SearchConfig cfg;
  cfg.restarts = 8;
  cfg.seed = 7;
  auto p = sphere(2);
  auto a = search(p, cfg), b = search(p, cfg);
  EXPECT_EQ(a.best_residual, b.best_residual);
  EXPECT_EQ(a.best_assignment, b.best_assignment);
  EXPECT_EQ(a.restart_residuals, b.restart_residuals);
  EXPECT_EQ(a.iterations, b.iterations);
  cfg.seed = 8;
  EXPECT_NE(search(p, cfg).restart_residuals, a.restart_residuals);
}

TEST(Search, RestartSeedsDiffer) {
  EXPECT_NE(restart_seed(1, 0), restart_seed(1, 1));
  EXPECT_NE(restart_seed(1, 0), restart_seed(2, 0));
  EXPECT_EQ(restart_seed(5, 3), restart_seed(5, 3));
}

TEST(Search, ScalingMapsWitnessesToWitnesses) {
  auto p = sphere(0);
  auto out = search(p, SearchConfig{});
  ASSERT_EQ(out.status, SearchStatus::FeasibleFound);
  Layout lay(p);
  for (double t : {0.5, 2.0, -3.0}) {
    // x -> t x, y -> y / t^2 keeps x^2 y and, with c = 0, both relations.
    auto x = lay.form(out.best_assignment, 0, 6) * t;
    auto y = lay.form(out.best_assignment, 1, 6) * (1.0 / (t * t));
    EXPECT_LT(residual(p, lay.pack(p, {x, y})), 1e-9) << t;
  }
}

TEST(Search, ConfigValidation) {
  SearchConfig cfg;
  cfg.feasibility_threshold = 1e-13;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = SearchConfig{};
  cfg.restarts = 0;
  EXPECT_THROW(cfg.validate(), Error);
}

// ---- form expressions -------------------------------------------------------

TEST(FormExpr, EvaluatesWedgeInteriorAndPowers) {
  FormEnv env;
  env.n = 4;
  env.forms.emplace("x", two_blade(4, 0, 1) + two_blade(4, 2, 3));
  env.vectors["v"] = {q(1), q(0), q(0), q(0)};
  EXPECT_EQ(FormExpr::parse("x^2").eval(env), QForm::volume(4) * q(2));
  EXPECT_EQ(FormExpr::parse("1/2*x*x - vol").eval(env), QForm(4));
  QForm e2(4, 1);
  e2.add(0b10, q(1));
  EXPECT_EQ(FormExpr::parse("i(v, x)").eval(env), e2);
  EXPECT_EQ(FormExpr::parse("-(i(v,x)) + i(v, x)").eval(env), QForm(4));
  EXPECT_EQ(FormExpr::parse("i(v, 3)").eval(env), QForm(4));
}

TEST(FormExpr, RejectsMalformedText) {
  EXPECT_THROW(FormExpr::parse("x +"), Error);
  EXPECT_THROW(FormExpr::parse("i(, x)"), Error);
  EXPECT_THROW(FormExpr::parse("x^"), Error);
  FormEnv env;
  env.n = 2;
  EXPECT_THROW(FormExpr::parse("y").eval(env), Error);
}

// ---- pointwise lemmas against independent constructions -------------------

// Sum of k random decomposable 2-forms: rank <= 2k without using normal forms.
QForm decomposable_sum(int n, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  QForm w(n, 2);
  for (int j = 0; j < k; ++j) {
    std::vector<Rational> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = d(rng);
      b[i] = d(rng);
    }
    w += gformal::testing::wedge_oracle(QForm::covector(a), QForm::covector(b));
  }
  return w;
}

TEST(Lemmas, CubeFreeTwoFormsHaveKernel) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    QForm x = decomposable_sum(6, 2, rng);
    QForm cube = gformal::testing::wedge_oracle(gformal::testing::wedge_oracle(x, x), x);
    ASSERT_TRUE(cube.is_zero());
    ASSERT_GE(xalg::two_form_kernel(x).size() + (x.is_zero() ? 6u : 0u), 2u);
  }
}

TEST(Lemmas, NondegenerateLefschetzIsInvertible) {
  std::mt19937_64 rng(4);
  int tested = 0;
  while (tested < 1000) {
    QForm w = decomposable_sum(6, 3, rng);
    if (xalg::power(w, 3).is_zero()) continue;
    ++tested;
    ASSERT_NE(sgn(determinant(xalg::lefschetz_matrix(w))), 0);
  }
}

// ---- certificates -----------------------------------------------------------

TEST(Certificate, RankKernelAcceptedWithThousandTrials) {
  auto c = certify_rank_kernel(q(1));
  EXPECT_EQ(c.verdict, CertificateVerdict::Infeasible);
  auto rep = verify_certificate(c, 1000, 1);
  EXPECT_TRUE(rep.accepted);
  for (const auto& s : rep.steps) {
    EXPECT_TRUE(s.passed) << s.id << ": " << s.message;
    EXPECT_EQ(s.failures, 0) << s.id;
    if (s.kind == StepKind::Sampled) EXPECT_EQ(s.trials, 1000) << s.id;
  }
}

TEST(Certificate, RankKernelFamily) {
  for (long c : {-5, -2, -1, 2}) {
    auto cert = certify_rank_kernel(q(c));
    EXPECT_EQ(cert.verdict, CertificateVerdict::Infeasible) << c;
    EXPECT_TRUE(verify_certificate(cert, 50, 2).accepted) << c;
  }
  auto half = certify_rank_kernel(q(1, 2));
  EXPECT_TRUE(verify_certificate(half, 50, 2).accepted);
}

TEST(Certificate, ZeroChernNumberIsInapplicable) {
  try {
    certify_rank_kernel(q(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PatternInapplicable);
  }
}

TEST(Certificate, SignFlipInContractionIsRejected) {
  auto c = certify_rank_kernel(q(1));
  std::size_t idx = 0;
  while (c.steps[idx].id != "rk.contract") ++idx;
  auto rep = verify_certificate(corrupt_step(c, idx), 100, 1);
  EXPECT_FALSE(rep.accepted);
  EXPECT_FALSE(rep.steps[idx].passed);
  for (std::size_t i = 0; i < rep.steps.size(); ++i)
    if (i != idx) EXPECT_TRUE(rep.steps[i].passed) << rep.steps[i].id;
}

TEST(Certificate, EveryCorruptedStepIsRejected) {
  for (const auto& cert : {certify_rank_kernel(q(-5)), certify_lefschetz(), certify_totaro(q(1), q(2)),
                           certify_totaro(q(0), q(-1)), certify_totaro(q(2), q(0))})
    for (std::size_t i = 0; i < cert.steps.size(); ++i)
      EXPECT_FALSE(verify_step(corrupt_step(cert, i).steps[i], 100, 9).passed) << cert.pattern << " " << cert.steps[i].id;
}

TEST(Certificate, LefschetzForExampleTwo) {
  auto c = certify_lefschetz();
  EXPECT_EQ(c.pattern, "LEFSCHETZ");
  EXPECT_EQ(c.verdict, CertificateVerdict::Infeasible);
  EXPECT_TRUE(verify_certificate(c, 200, 5).accepted);
}

TEST(Certificate, TotaroGrid) {
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      if (a == 0 && b == 0) continue;
      auto c = certify_totaro(q(a), q(b));
      EXPECT_EQ(c.verdict, CertificateVerdict::Infeasible) << a << "," << b;
      EXPECT_EQ(c.parameters.at("case"), a != 0 && b != 0 ? "1" : a == 0 ? "2" : "3");
      auto rep = verify_certificate(c, 40, 3);
      EXPECT_TRUE(rep.accepted) << a << "," << b;
    }
}

TEST(Certificate, TotaroCaseOneReproducesCombination) {
  auto c = certify_totaro(q(1), q(3));
  const auto& step = *std::find_if(c.steps.begin(), c.steps.end(), [](const ProofStep& s) { return s.id == "t.nrel"; });
  // B = 3: (5B - 2B^2 - 4, 6B - 8, B(B - 4), 4) = (-7, 10, -3, 4)
  auto gens = std::vector<grring::Generator>{{"X", 2}, {"y1", 2}, {"y2", 2}};
  EXPECT_EQ(grring::parse_polynomial(step.params.at("expected"), gens),
            grring::parse_polynomial("-7 X y1 + 10 y1 y2 - 3 y1^2 + 4 y2^2", gens));
}

TEST(Certificate, TotaroDegenerateCaseIsInconclusive) {
  auto c = certify_totaro(q(0), q(0));
  EXPECT_EQ(c.verdict, CertificateVerdict::Inconclusive);
  ASSERT_EQ(c.failed_steps.size(), 1u);
  EXPECT_EQ(c.failed_steps[0].rfind("t4.ring.volume", 0), 0u);
  auto rep = verify_certificate(c, 100, 1);
  EXPECT_FALSE(rep.accepted);
  for (const auto& s : rep.steps)
    if (s.id != "t4.ring.volume") EXPECT_TRUE(s.passed) << s.id;
}

TEST(Certificate, DispatchFromRing) {
  auto ex1 = certify_ring(grring::named_ring("eschenburg-ex1"));
  EXPECT_EQ(ex1.pattern, "RANK_KERNEL");
  EXPECT_EQ(ex1.parameters.at("c"), "-5");
  EXPECT_TRUE(verify_certificate(ex1, 50, 1).accepted);
  EXPECT_EQ(certify_ring(grring::named_ring("eschenburg-ex2")).pattern, "LEFSCHETZ");
  EXPECT_TRUE(verify_certificate(certify_ring(grring::named_ring("flag-su3")), 50, 1).accepted);
  try {
    certify_ring(grring::wedge_ring(2, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PatternInapplicable);
  }
}

TEST(Certificate, TotaroThroughAnotherPresentation) {
  auto p = grring::totaro_ring(q(1), q(2));
  p.relations[1] = p.relations[1] + p.relations[2];
  auto c = certify_ring(p);
  EXPECT_EQ(c.steps.front().id, "t.match");
  EXPECT_EQ(c.verdict, CertificateVerdict::Infeasible);
  EXPECT_TRUE(verify_certificate(c, 20, 1).accepted);
}

TEST(Certificate, RingTextRoundTrip) {
  for (const auto& r : {grring::named_ring("eschenburg-ex1"), grring::totaro_ring(q(1), q(-2)), grring::wedge_ring(5, 7)}) {
    auto back = ring_from_text(ring_to_text(r));
    EXPECT_EQ(back.generators, r.generators);
    EXPECT_EQ(back.relations, r.relations);
    EXPECT_EQ(back.volume, r.volume);
    EXPECT_EQ(back.top, r.top);
  }
}

TEST(Certificate, VerificationIsDeterministic) {
  auto c = certify_totaro(q(2), q(-1));
  auto a = verify_certificate(c, 30, 4), b = verify_certificate(c, 30, 4);
  ASSERT_EQ(a.steps.size(), b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) EXPECT_EQ(a.steps[i].message, b.steps[i].message);
}

// Soundness separation on the certificate side: searches never reach the
// feasibility threshold where a certificate is accepted.
TEST(Soundness, CertifiedProblemsAreNotFound) {
  SearchConfig cfg;
  cfg.restarts = 8;
  for (const auto& r : {grring::sphere_bundle_ring(q(2)), grring::named_ring("eschenburg-ex1"),
                        grring::named_ring("eschenburg-ex2"), grring::totaro_ring(q(1), q(-1))}) {
    ASSERT_TRUE(verify_certificate(certify_ring(r), 20, 1).accepted) << r.name;
    EXPECT_EQ(search(RealizationProblem::from_ring(r), cfg).status, SearchStatus::NoSolutionFound) << r.name;
  }
}

}  // namespace
