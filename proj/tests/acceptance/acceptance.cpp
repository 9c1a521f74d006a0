// One line per acceptance criterion. Exit status is the number of failing
// criteria, not counting those named with --expect-red (which still print
// FAIL when they fail).
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "app/commands.hpp"
#include "grring/ring.hpp"
#include "invar/invariant_complex.hpp"
#include "realize/certificate.hpp"
#include "realize/problem.hpp"
#include "support/realize_oracles.hpp"
#include "support/xalg_laws.hpp"

namespace {

using namespace gformal;
using Clock = std::chrono::steady_clock;

Rational q(long n, long d = 1) { return make_rational(n, d); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::string problems;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      problems += " [" + what + "]";
    }
  }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

// ---------------------------------------------------------------------------

void exterior_laws(Outcome& o) {
  const int n = 10000;
  auto t = Clock::now();
  int fails = 0;
  fails += testing::check_associativity(n, 101);
  fails += testing::check_graded_commutativity(n, 102);
  fails += testing::check_antiderivation(n, 103);
  fails += testing::check_alternation(n, 104);
  fails += testing::check_star_sign_law(n, 105);
  double s = seconds_since(t);
  o.detail << "5 laws x " << n << " cases, " << fails << " failures, " << s << " s";
  o.check(fails == 0, "failures");
  o.check(s < 60, "runtime >= 60 s");
}

// Poincare polynomial of SU(3)/T^2: (1 + t^2)(1 + t^2 + t^4).
std::vector<int> flag_oracle() {
  std::vector<int> a{1, 0, 1}, b{1, 0, 1, 0, 1}, c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

void betti_reproduction(Outcome& o) {
  auto run = [&](const std::string& name, int k, int l) {
    auto t = Clock::now();
    invar::SpaceRequest req;
    req.name = name;
    req.k = k;
    req.l = l;
    auto b = invar::betti(invar::InvariantComplex::build(invar::make_space(req)));
    double s = seconds_since(t);
    o.check(s < 300, name + " took " + std::to_string(s) + " s");
    return b;
  };
  auto aw = run("aw", 1, 1);
  auto su4 = run("su4/su2", 1, 1);
  auto flag = run("flag-su3", 1, 1);
  o.detail << "N(1,1) " << join(aw) << ", su(4)/su(2) " << join(su4) << ", su(3)/t^2 " << join(flag);
  o.check(aw == std::vector<int>{1, 0, 1, 0, 0, 1, 0, 1}, "N(1,1)");
  bool ok = su4.size() == 13;
  for (std::size_t i = 0; ok && i < su4.size(); ++i) ok = (su4[i] != 0) == (i == 0 || i == 5 || i == 7 || i == 12);
  o.check(ok, "su(4)/su(2)");
  o.check(flag == flag_oracle(), "su(3)/t^2");
}

void positive_formality(Outcome& o) {
  auto c = invar::InvariantComplex::build(invar::su4_mod_su2());
  auto probe = invar::formality_probe(c, invar::harmonic_basis(c));
  auto top = invar::formality_by_top_degree(invar::betti(c));
  o.detail << "probe " << invar::to_string(probe.verdict) << " (" << probe.pairs_checked << " pairs), top degree "
           << invar::to_string(top.pattern);
  o.check(probe.verdict == invar::FormalityVerdict::FormalForThisMetric, "probe");
  o.check(top.pattern == invar::TopDegreePattern::AppliesProd, "top degree");
}

void aw_negative(Outcome& o) {
  auto t = Clock::now();
  auto r = invar::aw_contraction_check(1, 1);
  const std::vector<std::string> expected{
      "eta(E1, H1, X) = -2 d B(E1,F1)", "eta(F1, H1, X) = 2 c B(F1,E1)", "eta(F1, X, E1) = (2a - b) B(F1,E1)",
      "eta(F2, X, E2) = (2b - a) B(F2,E2)"};
  std::set<std::string> found;
  for (const auto& id : r.identities) {
    o.check(id.symbolic && id.grid_failures == 0 && id.grid_points > 0, id.name);
    found.insert(id.formula);
  }
  for (const auto& f : expected) o.check(found.count(f) > 0, "missing identity " + f);
  o.check(r.rank_on_l == 4, "rank on L");
  invar::SpaceRequest req;
  req.name = "aw";
  auto c = invar::InvariantComplex::build(invar::make_space(req));
  auto probe = invar::formality_probe(c, invar::harmonic_basis(c));
  bool witness = false;
  for (const auto& f : probe.failures)
    witness |= f.degree_a == 2 && f.degree_b == 2 && f.index_a == 0 && f.index_b == 0 && sgn(f.norm_squared) > 0;
  double s = seconds_since(t);
  o.detail << "rank on L " << r.rank_on_l << ", " << r.identities.size() << " identities, probe "
           << invar::to_string(probe.verdict) << (witness ? ", witness w2^w2 != 0" : "") << ", " << s << " s";
  o.check(probe.verdict == invar::FormalityVerdict::NotFormal, "probe");
  o.check(witness, "witness");
  o.check(s < 120, "runtime");
}

bool nrel_matches(const Rational& b) {
  grring::NormalFormTable t(grring::totaro_ring(q(1), b));
  auto x1 = t.presentation().gen("x1"), x2 = t.presentation().gen("x2"), x3 = t.presentation().gen("x3");
  auto r = grring::substitute(t, {"x1", "y1", "y2"}, {x1, x1 + (q(3) / b) * x2, x1 + q(3, 2) * x3});
  auto nrel = (b - q(4)) * (r.relations[1] * (q(9) / b)) + q(2) * (r.relations[2] * q(9, 2));
  auto P = [&](const char* s) { return grring::parse_polynomial(s, r.generators); };
  auto expected = (q(5) * b - q(2) * b * b - q(4)) * P("x1 y1") + (q(6) * b - q(8)) * P("y1 y2") +
                  b * (b - q(4)) * P("y1^2") + q(4) * P("y2^2");
  return nrel == expected;
}

void ring_identities(Outcome& o) {
  grring::NormalFormTable t(grring::named_ring("eschenburg-ex1"));
  auto x = t.presentation().gen("x"), y = t.presentation().gen("y");
  auto z = x - q(2) * y;
  o.check(t.normal_form(z.pow(2)) == q(5) * x.pow(2), "z'^2");
  o.check(t.normal_form(z.pow(3)) == q(-10) * x.pow(2) * y && t.equal(x * y.pow(2), x.pow(2) * y), "z'^3");
  int grid = 0, random = 0;
  for (int b = -3; b <= 3; ++b)
    if (b != 0) grid += nrel_matches(q(b));
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 997);
  for (int done = 0; done < 100;) {
    Rational b(num(rng), den(rng));
    b.canonicalize();
    if (sgn(b) == 0) continue;
    random += nrel_matches(b);
    ++done;
  }
  Rational disc = q(-5) * q(-5) - q(4) * q(2) * q(4);
  o.detail << "z'^2 = 5x^2, z'^3 = -10xy^2; combination exact on " << grid << "/6 grid and " << random
           << "/100 random b; discriminant " << to_string(disc);
  o.check(grid == 6 && random == 100, "combination");
  o.check(disc == q(-7) && grring::rational_roots({q(4), q(-5), q(2)}).empty(), "discriminant");
}

void certificate_suite(Outcome& o) {
  auto t = Clock::now();
  std::vector<std::pair<std::string, realize::Certificate>> certs;
  for (long c : {1, -1, 2, -2, -5}) certs.emplace_back("rank_kernel(" + std::to_string(c) + ")", realize::certify_rank_kernel(q(c)));
  certs.emplace_back("lefschetz", realize::certify_lefschetz());
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      certs.emplace_back("totaro(" + std::to_string(a) + "," + std::to_string(b) + ")",
                         realize::certify_totaro(q(a), q(b)));
  int infeasible = 0, accepted = 0;
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const auto& [name, cert] = certs[i];
    bool inf = cert.verdict == realize::CertificateVerdict::Infeasible;
    auto v = realize::verify_certificate(cert, 1000, 1 + i);
    int step_failures = 0;
    for (const auto& s : v.steps) step_failures += s.passed ? 0 : 1;
    infeasible += inf;
    accepted += v.accepted;
    if (!inf || !v.accepted || step_failures) {
      std::string failed;
      for (const auto& s : v.steps)
        if (!s.passed) failed += (failed.empty() ? "" : ",") + s.id;
      o.check(false, name + " " + realize::to_string(cert.verdict) + (v.accepted ? " ACCEPTED" : " REJECTED") +
                         (failed.empty() ? "" : " at " + failed));
    }
  }
  double s = seconds_since(t);
  o.detail << certs.size() << " certificates, " << infeasible << " INFEASIBLE, " << accepted
           << " ACCEPTED at 1000 trials, " << s << " s";
  o.check(s < 600, "runtime");
}

void search_consistency(Outcome& o) {
  auto sphere = [](long c) { return realize::RealizationProblem::from_ring(grring::sphere_bundle_ring(q(c))); };
  realize::SearchConfig cfg;
  cfg.restarts = 64;
  auto zero = realize::search(sphere(0), cfg);
  o.check(zero.best_residual < 1e-10, "c = 0 residual");
  o.detail << "c=0 residual " << zero.best_residual << " (" << zero.restarts_run << " restarts)";
  cfg.restarts = 128;
  for (long c : {1, 2}) {
    auto out = realize::search(sphere(c), cfg);
    double lowest = 1e300;
    for (double r : out.restart_residuals) lowest = std::min(lowest, r);
    o.detail << "; c=" << c << " min over " << out.restart_residuals.size() << " restarts " << lowest;
    o.check(out.restart_residuals.size() == 128 && lowest >= 1e-3, "c = " + std::to_string(c));
  }
  double worst = 0;
  std::mt19937_64 rng(9);
  for (long c : {0, 1, 2}) {
    auto p = sphere(c);
    realize::Layout lay(p);
    for (int i = 0; i < 1000; ++i)
      worst = std::max(worst, testing::fd_relative_error(p, testing::random_point(lay.size(), rng)));
  }
  o.detail << "; gradient vs FD worst " << worst << " on 3x1000 points";
  o.check(worst < 1e-6, "gradient");
}

void cross_module_soundness(Outcome& o) {
  app::RunConfig cfg;
  cfg.command = app::Command::Suite;
  auto r = app::cmd_suite(cfg);
  // Rows name the problem after the first dot: certify.totaro(1,2), realize.totaro(0,0), soundness.totaro(1,2).
  std::set<std::string> certified, found;
  for (const auto& row : r["rows"]) {
    std::string id = row["id"], actual = row["actual"];
    std::string problem = id.substr(id.find('.') + 1);
    if (actual == "INFEASIBLE") certified.insert(problem);
    if (actual == "FEASIBLE_FOUND") found.insert(problem);
    if (row["status"] != "PASS") o.check(false, id + " expected " + row["expected"].get<std::string>() + " got " + actual);
  }
  int both = 0;
  for (const auto& p : found) both += certified.count(p);
  o.detail << r["summary"]["passed"].get<int>() << "/" << r["summary"]["rows"].get<int>() << " suite rows match; "
           << certified.size() << " certified, " << found.size() << " realized, " << both << " both";
  o.check(both == 0, "overlap");
  o.check(r["summary"]["all_passed"].get<bool>(), "suite");
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expect_red;
  for (int i = 1; i < argc; ++i)
    if (!std::strcmp(argv[i], "--expect-red") && i + 1 < argc) expect_red.insert(std::atoi(argv[++i]));

  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"exterior-algebra laws", exterior_laws},
      {"Betti reproduction", betti_reproduction},
      {"positive formality", positive_formality},
      {"Aloff-Wallach negative result", aw_negative},
      {"ring identities", ring_identities},
      {"certificate suite", certificate_suite},
      {"search consistency", search_consistency},
      {"cross-module soundness", cross_module_soundness},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("threw: ") + e.what());
    }
    int id = static_cast<int>(i) + 1;
    bool known = expect_red.count(id) > 0;
    std::printf("%s C%d %s: %s%s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.str().c_str(),
                o.problems.c_str(), !o.pass && known ? " (known red)" : "");
    std::fflush(stdout);
    if (!o.pass && !known) ++unexpected;
  }
  return unexpected;
}
