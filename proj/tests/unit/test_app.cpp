#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

#include "app/commands.hpp"
#include "app/config.hpp"
#include "common/error.hpp"
#include "grring/ring.hpp"
#include "realize/problem.hpp"

namespace {

using namespace gformal;
using namespace gformal::app;

Json run_text(const std::string& yaml) { return run(parse_config(yaml)); }

ErrorCode code_of(const std::string& yaml) {
  try {
    run_text(yaml);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

// ---- config -----------------------------------------------------------------

TEST(Config, ParsesEveryField) {
  auto c = parse_config(R"(
command: realize
target: totaro
params: {a: 3/2, b: -1}
degrees: 0..3
search: {restarts: 5, max_iterations: 100, initial_step: 0.1, independence: false}
seed: 42
trials: 7
format: structured
timing: true
)");
  EXPECT_EQ(c.command, Command::Realize);
  EXPECT_EQ(c.param("a", Rational(0)), make_rational(3, 2));
  EXPECT_EQ(c.param("b", Rational(0)), Rational(-1));
  EXPECT_EQ(*c.degree_lo, 0);
  EXPECT_EQ(*c.degree_hi, 3);
  EXPECT_EQ(*c.search.restarts, 5);
  EXPECT_FALSE(*c.search.independence);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.trials, 7);
  EXPECT_EQ(c.format, ReportFormat::Structured);
  EXPECT_TRUE(c.timing);
}

TEST(Config, RejectsMalformedInput) {
  for (const char* bad : {"", "command: fly", "command: homog\nbogus: 1", "command: homog\nparams: {k: 1/2}",
                          "command: homog\nparams: {z: 1}", "command: homog\ndegrees: 3..1",
                          "command: homog\ndegrees: three", "command: realize\nsearch: {restarts: many}",
                          "command: certify\ntrials: 0", "command: suite\nformat: xml", "[1, 2",
                          "command: certify\nring: {generators: 'x:2'}"}) {
    try {
      parse_config(bad);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MalformedConfig) << bad;
    }
  }
}

TEST(Config, OverridesMergeKeyByKey) {
  auto c = parse_config("command: realize\ntarget: sphere-bundle\nparams: {c: 1}\nsearch: {restarts: 4}\nseed: 3",
                        R"({"seed": 7, "search": {"max_iterations": 50}, "params": {"c": "2"}})");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(*c.search.restarts, 4);
  EXPECT_EQ(*c.search.max_iterations, 50);
  EXPECT_EQ(c.param("c", Rational(0)), Rational(2));
  EXPECT_EQ(c.target, "sphere-bundle");
}

TEST(Config, SeedFromEnvironment) {
  ::setenv("GFORMAL_SEED", "99", 1);
  EXPECT_EQ(parse_config("command: suite").seed, 99u);
  EXPECT_EQ(parse_config("command: suite\nseed: 5").seed, 5u);
  ::setenv("GFORMAL_SEED", "x9", 1);
  EXPECT_THROW(parse_config("command: suite"), Error);
  ::unsetenv("GFORMAL_SEED");
  EXPECT_EQ(parse_config("command: suite").seed, 1u);
}

// ---- reports ----------------------------------------------------------------

TEST(Report, CarriesSchemaSeedAndEcho) {
  auto r = run_text("command: homog\ntarget: su2/t1\nseed: 11");
  EXPECT_EQ(r["schema"], kReportSchema);
  EXPECT_EQ(r["tool"]["version"], tool_version());
  EXPECT_EQ(r["seed"], 11);
  EXPECT_EQ(r["input"]["seed"], 11);
  EXPECT_FALSE(r.contains("timing"));
  EXPECT_TRUE(run_text("command: homog\ntarget: su2/t1\ntiming: true").contains("timing"));
}

TEST(Report, ByteIdenticalAcrossRuns) {
  const std::string cfg = "command: realize\ntarget: sphere-bundle\nparams: {c: 0}\nsearch: {restarts: 8}\nseed: 7";
  auto a = run_text(cfg), b = run_text(cfg);
  EXPECT_EQ(render(a, ReportFormat::Structured), render(b, ReportFormat::Structured));
  EXPECT_EQ(render(a, ReportFormat::Human), render(b, ReportFormat::Human));
}

TEST(Report, EchoIsEnoughToRerun) {
  for (const char* cfg : {"command: certify\ntarget: totaro\nparams: {a: 1, b: -2}\ntrials: 20\nseed: 4",
                          "command: realize\ntarget: sphere-bundle\nparams: {c: 1/2}\nsearch: {restarts: 2, "
                          "max_iterations: 300}\nseed: 9",
                          "command: homog\ntarget: aw\nparams: {k: 1, l: 2}\ndegrees: 0..3",
                          "command: suite\nsuite: {only: homog.su2}"}) {
    auto first = run_text(cfg);
    auto again = run_text(first["input"].dump());
    EXPECT_EQ(first.dump(), again.dump()) << cfg;
  }
}

// ---- commands ---------------------------------------------------------------

TEST(Homog, Su4Su2) {
  auto r = run_text("command: homog\ntarget: su4/su2")["result"];
  std::vector<int> expected(13, 0);
  expected[0] = expected[5] = expected[7] = expected[12] = 1;
  EXPECT_EQ(r["betti"].get<std::vector<int>>(), expected);
  EXPECT_EQ(r["harmonic_dimensions"].get<std::vector<int>>(), expected);
  EXPECT_EQ(r["formality_probe"]["verdict"], "FORMAL_FOR_THIS_METRIC");
  EXPECT_EQ(r["top_degree"]["pattern"], "APPLIES_PROD");
}

TEST(Homog, AwOneOne) {
  auto r = run_text("command: homog\ntarget: aw\nparams: {k: 1, l: 1}")["result"];
  EXPECT_EQ(r["betti"].get<std::vector<int>>(), (std::vector<int>{1, 0, 1, 0, 0, 1, 0, 1}));
  EXPECT_EQ(r["formality_probe"]["verdict"], "NOT_FORMAL");
  EXPECT_EQ(r["formality_probe"]["failures"][0]["product"], "h2[0] ^ h2[0]");
  EXPECT_EQ(r["aw_contraction"]["rank_on_L"], 4);
}

TEST(Homog, PartialDegreeRange) {
  auto r = run_text("command: homog\ntarget: aw\nparams: {k: 1, l: 1}\ndegrees: 0..3")["result"];
  EXPECT_EQ(r["betti"].get<std::vector<int>>(), (std::vector<int>{1, 0, 1, 0}));
  EXPECT_FALSE(r.contains("top_degree"));
}

TEST(Homog, OperationalErrors) {
  EXPECT_EQ(code_of("command: homog\ntarget: flag-su3\nisotropy_connected: false"), ErrorCode::Unsupported);
  EXPECT_EQ(code_of("command: homog\ntarget: su9/su2"), ErrorCode::UnknownTarget);
}

TEST(Certify, SphereBundleAccepted) {
  auto r = run_text("command: certify\ntarget: sphere-bundle\nparams: {c: 2}\ntrials: 100")["result"];
  EXPECT_EQ(r["verdict"], "INFEASIBLE");
  EXPECT_EQ(r["verification"]["result"], "ACCEPTED");
  EXPECT_EQ(r["pattern"]["tag"], "RANK_KERNEL");
  EXPECT_GT(r["certificate"]["steps"].size(), 5u);
}

TEST(Certify, EschenburgTwoViaLefschetz) {
  auto r = run_text("command: certify\ntarget: eschenburg-ex2\ntrials: 50")["result"];
  EXPECT_EQ(r["verdict"], "INFEASIBLE");
  EXPECT_EQ(r["pattern"]["tag"], "LEFSCHETZ");
  EXPECT_EQ(r["verification"]["result"], "ACCEPTED");
}

TEST(Certify, CustomRingThroughConfig) {
  auto r = run_text(R"(
command: certify
target: my-bundle
ring: {generators: "u:2, v:2", relations: ["u^3", "v^2 + 3*u^2"], top: 6, volume: "u^2*v"}
trials: 50
)")["result"];
  EXPECT_EQ(r["ring"]["name"], "my-bundle");
  EXPECT_EQ(r["verdict"], "INFEASIBLE");
}

TEST(Certify, NoPatternAdvisesRealize) {
  try {
    run_text("command: certify\ntarget: wedge\nparams: {p: 2, q: 4}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PatternInapplicable);
    EXPECT_NE(std::string(e.what()).find("realize"), std::string::npos);
  }
}

TEST(Realize, WitnessReproducesResidual) {
  auto r = run_text("command: realize\ntarget: sphere-bundle\nparams: {c: 0}\nsearch: {restarts: 16}")["result"];
  ASSERT_EQ(r["status"], "FEASIBLE_FOUND");
  auto p = realize::RealizationProblem::from_ring(grring::sphere_bundle_ring(Rational(0)));
  std::vector<xalg::FForm> forms;
  for (const auto& v : p.variables) {
    xalg::FForm f(p.n, v.degree);
    for (const auto& [blade, c] : r["witness"][v.name].items()) {
      xalg::Mask m = 0;
      for (std::size_t i = 1; i < blade.size(); i += 3) m |= xalg::Mask{1} << (blade[i] - '1');
      f = f + xalg::FForm::blade(p.n, m, c.get<double>());
    }
    forms.push_back(f);
  }
  realize::Layout lay(p);
  EXPECT_LT(realize::residual(p, lay.pack(p, forms)), 1e-10);
}

TEST(Realize, NoSolutionIsNotAProof) {
  auto r = run_text("command: realize\ntarget: sphere-bundle\nparams: {c: 1}\nsearch: {restarts: 4}")["result"];
  EXPECT_EQ(r["status"], "NO_SOLUTION_FOUND");
  EXPECT_FALSE(r.contains("witness"));
  EXPECT_TRUE(r.contains("note"));
  EXPECT_EQ(r["restarts_run"], 4);
}

TEST(Realize, SeedChangesTheRunButNotTheVerdict) {
  const std::string cfg = "command: realize\ntarget: sphere-bundle\nparams: {c: 0}\nsearch: {restarts: 16}\nseed: ";
  auto a = run_text(cfg + "1")["result"], b = run_text(cfg + "7")["result"];
  EXPECT_EQ(a["status"], b["status"]);
  EXPECT_NE(a["best_residual"], b["best_residual"]);
}

// ---- suite ------------------------------------------------------------------

std::set<std::string> groups(const Json& rows) {
  std::set<std::string> g;
  for (const auto& r : rows) g.insert(r["group"].get<std::string>());
  return g;
}

TEST(Suite, TableIsWellFormed) {
  auto c = parse_config("command: suite\nsuite: {only: nothing-matches}");
  EXPECT_EQ(cmd_suite(c)["summary"]["rows"], 0);
  EXPECT_NE(suite_table().find("rows:"), std::string::npos);
}

TEST(Suite, OnlyNegative) {
  auto r = run_text("command: suite\ntrials: 20\nsuite: {only: negative}")["result"];
  EXPECT_EQ(groups(r["rows"]), std::set<std::string>{"negative"});
  EXPECT_TRUE(r["summary"]["all_passed"].get<bool>());
  EXPECT_GE(r["summary"]["rows"].get<int>(), 35);
}

TEST(Suite, SoundnessRowsFollowCertificates) {
  auto r = run_text("command: suite\ntrials: 10\nsuite: {only: soundness, soundness_restarts: 2}")["result"];
  EXPECT_EQ(groups(r["rows"]), std::set<std::string>{"soundness"});
  for (const auto& row : r["rows"]) EXPECT_EQ(row["actual"], "NO_SOLUTION_FOUND") << row["id"];
}

TEST(Suite, StubbedModuleFailsItsRows) {
  auto r = run_text("command: suite\nsuite: {only: homog, stub: invar}")["result"];
  ASSERT_GT(r["rows"].size(), 0u);
  for (const auto& row : r["rows"]) {
    EXPECT_EQ(row["actual"], "STUBBED");
    EXPECT_EQ(row["status"], "FAIL");
  }
  auto g = run_text("command: suite\nsuite: {only: homogeneous, stub: grring}")["result"];
  EXPECT_TRUE(g["summary"]["all_passed"].get<bool>());
  EXPECT_THROW(run_text("command: suite\nsuite: {stub: cli}"), Error);
}

}  // namespace
