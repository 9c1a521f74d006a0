#include "app/commands.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "common/error.hpp"
#include "grring/ring.hpp"
#include "invar/invariant_complex.hpp"
#include "realize/certificate.hpp"
#include "realize/problem.hpp"

namespace gformal::app {

using gformal::to_string;

const char* tool_version() { return "0.1.0"; }

namespace {

using grring::RingPresentation;

std::vector<grring::Generator> parse_generators(const std::string& text) {
  std::vector<grring::Generator> gens;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, e - b + 1);
    auto colon = item.find(':');
    require(colon != std::string::npos, ErrorCode::MalformedConfig, "generator '" + item + "' needs name:degree");
    try {
      gens.push_back({item.substr(0, colon), std::stoi(item.substr(colon + 1))});
    } catch (const std::exception&) {
      fail(ErrorCode::MalformedConfig, "generator '" + item + "' has a bad degree");
    }
  }
  require(!gens.empty(), ErrorCode::MalformedConfig, "ring needs at least one generator");
  return gens;
}

RingPresentation ring_of(const RunConfig& cfg) {
  if (cfg.ring) {
    auto p = RingPresentation::parse(cfg.target.empty() ? "custom" : cfg.target, parse_generators(cfg.ring->generators),
                                     cfg.ring->relations, cfg.ring->top, cfg.ring->volume);
    return p;
  }
  require(!cfg.target.empty(), ErrorCode::MalformedConfig, "no target ring given");
  grring::RingParams rp;
  rp.a = cfg.param("a", Rational(0));
  rp.b = cfg.param("b", Rational(0));
  rp.c = cfg.param("c", Rational(0));
  rp.p = cfg.int_param("p", 5);
  rp.q = cfg.int_param("q", 7);
  auto ring = grring::named_ring(cfg.target, rp);
  if (cfg.target == "totaro")
    ring.name = "totaro(" + to_string(rp.a) + "," + to_string(rp.b) + ")";
  else if (cfg.target == "sphere-bundle")
    ring.name = "sphere-bundle(" + to_string(rp.c) + ")";
  else if (cfg.target == "wedge")
    ring.name = "wedge(" + std::to_string(rp.p) + "," + std::to_string(rp.q) + ")";
  else
    ring.name = cfg.target;
  return ring;
}

Json ring_json(const RingPresentation& r) {
  Json j;
  j["name"] = r.name;
  j["presentation"] = realize::ring_to_text(r);
  return j;
}

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

// ---- homog ----------------------------------------------------------------

invar::SpaceRequest space_request(const RunConfig& cfg) {
  invar::SpaceRequest req;
  req.name = cfg.target;
  req.k = cfg.int_param("k", 1);
  req.l = cfg.int_param("l", 1);
  req.allow_degenerate = cfg.allow_degenerate;
  req.isotropy_connected = cfg.isotropy_connected;
  req.scales = cfg.scales;
  if (cfg.space) {
    req.name = "custom";
    req.algebra = cfg.space->algebra;
    req.subalgebra = cfg.space->subalgebra;
  }
  require(!req.name.empty(), ErrorCode::MalformedConfig, "homog needs a space");
  return req;
}

}  // namespace

Json cmd_homog(const RunConfig& cfg) {
  auto space = invar::make_space(space_request(cfg));
  const int n = space.dim_m();
  const int lo = cfg.degree_lo.value_or(0), hi = std::min(cfg.degree_hi.value_or(n), n);
  require(lo <= n, ErrorCode::DegreeOutOfRange, "degree range starts above the dimension");
  auto c = invar::InvariantComplex::build(space, lo, hi);
  auto b = invar::betti(c);
  auto h = invar::harmonic_basis(c);
  auto probe = invar::formality_probe(c, h);

  Json r;
  r["space"] = space.label();
  if (!space.embedding.empty()) r["embedding"] = space.embedding;
  r["dimension"] = n;
  r["degrees"] = {lo, hi};
  r["betti"] = b;
  std::vector<int> hd;
  for (int k = lo; k <= hi; ++k) hd.push_back(h.dimension(k));
  r["harmonic_dimensions"] = hd;
  r["checks"] = {{"d_squared_zero", c.d_squared_zero()}, {"invariance", c.invariance_verified()}};
  Json p;
  p["verdict"] = invar::to_string(probe.verdict);
  p["pairs_checked"] = probe.pairs_checked;
  p["pairs_skipped"] = probe.pairs_skipped;
  Json w = Json::array();
  for (const auto& f : probe.failures) {
    Json e;
    e["product"] = "h" + std::to_string(f.degree_a) + "[" + std::to_string(f.index_a) + "] ^ h" +
                   std::to_string(f.degree_b) + "[" + std::to_string(f.index_b) + "]";
    e["degree"] = f.product_degree;
    e["norm_squared"] = to_string(f.norm_squared);
    e["closed"] = f.closed;
    e["coclosed"] = f.coclosed;
    w.push_back(e);
  }
  p["failures"] = w;
  r["formality_probe"] = p;
  if (lo == 0 && hi == n) {
    auto top = invar::formality_by_top_degree(b);
    Json t;
    t["pattern"] = invar::to_string(top.pattern);
    t["reason"] = top.reason;
    r["top_degree"] = t;
  }
  if (space_request(cfg).name == "aw") {
    auto aw = invar::aw_contraction_check(cfg.int_param("k", 1), cfg.int_param("l", 1), cfg.allow_degenerate);
    Json a;
    a["rank_on_L"] = aw.rank_on_l;
    a["rank_on_g"] = aw.rank_on_g;
    a["eta_closed"] = aw.eta_closed;
    Json ids = Json::array();
    for (const auto& id : aw.identities)
      ids.push_back({{"name", id.name}, {"formula", id.formula}, {"symbolic", id.symbolic},
                     {"grid_points", id.grid_points}, {"grid_failures", id.grid_failures}});
    a["identities"] = ids;
    a["dimension_contradiction"] = aw.dimension_contradiction;
    if (!aw.note.empty()) a["note"] = aw.note;
    r["aw_contraction"] = a;
  }
  return r;
}

// ---- certify --------------------------------------------------------------

namespace {

Json certificate_json(const realize::Certificate& c) {
  Json j;
  j["pattern"] = c.pattern;
  j["parameters"] = Json(c.parameters);
  j["verdict"] = realize::to_string(c.verdict);
  Json steps = Json::array();
  for (const auto& s : c.steps) {
    Json st;
    st["id"] = s.id;
    st["kind"] = realize::to_string(s.kind);
    st["claim"] = s.claim;
    st["check"] = s.check;
    st["params"] = Json(s.params);
    steps.push_back(st);
  }
  j["steps"] = steps;
  j["conclusion"] = c.conclusion;
  j["notes"] = c.notes;
  if (!c.failed_steps.empty()) j["failed_steps"] = c.failed_steps;
  j["scope"] =
      "INFEASIBLE rules out constant-coefficient harmonic forms satisfying the relations at a point; it says "
      "nothing about metrics whose harmonic forms are not of that kind";
  return j;
}

Json verification_json(const realize::VerificationReport& v) {
  Json j;
  j["result"] = v.accepted ? "ACCEPTED" : "REJECTED";
  j["trials"] = v.trials;
  j["seed"] = v.seed;
  Json steps = Json::array();
  for (const auto& s : v.steps) {
    Json st;
    st["id"] = s.id;
    st["kind"] = realize::to_string(s.kind);
    st["passed"] = s.passed;
    if (s.kind == realize::StepKind::Sampled) st["trials"] = s.trials;
    st["failures"] = s.failures;
    if (!s.message.empty()) st["message"] = s.message;
    steps.push_back(st);
  }
  j["steps"] = steps;
  return j;
}

}  // namespace

Json cmd_certify(const RunConfig& cfg) {
  auto ring = ring_of(cfg);
  grring::NormalFormTable t(ring);
  auto match = grring::pattern_match(t);
  Json r;
  r["ring"] = ring_json(ring);
  r["pattern"] = {{"tag", grring::to_string(match.tag)}, {"detail", match.detail}};
  realize::Certificate cert;
  if (cfg.target == "sphere-bundle" && !cfg.ring) {
    cert = realize::certify_rank_kernel(cfg.param("c", Rational(0)));
  } else {
    cert = realize::certify_ring(ring);
  }
  auto ver = realize::verify_certificate(cert, cfg.trials, cfg.seed);
  r["verdict"] = realize::to_string(cert.verdict);
  r["verification"] = verification_json(ver);
  r["certificate"] = certificate_json(cert);
  return r;
}

// ---- realize --------------------------------------------------------------

namespace {

realize::SearchConfig search_config(const RunConfig& cfg) {
  realize::SearchConfig s;
  const auto& o = cfg.search;
  if (o.restarts) s.restarts = *o.restarts;
  if (o.max_iterations) s.max_iterations = *o.max_iterations;
  if (o.initial_step) s.initial_step = *o.initial_step;
  if (o.convergence_tolerance) s.convergence_tolerance = *o.convergence_tolerance;
  if (o.feasibility_threshold) s.feasibility_threshold = *o.feasibility_threshold;
  s.seed = cfg.seed;
  s.validate();
  return s;
}

}  // namespace

Json cmd_realize(const RunConfig& cfg) {
  auto ring = ring_of(cfg);
  auto problem = realize::RealizationProblem::from_ring(ring, cfg.search.independence.value_or(true));
  auto sc = search_config(cfg);
  auto out = realize::search(problem, sc);

  Json r;
  Json p;
  p["name"] = ring.name;
  p["n"] = problem.n;
  Json vars = Json::array();
  for (const auto& v : problem.variables) vars.push_back({{"name", v.name}, {"grade", v.degree}});
  p["variables"] = vars;
  std::vector<std::string> rels;
  for (const auto& rel : problem.relations) rels.push_back(rel.str() + " = 0");
  p["relations"] = rels;
  p["volume"] = grring::Polynomial::monomial(problem.variables, problem.volume).str();
  p["independence"] = problem.independence;
  r["problem"] = p;
  r["search"] = {{"restarts", sc.restarts},
                 {"max_iterations", sc.max_iterations},
                 {"initial_step", sc.initial_step},
                 {"convergence_tolerance", sc.convergence_tolerance},
                 {"feasibility_threshold", sc.feasibility_threshold},
                 {"seed", sc.seed}};
  r["status"] = realize::to_string(out.status);
  r["best_residual"] = out.best_residual;
  r["best_restart"] = out.best_restart;
  r["restarts_run"] = out.restarts_run;
  r["iterations"] = out.iterations;
  auto sorted = out.restart_residuals;
  std::sort(sorted.begin(), sorted.end());
  Json summary;
  if (!sorted.empty()) {
    summary["min"] = sorted.front();
    summary["median"] = sorted[sorted.size() / 2];
    summary["max"] = sorted.back();
    summary["below_1e-3"] = std::count_if(sorted.begin(), sorted.end(), [](double v) { return v < 1e-3; });
  }
  r["restart_residuals"] = summary;
  if (out.status == realize::SearchStatus::FeasibleFound) {
    realize::Layout lay(problem);
    Json w;
    for (std::size_t v = 0; v < problem.variables.size(); ++v) {
      Json coeffs;
      auto form = lay.form(out.best_assignment, v, problem.n);
      for (const auto& [mask, c] : form.terms()) {
        if (std::abs(c) < 1e-12) continue;
        std::string blade;
        for (int i : xalg::indices_of(mask)) blade += (blade.empty() ? "e" : "^e") + std::to_string(i + 1);
        coeffs[blade] = c;
      }
      w[problem.variables[v].name] = coeffs;
    }
    r["witness"] = w;
  } else {
    r["note"] = "NO_SOLUTION_FOUND is not a proof of infeasibility";
  }
  return r;
}

// ---- suite ----------------------------------------------------------------

namespace {

struct SuiteRow {
  std::string id, group, kind, target, expect, anchor;
  std::map<std::string, std::string> params;
  std::optional<int> restarts;
  std::vector<int> expect_betti;
};

std::vector<SuiteRow> load_suite() {
  YAML::Node root = YAML::Load(suite_table());
  std::vector<SuiteRow> rows;
  for (const auto& n : root["rows"]) {
    SuiteRow r;
    r.id = n["id"].as<std::string>();
    r.group = n["group"].as<std::string>();
    r.kind = n["kind"].as<std::string>();
    r.target = n["target"].as<std::string>();
    r.expect = n["expect"].as<std::string>();
    r.anchor = n["anchor"].as<std::string>();
    if (auto p = n["params"])
      for (const auto& kv : p) r.params[kv.first.as<std::string>()] = kv.second.as<std::string>();
    if (n["restarts"]) r.restarts = n["restarts"].as<int>();
    if (auto b = n["betti"])
      for (const auto& v : b) r.expect_betti.push_back(v.as<int>());
    rows.push_back(std::move(r));
  }
  return rows;
}

const std::map<std::string, std::vector<std::string>> kModulesByKind{
    {"homog", {"xalg", "liealg", "invar"}}, {"certify", {"xalg", "grring", "realize"}}, {"realize", {"grring", "realize"}}};

RunConfig row_config(const RunConfig& base, const SuiteRow& row, Command cmd) {
  RunConfig c;
  c.command = cmd;
  c.target = row.target;
  for (const auto& [k, v] : row.params) c.params[k] = parse_rational(v);
  c.seed = base.seed;
  c.trials = base.trials;
  if (row.restarts) c.search.restarts = *row.restarts;
  return c;
}

struct RowOutcome {
  std::string actual;
  Json detail;
};

RowOutcome evaluate(const RunConfig& base, const SuiteRow& row) {
  RowOutcome o;
  if (row.kind == "homog") {
    auto r = cmd_homog(row_config(base, row, Command::Homog));
    o.actual = r["formality_probe"]["verdict"];
    o.detail["betti"] = r["betti"];
    if (!row.expect_betti.empty() && r["betti"].get<std::vector<int>>() != row.expect_betti)
      o.actual += " (betti mismatch)";
  } else if (row.kind == "certify") {
    try {
      auto r = cmd_certify(row_config(base, row, Command::Certify));
      bool accepted = r["verification"]["result"] == "ACCEPTED";
      std::string verdict = r["verdict"];
      o.actual = verdict == "INFEASIBLE" && !accepted ? "REJECTED" : verdict;
      o.detail["pattern"] = r["pattern"]["tag"];
      o.detail["verification"] = r["verification"]["result"];
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PatternInapplicable) throw;
      o.actual = "INAPPLICABLE";
      o.detail["reason"] = e.what();
    }
  } else if (row.kind == "realize") {
    auto r = cmd_realize(row_config(base, row, Command::Realize));
    o.actual = r["status"];
    o.detail["best_residual"] = r["best_residual"];
    o.detail["restarts_run"] = r["restarts_run"];
  } else {
    fail(ErrorCode::Internal, "suite row " + row.id + " has unknown kind " + row.kind);
  }
  return o;
}

bool selected(const SuiteRow& row, const std::string& only) {
  if (only.empty()) return true;
  return row.group == only || row.id.rfind(only, 0) == 0;
}

}  // namespace

Json cmd_suite(const RunConfig& cfg) {
  static const std::set<std::string> modules{"xalg", "liealg", "invar", "grring", "realize"};
  for (const auto& s : cfg.stub)
    require(modules.count(s) > 0, ErrorCode::MalformedConfig,
            "cannot stub '" + s + "' (modules: xalg, liealg, invar, grring, realize)");
  auto stubbed = [&](const std::string& kind) {
    for (const auto& m : kModulesByKind.at(kind))
      if (std::find(cfg.stub.begin(), cfg.stub.end(), m) != cfg.stub.end()) return true;
    return false;
  };
  const bool soundness_only = cfg.only == "soundness";
  const int soundness_restarts = cfg.soundness_restarts.value_or(16);

  Json rows = Json::array();
  int passed = 0, failed = 0;
  auto record = [&](const SuiteRow& row, const RowOutcome& o) {
    bool ok = o.actual == row.expect;
    (ok ? passed : failed)++;
    Json j;
    j["id"] = row.id;
    j["group"] = row.group;
    j["expected"] = row.expect;
    j["actual"] = o.actual;
    j["status"] = ok ? "PASS" : "FAIL";
    j["anchor"] = row.anchor;
    if (!o.detail.is_null()) j["detail"] = o.detail;
    rows.push_back(j);
  };

  for (const auto& row : load_suite()) {
    bool listed = !soundness_only && selected(row, cfg.only);
    bool feeds_soundness = row.kind == "certify" && soundness_only;
    if (!listed && !feeds_soundness) continue;
    RowOutcome o;
    if (stubbed(row.kind))
      o.actual = "STUBBED";
    else
      o = evaluate(cfg, row);
    if (listed) record(row, o);
    // Cross-check every certified ring against the numerical search.
    if (row.kind == "certify" && o.actual == "INFEASIBLE" && (cfg.only.empty() || soundness_only)) {
      SuiteRow s = row;
      s.id = "soundness." + row.id.substr(row.id.find('.') + 1);
      s.group = "soundness";
      s.kind = "realize";
      s.expect = "NO_SOLUTION_FOUND";
      s.anchor = "a certified ring must not be realized numerically";
      s.restarts = soundness_restarts;
      RowOutcome so;
      if (stubbed("realize"))
        so.actual = "STUBBED";
      else
        so = evaluate(cfg, s);
      record(s, so);
    }
  }
  Json r;
  r["rows"] = rows;
  r["summary"] = {{"rows", passed + failed}, {"passed", passed}, {"failed", failed}, {"all_passed", failed == 0}};
  if (!cfg.stub.empty()) r["stubbed"] = cfg.stub;
  return r;
}

// ---- dispatch and rendering -------------------------------------------------

Json run(const RunConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  Json report;
  report["schema"] = kReportSchema;
  report["tool"] = {{"name", "gformal"}, {"version", tool_version()}};
  report["command"] = to_string(cfg.command);
  report["input"] = echo(cfg);
  report["seed"] = cfg.seed;
  switch (cfg.command) {
    case Command::Homog:
      report["result"] = cmd_homog(cfg);
      break;
    case Command::Certify:
      report["result"] = cmd_certify(cfg);
      break;
    case Command::Realize:
      report["result"] = cmd_realize(cfg);
      break;
    case Command::Suite:
      report["result"] = cmd_suite(cfg);
      break;
  }
  if (cfg.timing)
    report["timing"] = {
        {"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  return report;
}

namespace {

std::string join_ints(const Json& a) {
  std::string s;
  for (const auto& v : a) s += (s.empty() ? "" : " ") + std::to_string(v.get<int>());
  return s;
}

std::string str(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void render_homog(std::ostream& os, const Json& r) {
  os << "space        " << str(r["space"]) << "  (dim m = " << r["dimension"].get<int>() << ")\n";
  if (r.contains("embedding")) os << "embedding    " << str(r["embedding"]) << "\n";
  os << "degrees      " << r["degrees"][0].get<int>() << ".." << r["degrees"][1].get<int>() << "\n";
  os << "betti        " << join_ints(r["betti"]) << "\n";
  os << "harmonic     " << join_ints(r["harmonic_dimensions"]) << "\n";
  const auto& p = r["formality_probe"];
  os << "probe        " << str(p["verdict"]) << "  (" << p["pairs_checked"].get<int>() << " pairs";
  if (p["pairs_skipped"].get<int>() > 0) os << ", " << p["pairs_skipped"].get<int>() << " outside range";
  os << ")\n";
  for (const auto& f : p["failures"])
    os << "  not harmonic: " << str(f["product"]) << "  |.|^2 = " << str(f["norm_squared"])
       << (f["closed"].get<bool>() ? "" : "  not closed") << (f["coclosed"].get<bool>() ? "" : "  not coclosed")
       << "\n";
  if (r.contains("top_degree"))
    os << "top degree   " << str(r["top_degree"]["pattern"]) << "  " << str(r["top_degree"]["reason"]) << "\n";
  if (r.contains("aw_contraction")) {
    const auto& a = r["aw_contraction"];
    os << "contraction  rank on L = " << a["rank_on_L"].get<int>() << ", rank on g = " << a["rank_on_g"].get<int>()
       << "\n";
    for (const auto& id : a["identities"])
      os << "  " << str(id["name"]) << ": " << str(id["formula"]) << "  "
         << (id["grid_failures"].get<int>() == 0 && id["symbolic"].get<bool>() ? "ok" : "FAILED") << "\n";
  }
}

void render_certify(std::ostream& os, const Json& r) {
  os << "ring         " << str(r["ring"]["name"]) << "\n";
  os << "             " << str(r["ring"]["presentation"]) << "\n";
  os << "pattern      " << str(r["pattern"]["tag"]) << "  " << str(r["pattern"]["detail"]) << "\n";
  os << "verdict      " << str(r["verdict"]) << "\n";
  const auto& v = r["verification"];
  os << "verification " << str(v["result"]) << "  (" << v["trials"].get<int>() << " trials per sampled step, seed "
     << v["seed"].get<std::uint64_t>() << ")\n\n";
  const auto& steps = r["certificate"]["steps"];
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    const auto& res = v["steps"][i];
    char line[64];
    std::snprintf(line, sizeof line, "  %-16s %-8s %-5s ", str(s["id"]).c_str(), str(s["kind"]).c_str(),
                  res["passed"].get<bool>() ? "ok" : "FAIL");
    os << line << str(s["claim"]) << "\n";
    if (res.contains("message")) os << "      " << str(res["message"]) << "\n";
  }
  os << "\nconclusion   " << str(r["certificate"]["conclusion"]) << "\n";
  for (const auto& n : r["certificate"]["notes"]) os << "note         " << str(n) << "\n";
}

void render_realize(std::ostream& os, const Json& r) {
  const auto& p = r["problem"];
  os << "problem      " << str(p["name"]) << " on R^" << p["n"].get<int>() << ", volume " << str(p["volume"]) << "\n";
  for (const auto& rel : p["relations"]) os << "             " << str(rel) << "\n";
  os << "status       " << str(r["status"]) << "\n";
  os << "residual     " << fmt_double(r["best_residual"].get<double>()) << "  (restart " << r["best_restart"].get<int>()
     << " of " << r["restarts_run"].get<int>() << ", " << r["iterations"].get<long>() << " iterations, seed "
     << r["search"]["seed"].get<std::uint64_t>() << ")\n";
  const auto& s = r["restart_residuals"];
  if (!s.empty())
    os << "restarts     min " << fmt_double(s["min"].get<double>()) << "  median " << fmt_double(s["median"].get<double>())
       << "  max " << fmt_double(s["max"].get<double>()) << "\n";
  if (r.contains("witness"))
    for (const auto& [name, coeffs] : r["witness"].items()) {
      os << "  " << name << " =";
      bool first = true;
      for (const auto& [blade, c] : coeffs.items()) {
        char buf[48];
        double v = c.get<double>();
        std::snprintf(buf, sizeof buf, "%s%.6g*%s", first ? (v < 0 ? " -" : " ") : (v < 0 ? " - " : " + "),
                      std::abs(v), blade.c_str());
        os << buf;
        first = false;
      }
      os << "\n";
    }
  if (r.contains("note")) os << "note         " << str(r["note"]) << "\n";
}

void render_suite(std::ostream& os, const Json& r) {
  for (const auto& row : r["rows"]) {
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-34s %-22s %-22s ", str(row["status"]).c_str(), str(row["id"]).c_str(),
                  str(row["expected"]).c_str(), str(row["actual"]).c_str());
    os << line << str(row["anchor"]) << "\n";
  }
  const auto& s = r["summary"];
  os << "\n" << s["passed"].get<int>() << " of " << s["rows"].get<int>() << " rows match the expected verdicts\n";
}

}  // namespace

std::string render(const Json& report, ReportFormat format) {
  if (format == ReportFormat::Structured) return report.dump(2) + "\n";
  std::ostringstream os;
  os << "gformal " << str(report["tool"]["version"]) << "  " << str(report["command"]) << "  seed "
     << report["seed"].get<std::uint64_t>() << "\n\n";
  const auto& r = report["result"];
  const std::string cmd = report["command"];
  if (cmd == "homog")
    render_homog(os, r);
  else if (cmd == "certify")
    render_certify(os, r);
  else if (cmd == "realize")
    render_realize(os, r);
  else
    render_suite(os, r);
  if (report.contains("timing")) os << "\nwall time    " << report["timing"]["wall_seconds"].get<double>() << " s\n";
  return os.str();
}

}  // namespace gformal::app
