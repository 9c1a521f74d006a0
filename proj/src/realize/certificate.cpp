#include "realize/certificate.hpp"

#include <memory>
#include <random>
#include <sstream>

#include "realize/form_expr.hpp"
#include "realize/problem.hpp"
#include "xalg/multivector.hpp"

namespace gformal::realize {

using grring::Generator;
using grring::NormalFormTable;
using grring::Polynomial;
using grring::RingPresentation;
using xalg::QForm;
using gformal::to_string;

const char* to_string(StepKind k) { return k == StepKind::Exact ? "EXACT" : "SAMPLED"; }
const char* to_string(CertificateVerdict v) {
  return v == CertificateVerdict::Infeasible ? "INFEASIBLE" : "INCONCLUSIVE";
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      std::string part = trim(s.substr(start, i - start));
      if (!part.empty()) out.push_back(part);
      start = i + 1;
    }
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

const std::string& param(const ProofStep& s, const std::string& key) {
  auto it = s.params.find(key);
  if (it == s.params.end()) fail(ErrorCode::InvalidArgument, "step " + s.id + " lacks parameter '" + key + "'");
  return it->second;
}

int int_param(const ProofStep& s, const std::string& key) { return std::stoi(param(s, key)); }

std::string paren(const Rational& q) { return "(" + to_string(q) + ")"; }
std::string paren(const Polynomial& p) { return "(" + p.str() + ")"; }

// Rings are rebuilt from text for every check; cache the normal forms.
const NormalFormTable& table_for(const std::string& text) {
  thread_local std::map<std::string, std::shared_ptr<NormalFormTable>> cache;
  auto it = cache.find(text);
  if (it != cache.end()) return *it->second;
  if (cache.size() > 256) cache.clear();
  auto t = std::make_shared<NormalFormTable>(ring_from_text(text));
  return *cache.emplace(text, t).first->second;
}

// ---- exact checks ----------------------------------------------------------

QForm standard_two_form(int n, int rank) {
  QForm w(n, 2);
  for (int i = 0; 2 * i + 1 < n && 2 * i < rank; ++i) w.add((xalg::Mask{1} << (2 * i)) | (xalg::Mask{1} << (2 * i + 1)), 1);
  return w;
}

std::size_t kernel_dim(const QForm& two_form) {
  if (two_form.is_zero()) return static_cast<std::size_t>(two_form.dimension());
  return xalg::two_form_kernel(two_form).size();
}

struct Outcome {
  bool ok = true;
  std::string message;
};

Outcome check_ring(const ProofStep& s) {
  const auto& t = table_for(param(s, "ring"));
  Polynomial p = grring::parse_polynomial(param(s, "poly"), t.generators());
  require(p.homogeneous(), ErrorCode::NotHomogeneous, "step " + s.id + ": polynomial is not homogeneous");
  bool zero = p.is_zero() || (t.degree_of(p) <= t.top() && t.is_zero(p));
  if (s.check == "ring_zero") return {zero, zero ? "" : p.str() + " reduces to a nonzero class"};
  if (s.check == "ring_nonzero") return {!zero, zero ? p.str() + " is zero in the ring" : ""};
  // ring_nonzero_top
  if (p.is_zero() || t.degree_of(p) != t.top()) return {false, p.str() + " is not of top degree"};
  return {!zero, zero ? p.str() + " is zero in top degree" : ""};
}

Outcome check_combination(const ProofStep& s) {
  const auto& t = table_for(param(s, "ring"));
  auto names = split(param(s, "names"), ',');
  auto defs_text = split(param(s, "definitions"), ';');
  auto coef_text = split(param(s, "coefficients"), ';');
  require(names.size() == defs_text.size(), ErrorCode::InvalidArgument, "step " + s.id + ": names vs definitions");
  std::vector<Polynomial> defs;
  for (const auto& d : defs_text) defs.push_back(grring::parse_polynomial(d, t.generators()));
  RingPresentation r = grring::substitute(t, names, defs);
  require(coef_text.size() == r.relations.size(), ErrorCode::InvalidArgument,
          "step " + s.id + ": one coefficient per relation expected");
  Polynomial sum(r.generators);
  for (std::size_t i = 0; i < coef_text.size(); ++i) sum += r.relations[i] * parse_rational(coef_text[i]);
  Polynomial expected = grring::parse_polynomial(param(s, "expected"), r.generators);
  if (sum == expected) return {};
  return {false, "combination is " + sum.str() + ", expected " + expected.str()};
}

Outcome check_no_real_roots(const ProofStep& s) {
  auto c = split(param(s, "coefficients"), ';');
  require(c.size() == 3, ErrorCode::InvalidArgument, "no_real_roots expects c0; c1; c2");
  Rational c0 = parse_rational(c[0]), c1 = parse_rational(c[1]), c2 = parse_rational(c[2]);
  if (sgn(c2) != 0) {
    Rational disc = c1 * c1 - Rational(4) * c0 * c2;
    if (sgn(disc) < 0) return {};
    return {false, "discriminant " + to_string(disc) + " is not negative"};
  }
  if (sgn(c1) == 0 && sgn(c0) != 0) return {};
  return {false, "polynomial of degree <= 1 has a real root"};
}

Outcome check_rational_nonzero(const ProofStep& s) {
  Rational v = parse_rational(param(s, "value"));
  return {sgn(v) != 0, sgn(v) != 0 ? "" : "value is zero"};
}

// Every 2-form is GL-equivalent to a standard form of even rank; wedge powers
// and kernel dimension are invariant, so checking standard forms is exhaustive.
Outcome check_normal_form_power(const ProofStep& s) {
  const int n = int_param(s, "n"), power = int_param(s, "power"), min_kernel = int_param(s, "min_kernel");
  for (int r = 0; 2 * r <= n; ++r) {
    QForm w = standard_two_form(n, 2 * r);
    if (!xalg::power(w, power).is_zero()) continue;
    if (static_cast<int>(kernel_dim(w)) < min_kernel)
      return {false, "rank " + std::to_string(2 * r) + " form has w^" + std::to_string(power) +
                         " = 0 but kernel dimension " + std::to_string(kernel_dim(w))};
  }
  return {};
}

Outcome check_lefschetz_normal_form(const ProofStep& s) {
  const int power = int_param(s, "power");
  for (int r = 0; r <= 3; ++r) {
    QForm w = standard_two_form(6, 2 * r);
    if (xalg::power(w, power).is_zero()) continue;
    auto rk = rank(xalg::lefschetz_matrix(w));
    if (rk != 15)
      return {false, "rank " + std::to_string(2 * r) + " form has w^" + std::to_string(power) +
                         " != 0 but Lefschetz rank " + std::to_string(rk)};
  }
  return {};
}

Outcome check_same_ideal(const ProofStep& s) {
  bool same = grring::same_ideal(table_for(param(s, "ring")), table_for(param(s, "other")));
  return {same, same ? "" : "presentations generate different ideals"};
}

// ---- sampled checks --------------------------------------------------------

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  std::vector<Rational> vector(int n) {
    for (;;) {
      std::vector<Rational> v(n);
      bool nonzero = false;
      for (auto& x : v) {
        x = Rational(integer(-3, 3));
        nonzero = nonzero || sgn(x) != 0;
      }
      if (nonzero) return v;
    }
  }

  QForm form(int n, int k) {
    QForm f(n, k);
    for (auto m : xalg::blades_of_grade(n, k)) f.add(m, Rational(integer(-3, 3)));
    return f;
  }

  QMatrix frame(int n) {
    for (;;) {
      QMatrix g(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = Rational(integer(-2, 2));
      if (sgn(determinant(g)) != 0) return g;
    }
  }

  QForm two_form_of_rank(int n, int r) { return xalg::pullback(standard_two_form(n, r), frame(n)); }

  // Random nonzero element of the span (zero if the span is trivial).
  std::vector<Rational> combination(const std::vector<std::vector<Rational>>& basis, int n) {
    std::vector<Rational> v(n, Rational(0));
    if (basis.empty()) return v;
    for (;;) {
      for (auto& x : v) x = 0;
      for (const auto& b : basis) {
        Rational c(integer(-3, 3));
        if (sgn(c) == 0) continue;
        for (int i = 0; i < n; ++i) v[i] += c * b[i];
      }
      for (const auto& x : v)
        if (sgn(x) != 0) return v;
    }
  }

 private:
  std::mt19937_64 rng_;
};

// Joint kernel of 1-forms and 2-forms.
std::vector<std::vector<Rational>> joint_kernel(const std::vector<FormExpr>& exprs, const FormEnv& env) {
  std::vector<std::vector<Rational>> rows;
  for (const auto& e : exprs) {
    QForm f = e.eval(env);
    if (f.is_zero()) continue;
    int g = f.require_grade("kernel");
    if (g == 1) {
      rows.push_back(f.coordinates(1));
    } else if (g == 2) {
      auto m = xalg::two_form_matrix(f);
      for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    } else {
      fail(ErrorCode::Unsupported, "kernel of a form of grade " + std::to_string(g) + " (" + e.text() + ")");
    }
  }
  std::vector<std::vector<Rational>> basis;
  if (rows.empty()) {
    for (int i = 0; i < env.n; ++i) {
      std::vector<Rational> v(env.n, Rational(0));
      v[i] = 1;
      basis.push_back(v);
    }
    return basis;
  }
  QMatrix m(rows.size(), env.n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < env.n; ++j) m(i, j) = rows[i][j];
  return nullspace(m);
}

std::vector<FormExpr> parse_list(const std::string& text) {
  std::vector<FormExpr> out;
  for (const auto& part : split(text, '|')) out.push_back(FormExpr::parse(part));
  return out;
}

struct SamplerSpec {
  std::string name, kind, arg;
  std::vector<FormExpr> exprs;  // kernel arguments
};

struct Requirement {
  std::string kind;  // meet_trivial | nonzero
  std::vector<FormExpr> exprs;
};

struct Pointwise {
  int n = 0;
  std::vector<SamplerSpec> samplers;
  std::vector<Requirement> requirements;
  std::string conclusion;
  std::optional<FormExpr> lhs, rhs;
  std::vector<FormExpr> kernel;
  int value = 0;

  explicit Pointwise(const ProofStep& s) {
    n = int_param(s, "n");
    require(n >= 1 && n <= xalg::kMaxDimension, ErrorCode::InvalidArgument, "pointwise dimension");
    for (const auto& item : split(param(s, "samplers"), ';')) {
      auto eq = item.find('=');
      require(eq != std::string::npos, ErrorCode::InvalidArgument, "sampler '" + item + "' lacks '='");
      SamplerSpec sp;
      sp.name = trim(item.substr(0, eq));
      std::string rest = trim(item.substr(eq + 1));
      auto colon = rest.find(':');
      sp.kind = trim(rest.substr(0, colon));
      if (colon != std::string::npos) sp.arg = trim(rest.substr(colon + 1));
      if (sp.kind == "kernel") sp.exprs = parse_list(sp.arg);
      samplers.push_back(std::move(sp));
    }
    if (auto it = s.params.find("require"); it != s.params.end())
      for (const auto& item : split(it->second, ';')) {
        auto colon = item.find(':');
        require(colon != std::string::npos, ErrorCode::InvalidArgument, "requirement '" + item + "'");
        requirements.push_back({trim(item.substr(0, colon)), parse_list(item.substr(colon + 1))});
      }
    conclusion = param(s, "conclusion");
    if (auto it = s.params.find("lhs"); it != s.params.end()) lhs = FormExpr::parse(it->second);
    if (auto it = s.params.find("rhs"); it != s.params.end()) rhs = FormExpr::parse(it->second);
    if (auto it = s.params.find("kernel"); it != s.params.end()) kernel = parse_list(it->second);
    if (auto it = s.params.find("value"); it != s.params.end()) value = std::stoi(it->second);
  }

  FormEnv draw(Sampler& rng) const {
    FormEnv env;
    env.n = n;
    for (const auto& sp : samplers) {
      if (sp.kind == "vector") {
        env.vectors[sp.name] = rng.vector(n);
      } else if (sp.kind == "kernel") {
        env.vectors[sp.name] = rng.combination(joint_kernel(sp.exprs, env), n);
      } else if (sp.kind == "form") {
        env.forms.insert_or_assign(sp.name, rng.form(n, std::stoi(sp.arg)));
      } else if (sp.kind == "2form_rank") {
        env.forms.insert_or_assign(sp.name, rng.two_form_of_rank(n, std::stoi(sp.arg)));
      } else if (sp.kind == "2form_nondeg") {
        env.forms.insert_or_assign(sp.name, rng.two_form_of_rank(n, n - n % 2));
      } else {
        fail(ErrorCode::InvalidArgument, "unknown sampler kind '" + sp.kind + "'");
      }
    }
    return env;
  }

  bool admissible(const FormEnv& env) const {
    for (const auto& r : requirements) {
      if (r.kind == "meet_trivial") {
        if (!joint_kernel(r.exprs, env).empty()) return false;
      } else if (r.kind == "nonzero") {
        for (const auto& e : r.exprs)
          if (e.eval(env).is_zero()) return false;
      } else {
        fail(ErrorCode::InvalidArgument, "unknown requirement '" + r.kind + "'");
      }
    }
    return true;
  }

  Outcome conclude(const FormEnv& env) const {
    auto need = [&](const std::optional<FormExpr>& e, const char* what) -> const FormExpr& {
      if (!e) fail(ErrorCode::InvalidArgument, std::string("conclusion needs ") + what);
      return *e;
    };
    if (conclusion == "equal") {
      QForm a = need(lhs, "lhs").eval(env), b = need(rhs, "rhs").eval(env);
      if (a == b) return {};
      return {false, lhs->text() + " = " + a.str() + " but " + rhs->text() + " = " + b.str()};
    }
    if (conclusion == "zero" || conclusion == "nonzero") {
      QForm a = need(lhs, "lhs").eval(env);
      bool want_zero = conclusion == "zero";
      if (a.is_zero() == want_zero) return {};
      return {false, lhs->text() + " = " + a.str()};
    }
    if (conclusion == "kernel_dim_at_least") {
      auto k = joint_kernel(kernel, env).size();
      if (static_cast<int>(k) >= value) return {};
      return {false, "joint kernel has dimension " + std::to_string(k)};
    }
    if (conclusion == "not_annihilated" || conclusion == "annihilated") {
      QForm theta = need(lhs, "lhs").eval(env);
      bool hit = false;
      for (const auto& v : joint_kernel(kernel, env))
        if (!theta.is_zero() && sgn(xalg::interior(v, theta).coefficient(0)) != 0) hit = true;
      if (hit == (conclusion == "not_annihilated")) return {};
      return {false, lhs->text() + (hit ? " is nonzero" : " vanishes") + " on the kernel"};
    }
    if (conclusion == "lefschetz_invertible" || conclusion == "lefschetz_singular") {
      QForm w = need(lhs, "lhs").eval(env);
      bool inv = rank(xalg::lefschetz_matrix(w)) == 15;
      if (inv == (conclusion == "lefschetz_invertible")) return {};
      return {false, "Lefschetz map of " + w.str() + (inv ? " is invertible" : " is singular")};
    }
    fail(ErrorCode::InvalidArgument, "unknown conclusion '" + conclusion + "'");
  }
};

Outcome run_exact(const ProofStep& s) {
  if (s.check == "ring_zero" || s.check == "ring_nonzero" || s.check == "ring_nonzero_top") return check_ring(s);
  if (s.check == "ring_combination") return check_combination(s);
  if (s.check == "no_real_roots") return check_no_real_roots(s);
  if (s.check == "rational_nonzero") return check_rational_nonzero(s);
  if (s.check == "normal_form_power") return check_normal_form_power(s);
  if (s.check == "lefschetz_normal_form") return check_lefschetz_normal_form(s);
  if (s.check == "same_ideal") return check_same_ideal(s);
  fail(ErrorCode::InvalidArgument, "unknown exact check '" + s.check + "'");
}

// ---- certificate assembly --------------------------------------------------

struct Builder {
  Certificate cert;

  ProofStep& exact(std::string id, std::string check, std::string claim,
                   std::map<std::string, std::string> params) {
    cert.steps.push_back({std::move(id), StepKind::Exact, std::move(claim), std::move(check), std::move(params)});
    return cert.steps.back();
  }
  ProofStep& sampled(std::string id, std::string claim, std::map<std::string, std::string> params) {
    params.emplace("n", "6");
    cert.steps.push_back({std::move(id), StepKind::Sampled, std::move(claim), "pointwise", std::move(params)});
    return cert.steps.back();
  }

  Certificate finish() {
    for (const auto& s : cert.steps) {
      if (s.kind != StepKind::Exact) continue;
      StepResult r = verify_step(s, 0, 0);
      if (!r.passed) cert.failed_steps.push_back(s.id + ": " + r.message);
    }
    cert.verdict = cert.failed_steps.empty() ? CertificateVerdict::Infeasible : CertificateVerdict::Inconclusive;
    return std::move(cert);
  }
};

void require_six(const RingPresentation& r, const char* pattern) {
  require(r.top == 6, ErrorCode::Unsupported, std::string(pattern) + " certificates are for rings with top degree 6");
}

// Steps shared by the Totaro cases: the ring facts about X, y1, y2 and the
// pointwise lemma chain ending in Ker X ∩ Ker y1 != 0.
struct TotaroForms {
  Polynomial X, y1, y2;  // over the original generators
};

void add_volume_step(Builder& b, const std::string& id) {
  b.sampled(id, "a volume form has no kernel: i_w vol != 0 for w != 0",
            {{"samplers", "w=vector"}, {"conclusion", "nonzero"}, {"lhs", "i(w, vol)"}});
}

}  // namespace

StepResult verify_step(const ProofStep& step, int trials, std::uint64_t seed) {
  StepResult r;
  r.id = step.id;
  r.kind = step.kind;
  try {
    if (step.kind == StepKind::Exact) {
      Outcome o = run_exact(step);
      r.passed = o.ok;
      r.failures = o.ok ? 0 : 1;
      r.message = o.message;
      return r;
    }
    require(step.check == "pointwise", ErrorCode::InvalidArgument, "sampled steps use the pointwise check");
    Pointwise pw(step);
    Sampler rng(seed);
    for (int t = 0; t < trials; ++t) {
      ++r.trials;
      std::optional<FormEnv> env;
      for (int attempt = 0; attempt < 200 && !env; ++attempt) {
        FormEnv e = pw.draw(rng);
        if (pw.admissible(e)) env = std::move(e);
      }
      if (!env) {
        ++r.failures;
        if (r.message.empty()) r.message = "could not sample an instance satisfying the hypotheses";
        continue;
      }
      Outcome o = pw.conclude(*env);
      if (!o.ok) {
        ++r.failures;
        if (r.message.empty()) r.message = "trial " + std::to_string(t) + ": " + o.message;
      }
    }
    r.passed = r.trials > 0 && r.failures == 0;
    if (r.trials == 0) r.message = "no trials run";
  } catch (const Error& e) {
    r.passed = false;
    r.failures = std::max(r.failures, 1);
    r.message = e.what();
  }
  return r;
}

VerificationReport verify_certificate(const Certificate& cert, int trials, std::uint64_t seed) {
  VerificationReport rep;
  rep.trials = trials;
  rep.seed = seed;
  bool ok = cert.verdict == CertificateVerdict::Infeasible;
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    rep.steps.push_back(verify_step(cert.steps[i], trials, restart_seed(seed, static_cast<int>(i))));
    ok = ok && rep.steps.back().passed;
  }
  rep.accepted = ok;
  return rep;
}

Certificate corrupt_step(Certificate cert, std::size_t index) {
  require(index < cert.steps.size(), ErrorCode::InvalidArgument, "no such step");
  ProofStep& s = cert.steps[index];
  auto& p = s.params;
  static const std::map<std::string, std::string> swaps{
      {"ring_zero", "ring_nonzero"},       {"ring_nonzero", "ring_zero"},
      {"ring_nonzero_top", "ring_zero"},   {"zero", "nonzero"},
      {"nonzero", "zero"},                 {"not_annihilated", "annihilated"},
      {"annihilated", "not_annihilated"},  {"lefschetz_invertible", "lefschetz_singular"},
      {"lefschetz_singular", "lefschetz_invertible"}};
  if (s.check == "pointwise") {
    std::string& c = p["conclusion"];
    if (c == "equal")
      p["rhs"] = "-(" + p["rhs"] + ")";
    else if (c == "kernel_dim_at_least")
      p["value"] = std::to_string(std::stoi(p["n"]) + 1);
    else if (swaps.count(c))
      c = swaps.at(c);
  } else if (swaps.count(s.check)) {
    s.check = swaps.at(s.check);
  } else if (s.check == "ring_combination") {
    p["expected"] = "-(" + p["expected"] + ")";
  } else if (s.check == "no_real_roots") {
    auto c = split(p["coefficients"], ';');
    p["coefficients"] = to_string(Rational(-parse_rational(c[0]))) + "; " + c[1] + "; " + c[2];
  } else if (s.check == "rational_nonzero") {
    p["value"] = "0";
  } else if (s.check == "normal_form_power") {
    p["min_kernel"] = std::to_string(std::stoi(p["n"]) + 1);
  } else if (s.check == "lefschetz_normal_form") {
    p["power"] = "2";
  }
  s.claim = "[corrupted] " + s.claim;
  return cert;
}

std::string ring_to_text(const RingPresentation& ring) {
  std::vector<std::string> gens, rels;
  for (const auto& g : ring.generators) gens.push_back(g.name + ":" + std::to_string(g.degree));
  for (const auto& r : ring.relations) rels.push_back(r.str());
  std::string out = join(gens, " ") + " | top " + std::to_string(ring.top);
  if (ring.volume) out += " | vol " + Polynomial::monomial(ring.generators, *ring.volume).str();
  return out + " | " + join(rels, " ; ");
}

RingPresentation ring_from_text(const std::string& text) {
  auto parts = split(text, '|');
  require(parts.size() >= 3, ErrorCode::InvalidArgument, "ring text needs generators | top | relations");
  std::vector<Generator> gens;
  for (const auto& g : split(parts[0], ' ')) {
    auto colon = g.find(':');
    require(colon != std::string::npos, ErrorCode::InvalidArgument, "generator '" + g + "' lacks a degree");
    gens.push_back({g.substr(0, colon), std::stoi(g.substr(colon + 1))});
  }
  require(parts[1].rfind("top ", 0) == 0, ErrorCode::InvalidArgument, "ring text: expected 'top N'");
  int top = std::stoi(parts[1].substr(4));
  std::string volume;
  std::size_t rel = 2;
  if (parts[2].rfind("vol ", 0) == 0) {
    volume = trim(parts[2].substr(4));
    rel = 3;
  }
  std::vector<std::string> rels;
  if (rel < parts.size()) rels = split(parts[rel], ';');
  return RingPresentation::parse("", gens, rels, top, volume);
}

Certificate certify_rank_kernel(const RingPresentation& ring, const Polynomial& u, const Polynomial& v,
                                const Rational& c) {
  if (sgn(c) == 0)
    fail(ErrorCode::PatternInapplicable, "rank-kernel certificate needs c != 0 (c = 0 is realizable)");
  require_six(ring, "rank-kernel");
  Builder b;
  b.cert.pattern = "RANK_KERNEL";
  b.cert.ring = ring_to_text(ring);
  b.cert.parameters = {{"u", u.str()}, {"v", v.str()}, {"c", to_string(c)}};
  const std::string& rt = b.cert.ring;
  const std::string cx = paren(c) + "*x^2";

  b.exact("rk.ring.u3", "ring_zero", "u^3 = 0 in the ring", {{"ring", rt}, {"poly", paren(u) + "^3"}});
  b.exact("rk.ring.rel", "ring_zero", "v^2 + c u^2 = 0 in the ring",
          {{"ring", rt}, {"poly", paren(v) + "^2 + " + paren(c) + "*" + paren(u) + "^2"}});
  b.exact("rk.ring.v3", "ring_nonzero_top", "v^3 is a nonzero top class, so its form y^3 is a volume form",
          {{"ring", rt}, {"poly", paren(v) + "^3"}});
  b.exact("rk.c", "rational_nonzero", "c != 0", {{"value", to_string(c)}});
  b.exact("rk.kernel", "normal_form_power",
          "x^3 = 0 on R^6 forces rank(x) <= 4, so x has a kernel vector v",
          {{"n", "6"}, {"power", "3"}, {"min_kernel", "2"}});
  b.sampled("rk.leibniz", "i_v(y^2 + c x^2) = 2 i_v y ^ y + 2c i_v x ^ x",
            {{"samplers", "x=form:2; y=form:2; v=vector"},
             {"conclusion", "equal"},
             {"lhs", "i(v, y^2 + " + cx + ")"},
             {"rhs", "2*i(v,y)*y + 2*" + paren(c) + "*i(v,x)*x"}});
  b.sampled("rk.contract", "for v in Ker x: i_v(y^2 + c x^2) = 2 i_v y ^ y, so i_v y ^ y = 0",
            {{"samplers", "x=2form_rank:4; y=form:2; v=kernel:x"},
             {"conclusion", "equal"},
             {"lhs", "i(v, y^2 + " + cx + ")"},
             {"rhs", "2*i(v,y)*y"}});
  b.sampled("rk.cube", "i_v(y^3) = 3 i_v y ^ y^2, which vanishes once i_v y ^ y = 0",
            {{"samplers", "y=form:2; v=vector"}, {"conclusion", "equal"}, {"lhs", "i(v, y^3)"},
             {"rhs", "3*i(v,y)*y^2"}});
  add_volume_step(b, "rk.volume");
  b.cert.conclusion =
      "no constant-coefficient realization on R^6: a kernel vector v of x gives i_v(y^3) = 0, "
      "but y^3 must be a volume form";
  b.cert.notes.push_back("x and y denote the pointwise forms of u and v");
  return b.finish();
}

Certificate certify_rank_kernel(const Rational& c) {
  if (sgn(c) == 0)
    fail(ErrorCode::PatternInapplicable, "c = 0 is the trivial bundle, which is realizable");
  auto ring = grring::sphere_bundle_ring(c);
  auto cert = certify_rank_kernel(ring, ring.gen("x"), ring.gen("y"), c);
  cert.parameters["ring"] = "sphere-bundle";
  return cert;
}

Certificate certify_lefschetz(const RingPresentation& ring, const Polynomial& omega, const Polynomial& eta) {
  require_six(ring, "Lefschetz");
  Builder b;
  b.cert.pattern = "LEFSCHETZ";
  b.cert.ring = ring_to_text(ring);
  b.cert.parameters = {{"omega", omega.str()}, {"eta", eta.str()}};
  const std::string& rt = b.cert.ring;
  b.exact("lf.ring.cube", "ring_nonzero_top", "omega^3 is a nonzero top class, so w^3 is a volume form",
          {{"ring", rt}, {"poly", paren(omega) + "^3"}});
  b.exact("lf.ring.kill", "ring_zero", "eta * omega = 0 in the ring", {{"ring", rt}, {"poly", paren(eta) + "*" + paren(omega)}});
  b.exact("lf.ring.eta", "ring_nonzero", "eta != 0, so its harmonic form e vanishes nowhere",
          {{"ring", rt}, {"poly", eta.str()}});
  b.exact("lf.normal", "lefschetz_normal_form", "w^3 != 0 on R^6 makes a -> a ^ w injective on 2-forms",
          {{"power", "3"}});
  b.sampled("lf.sample", "random nondegenerate w on R^6 has an invertible Lefschetz map",
            {{"samplers", "w=2form_nondeg"}, {"conclusion", "lefschetz_invertible"}, {"lhs", "w"}});
  b.cert.conclusion =
      "no constant-coefficient realization on R^6: e ^ w = 0 with w nondegenerate forces e = 0, "
      "but e represents a nonzero class";
  b.cert.notes.push_back(
      "w nondegenerate is used only at the point under consideration, where w^3 is a volume form");
  b.cert.notes.push_back(
      "nonzero harmonic forms of a formal metric have constant length, hence vanish nowhere");
  return b.finish();
}

Certificate certify_lefschetz() {
  auto ring = grring::named_ring("eschenburg-ex2");
  auto x = ring.gen("x"), y = ring.gen("y");
  Builder b;
  b.cert = certify_lefschetz(ring, x + y, x - y);
  b.cert.parameters["ring"] = "eschenburg-ex2";
  b.sampled("lf.identity", "(x - y) ^ (x + y) = x^2 - y^2 pointwise",
            {{"samplers", "x=form:2; y=form:2"}, {"conclusion", "equal"}, {"lhs", "(x - y)*(x + y)"},
             {"rhs", "x^2 - y^2"}});
  return b.cert;
}

namespace {

Certificate certify_totaro_generic(const Rational& a, const Rational& b_, int which) {
  auto ring = grring::totaro_ring(a, b_);
  NormalFormTable t(ring);
  auto x1 = ring.gen("x1"), x2 = ring.gen("x2"), x3 = ring.gen("x3");
  Rational scale = which == 2 ? b_ : a;  // X = scale * x1 normalizes the leading parameter to 1
  Rational B = which == 1 ? Rational(b_ / a) : Rational(0);
  Polynomial X = scale * x1, y1(ring.generators), y2(ring.generators);
  if (which == 1) {
    y1 = X + (Rational(3) / B) * x2;
    y2 = X + Rational(3, 2) * x3;
  } else if (which == 2) {
    y1 = X + Rational(3) * x2;
    y2 = x3;
  } else {
    y1 = x2;
    y2 = X + Rational(3, 2) * x3;
  }

  auto sub = grring::substitute(t, {"X", "y1", "y2"}, {X, y1, y2});
  const auto& R = sub.relations;
  std::vector<Rational> coef(3, Rational(0));
  auto mono = [&](int e0, int e1, int e2) { return grring::Monomial{e0, e1, e2}; };
  if (which == 1) {
    coef[1] = Rational(9) * (B - 4) / B;
    coef[2] = 9;
  } else {
    // Eliminate X*y2 between the two rewritten quadratic relations.
    Rational p = R[1].coefficient(mono(1, 0, 1)), q = R[2].coefficient(mono(1, 0, 1));
    coef[1] = q;
    coef[2] = -p;
    if (sgn(p) == 0 && sgn(q) == 0) coef[1] = 1;
  }
  Polynomial nrel = coef[1] * R[1] + coef[2] * R[2];
  Rational alpha = nrel.coefficient(mono(1, 1, 0)), beta = nrel.coefficient(mono(0, 1, 1)),
           gamma = nrel.coefficient(mono(0, 2, 0)), delta = nrel.coefficient(mono(0, 0, 2));

  Builder bl;
  auto& cert = bl.cert;
  cert.pattern = "TOTARO";
  cert.ring = ring_to_text(ring);
  cert.parameters = {{"a", to_string(a)}, {"b", to_string(b_)}, {"case", std::to_string(which)},
                     {"X", X.str()},      {"y1", y1.str()},     {"y2", y2.str()}};
  if (which == 1) cert.parameters["B"] = to_string(B);
  const std::string& rt = cert.ring;
  const std::string PX = paren(X), P1 = paren(y1), P2 = paren(y2);

  bl.exact("t.ring.X2", "ring_zero", "X^2 = 0", {{"ring", rt}, {"poly", PX + "^2"}});
  bl.exact("t.ring.y1cube", "ring_zero", "y1^3 = 0", {{"ring", rt}, {"poly", P1 + "^3"}});
  bl.exact("t.ring.y2cube", "ring_zero", "y2^3 = 0", {{"ring", rt}, {"poly", P2 + "^3"}});
  bl.exact("t.ring.Xy1sq", "ring_nonzero_top", "X y1^2 is a volume class", {{"ring", rt}, {"poly", PX + "*" + P1 + "^2"}});
  bl.exact("t.ring.Xy2sq", "ring_nonzero_top", "X y2^2 is a volume class", {{"ring", rt}, {"poly", PX + "*" + P2 + "^2"}});

  // The pointwise steps use this four-term form; the exact step pins it to the ring.
  const std::string nrel_form = paren(alpha) + "*X*y1 + " + paren(beta) + "*y1*y2 + " + paren(gamma) + "*y1^2 + " +
                                paren(delta) + "*y2^2";
  std::string nrel_text = nrel.str();
  bl.exact("t.nrel", "ring_combination", "a combination of the rewritten relations without X y2 and X^2 terms: " + nrel_text + " = 0",
           {{"ring", rt},
            {"names", "X,y1,y2"},
            {"definitions", X.str() + "; " + y1.str() + "; " + y2.str()},
            {"coefficients", to_string(coef[0]) + "; " + to_string(coef[1]) + "; " + to_string(coef[2])},
            {"expected", nrel_form}});
  if (which == 1) {
    bl.exact("t.alpha", "no_real_roots", "the X y1 coefficient 5B - 2B^2 - 4 has no real zero",
             {{"coefficients", "-4; 5; -2"}});
    bl.exact("t.alpha.value", "rational_nonzero", "X y1 coefficient at this B", {{"value", to_string(alpha)}});
  } else {
    bl.exact("t.alpha", "rational_nonzero", "the X y1 coefficient is nonzero", {{"value", to_string(alpha)}});
  }

  bl.exact("t.kerX", "normal_form_power", "X^2 = 0 on R^6 forces rank(X) <= 2, so dim Ker X >= 4",
           {{"n", "6"}, {"power", "2"}, {"min_kernel", "4"}});
  bl.exact("t.kery", "normal_form_power", "y^3 = 0 on R^6 forces dim Ker y >= 2",
           {{"n", "6"}, {"power", "3"}, {"min_kernel", "2"}});
  bl.sampled("t.leibniz", "i_w(X y^2) = i_w X ^ y^2 + 2 X ^ i_w y ^ y, so Ker X ∩ Ker y = 0 when X y^2 is a volume form",
             {{"samplers", "X=form:2; y=form:2; w=vector"},
              {"conclusion", "equal"},
              {"lhs", "i(w, X*y^2)"},
              {"rhs", "i(w,X)*y^2 + 2*X*i(w,y)*y"}});
  add_volume_step(bl, "t.volume");
  bl.sampled("t.u2",
             "X of rank 2, u1 outside Ker X and Ker X ∩ Ker y2 = 0: some u2 in Ker y2 has X(u1,u2) != 0",
             {{"samplers", "X=2form_rank:2; y2=2form_rank:4; u1=vector"},
              {"require", "meet_trivial:X|y2; nonzero:i(u1,X)"},
              {"conclusion", "not_annihilated"},
              {"lhs", "i(u1,X)"},
              {"kernel", "y2"}});
  const std::string nnrel = paren(alpha) + "*i(u2, i(u1,X)*y1) + " + paren(beta) + "*i(u2,y1)*i(u1,y2)";
  bl.sampled("t.nnrel", "contracting the combination with u1 in Ker y1 and u2 in Ker y2",
             {{"samplers", "X=form:2; y1=2form_rank:4; y2=2form_rank:4; u1=kernel:y1; u2=kernel:y2"},
              {"conclusion", "equal"},
              {"lhs", "i(u2, i(u1, " + nrel_form + "))"},
              {"rhs", nnrel}});
  bl.sampled("t.kernel", "Ker X ∩ Ker i_u2 y1 ∩ Ker i_u1 y2 has dimension >= 2 when rank(X) <= 2",
             {{"samplers", "X=2form_rank:2; y1=form:2; y2=form:2; u1=vector; u2=vector"},
              {"conclusion", "kernel_dim_at_least"},
              {"kernel", "X|i(u2,y1)|i(u1,y2)"},
              {"value", "2"}});
  bl.sampled("t.final", "for w in that intersection the contraction leaves alpha X(u1,u2) i_w y1",
             {{"samplers", "X=2form_rank:2; y1=form:2; y2=form:2; u1=vector; u2=vector; w=kernel:X|i(u2,y1)|i(u1,y2)"},
              {"conclusion", "equal"},
              {"lhs", "i(w, " + nnrel + ")"},
              {"rhs", paren(alpha) + "*i(u2, i(u1,X))*i(w,y1)"}});
  cert.conclusion =
      "no constant-coefficient realization on R^6: alpha != 0 and X(u1,u2) != 0 force i_w y1 = 0 for a "
      "nonzero w in Ker X, contradicting Ker X ∩ Ker y1 = 0";
  cert.notes.push_back("the existence of u2 is checked by sampling, not by a normal form");
  if (which == 1)
    cert.notes.push_back("y1 y2^2 is not used; it vanishes in the ring when B = 2");
  if (which == 2)
    cert.notes.push_back("y2 = x3: with a = 0 no y2 = X + t x3 has vanishing cube");
  return bl.finish();
}

Certificate certify_totaro_degenerate() {
  auto ring = grring::totaro_ring(Rational(0), Rational(0));
  auto x1 = ring.gen("x1"), x2 = ring.gen("x2"), x3 = ring.gen("x3");
  Polynomial y1 = x2 + x3, y2 = x2 + Rational(1, 2) * x3;
  Builder bl;
  auto& cert = bl.cert;
  cert.pattern = "TOTARO";
  cert.ring = ring_to_text(ring);
  cert.parameters = {{"a", "0"}, {"b", "0"}, {"case", "4"}, {"y1", y1.str()}, {"y2", y2.str()}};
  const std::string& rt = cert.ring;
  const std::string P1 = paren(y1), P2 = paren(y2);
  const std::string defs = x1.str() + "; " + y1.str() + "; " + y2.str();
  bl.exact("t4.ring.y1cube", "ring_zero", "y1^3 = 0", {{"ring", rt}, {"poly", P1 + "^3"}});
  bl.exact("t4.ring.y2cube", "ring_zero", "y2^3 = 0", {{"ring", rt}, {"poly", P2 + "^3"}});
  bl.exact("t4.rel1", "ring_combination", "y1^2 - 2 y1 y2 = 0",
           {{"ring", rt}, {"names", "X,y1,y2"}, {"definitions", defs}, {"coefficients", "0; -1; 0"},
            {"expected", "y1^2 - 2*y1*y2"}});
  bl.exact("t4.rel2", "ring_combination", "y2^2 - y1 y2 = 0",
           {{"ring", rt}, {"names", "X,y1,y2"}, {"definitions", defs}, {"coefficients", "0; 0; -1/4"},
            {"expected", "y2^2 - y1*y2"}});
  bl.exact("t4.ring.volume", "ring_nonzero_top", "y1 y2^2 is a volume class",
           {{"ring", rt}, {"poly", P1 + "*" + P2 + "^2"}});
  bl.exact("t4.kery", "normal_form_power", "y1^3 = 0 on R^6 forces dim Ker y1 >= 2",
           {{"n", "6"}, {"power", "3"}, {"min_kernel", "2"}});
  bl.sampled("t4.contract", "for u in Ker y1 the two relations give i_u(y2^2) = 0",
             {{"samplers", "y1=2form_rank:4; y2=form:2; u=kernel:y1"},
              {"conclusion", "equal"},
              {"lhs", "i(u, y2^2 - y1*y2) - 1/2*i(u, y1^2 - 2*y1*y2)"},
              {"rhs", "i(u, y2^2)"}});
  bl.sampled("t4.leibniz", "for u in Ker y1: i_u(y1 y2^2) = y1 ^ i_u(y2^2)",
             {{"samplers", "y1=2form_rank:4; y2=form:2; u=kernel:y1"},
              {"conclusion", "equal"},
              {"lhs", "i(u, y1*y2^2)"},
              {"rhs", "y1*i(u, y2^2)"}});
  add_volume_step(bl, "t4.volume");
  cert.conclusion = "contradiction with y1 y2^2 being a volume form, provided it is a nonzero top class";
  cert.notes.push_back(
      "every cubic in x2, x3 vanishes when a = b = 0, so y1 y2^2 = 0 and the chain does not close; "
      "x1 = e56 with y1, y2 self-dual on span(e1..e4), y1^2 = 2s, y1 y2 = y2^2 = s (s = e1234) "
      "satisfies all relations");
  return bl.finish();
}

}  // namespace

Certificate certify_totaro(const Rational& a, const Rational& b) {
  if (sgn(a) != 0 && sgn(b) != 0) return certify_totaro_generic(a, b, 1);
  if (sgn(a) == 0 && sgn(b) != 0) return certify_totaro_generic(a, b, 2);
  if (sgn(a) != 0) return certify_totaro_generic(a, b, 3);
  return certify_totaro_degenerate();
}

Certificate certify_ring(const RingPresentation& ring) {
  NormalFormTable t(ring);
  auto m = grring::pattern_match(t);
  switch (m.tag) {
    case grring::PatternTag::RankKernel:
      return certify_rank_kernel(ring, *m.u, *m.v, m.c);
    case grring::PatternTag::Lefschetz:
      return certify_lefschetz(ring, *m.omega, *m.eta);
    case grring::PatternTag::Totaro: {
      Certificate c = certify_totaro(m.a, m.b);
      std::string given = ring_to_text(ring);
      if (given != c.ring) {
        Builder bl;
        bl.cert = std::move(c);
        bl.cert.steps.insert(bl.cert.steps.begin(),
                             ProofStep{"t.match", StepKind::Exact, "the given presentation has the same ideal",
                                       "same_ideal", {{"ring", given}, {"other", bl.cert.ring}}});
        bl.cert.failed_steps.clear();
        return bl.finish();
      }
      return c;
    }
    default:
      break;
  }
  fail(ErrorCode::PatternInapplicable, std::string("no certificate family for pattern ") + grring::to_string(m.tag) +
                                           "; try the numerical search (realize)");
}

}  // namespace gformal::realize
