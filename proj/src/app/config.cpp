#include "app/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cstdlib>
#include <set>

#include "common/error.hpp"

namespace gformal::app {

const char* to_string(Command c) {
  switch (c) {
    case Command::Homog:
      return "homog";
    case Command::Certify:
      return "certify";
    case Command::Realize:
      return "realize";
    case Command::Suite:
      return "suite";
  }
  return "?";
}

Rational RunConfig::param(const std::string& key, const Rational& fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

int RunConfig::int_param(const std::string& key, int fallback) const {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  require(it->second.get_den() == 1 && it->second.get_num().fits_sint_p(), ErrorCode::MalformedConfig,
          "parameter " + key + " must be an integer");
  return static_cast<int>(it->second.get_num().get_si());
}

std::uint64_t default_seed() {
  const char* env = std::getenv("GFORMAL_SEED");
  if (!env || !*env) return 1;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') fail(ErrorCode::MalformedConfig, std::string("GFORMAL_SEED is not an integer: ") + env);
  return v;
}

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::MalformedConfig, what); }

void only_keys(const YAML::Node& n, const std::string& where, std::set<std::string> allowed) {
  if (!n.IsMap()) bad(where + " must be a mapping");
  for (const auto& kv : n) {
    auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) bad("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T scalar(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) bad(what + " must be a scalar");
  try {
    return n.as<T>();
  } catch (const YAML::Exception&) {
    bad(what + " has the wrong type ('" + n.Scalar() + "')");
  }
}

Rational rational(const YAML::Node& n, const std::string& what) {
  if (!n.IsScalar()) bad(what + " must be a number");
  try {
    return parse_rational(n.Scalar());
  } catch (const Error&) {
    bad(what + " is not a rational number ('" + n.Scalar() + "')");
  }
}

Command parse_command(const std::string& s) {
  if (s == "homog") return Command::Homog;
  if (s == "certify") return Command::Certify;
  if (s == "realize") return Command::Realize;
  if (s == "suite") return Command::Suite;
  bad("unknown command '" + s + "' (homog, certify, realize, suite)");
}

void parse_degrees(const YAML::Node& n, RunConfig& cfg) {
  if (n.IsSequence() && n.size() == 2) {
    cfg.degree_lo = scalar<int>(n[0], "degrees[0]");
    cfg.degree_hi = scalar<int>(n[1], "degrees[1]");
  } else {
    auto s = scalar<std::string>(n, "degrees");
    auto dots = s.find("..");
    if (dots == std::string::npos) bad("degrees must look like 0..3");
    try {
      cfg.degree_lo = std::stoi(s.substr(0, dots));
      cfg.degree_hi = std::stoi(s.substr(dots + 2));
    } catch (const std::exception&) {
      bad("degrees must look like 0..3");
    }
  }
  if (*cfg.degree_lo < 0 || *cfg.degree_hi < *cfg.degree_lo) bad("degrees: need 0 <= lo <= hi");
}

}  // namespace

namespace {

YAML::Node load(const std::string& text, const std::string& what) {
  try {
    return YAML::Load(text);
  } catch (const YAML::Exception& e) {
    bad(what + " is not valid YAML: " + e.what());
  }
}

// Maps merge key by key; anything else in `over` replaces `base`.
YAML::Node merge(const YAML::Node& base, const YAML::Node& over) {
  if (!over.IsDefined() || over.IsNull()) return base.IsDefined() ? YAML::Clone(base) : YAML::Node();
  if (!base.IsDefined() || !base.IsMap() || !over.IsMap()) return YAML::Clone(over);
  YAML::Node out = YAML::Clone(base);
  for (const auto& kv : over) {
    auto key = kv.first.as<std::string>();
    out[key] = merge(base[key], kv.second);
  }
  return out;
}

RunConfig from_node(const YAML::Node& root);

}  // namespace

RunConfig parse_config(const std::string& text) { return from_node(load(text, "config")); }

RunConfig parse_config(const std::string& text, const std::string& overrides) {
  auto base = load(text, "config");
  if (!base.IsNull() && !base.IsMap()) bad("config must be a mapping");
  return from_node(merge(base, load(overrides, "overrides")));
}

namespace {

RunConfig from_node(const YAML::Node& root) {
  RunConfig cfg;
  cfg.seed = default_seed();
  if (root.IsNull()) bad("config is empty");
  only_keys(root, "config",
            {"command", "target", "params", "degrees", "allow_degenerate", "isotropy_connected", "scales", "ring",
             "space", "search", "seed", "trials", "suite", "output", "format", "timing"});
  if (!root["command"]) bad("config needs a command");
  cfg.command = parse_command(scalar<std::string>(root["command"], "command"));
  if (root["target"]) cfg.target = scalar<std::string>(root["target"], "target");

  if (auto p = root["params"]) {
    only_keys(p, "params", {"k", "l", "a", "b", "c", "p", "q"});
    for (const auto& kv : p) {
      auto key = kv.first.as<std::string>();
      cfg.params[key] = rational(kv.second, "params." + key);
    }
    for (const char* k : {"k", "l", "p", "q"}) cfg.int_param(k, 0);
  }
  if (root["degrees"]) parse_degrees(root["degrees"], cfg);
  if (root["allow_degenerate"]) cfg.allow_degenerate = scalar<bool>(root["allow_degenerate"], "allow_degenerate");
  if (root["isotropy_connected"])
    cfg.isotropy_connected = scalar<bool>(root["isotropy_connected"], "isotropy_connected");
  if (auto s = root["scales"]) {
    if (!s.IsSequence()) bad("scales must be a list");
    for (std::size_t i = 0; i < s.size(); ++i) cfg.scales.push_back(rational(s[i], "scales"));
  }
  if (auto r = root["ring"]) {
    only_keys(r, "ring", {"generators", "relations", "top", "volume"});
    RingSpec spec;
    if (!r["generators"] || !r["relations"] || !r["top"]) bad("ring needs generators, relations and top");
    spec.generators = scalar<std::string>(r["generators"], "ring.generators");
    if (!r["relations"].IsSequence()) bad("ring.relations must be a list");
    for (const auto& rel : r["relations"]) spec.relations.push_back(scalar<std::string>(rel, "ring.relations"));
    spec.top = scalar<int>(r["top"], "ring.top");
    if (r["volume"]) spec.volume = scalar<std::string>(r["volume"], "ring.volume");
    cfg.ring = spec;
  }
  if (auto s = root["space"]) {
    only_keys(s, "space", {"algebra", "subalgebra"});
    SpaceSpec spec;
    if (!s["algebra"] || !s["subalgebra"]) bad("space needs algebra and subalgebra");
    spec.algebra = scalar<std::string>(s["algebra"], "space.algebra");
    if (!s["subalgebra"].IsSequence()) bad("space.subalgebra must be a list of {label: coefficient}");
    for (const auto& v : s["subalgebra"]) {
      if (!v.IsMap()) bad("space.subalgebra entries must be mappings");
      std::map<std::string, Rational> combo;
      for (const auto& kv : v) combo[kv.first.as<std::string>()] = rational(kv.second, "space.subalgebra");
      spec.subalgebra.push_back(std::move(combo));
    }
    cfg.space = spec;
  }
  if (auto s = root["search"]) {
    only_keys(s, "search",
              {"restarts", "max_iterations", "initial_step", "convergence_tolerance", "feasibility_threshold",
               "independence", "seed"});
    auto& o = cfg.search;
    if (s["restarts"]) o.restarts = scalar<int>(s["restarts"], "search.restarts");
    if (s["max_iterations"]) o.max_iterations = scalar<int>(s["max_iterations"], "search.max_iterations");
    if (s["initial_step"]) o.initial_step = scalar<double>(s["initial_step"], "search.initial_step");
    if (s["convergence_tolerance"])
      o.convergence_tolerance = scalar<double>(s["convergence_tolerance"], "search.convergence_tolerance");
    if (s["feasibility_threshold"])
      o.feasibility_threshold = scalar<double>(s["feasibility_threshold"], "search.feasibility_threshold");
    if (s["independence"]) o.independence = scalar<bool>(s["independence"], "search.independence");
    if (s["seed"]) cfg.seed = scalar<std::uint64_t>(s["seed"], "search.seed");
  }
  if (root["seed"]) cfg.seed = scalar<std::uint64_t>(root["seed"], "seed");
  if (root["trials"]) {
    cfg.trials = scalar<int>(root["trials"], "trials");
    if (cfg.trials < 1) bad("trials must be positive");
  }
  if (auto s = root["suite"]) {
    only_keys(s, "suite", {"only", "stub", "soundness_restarts"});
    if (s["only"]) cfg.only = scalar<std::string>(s["only"], "suite.only");
    if (auto st = s["stub"]) {
      if (st.IsSequence())
        for (const auto& m : st) cfg.stub.push_back(scalar<std::string>(m, "suite.stub"));
      else
        cfg.stub.push_back(scalar<std::string>(st, "suite.stub"));
    }
    if (s["soundness_restarts"]) cfg.soundness_restarts = scalar<int>(s["soundness_restarts"], "suite.soundness_restarts");
  }
  if (root["output"]) cfg.output = scalar<std::string>(root["output"], "output");
  if (root["format"]) {
    auto f = scalar<std::string>(root["format"], "format");
    if (f == "human")
      cfg.format = ReportFormat::Human;
    else if (f == "structured" || f == "json")
      cfg.format = ReportFormat::Structured;
    else
      bad("format must be human or structured");
  }
  if (root["timing"]) cfg.timing = scalar<bool>(root["timing"], "timing");
  return cfg;
}

}  // namespace

nlohmann::ordered_json echo(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["command"] = to_string(cfg.command);
  if (!cfg.target.empty()) j["target"] = cfg.target;
  if (!cfg.params.empty()) {
    auto& p = j["params"];
    for (const auto& [k, v] : cfg.params) p[k] = gformal::to_string(v);
  }
  if (cfg.degree_lo) j["degrees"] = std::to_string(*cfg.degree_lo) + ".." + std::to_string(*cfg.degree_hi);
  if (cfg.allow_degenerate) j["allow_degenerate"] = true;
  if (!cfg.isotropy_connected) j["isotropy_connected"] = false;
  if (!cfg.scales.empty()) {
    auto& s = j["scales"] = nlohmann::ordered_json::array();
    for (const auto& v : cfg.scales) s.push_back(gformal::to_string(v));
  }
  if (cfg.ring) {
    auto& r = j["ring"];
    r["generators"] = cfg.ring->generators;
    r["relations"] = cfg.ring->relations;
    r["top"] = cfg.ring->top;
    if (!cfg.ring->volume.empty()) r["volume"] = cfg.ring->volume;
  }
  if (cfg.space) {
    auto& s = j["space"];
    s["algebra"] = cfg.space->algebra;
    auto& sub = s["subalgebra"] = nlohmann::ordered_json::array();
    for (const auto& combo : cfg.space->subalgebra) {
      nlohmann::ordered_json c;
      for (const auto& [k, v] : combo) c[k] = gformal::to_string(v);
      sub.push_back(c);
    }
  }
  const auto& o = cfg.search;
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  if (o.restarts) s["restarts"] = *o.restarts;
  if (o.max_iterations) s["max_iterations"] = *o.max_iterations;
  if (o.initial_step) s["initial_step"] = *o.initial_step;
  if (o.convergence_tolerance) s["convergence_tolerance"] = *o.convergence_tolerance;
  if (o.feasibility_threshold) s["feasibility_threshold"] = *o.feasibility_threshold;
  if (o.independence) s["independence"] = *o.independence;
  if (!s.empty()) j["search"] = s;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  if (cfg.command == Command::Suite) {
    nlohmann::ordered_json su = nlohmann::ordered_json::object();
    if (!cfg.only.empty()) su["only"] = cfg.only;
    if (!cfg.stub.empty()) su["stub"] = cfg.stub;
    if (cfg.soundness_restarts) su["soundness_restarts"] = *cfg.soundness_restarts;
    if (!su.empty()) j["suite"] = su;
  }
  return j;
}

}  // namespace gformal::app
