#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "common/rational.hpp"
#include "json.hpp"

namespace gformal::app {

enum class Command { Homog, Certify, Realize, Suite };
const char* to_string(Command c);

enum class ReportFormat { Human, Structured };

// User-defined ring for certify / realize.
struct RingSpec {
  std::string generators;  // "x:2, y:2"
  std::vector<std::string> relations;
  int top = 0;
  std::string volume;
};

// User-defined homogeneous space for homog.
struct SpaceSpec {
  std::string algebra;
  std::vector<std::map<std::string, Rational>> subalgebra;
};

struct SearchOverrides {
  std::optional<int> restarts, max_iterations;
  std::optional<double> initial_step, convergence_tolerance, feasibility_threshold;
  std::optional<bool> independence;
};

struct RunConfig {
  Command command = Command::Suite;
  std::string target;
  // k, l, p, q are integers; a, b, c exact rationals.
  std::map<std::string, Rational> params;
  std::optional<int> degree_lo, degree_hi;
  bool allow_degenerate = false;
  bool isotropy_connected = true;
  std::vector<Rational> scales;
  std::optional<RingSpec> ring;
  std::optional<SpaceSpec> space;
  SearchOverrides search;
  std::uint64_t seed = 1;
  int trials = 1000;
  // suite
  std::string only;
  std::vector<std::string> stub;
  std::optional<int> soundness_restarts;
  std::string output;
  ReportFormat format = ReportFormat::Human;
  bool timing = false;

  Rational param(const std::string& key, const Rational& fallback) const;
  int int_param(const std::string& key, int fallback) const;
};

// Default seed: GFORMAL_SEED if set and valid, else 1.
std::uint64_t default_seed();

// YAML (JSON is accepted as YAML). Unknown keys and ill-typed values are
// MalformedConfig errors.
RunConfig parse_config(const std::string& text);
// `overrides` is merged over `text` (mappings key by key) before parsing.
RunConfig parse_config(const std::string& text, const std::string& overrides);

// Everything needed to rerun: the config with defaults filled in.
nlohmann::ordered_json echo(const RunConfig& cfg);

}  // namespace gformal::app
