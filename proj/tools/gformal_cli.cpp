// gformal command-line front end. Flags become a config overlay passed to the
// library; everything else happens behind the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gformal/gformal.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kConfig = 2, kInapplicable = 3, kFailure = 4 };

struct Options {
  std::string target, file, format, output, only, degrees, ring_text;
  std::optional<std::string> k, l, a, b, c, p, q;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials, restarts, max_iterations, soundness_restarts;
  std::vector<std::string> stub;
  bool timing = false, degenerate = false, no_independence = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json overlay(const std::string& command, const Options& o) {
  Json j;
  j["command"] = command;
  if (!o.target.empty()) j["target"] = o.target;
  Json params = Json::object();
  auto put = [&](const char* key, const std::optional<std::string>& v) {
    if (v) params[key] = *v;
  };
  put("k", o.k);
  put("l", o.l);
  put("a", o.a);
  put("b", o.b);
  put("c", o.c);
  put("p", o.p);
  put("q", o.q);
  if (!params.empty()) j["params"] = params;
  if (!o.degrees.empty()) j["degrees"] = o.degrees;
  if (o.degenerate) j["allow_degenerate"] = true;
  if (o.seed) j["seed"] = *o.seed;
  if (o.trials) j["trials"] = *o.trials;
  Json search = Json::object();
  if (o.restarts) search["restarts"] = *o.restarts;
  if (o.max_iterations) search["max_iterations"] = *o.max_iterations;
  if (o.no_independence) search["independence"] = false;
  if (!search.empty()) j["search"] = search;
  Json suite = Json::object();
  if (!o.only.empty()) suite["only"] = o.only;
  if (!o.stub.empty()) suite["stub"] = o.stub;
  if (o.soundness_restarts) suite["soundness_restarts"] = *o.soundness_restarts;
  if (!suite.empty()) j["suite"] = suite;
  if (!o.output.empty()) j["output"] = o.output;
  if (!o.format.empty()) j["format"] = o.format;
  if (o.timing) j["timing"] = true;
  return j;
}

int exit_code(gformal_status s) {
  switch (s) {
    case GFORMAL_OK: return kOk;
    case GFORMAL_MALFORMED_CONFIG:
    case GFORMAL_UNKNOWN_TARGET:
    case GFORMAL_INVALID_ARGUMENT: return kConfig;
    case GFORMAL_PATTERN_INAPPLICABLE:
    case GFORMAL_UNSUPPORTED: return kInapplicable;
    default: return kFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gformal: geometric formality of homogeneous spaces and biquotients"};
  app.set_version_flag("--version", gformal_version());
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "human or structured")->check(CLI::IsMember({"human", "structured", "json"}));
  app.add_option("--output", o.output, "write the report to this file");
  app.add_flag("--timing", o.timing, "add wall-clock timing to the report");
  app.add_option("--seed", o.seed, "random seed (default: GFORMAL_SEED or 1)");

  auto* homog = app.add_subcommand("homog", "invariant complex, Betti numbers and formality probe");
  homog->add_option("target", o.target, "aw, su4/su2, su3/su2, su2/t1, flag-su3, custom")->required();
  homog->add_option("k", o.k, "AW parameter k");
  homog->add_option("l", o.l, "AW parameter l");
  homog->add_option("--degrees", o.degrees, "degree range, e.g. 0..3");
  homog->add_flag("--allow-degenerate", o.degenerate, "allow kl(k+l) = 0 for aw");
  homog->add_option("--file", o.file, "config file with a custom space");

  auto* certify = app.add_subcommand("certify", "build and verify an infeasibility certificate");
  certify->add_option("target", o.target, "eschenburg-ex1, eschenburg-ex2, totaro, sphere-bundle, flag-su3, wedge");
  certify->add_option("--a", o.a);
  certify->add_option("--b", o.b);
  certify->add_option("--c", o.c);
  certify->add_option("--file", o.file, "config file with a custom ring");
  certify->add_option("--trials", o.trials, "trials per sampled step");

  auto* realize = app.add_subcommand("realize", "search for constant-coefficient forms realizing a ring");
  realize->add_option("target", o.target, "named ring (as for certify)");
  realize->add_option("--a", o.a);
  realize->add_option("--b", o.b);
  realize->add_option("--c", o.c);
  realize->add_option("--p", o.p);
  realize->add_option("--q", o.q);
  realize->add_option("--file", o.file, "config file with a custom ring");
  realize->add_option("--restarts", o.restarts);
  realize->add_option("--max-iterations", o.max_iterations);
  realize->add_flag("--no-independence", o.no_independence, "drop the linear-independence constraint");

  auto* suite = app.add_subcommand("suite", "run the built-in reproductions against the expected verdicts");
  suite->add_option("--only", o.only, "group (homogeneous, negative, search, soundness) or row id prefix");
  suite->add_option("--stub", o.stub, "pretend a module is missing (fault injection)");
  suite->add_option("--trials", o.trials, "trials per sampled certificate step");
  suite->add_option("--soundness-restarts", o.soundness_restarts);

  auto* run = app.add_subcommand("run", "run a config file as is");
  run->add_option("file", o.file)->required();

  CLI11_PARSE(app, argc, argv);
  auto* sub = app.get_subcommands().front();

  std::string base = "{}";
  if (!o.file.empty()) {
    try {
      base = read_file(o.file);
    } catch (const std::exception& e) {
      std::cerr << "gformal: " << e.what() << "\n";
      return kConfig;
    }
  }
  std::string over = sub == run ? overlay("", o).dump() : overlay(sub->get_name(), o).dump();
  if (sub == run) {
    auto j = Json::parse(over);
    j.erase("command");
    over = j.dump();
  }

  gformal_report* report = nullptr;
  gformal_status s = gformal_run(base.c_str(), over.c_str(), &report);
  if (s != GFORMAL_OK) {
    std::cerr << "gformal: " << gformal_status_name(s) << ": " << gformal_last_error() << "\n";
    return exit_code(s);
  }
  const char* text = gformal_report_text(report, gformal_report_format(report));
  std::string path = gformal_report_output(report);
  int rc = kOk;
  if (path.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
      std::cerr << "gformal: cannot write " << path << "\n";
      rc = kFailure;
    }
  }
  gformal_report_free(report);
  return rc;
}
