#pragma once

#include <string>

#include "app/config.hpp"
#include "json.hpp"

namespace gformal::app {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "gformal.report/1";
const char* tool_version();

// Runs one command; operational failures throw gformal::Error. The report
// embeds the full input echo and the seed.
Json run(const RunConfig& cfg);

Json cmd_homog(const RunConfig& cfg);
Json cmd_certify(const RunConfig& cfg);
Json cmd_realize(const RunConfig& cfg);
Json cmd_suite(const RunConfig& cfg);

std::string render(const Json& report, ReportFormat format);

// The expected-verdict table shipped with the tool (YAML text).
const std::string& suite_table();

}  // namespace gformal::app
