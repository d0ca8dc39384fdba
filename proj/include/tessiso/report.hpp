#pragma once

#include "tessiso/curvature.hpp"
#include "tessiso/errors.hpp"
#include "tessiso/families.hpp"
#include "tessiso/graph.hpp"
#include "tessiso/isoperimetry.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace tessiso {

inline constexpr const char* kReportSchema = "tessiso-report/1";

enum ExitStatus { kExitOk = 0, kExitIo = 1, kExitViolations = 2, kExitBudget = 3, kExitMalformed = 4 };

struct AnalysisOptions {
    Budget budget;
    double tolerance = 1e-12;
    int witness_depth = 0;  ///< 0: every depth the truncation allows
};

struct CommandResult {
    nlohmann::json record;
    int status = kExitOk;
};

/// Analysis commands that act on a graph: validate, faces, curvature,
/// gauss-bonnet, bounds, alpha, comb-alpha, compare, witness.
const std::vector<std::string>& analysis_commands();

/// Never throws an Error: failures become a diagnostic record whose status
/// follows the exit-code table.
CommandResult run_analysis(const std::string& command, const MetricGraph& g, const AnalysisOptions& opts);

/// Record for a failed command.
nlohmann::json error_record(const std::string& command, const Error& e);
int exit_status_for(ErrorCode code);

/// {schema_version, records}. Key order is sorted, so dumps are stable.
nlohmann::json make_report(const std::vector<nlohmann::json>& records);
std::string report_to_string(const nlohmann::json& report);

nlohmann::json to_json(const BoundValue& v);
nlohmann::json to_json(const AlphaBracket& b);

}  // namespace tessiso
