#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/run_config.hpp"

namespace diamond::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCertificateFailure = 1,
  kExitUsage = 2,
  kExitResource = 3,
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// One command's result. `json` follows the versioned report schema:
// {schema, operation, config, parameters, per_level, derived_limits, checks, passed}.
struct Report {
  nlohmann::json json;
  CsvTable csv;
  bool passed = true;
};

// Validates and executes; throws the diamond error types on bad input.
Report execute(const RunConfig& config);

// execute() plus output and error mapping. The report goes to config.output
// (or `out` for "-"); diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

void write_report(const Report& report, OutputFormat format, std::ostream& out);

}  // namespace diamond::cli
