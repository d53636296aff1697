#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diamond/length.hpp"

namespace diamond::cli {

inline constexpr const char* kReportSchema = "diamond-report/1";

enum class OutputFormat { json, csv };

// Every knob of one CLI invocation. Reports embed it verbatim.
struct RunConfig {
  std::string command;
  int level = 0;
  std::optional<int> min_level;  // doubling / poincare sweep start
  double w = 0.5;
  std::optional<double> w2;
  std::optional<std::uint64_t> seed;
  std::int64_t n = 100000;   // sample / rate path length
  std::size_t samples = 1000;  // doubling pairs, pencil curves
  std::size_t trials = 1000;   // poincare trials
  double lambda = 2.0;
  std::string radii = "default";  // "default" or comma-separated fractions
  std::string point;              // project: "<word>@<num>/<den>"
  std::optional<int> to_level;    // project target level
  std::optional<std::string> export_graph;
  std::optional<int> corrupt_digit;  // selftest negative control
  std::optional<double> corrupt_factor;
  OutputFormat format = OutputFormat::json;
  std::string output = "-";

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

// Throws InvalidParameterError for malformed parameters and ResourceError
// when the level exceeds the budget.
void validate(const RunConfig& config);

bool is_stochastic(const std::string& command);
const std::vector<std::string>& known_commands();

std::vector<Length> parse_radii(const std::string& spec, int level);

}  // namespace diamond::cli
