#include "cli/run_config.hpp"

#include <algorithm>
#include <sstream>

#include "diamond/analysis.hpp"
#include "diamond/errors.hpp"
#include "diamond/graph.hpp"
#include "diamond/measure.hpp"

namespace diamond::cli {
namespace {

template <class T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& value) {
  j[key] = value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> get_optional(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

void require_w(double w, const char* name) {
  if (!(w > MeasureSpec::kEpsilon && w < 1.0 - MeasureSpec::kEpsilon)) {
    throw InvalidParameterError(std::string(name) + " must lie strictly inside (0,1)");
  }
}

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> commands{"build", "measure", "project",  "sample", "rate",    "tv",
                                                 "affinity", "doubling", "poincare", "pencil", "selftest"};
  return commands;
}

bool is_stochastic(const std::string& command) {
  return command == "sample" || command == "rate" || command == "doubling" || command == "poincare" ||
         command == "pencil";
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["level"] = c.level;
  put_optional(j, "min_level", c.min_level);
  j["w"] = c.w;
  put_optional(j, "w2", c.w2);
  put_optional(j, "seed", c.seed);
  j["n"] = c.n;
  j["samples"] = c.samples;
  j["trials"] = c.trials;
  j["lambda"] = c.lambda;
  j["radii"] = c.radii;
  j["point"] = c.point;
  put_optional(j, "to_level", c.to_level);
  put_optional(j, "export_graph", c.export_graph);
  put_optional(j, "corrupt_digit", c.corrupt_digit);
  put_optional(j, "corrupt_factor", c.corrupt_factor);
  j["format"] = c.format == OutputFormat::json ? "json" : "csv";
  j["output"] = c.output;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.level = j.value("level", c.level);
  c.min_level = get_optional<int>(j, "min_level");
  c.w = j.value("w", c.w);
  c.w2 = get_optional<double>(j, "w2");
  c.seed = get_optional<std::uint64_t>(j, "seed");
  c.n = j.value("n", c.n);
  c.samples = j.value("samples", c.samples);
  c.trials = j.value("trials", c.trials);
  c.lambda = j.value("lambda", c.lambda);
  c.radii = j.value("radii", c.radii);
  c.point = j.value("point", c.point);
  c.to_level = get_optional<int>(j, "to_level");
  c.export_graph = get_optional<std::string>(j, "export_graph");
  c.corrupt_digit = get_optional<int>(j, "corrupt_digit");
  c.corrupt_factor = get_optional<double>(j, "corrupt_factor");
  const auto format = j.value("format", std::string("json"));
  if (format != "json" && format != "csv") throw InvalidParameterError("format must be json or csv");
  c.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  c.output = j.value("output", c.output);
  return c;
}

void validate(const RunConfig& c) {
  const auto& commands = known_commands();
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end()) {
    throw InvalidParameterError("unknown command '" + c.command + "'");
  }
  if (c.level < 0) throw InvalidLevelError("level must be non-negative");
  const bool graph_command = c.command == "build" || c.command == "measure" || c.command == "tv" ||
                             c.command == "affinity" || c.command == "doubling" || c.command == "poincare" ||
                             c.command == "pencil";
  if (graph_command && c.level > configured_max_level()) {
    throw ResourceError("level " + std::to_string(c.level) + " exceeds the level budget " +
                        std::to_string(configured_max_level()) + " (set DIAMOND_MAX_LEVEL, at most " +
                        std::to_string(kHardMaxLevel) + ")");
  }
  if (c.min_level && (*c.min_level < 0 || *c.min_level > c.level)) {
    throw InvalidParameterError("min-level must lie in [0, level]");
  }
  require_w(c.w, "w");
  if (c.w2) require_w(*c.w2, "w2");
  if ((c.command == "rate" || c.command == "tv" || c.command == "affinity") && !c.w2) {
    throw InvalidParameterError(c.command + " needs --w2");
  }
  if (is_stochastic(c.command) && !c.seed) throw InvalidParameterError(c.command + " needs an explicit --seed");
  if ((c.command == "sample" || c.command == "rate") && c.n < 1) throw InvalidParameterError("n must be >= 1");
  if (c.command == "poincare" && !(c.lambda >= 1.0)) throw InvalidParameterError("lambda must be >= 1");
  if (c.command == "project") {
    if (c.point.empty()) throw InvalidParameterError("project needs --point <word>@<num>/<den>");
    PointAddress::parse(c.point);
  }
  if (c.corrupt_digit && (*c.corrupt_digit < 1 || *c.corrupt_digit > kDigitCount)) {
    throw InvalidParameterError("corrupt-digit must be in 1..6");
  }
  if (c.command == "doubling" || c.command == "poincare") parse_radii(c.radii, c.level);
}

std::vector<Length> parse_radii(const std::string& spec, int level) {
  if (spec == "default") return radius_grid(level);
  std::vector<Length> radii;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto r = Length::parse(item);
    if (r <= Length() || r > Length::one().scaled(1, 2)) {
      throw InvalidParameterError("radius " + item + " outside (0, 1/2]");
    }
    radii.push_back(r);
  }
  if (radii.empty()) throw InvalidParameterError("empty radius list");
  return radii;
}

}  // namespace diamond::cli
