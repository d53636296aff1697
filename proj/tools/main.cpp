#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "diamond/errors.hpp"

using diamond::cli::RunConfig;

namespace {

void add_level(CLI::App* sub, RunConfig& c) { sub->add_option("--level,-n", c.level, "Graph level n")->default_val(0); }
void add_w(CLI::App* sub, RunConfig& c) { sub->add_option("--w", c.w, "Measure parameter w in (0,1)")->default_val(0.5); }
void add_w2(CLI::App* sub, RunConfig& c) { sub->add_option("--w2", c.w2, "Second measure parameter"); }
void add_seed(CLI::App* sub, RunConfig& c) { sub->add_option("--seed", c.seed, "RNG seed (required)"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diamond graph inverse system: measures, projections and certificates"};
  app.require_subcommand(0, 1);

  RunConfig c;
  std::string config_path;
  std::string format = "json";
  app.add_option("--config", config_path, "Run the JSON config written into an earlier report")
      ->check(CLI::ExistingFile);

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", c.output, "Report path, '-' for stdout");
  };

  auto* build = app.add_subcommand("build", "Build X_n and check its counts");
  add_level(build, c);
  build->add_option("--export-graph", c.export_graph, "Write the graph to this path (json or csv per --format)");

  auto* measure = app.add_subcommand("measure", "Edge measures of mu_{w,n}");
  add_level(measure, c);
  add_w(measure, c);

  auto* project = app.add_subcommand("project", "Project a point down the inverse system");
  project->add_option("--point", c.point, "Point address <word>@<num>/<den>")->required();
  project->add_option("--to", c.to_level, "Target level (default 0)");

  auto* sample = app.add_subcommand("sample", "Sample a digit path and report frequencies");
  add_w(sample, c);
  add_seed(sample, c);
  sample->add_option("--n", c.n, "Path length");

  auto* rate = app.add_subcommand("rate", "Empirical log density ratio rate along a path drawn under w2");
  add_w(rate, c);
  add_w2(rate, c);
  add_seed(rate, c);
  rate->add_option("--n", c.n, "Path length");

  auto* tv = app.add_subcommand("tv", "Total variation distance per level");
  add_level(tv, c);
  add_w(tv, c);
  add_w2(tv, c);

  auto* affinity = app.add_subcommand("affinity", "Hellinger affinity per level");
  add_level(affinity, c);
  add_w(affinity, c);
  add_w2(affinity, c);

  auto* doubling = app.add_subcommand("doubling", "Sampled doubling ratios");
  add_level(doubling, c);
  add_w(doubling, c);
  add_seed(doubling, c);
  doubling->add_option("--min-level", c.min_level, "First level of the sweep (default: --level)");
  doubling->add_option("--samples", c.samples, "Center/radius pairs per level");
  doubling->add_option("--radii", c.radii, "'default' or comma-separated fractions");

  auto* poincare = app.add_subcommand("poincare", "Sampled Poincare ratios");
  add_level(poincare, c);
  add_w(poincare, c);
  add_seed(poincare, c);
  poincare->add_option("--min-level", c.min_level, "First level of the sweep (default: --level)");
  poincare->add_option("--trials", c.trials, "Function/ball trials per level");
  poincare->add_option("--lambda", c.lambda, "Dilation of the gradient ball");
  poincare->add_option("--radii", c.radii, "'default' or comma-separated fractions");

  auto* pencil = app.add_subcommand("pencil", "Sample a curve from the pencil");
  add_level(pencil, c);
  add_w(pencil, c);
  add_seed(pencil, c);
  pencil->add_option("--samples", c.samples, "Curves for occupation frequencies (level <= 4)");

  auto* selftest = app.add_subcommand("selftest", "Exact identity checks");
  selftest->add_option("--corrupt-digit", c.corrupt_digit, "Negative control: override one digit factor")
      ->check(CLI::Range(1, 6));
  selftest->add_option("--corrupt-factor", c.corrupt_factor, "Factor used with --corrupt-digit");

  for (auto* sub : app.get_subcommands({})) common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : diamond::cli::kExitUsage;
  }

  try {
    if (!config_path.empty()) {
      if (!app.get_subcommands().empty()) {
        std::cerr << "usage error: --config replaces the subcommand and its flags\n";
        return diamond::cli::kExitUsage;
      }
      std::ifstream in(config_path);
      c = diamond::cli::config_from_json(nlohmann::json::parse(in));
    } else {
      if (app.get_subcommands().empty()) {
        std::cerr << app.help();
        return diamond::cli::kExitUsage;
      }
      c.command = app.get_subcommands().front()->get_name();
      c.format = format == "csv" ? diamond::cli::OutputFormat::csv : diamond::cli::OutputFormat::json;
    }
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return diamond::cli::kExitUsage;
  }
  return diamond::cli::run(c, std::cout, std::cerr);
}
