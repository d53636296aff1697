#include "cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

#include "cli/selftest.hpp"
#include "diamond/analysis.hpp"
#include "diamond/errors.hpp"
#include "diamond/export.hpp"
#include "diamond/graph.hpp"
#include "diamond/measure.hpp"
#include "diamond/stochastics.hpp"

namespace diamond::cli {
namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string word_text(const EdgeWord& w) { return w.level() == 0 ? std::string("-") : w.to_string(); }

class ReportBuilder {
 public:
  ReportBuilder(const RunConfig& config, json parameters) {
    report_.json = {{"schema", kReportSchema},
                    {"operation", config.command},
                    {"config", to_json(config)},
                    {"parameters", std::move(parameters)},
                    {"per_level", json::array()},
                    {"derived_limits", json::object()},
                    {"checks", json::object()}};
  }

  void per_level(json row) { report_.json["per_level"].push_back(std::move(row)); }
  void derived(const std::string& key, json value) { report_.json["derived_limits"][key] = std::move(value); }
  void check(const std::string& name, bool ok) {
    report_.json["checks"][name] = ok;
    report_.passed = report_.passed && ok;
  }
  void csv_header(std::vector<std::string> header) { report_.csv.header = std::move(header); }
  void csv_row(std::vector<std::string> row) { report_.csv.rows.push_back(std::move(row)); }

  Report finish() {
    report_.json["passed"] = report_.passed;
    return std::move(report_);
  }

 private:
  Report report_;
};

json level_params(const RunConfig& c) { return {{"level", c.level}}; }

Report cmd_build(const RunConfig& c) {
  ReportBuilder r(c, level_params(c));
  const auto g = build_level(c.level);
  const auto counts = g.vertex_counts_by_level();
  bool counts_ok = g.edge_count() == edge_count_at(c.level);
  r.csv_header({"level", "vertices", "edges"});
  for (int k = 0; k <= c.level; ++k) {
    const auto v = counts[static_cast<std::size_t>(k)];
    counts_ok = counts_ok && v == vertex_count_at(k);
    r.per_level({{"level", k}, {"vertices", v}, {"edges", edge_count_at(k)}});
    r.csv_row({std::to_string(k), std::to_string(v), std::to_string(edge_count_at(k))});
  }
  const auto endpoint_distance = geodesic_distance(g, PointAddress::start_of(EdgeWord::from_index(c.level, 0)),
                                                   PointAddress::end_of(EdgeWord::from_index(c.level, g.edge_count() - 1)));
  r.derived("vertices", g.vertex_count());
  r.derived("edges", g.edge_count());
  r.derived("edge_length", g.edge_length().to_fraction_string());
  r.derived("endpoint_distance", endpoint_distance.to_fraction_string());
  r.check("counts_match_closed_form", counts_ok);
  r.check("endpoint_distance_is_one", endpoint_distance == Length::one());

  if (c.export_graph) {
    std::ofstream file(*c.export_graph);
    if (!file) throw InvalidParameterError("cannot open " + *c.export_graph + " for writing");
    if (c.format == OutputFormat::csv) {
      write_graph_csv(file, g);
    } else {
      write_graph_json(file, g);
    }
  }
  return r.finish();
}

Report cmd_measure(const RunConfig& c) {
  ReportBuilder r(c, {{"level", c.level}, {"w", c.w}});
  const MeasureSpec m(c.w);
  CompensatedSum total;
  r.csv_header({"word", "density", "mass"});
  json edges = json::array();
  for (const auto& row : edge_measure_table(c.level, m)) {
    total.add(row.mass);
    edges.push_back({{"word", word_text(row.word)}, {"density", row.density}, {"mass", row.mass}});
    r.csv_row({word_text(row.word), num(row.density), num(row.mass)});
  }
  double worst = 0.0;
  if (c.level > 0) {
    for (std::uint64_t i = 0; i < edge_count_at(c.level - 1); ++i) {
      worst = std::max(worst, pushforward_consistency(EdgeWord::from_index(c.level - 1, i), m).residual);
    }
  }
  r.per_level({{"level", c.level}, {"edges", std::move(edges)}});
  r.derived("total_mass", total.value());
  r.derived("max_parent_child_residual", worst);
  r.check("total_mass_is_one", std::abs(total.value() - 1.0) < kIdentityTolerance);
  r.check("pushforward_consistency", worst < kIdentityTolerance);
  return r.finish();
}

Report cmd_project(const RunConfig& c) {
  const auto p = PointAddress::parse(c.point);
  const int to = c.to_level.value_or(0);
  ReportBuilder r(c, {{"point", p.to_string()}, {"to_level", to}});
  r.csv_header({"level", "address", "chart_coordinate", "is_vertex"});
  for (int k = p.level(); k >= to; --k) {
    const auto q = project_point(p, k);
    r.per_level({{"level", k},
                 {"address", q.to_string()},
                 {"chart_coordinate", chart_coordinate(q)},
                 {"is_vertex", is_vertex_point(q)}});
    r.csv_row({std::to_string(k), q.to_string(), num(chart_coordinate(q)), is_vertex_point(q) ? "1" : "0"});
  }
  const auto image = project_point(p, to);
  r.derived("projected", image.to_string());
  r.derived("chart_position", chart_position(p).to_fraction_string());
  r.derived("chart_coordinate", chart_coordinate(p));
  r.check("chart_factors_through_projection", chart_position(image) == chart_position(p));
  r.check("vertex_points_project_to_vertices", !is_vertex_point(p) || is_vertex_point(image));
  return r.finish();
}

Report cmd_sample(const RunConfig& c) {
  ReportBuilder r(c, {{"w", c.w}, {"n", c.n}, {"seed", *c.seed}});
  const auto path = sample_path(*c.seed, MeasureSpec(c.w), c.n);
  const auto rows = slln_report(path);
  r.csv_header({"digit", "count", "frequency", "limit", "deviation", "standard_error"});
  std::int64_t counted = 0;
  bool within = true;
  for (const auto& row : rows) {
    counted += row.count;
    within = within && std::abs(row.deviation) <= 4.0 * row.standard_error;
    r.per_level({{"digit", row.digit},
                 {"count", row.count},
                 {"frequency", row.frequency},
                 {"limit", row.limit},
                 {"deviation", row.deviation},
                 {"standard_error", row.standard_error}});
    r.csv_row({std::to_string(row.digit), std::to_string(row.count), num(row.frequency), num(row.limit),
               num(row.deviation), num(row.standard_error)});
  }
  r.check("counters_sum_to_n", counted == c.n && count_digits(path.digits) == path.counters);
  r.check("within_4_standard_errors", within);
  return r.finish();
}

Report cmd_rate(const RunConfig& c) {
  ReportBuilder r(c, {{"w", c.w}, {"w2", *c.w2}, {"n", c.n}, {"seed", *c.seed}});
  const MeasureSpec m(c.w), m2(*c.w2);
  const auto path = sample_path(*c.seed, m2, c.n);
  const auto checkpoints = decade_checkpoints(c.n);
  const auto trace = rate_trace(path, m, m2, checkpoints);
  r.csv_header({"n", "empirical_rate", "theoretical_rate"});
  for (const auto& point : trace) {
    r.per_level({{"n", point.n}, {"empirical_rate", point.empirical}, {"theoretical_rate", point.theoretical}});
    r.csv_row({std::to_string(point.n), num(point.empirical), num(point.theoretical)});
  }
  const double limit = theoretical_rate(m, m2);
  const double band = 3.0 * rate_increment_stddev(m, m2) / std::sqrt(static_cast<double>(c.n));
  const double final_rate = trace.back().empirical;
  r.derived("theoretical_rate", limit);
  r.derived("empirical_rate", final_rate);
  r.derived("band", band);
  r.check(c.w == *c.w2 ? "rate_is_zero" : "theoretical_rate_negative", c.w == *c.w2 ? limit == 0.0 : limit < 0.0);
  r.check("within_band", std::abs(final_rate - limit) <= band);
  return r.finish();
}

Report cmd_tv(const RunConfig& c) {
  ReportBuilder r(c, {{"level", c.level}, {"w", c.w}, {"w2", *c.w2}});
  const MeasureSpec m(c.w), m2(*c.w2);
  r.csv_header({"level", "tv_distance", "hellinger_lower_bound"});
  bool monotone = true, bounded = true, lower = true;
  double previous = 0.0;
  for (int k = 0; k <= c.level; ++k) {
    const double tv = tv_distance(k, m, m2);
    const double bound = 2.0 * (1.0 - hellinger_affinity(k, m, m2));
    monotone = monotone && tv >= previous - kIdentityTolerance;
    bounded = bounded && tv <= 2.0 + kIdentityTolerance;
    lower = lower && tv >= bound - kIdentityTolerance;
    previous = tv;
    r.per_level({{"level", k}, {"tv_distance", tv}, {"hellinger_lower_bound", bound}});
    r.csv_row({std::to_string(k), num(tv), num(bound)});
  }
  r.derived("tv_distance", previous);
  r.derived("singular_limit", 2.0);
  r.check("monotone_in_level", monotone);
  r.check("bounded_by_two", bounded);
  r.check("hellinger_lower_bound", lower);
  return r.finish();
}

Report cmd_affinity(const RunConfig& c) {
  ReportBuilder r(c, {{"level", c.level}, {"w", c.w}, {"w2", *c.w2}});
  const MeasureSpec m(c.w), m2(*c.w2);
  const double rho = affinity_factor(m, m2);
  r.csv_header({"level", "affinity", "closed_form"});
  double worst = 0.0, last = 1.0;
  for (int k = 0; k <= c.level; ++k) {
    const double a = hellinger_affinity(k, m, m2);
    const double closed = std::pow(rho, k);
    worst = std::max(worst, std::abs(a - closed));
    last = a;
    r.per_level({{"level", k}, {"affinity", a}, {"closed_form", closed}});
    r.csv_row({std::to_string(k), num(a), num(closed)});
  }
  r.derived("affinity_factor", rho);
  r.derived("affinity", last);
  r.derived("max_closed_form_residual", worst);
  r.check("matches_closed_form", worst <= 1e-10);
  r.check("factor_below_one", c.w == *c.w2 ? rho == 1.0 : rho < 1.0);
  return r.finish();
}

template <class Estimate>
Report sweep_levels(const RunConfig& c, json params, Estimate&& estimate) {
  ReportBuilder r(c, std::move(params));
  r.csv_header({"level", "max_ratio", "mean_ratio", "evaluated", "skipped", "worst_center", "worst_radius"});
  std::vector<double> maxima;
  bool none_skipped = true, finite = true;
  for (int k = c.min_level.value_or(c.level); k <= c.level; ++k) {
    const auto g = build_level(k);
    const auto radii = parse_radii(c.radii, k);
    const auto rep = estimate(g, radii);
    maxima.push_back(rep.max_ratio);
    none_skipped = none_skipped && rep.skipped == 0;
    finite = finite && std::isfinite(rep.max_ratio);
    r.per_level({{"level", k},
                 {"max_ratio", rep.max_ratio},
                 {"mean_ratio", rep.mean_ratio},
                 {"evaluated", rep.evaluated},
                 {"skipped", rep.skipped},
                 {"worst_center", rep.worst_center.to_string()},
                 {"worst_radius", rep.worst_radius.to_fraction_string()}});
    r.csv_row({std::to_string(k), num(rep.max_ratio), num(rep.mean_ratio), std::to_string(rep.evaluated),
               std::to_string(rep.skipped), rep.worst_center.to_string(), rep.worst_radius.to_fraction_string()});
  }
  double variation = 0.0;
  for (std::size_t i = 1; i < maxima.size(); ++i) {
    variation = std::max(variation, std::abs(maxima[i] - maxima[i - 1]) / maxima[i - 1]);
  }
  r.derived("max_ratio", *std::max_element(maxima.begin(), maxima.end()));
  r.derived("max_consecutive_relative_variation", variation);
  r.check("no_skipped_samples", none_skipped);
  r.check("finite", finite);
  return r.finish();
}

struct SweepRow {
  double max_ratio;
  double mean_ratio;
  std::size_t evaluated;
  std::size_t skipped;
  PointAddress worst_center;
  Length worst_radius;
};

Report cmd_doubling(const RunConfig& c) {
  const MeasureSpec m(c.w);
  return sweep_levels(c, {{"w", c.w}, {"samples", c.samples}, {"seed", *c.seed}, {"radii", c.radii}},
                      [&](const LevelGraph& g, const std::vector<Length>& radii) {
                        const auto rep = doubling_estimate(g, m, c.samples, radii, *c.seed);
                        return SweepRow{rep.max_ratio, rep.mean_ratio, rep.samples, rep.skipped, rep.worst_center, rep.worst_radius};
                      });
}

Report cmd_poincare(const RunConfig& c) {
  const MeasureSpec m(c.w);
  return sweep_levels(
      c, {{"w", c.w}, {"trials", c.trials}, {"lambda", c.lambda}, {"seed", *c.seed}, {"radii", c.radii}},
      [&](const LevelGraph& g, const std::vector<Length>& radii) {
        const auto rep = poincare_estimate(g, m, c.trials, c.lambda, radii, *c.seed);
        return SweepRow{rep.max_ratio, rep.mean_ratio, rep.trials, rep.skipped, rep.worst_center, rep.worst_radius};
      });
}

Report cmd_pencil(const RunConfig& c) {
  ReportBuilder r(c, {{"level", c.level}, {"w", c.w}, {"seed", *c.seed}, {"samples", c.samples}});
  const MeasureSpec m(c.w);
  const auto g = build_level(c.level);
  const auto curve = pencil_sample(*c.seed, m, c.level);

  bool connected = g.ends(curve.edges.front()).start == LevelGraph::left_endpoint() &&
                   g.ends(curve.edges.back()).end == LevelGraph::right_endpoint();
  bool monotone = true;
  for (std::size_t i = 0; i < curve.edges.size(); ++i) {
    if (i > 0) connected = connected && g.ends(curve.edges[i - 1]).end == g.ends(curve.edges[i]).start;
    const auto start = chart_position(PointAddress::start_of(g.word(curve.edges[i])));
    monotone = monotone && start == g.edge_length() * static_cast<std::int64_t>(i);
  }
  json words = json::array();
  if (c.level <= 5) {
    for (const auto e : curve.edges) words.push_back(word_text(g.word(e)));
  }
  json choices = json::array();
  for (const bool top : curve.top_choices) choices.push_back(top ? "top" : "bottom");
  r.derived("length", curve.length().to_fraction_string());
  r.derived("edge_count", curve.edges.size());
  r.derived("edges", std::move(words));
  r.derived("branch_choices", std::move(choices));

  // Occupation frequencies over `samples` independent curves against the branch probabilities.
  r.csv_header({"word", "occupation_frequency", "branch_probability"});
  if (c.level <= 4 && c.samples > 0) {
    std::vector<std::size_t> hits(g.edge_count(), 0);
    for (std::size_t s = 0; s < c.samples; ++s) {
      Rng stream(*c.seed, s + 1);
      for (const auto e : pencil_sample(stream(), m, c.level).edges) ++hits[e];
    }
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      const double freq = static_cast<double>(hits[e]) / static_cast<double>(c.samples);
      const double prob = edge_density(g.word(e), m);
      r.per_level({{"word", word_text(g.word(e))}, {"occupation_frequency", freq}, {"branch_probability", prob}});
      r.csv_row({word_text(g.word(e)), num(freq), num(prob)});
    }
  }
  r.check("length_is_one", curve.length() == Length::one());
  r.check("edge_count_is_4_pow_level", curve.edges.size() == (std::size_t{1} << (2 * c.level)));
  r.check("connected_left_to_right", connected);
  r.check("projects_to_identity_path", monotone);
  return r.finish();
}

Report cmd_selftest(const RunConfig& c) {
  SelftestOptions options;
  options.max_level = std::min(options.max_level, configured_max_level());
  options.corrupt_digit = c.corrupt_digit;
  if (c.corrupt_digit) options.corrupt_factor = c.corrupt_factor.value_or(0.0);
  ReportBuilder r(c, {{"max_level", options.max_level}, {"random_addresses", options.random_addresses}});
  const auto result = run_selftest(options);
  r.csv_header({"check", "passed", "worst_residual", "detail"});
  for (const auto& check : result.checks) {
    r.per_level({{"check", check.name}, {"passed", check.passed}, {"worst_residual", check.worst}, {"detail", check.detail}});
    r.csv_row({check.name, check.passed ? "1" : "0", num(check.worst), check.detail});
    r.check(check.name, check.passed);
  }
  return r.finish();
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Report execute(const RunConfig& config) {
  validate(config);
  static const std::map<std::string, std::function<Report(const RunConfig&)>> kCommands{
      {"build", cmd_build},       {"measure", cmd_measure},   {"project", cmd_project}, {"sample", cmd_sample},
      {"rate", cmd_rate},         {"tv", cmd_tv},             {"affinity", cmd_affinity}, {"doubling", cmd_doubling},
      {"poincare", cmd_poincare}, {"pencil", cmd_pencil},     {"selftest", cmd_selftest}};
  return kCommands.at(config.command)(config);
}

void write_report(const Report& report, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::json) {
    out << report.json.dump(2) << '\n';
    return;
  }
  out << "# " << report.json.at("config").dump() << '\n';
  for (std::size_t i = 0; i < report.csv.header.size(); ++i) out << (i ? "," : "") << report.csv.header[i];
  out << '\n';
  for (const auto& row : report.csv.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
    out << '\n';
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Report report;
  try {
    report = execute(config);
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (config.output == "-") {
    write_report(report, config.format, out);
  } else {
    std::ofstream file(config.output);
    if (!file) {
      err << "usage error: cannot open " << config.output << " for writing\n";
      return kExitUsage;
    }
    write_report(report, config.format, file);
  }
  if (!report.passed) {
    err << config.command << ": certificate failed:";
    for (const auto& [name, ok] : report.json.at("checks").items()) {
      if (!ok.get<bool>()) err << ' ' << name;
    }
    err << '\n';
    return kExitCertificateFailure;
  }
  return kExitOk;
}

}  // namespace diamond::cli
