#include "cli/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "diamond/analysis.hpp"
#include "diamond/graph.hpp"
#include "diamond/stochastics.hpp"

namespace diamond::cli {
namespace {

class CheckBuilder {
 public:
  explicit CheckBuilder(std::string name) { check_.name = std::move(name); }

  void residual(double value, double tolerance, const std::string& where) {
    check_.worst = std::max(check_.worst, value);
    if (!(value < tolerance)) fail(where + " residual " + format(value));
  }
  void expect(bool ok, const std::string& where) {
    if (!ok) fail(where);
  }
  SelftestCheck finish() { return std::move(check_); }

 private:
  static std::string format(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
  }
  void fail(const std::string& what) {
    if (check_.passed) check_.detail = what;
    check_.passed = false;
  }
  SelftestCheck check_;
};

EdgeWord random_word(Rng& rng, int level) {
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(level));
  for (auto& d : digits) d = static_cast<std::uint8_t>(1 + rng.below(kDigitCount));
  return EdgeWord(std::move(digits));
}

DensityLaw law_for(const SelftestOptions& options, double w) {
  auto law = DensityLaw::of(MeasureSpec(w));
  if (options.corrupt_digit) law.factor[static_cast<std::size_t>(*options.corrupt_digit - 1)] = options.corrupt_factor;
  return law;
}

SelftestCheck check_graph_counts(const SelftestOptions& options) {
  CheckBuilder check("graph_counts");
  for (int k = 0; k <= options.max_level; ++k) {
    const auto g = build_level(k);
    const auto where = "level " + std::to_string(k);
    check.expect(g.edge_count() == edge_count_at(k), where + " edge count");
    check.expect(g.vertex_count() == vertex_count_at(k), where + " vertex count");
    check.expect(g.degree(LevelGraph::left_endpoint()) == 1 && g.degree(LevelGraph::right_endpoint()) == 1,
                 where + " endpoint degree");
  }
  return check.finish();
}

SelftestCheck check_normalization(const SelftestOptions& options) {
  CheckBuilder check("normalization");
  for (double w : options.ws) {
    const auto law = law_for(options, w);
    for (int k = 0; k <= options.max_level; ++k) {
      CompensatedSum total;
      for (std::uint64_t i = 0; i < edge_count_at(k); ++i) total.add(edge_mass(EdgeWord::from_index(k, i), law));
      check.residual(std::abs(total.value() - 1.0), kIdentityTolerance,
                     "w=" + std::to_string(w) + " level " + std::to_string(k));
    }
  }
  return check.finish();
}

SelftestCheck check_pushforward(const SelftestOptions& options) {
  CheckBuilder check("pushforward_consistency");
  for (double w : options.ws) {
    const auto law = law_for(options, w);
    for (int k = 0; k < options.max_level; ++k) {
      for (std::uint64_t i = 0; i < edge_count_at(k); ++i) {
        const auto word = EdgeWord::from_index(k, i);
        check.residual(pushforward_consistency(word, law).residual, kIdentityTolerance,
                       "w=" + std::to_string(w) + " edge '" + word.to_string() + "'");
      }
    }
  }
  return check.finish();
}

SelftestCheck check_cylinder_identity(const SelftestOptions& options) {
  CheckBuilder check("cylinder_identity");
  for (double w : options.ws) {
    const auto law = law_for(options, w);
    const auto nu = outcome_distribution(MeasureSpec(w));
    for (int k = 0; k <= std::min(options.max_level, 4); ++k) {
      for (std::uint64_t i = 0; i < edge_count_at(k); ++i) {
        const auto word = EdgeWord::from_index(k, i);
        double product = 1.0;
        for (auto d : word.digits()) product *= nu(d);
        check.residual(std::abs(edge_mass(word, law) - product) / product, kIdentityTolerance,
                       "w=" + std::to_string(w) + " edge '" + word.to_string() + "'");
      }
    }
  }
  return check.finish();
}

SelftestCheck check_truncation(const SelftestOptions& options) {
  CheckBuilder check("truncation_compatibility");
  Rng rng(2024, 1);
  for (std::size_t i = 0; i < options.random_addresses; ++i) {
    const int n = static_cast<int>(rng.below(kMaxPointLevel + 1));
    const auto e = random_word(rng, n);
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    const int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(k) + 1));
    check.expect(truncate(truncate(e, k), m) == truncate(e, m), "word '" + e.to_string() + "'");
  }
  return check.finish();
}

SelftestCheck check_projection(const SelftestOptions& options) {
  CheckBuilder check("projection_compatibility");
  Rng rng(2024, 2);
  for (std::size_t i = 0; i < options.random_addresses; ++i) {
    const int n = static_cast<int>(rng.below(kMaxPointLevel + 1));
    const auto len = static_cast<std::uint64_t>(Length::edge(n).units());
    const PointAddress p(random_word(rng, n), Length::from_units(static_cast<std::int64_t>(rng.below(len + 1))));
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) + 1));
    const int m = static_cast<int>(rng.below(static_cast<std::uint64_t>(k) + 1));
    check.expect(project_point(project_point(p, k), m) == project_point(p, m), "point " + p.to_string());
    check.expect(chart_position(project_point(p, k)) == chart_position(p), "chart of " + p.to_string());
  }
  return check.finish();
}

SelftestCheck check_collapse(const SelftestOptions& options) {
  CheckBuilder check("collapse_compatibility");
  const int top = std::min(options.max_level, 4);
  if (top < 2) return check.finish();
  std::vector<LevelGraph> graphs;
  for (int k = 0; k <= top; ++k) graphs.push_back(build_level(k));
  for (int k = 2; k <= top; ++k) {
    const auto& fine = graphs[static_cast<std::size_t>(k)];
    const auto& mid = graphs[static_cast<std::size_t>(k - 1)];
    const auto& coarse = graphs[static_cast<std::size_t>(k - 2)];
    const auto one_step = collapse_vertex_map(mid, coarse);
    for (VertexId v = 0; v < fine.vertex_count(); ++v) {
      const auto direct = coarse.locate(project_point(fine.address_of(v), k - 2));
      const auto via_mid = mid.locate(project_point(fine.address_of(v), k - 1));
      const auto composed = via_mid.at_vertex ? one_step[via_mid.vertex]
                                              : coarse.locate(project_point(PointAddress(mid.word(via_mid.edge), via_mid.offset), k - 2));
      check.expect(direct == composed, "level " + std::to_string(k) + " vertex " + std::to_string(v));
    }
  }
  return check.finish();
}

SelftestCheck check_affinity(const SelftestOptions& options) {
  CheckBuilder check("affinity_closed_form");
  for (const auto& [w, w2] : {std::pair{0.25, 0.75}, {0.1, 0.9}}) {
    const MeasureSpec m(w), m2(w2);
    const double rho = affinity_factor(m, m2);
    for (int k = 0; k <= options.max_level; ++k) {
      check.residual(std::abs(hellinger_affinity(k, m, m2) - std::pow(rho, k)), 1e-10,
                     "(" + std::to_string(w) + "," + std::to_string(w2) + ") level " + std::to_string(k));
    }
  }
  return check.finish();
}

}  // namespace

const SelftestCheck* SelftestResult::find(const std::string& name) const {
  const auto it = std::find_if(checks.begin(), checks.end(), [&](const auto& c) { return c.name == name; });
  return it == checks.end() ? nullptr : &*it;
}

SelftestResult run_selftest(const SelftestOptions& options) {
  SelftestResult result;
  result.checks.push_back(check_graph_counts(options));
  result.checks.push_back(check_normalization(options));
  result.checks.push_back(check_pushforward(options));
  result.checks.push_back(check_cylinder_identity(options));
  result.checks.push_back(check_truncation(options));
  result.checks.push_back(check_projection(options));
  result.checks.push_back(check_collapse(options));
  result.checks.push_back(check_affinity(options));
  result.passed = std::all_of(result.checks.begin(), result.checks.end(), [](const auto& c) { return c.passed; });
  return result;
}

}  // namespace diamond::cli
