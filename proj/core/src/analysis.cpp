#include "diamond/analysis.hpp"

#include <array>
#include <cmath>
#include <string>

#include "diamond/errors.hpp"
#include "diamond/stochastics.hpp"

namespace diamond {
namespace {

void require_enumerable(int level) {
  if (level < 0) throw InvalidLevelError("level must be non-negative");
  if (level > configured_max_level()) {
    throw ResourceError("level " + std::to_string(level) + " exceeds the level budget " +
                        std::to_string(configured_max_level()));
  }
}

// Visits every word of the level once, passing the two cylinder masses
// (products of nu over the digits) accumulated along the word.
template <class Visit>
void for_each_cylinder(int level, const OutcomeDistribution& nu, const OutcomeDistribution& nu2, Visit&& visit) {
  if (level == 0) {
    visit(1.0, 1.0);
    return;
  }
  std::vector<int> digit(static_cast<std::size_t>(level), 0);
  std::vector<double> mass(static_cast<std::size_t>(level + 1), 1.0);
  std::vector<double> mass2(static_cast<std::size_t>(level + 1), 1.0);
  int depth = 0;
  while (depth >= 0) {
    auto& d = digit[static_cast<std::size_t>(depth)];
    if (d == kDigitCount) {
      d = 0;
      --depth;
      continue;
    }
    ++d;
    const auto k = static_cast<std::size_t>(depth);
    mass[k + 1] = mass[k] * nu(d);
    mass2[k + 1] = mass2[k] * nu2(d);
    if (depth + 1 == level) {
      visit(mass[k + 1], mass2[k + 1]);
    } else {
      ++depth;
    }
  }
}

// Integral over [0, len] of |f| for f linear from f0 to f1.
double abs_linear_integral(double f0, double f1, double len) {
  if (f0 * f1 >= 0.0) return len * std::abs(f0 + f1) / 2.0;
  return len * (f0 * f0 + f1 * f1) / (2.0 * (std::abs(f0) + std::abs(f1)));
}

PointAddress random_interior_point(const LevelGraph& g, Rng& rng) {
  const EdgeIndex e = rng.below(g.edge_count());
  const auto len = static_cast<std::uint64_t>(g.edge_length().units());
  const auto offset = Length::from_units(static_cast<std::int64_t>(1 + rng.below(len - 1)));
  return PointAddress(g.word(e), offset);
}

}  // namespace

double tv_distance(int level, const MeasureSpec& m, const MeasureSpec& m2) {
  require_enumerable(level);
  CompensatedSum total;
  for_each_cylinder(level, outcome_distribution(m), outcome_distribution(m2),
                    [&](double a, double b) { total.add(std::abs(a - b)); });
  return total.value();
}

double hellinger_affinity(int level, const MeasureSpec& m, const MeasureSpec& m2) {
  require_enumerable(level);
  CompensatedSum total;
  for_each_cylinder(level, outcome_distribution(m), outcome_distribution(m2),
                    [&](double a, double b) { total.add(std::sqrt(a * b)); });
  return total.value();
}

double affinity_factor(const MeasureSpec& m, const MeasureSpec& m2) {
  return (1.0 + std::sqrt(m.w() * m2.w()) + std::sqrt((1.0 - m.w()) * (1.0 - m2.w()))) / 2.0;
}

double LipschitzFunction::value_at(const LevelGraph& g, const PointAddress& p) const {
  const auto [a, b] = g.ends(p.word().index());
  const double t = p.offset().to_double() / g.edge_length().to_double();
  return values[a] + (values[b] - values[a]) * t;
}

double LipschitzFunction::upper_gradient(const LevelGraph& g, EdgeIndex e) const {
  const auto [a, b] = g.ends(e);
  return std::abs(values[b] - values[a]) / g.edge_length().to_double();
}

LipschitzFunction random_lipschitz(const LevelGraph& g, std::uint64_t seed, LipschitzOptions options) {
  Rng rng(seed);
  auto noise = [&rng](double amplitude) { return amplitude * (2.0 * rng.uniform() - 1.0); };

  LipschitzFunction u;
  u.values.assign(g.vertex_count(), 0.0);
  u.values[LevelGraph::left_endpoint()] = noise(options.amplitude);
  u.values[LevelGraph::right_endpoint()] = noise(options.amplitude);

  // New vertices of level k+1 sit at fractions 1/4, 1/2, 1/2, 3/4 of their parent.
  constexpr std::array<double, 4> kFraction{0.25, 0.5, 0.5, 0.75};
  const auto counts = g.vertex_counts_by_level();
  double amplitude = options.amplitude;
  for (int k = 0; k < g.level(); ++k) {
    amplitude *= options.decay;
    for (EdgeIndex i = 0; i < edge_count_at(k); ++i) {
      const auto [a, b] = g.ancestor_ends(k, i);
      const auto base = counts[static_cast<std::size_t>(k)] + 4 * i;
      for (std::size_t j = 0; j < 4; ++j) {
        const double interp = u.values[a] + (u.values[b] - u.values[a]) * kFraction[j];
        u.values[base + j] = interp + noise(amplitude);
      }
    }
  }
  return u;
}

LipschitzFunction chart_linear_function(const LevelGraph& g, double slope, double intercept) {
  LipschitzFunction u;
  u.values.resize(g.vertex_count());
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    u.values[v] = intercept + slope * chart_coordinate(g.address_of(v));
  }
  return u;
}

std::vector<Length> radius_grid(int level) {
  const Length cap = Length::edge(1);
  std::vector<Length> radii;
  for (int j = 1; j <= std::max(level, 1); ++j) {
    for (const auto& [num, den] : {std::pair{1, 1}, {3, 2}, {2, 1}, {3, 1}}) {
      const Length r = Length::edge(j).scaled(num, den);
      if (r <= cap) radii.push_back(r);
    }
  }
  return radii;
}

DoublingSample doubling_ratio(const DistanceField& field, const DensityTable& table, Length radius) {
  const double inner = ball_mass(ball_cover(field, radius), table);
  const double outer = ball_mass(ball_cover(field, radius * 2), table);
  return {field.source(), radius, inner, outer, inner > 0.0 ? outer / inner : 0.0};
}

DoublingReport doubling_estimate(const LevelGraph& g, const MeasureSpec& m, std::size_t samples,
                                 std::span<const Length> radii, std::uint64_t seed) {
  if (radii.empty()) throw InvalidParameterError("doubling estimate needs at least one radius");
  for (const auto r : radii) {
    if (r <= Length() || r > Length::one().scaled(1, 2)) {
      throw InvalidParameterError("doubling radii must lie in (0, diameter/2]");
    }
  }
  const DensityTable table(g, m);
  DoublingReport report;
  report.level = g.level();
  report.w = m.w();
  double sum = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(seed, i);
    const auto center = random_interior_point(g, rng);
    const Length r = radii[rng.below(radii.size())];
    const auto sample = doubling_ratio(DistanceField(g, center), table, r);
    if (!(sample.inner_mass > 0.0)) {
      ++report.skipped;
      continue;
    }
    ++report.samples;
    sum += sample.ratio;
    if (sample.ratio > report.max_ratio) {
      report.max_ratio = sample.ratio;
      report.worst_center = center;
      report.worst_radius = r;
    }
  }
  report.mean_ratio = report.samples > 0 ? sum / static_cast<double>(report.samples) : 0.0;
  return report;
}

PoincareTerms poincare_ratio(const LevelGraph& g, const DensityTable& table, const LipschitzFunction& u,
                             const PointAddress& center, Length radius, double lambda) {
  if (!(lambda >= 1.0)) throw InvalidParameterError("Poincare dilation must be >= 1");
  if (radius <= Length()) throw InvalidParameterError("Poincare ball radius must be positive");
  const DistanceField field(g, center);
  const auto ball = ball_cover(field, radius);
  const auto dilated = ball_cover(field, Length::nearest(lambda * radius.to_double()));
  const double len = g.edge_length().to_double();

  auto value = [&](EdgeIndex e, Length s) {
    const auto [a, b] = g.ends(e);
    return u.values[a] + (u.values[b] - u.values[a]) * (s.to_double() / len);
  };

  CompensatedSum mass, integral;
  for (const auto& s : ball.segments) {
    const double weight = table.density(s.edge) * s.length().to_double();
    mass.add(weight);
    integral.add(weight * (value(s.edge, s.from) + value(s.edge, s.to)) / 2.0);
  }
  const double mean = integral.value() / mass.value();

  CompensatedSum deviation;
  for (const auto& s : ball.segments) {
    deviation.add(table.density(s.edge) *
                  abs_linear_integral(value(s.edge, s.from) - mean, value(s.edge, s.to) - mean, s.length().to_double()));
  }

  CompensatedSum dilated_mass, gradient;
  for (const auto& s : dilated.segments) {
    const double weight = table.density(s.edge) * s.length().to_double();
    dilated_mass.add(weight);
    gradient.add(weight * u.upper_gradient(g, s.edge));
  }

  PoincareTerms terms;
  terms.oscillation = deviation.value() / mass.value();
  terms.mean_gradient = gradient.value() / dilated_mass.value();
  terms.radius = radius.to_double();
  terms.degenerate = !(terms.mean_gradient > 0.0);
  terms.ratio = terms.degenerate ? 0.0 : terms.oscillation / (terms.radius * terms.mean_gradient);
  return terms;
}

PoincareReport poincare_estimate(const LevelGraph& g, const MeasureSpec& m, std::size_t trials, double lambda,
                                 std::span<const Length> radii, std::uint64_t seed, LipschitzOptions options) {
  if (radii.empty()) throw InvalidParameterError("Poincare estimate needs at least one radius");
  const DensityTable table(g, m);
  PoincareReport report;
  report.level = g.level();
  report.w = m.w();
  report.lambda = lambda;
  double sum = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(seed, i);
    const auto u = random_lipschitz(g, rng(), options);
    const auto center = random_interior_point(g, rng);
    const Length r = radii[rng.below(radii.size())];
    const auto terms = poincare_ratio(g, table, u, center, r, lambda);
    if (terms.degenerate) {
      ++report.skipped;
      continue;
    }
    ++report.trials;
    sum += terms.ratio;
    if (terms.ratio > report.max_ratio) {
      report.max_ratio = terms.ratio;
      report.worst_center = center;
      report.worst_radius = r;
    }
  }
  report.mean_ratio = report.trials > 0 ? sum / static_cast<double>(report.trials) : 0.0;
  return report;
}

PencilCurve pencil_sample(std::uint64_t seed, const MeasureSpec& m, int level) {
  if (level < 0) throw InvalidLevelError("level must be non-negative");
  if (level > configured_max_level()) throw ResourceError("pencil level exceeds the level budget");
  Rng rng(seed);
  PencilCurve curve;
  curve.level = level;
  curve.edges = {0};
  for (int k = 0; k < level; ++k) {
    std::vector<EdgeIndex> next;
    next.reserve(curve.edges.size() * 4);
    for (const EdgeIndex e : curve.edges) {
      const bool top = rng.uniform() < m.w();
      curve.top_choices.push_back(top);
      next.push_back(6 * e);
      next.push_back(6 * e + (top ? 1 : 3));
      next.push_back(6 * e + (top ? 2 : 4));
      next.push_back(6 * e + 5);
    }
    curve.edges.swap(next);
  }
  return curve;
}

}  // namespace diamond
