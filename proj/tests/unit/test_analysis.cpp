#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "diamond/analysis.hpp"
#include "diamond/errors.hpp"
#include "diamond/stochastics.hpp"

using namespace diamond;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

// Word masses depend only on how many digits fall in {1,6}, {2,3} and {4,5};
// group the 6^n words by those counts.
template <class F>
double grouped_sum(int n, double w, double w2, F term) {
  double total = 0.0;
  for (int t = 0; t <= n; ++t) {
    for (int b = 0; t + b <= n; ++b) {
      const int a = n - t - b;
      const double words = factorial(n) / (factorial(a) * factorial(t) * factorial(b)) * std::pow(2.0, n);
      const double p = std::pow(0.25, a) * std::pow(w / 4, t) * std::pow((1 - w) / 4, b);
      const double q = std::pow(0.25, a) * std::pow(w2 / 4, t) * std::pow((1 - w2) / 4, b);
      total += words * term(p, q);
    }
  }
  return total;
}

double tv_oracle(int n, double w, double w2) {
  return grouped_sum(n, w, w2, [](double p, double q) { return std::abs(p - q); });
}

double affinity_oracle(int n, double w, double w2) {
  return grouped_sum(n, w, w2, [](double p, double q) { return std::sqrt(p * q); });
}

struct QuadratureTerms {
  double oscillation;
  double mean_gradient;
};

// Brute-force midpoint quadrature on every edge, membership by direct geodesic distance.
QuadratureTerms poincare_quadrature(const LevelGraph& g, const MeasureSpec& m, const LipschitzFunction& u,
                                    const PointAddress& center, Length r, Length lambda_r) {
  constexpr int kCells = 512;
  const auto h = g.edge_length().scaled(1, kCells);
  std::vector<std::pair<double, double>> in_ball;  // weight, value
  double mass = 0, integral = 0, dmass = 0, grad = 0;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const double density = edge_density(g.word(e), m);
    for (int k = 0; k < kCells; ++k) {
      const auto p = PointAddress(g.word(e), h * k + h.scaled(1, 2));
      const auto d = geodesic_distance(g, center, p);
      const double weight = density * h.to_double();
      if (d <= lambda_r) {
        dmass += weight;
        grad += weight * u.upper_gradient(g, e);
      }
      if (d <= r) {
        const double v = u.value_at(g, p);
        mass += weight;
        integral += weight * v;
        in_ball.push_back({weight, v});
      }
    }
  }
  const double mean = integral / mass;
  double osc = 0;
  for (const auto& [weight, v] : in_ball) osc += weight * std::abs(v - mean);
  return {osc / mass, grad / dmass};
}

}  // namespace

TEST(TotalVariation, Examples) {
  const MeasureSpec a(0.25), b(0.75);
  EXPECT_NEAR(tv_distance(1, a, b), 0.5, 1e-15);
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(tv_distance(n, a, a), 0.0);
  EXPECT_EQ(tv_distance(0, a, b), 0.0);
}

TEST(TotalVariation, MatchesGroupedMultinomialOracle) {
  for (const auto& [w, w2] : {std::pair{0.25, 0.75}, {0.1, 0.9}, {0.3, 0.6}, {0.45, 0.5}}) {
    for (int n = 0; n <= 8; ++n) {
      EXPECT_NEAR(tv_distance(n, MeasureSpec(w), MeasureSpec(w2)), tv_oracle(n, w, w2), 1e-12) << w << " " << w2 << " " << n;
    }
  }
}

TEST(TotalVariation, MonotoneBoundedSymmetric) {
  const MeasureSpec a(0.1), b(0.9);
  double previous = 0.0;
  for (int n = 0; n <= 8; ++n) {
    const double tv = tv_distance(n, a, b);
    EXPECT_GE(tv, previous - 1e-15);
    EXPECT_LE(tv, 2.0);
    EXPECT_GE(tv, 2.0 * (1.0 - hellinger_affinity(n, a, b)) - 1e-12);
    EXPECT_NEAR(tv, tv_distance(n, MeasureSpec(0.9), MeasureSpec(0.1)), 1e-12);
    EXPECT_NEAR(tv_distance(n, MeasureSpec(0.3), MeasureSpec(0.65)), tv_distance(n, MeasureSpec(0.7), MeasureSpec(0.35)), 1e-12);
    previous = tv;
  }
  EXPECT_GT(previous, 1.6);
}

TEST(Affinity, Examples) {
  const MeasureSpec a(0.25), b(0.75);
  EXPECT_NEAR(affinity_factor(a, b), 0.933013, 5e-7);
  EXPECT_NEAR(hellinger_affinity(2, a, b), 0.870513, 5e-7);
  EXPECT_NEAR(affinity_factor(MeasureSpec(0.1), MeasureSpec(0.9)), 0.8, 1e-15);
  for (int n = 0; n <= 4; ++n) EXPECT_NEAR(hellinger_affinity(n, a, a), 1.0, 1e-12);
}

TEST(Affinity, ClosedFormAndOracle) {
  for (const auto& [w, w2] : {std::pair{0.25, 0.75}, {0.1, 0.9}, {0.6, 0.61}}) {
    const MeasureSpec a(w), b(w2);
    const double rho = affinity_factor(a, b);
    EXPECT_LT(rho, 1.0);
    for (int n = 0; n <= 8; ++n) {
      const double aff = hellinger_affinity(n, a, b);
      EXPECT_NEAR(aff, std::pow(rho, n), 1e-10);
      EXPECT_NEAR(aff, affinity_oracle(n, w, w2), 1e-12);
    }
  }
}

TEST(Singularity, GuardsLevelBudget) {
  EXPECT_THROW(tv_distance(configured_max_level() + 1, MeasureSpec(0.2), MeasureSpec(0.3)), ResourceError);
  EXPECT_THROW(tv_distance(-1, MeasureSpec(0.2), MeasureSpec(0.3)), InvalidLevelError);
}

TEST(Lipschitz, DeterministicAndGradients) {
  const auto g = build_level(3);
  const auto u = random_lipschitz(g, 5);
  EXPECT_EQ(u.values, random_lipschitz(g, 5).values);
  EXPECT_NE(u.values, random_lipschitz(g, 6).values);
  for (EdgeIndex e = 0; e < g.edge_count(); e += 11) {
    const auto [a, b] = g.ends(e);
    EXPECT_NEAR(u.upper_gradient(g, e), std::abs(u.values[b] - u.values[a]) / g.edge_length().to_double(), 1e-12);
    EXPECT_NEAR(u.value_at(g, PointAddress::midpoint_of(g.word(e))), (u.values[a] + u.values[b]) / 2, 1e-14);
  }
}

TEST(Lipschitz, ZeroRefinementFactorsThroughChart) {
  const auto g = build_level(4);
  const auto u = random_lipschitz(g, 8, LipschitzOptions{1.0, 0.0});
  const double u0 = u.values[LevelGraph::left_endpoint()], u1 = u.values[LevelGraph::right_endpoint()];
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    EXPECT_NEAR(u.values[v], u0 + (u1 - u0) * chart_coordinate(g.address_of(v)), 1e-12);
  }
  const auto lin = chart_linear_function(g, 2.0, 1.0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) EXPECT_NEAR(lin.values[v], 1.0 + 2.0 * chart_coordinate(g.address_of(v)), 1e-15);
}

TEST(Poincare, LevelZeroClosedForm) {
  const auto g = build_level(0);
  const auto u = chart_linear_function(g, 1.0);
  for (double w : {0.1, 0.5, 0.9}) {
    const MeasureSpec m(w);
    const auto terms = poincare_ratio(g, DensityTable(g, m), u, PointAddress(EdgeWord{}, Length::one().scaled(1, 2)),
                                      Length::one().scaled(1, 2), 2.0);
    EXPECT_NEAR(terms.oscillation, 0.25, 1e-15);
    EXPECT_NEAR(terms.mean_gradient, 1.0, 1e-15);
    EXPECT_NEAR(terms.ratio, 0.5, 1e-12);
  }
}

TEST(Poincare, ConstantFunctionIsDegenerate) {
  const auto g = build_level(2);
  const LipschitzFunction u{std::vector<double>(g.vertex_count(), 3.0)};
  const auto terms = poincare_ratio(g, DensityTable(g, MeasureSpec(0.3)), u, PointAddress::midpoint_of(g.word(9)),
                                    Length::edge(2), 2.0);
  EXPECT_TRUE(terms.degenerate);
  EXPECT_EQ(terms.oscillation, 0.0);
  EXPECT_THROW(poincare_ratio(g, DensityTable(g, MeasureSpec(0.3)), u, PointAddress::midpoint_of(g.word(9)),
                              Length::edge(2), 0.5),
               InvalidParameterError);
}

TEST(Poincare, MatchesMidpointQuadrature) {
  const auto g = build_level(2);
  const MeasureSpec m(0.3);
  const DensityTable table(g, m);
  Rng rng(77);
  for (int trial = 0; trial < 12; ++trial) {
    const auto u = random_lipschitz(g, rng());
    const auto e = rng.below(g.edge_count());
    const auto center = PointAddress(g.word(e), g.edge_length().scaled(static_cast<std::int64_t>(1 + rng.below(7)), 8));
    const auto r = radius_grid(2)[rng.below(radius_grid(2).size())];
    const auto terms = poincare_ratio(g, table, u, center, r, 2.0);
    const auto oracle = poincare_quadrature(g, m, u, center, r, r * 2);
    EXPECT_NEAR(terms.oscillation, oracle.oscillation, 2e-3 * std::max(oracle.oscillation, 1e-3));
    EXPECT_NEAR(terms.mean_gradient, oracle.mean_gradient, 2e-3 * oracle.mean_gradient);
  }
}

TEST(Poincare, ScaleInvariant) {
  const auto g = build_level(3);
  const DensityTable table(g, MeasureSpec(0.4));
  auto u = random_lipschitz(g, 12);
  const auto center = PointAddress::midpoint_of(g.word(50));
  const double base = poincare_ratio(g, table, u, center, Length::edge(2), 2.0).ratio;
  for (auto& v : u.values) v *= -7.5;
  EXPECT_NEAR(poincare_ratio(g, table, u, center, Length::edge(2), 2.0).ratio, base, 1e-12 * base);
}

TEST(Doubling, RatioMatchesBallMasses) {
  const auto g = build_level(3);
  const MeasureSpec m(0.3);
  const DensityTable table(g, m);
  const auto center = PointAddress::midpoint_of(g.word(80));
  const auto r = Length::edge(2);
  const auto s = doubling_ratio(DistanceField(g, center), table, r);
  EXPECT_NEAR(s.inner_mass, ball_mass(ball_cover(g, center, r), m), 1e-15);
  EXPECT_NEAR(s.outer_mass, ball_mass(ball_cover(g, center, r * 2), m), 1e-15);
  EXPECT_NEAR(s.ratio, s.outer_mass / s.inner_mass, 1e-15);
}

TEST(Doubling, LevelZeroIsAtMostTwo) {
  const auto g = build_level(0);
  for (double w : {0.1, 0.5, 0.9}) {
    const auto rep = doubling_estimate(g, MeasureSpec(w), 500, radius_grid(0), 4);
    EXPECT_EQ(rep.skipped, 0u);
    EXPECT_LE(rep.max_ratio, 2.0 + 1e-12);
    EXPECT_GE(rep.max_ratio, 1.0);
  }
}

TEST(Doubling, DeterministicAndValidated) {
  const auto g = build_level(2);
  const auto a = doubling_estimate(g, MeasureSpec(0.5), 100, radius_grid(2), 9);
  const auto b = doubling_estimate(g, MeasureSpec(0.5), 100, radius_grid(2), 9);
  EXPECT_EQ(a.max_ratio, b.max_ratio);
  EXPECT_EQ(a.worst_center, b.worst_center);
  const std::vector<Length> bad{Length()};
  EXPECT_THROW(doubling_estimate(g, MeasureSpec(0.5), 10, bad, 1), InvalidParameterError);
}

TEST(Doubling, SmallerWeightGivesLargerConstant) {
  const auto g = build_level(3);
  const auto skewed = doubling_estimate(g, MeasureSpec(0.1), 500, radius_grid(3), 1);
  const auto even = doubling_estimate(g, MeasureSpec(0.5), 500, radius_grid(3), 1);
  EXPECT_GT(skewed.max_ratio, even.max_ratio);
}

TEST(RadiusGrid, Values) {
  const auto r1 = radius_grid(1);
  std::vector<std::string> text;
  for (auto r : r1) text.push_back(r.to_fraction_string());
  EXPECT_EQ(text, (std::vector<std::string>{"1/4"}));
  const auto r2 = radius_grid(2);
  std::set<Length> seen(r2.begin(), r2.end());
  EXPECT_TRUE(seen.count(Length::one().scaled(1, 16)));
  EXPECT_TRUE(seen.count(Length::one().scaled(3, 16)));
  for (auto r : r2) EXPECT_LE(r, Length::one().scaled(1, 4));
}

TEST(Pencil, LevelOneBranches) {
  const MeasureSpec m(0.3);
  int top = 0;
  constexpr int kSamples = 20000;
  for (int s = 0; s < kSamples; ++s) {
    const auto c = pencil_sample(static_cast<std::uint64_t>(s), m, 1);
    ASSERT_EQ(c.top_choices.size(), 1u);
    const std::vector<EdgeIndex> expected = c.top_choices[0] ? std::vector<EdgeIndex>{0, 1, 2, 5} : std::vector<EdgeIndex>{0, 3, 4, 5};
    EXPECT_EQ(c.edges, expected);
    top += c.top_choices[0];
  }
  const double se = std::sqrt(0.3 * 0.7 / kSamples);
  EXPECT_NEAR(top / static_cast<double>(kSamples), 0.3, 4 * se);
}

TEST(Pencil, CurvesAreMonotoneGeodesics) {
  for (int n = 0; n <= 4; ++n) {
    const auto g = build_level(n);
    const auto c = pencil_sample(31, MeasureSpec(0.6), n);
    EXPECT_EQ(c.length(), Length::one());
    ASSERT_EQ(c.edges.size(), static_cast<std::size_t>(1) << (2 * n));
    EXPECT_EQ(g.ends(c.edges.front()).start, LevelGraph::left_endpoint());
    EXPECT_EQ(g.ends(c.edges.back()).end, LevelGraph::right_endpoint());
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      if (i > 0) EXPECT_EQ(g.ends(c.edges[i - 1]).end, g.ends(c.edges[i]).start);
      EXPECT_EQ(chart_position(PointAddress::start_of(g.word(c.edges[i]))), g.edge_length() * static_cast<std::int64_t>(i));
    }
  }
}

TEST(Pencil, OccupationMatchesBranchProbability) {
  const auto g = build_level(2);
  const MeasureSpec m(0.3);
  std::vector<int> hits(g.edge_count(), 0);
  constexpr int kSamples = 20000;
  for (int s = 0; s < kSamples; ++s) {
    for (auto e : pencil_sample(static_cast<std::uint64_t>(1000 + s), m, 2).edges) ++hits[e];
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const double p = edge_density(g.word(e), m);
    EXPECT_NEAR(hits[e] / static_cast<double>(kSamples), p, 4 * std::sqrt(p * (1 - p) / kSamples) + 1e-12);
  }
}
