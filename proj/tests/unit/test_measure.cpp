#include <gtest/gtest.h>

#include <cmath>

#include "diamond/errors.hpp"
#include "diamond/measure.hpp"

using namespace diamond;

namespace {

EdgeWord word(const char* s) { return EdgeWord::from_string(s); }

// Density from the branch counts alone: w^top (1-w)^bottom.
double density_oracle(const EdgeWord& e, double w) {
  return std::pow(w, e.top_count()) * std::pow(1.0 - w, e.bottom_count());
}

}  // namespace

TEST(MeasureSpec, ValidatesRange) {
  EXPECT_THROW(MeasureSpec(0.0), InvalidParameterError);
  EXPECT_THROW(MeasureSpec(1.0), InvalidParameterError);
  EXPECT_THROW(MeasureSpec(std::nan("")), InvalidParameterError);
  EXPECT_NO_THROW(MeasureSpec(0.5));
}

TEST(EdgeDensity, Examples) {
  EXPECT_EQ(edge_density(EdgeWord{}, MeasureSpec(0.3)), 1.0);
  EXPECT_DOUBLE_EQ(edge_density(word("2"), MeasureSpec(0.3)), 0.3);
  EXPECT_NEAR(edge_density(word("245"), MeasureSpec(0.3)), 0.147, 1e-15);
  EXPECT_NEAR(edge_density(word("245"), DensityLaw::of(MeasureSpec(0.3))), 0.147, 1e-15);
}

TEST(EdgeDensity, MatchesBranchCountOracle) {
  for (double w : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const MeasureSpec m(w);
    for (std::uint64_t i = 0; i < edge_count_at(4); ++i) {
      const auto e = EdgeWord::from_index(4, i);
      EXPECT_NEAR(edge_density(e, m), density_oracle(e, w), 1e-15);
      EXPECT_NEAR(edge_density(e, DensityLaw::of(m)), density_oracle(e, w), 1e-15);
    }
  }
}

TEST(EdgeMass, Examples) {
  EXPECT_EQ(edge_mass(EdgeWord{}, MeasureSpec(0.7)), 1.0);
  for (double w : {0.1, 0.5, 0.9}) EXPECT_DOUBLE_EQ(edge_mass(word("1"), MeasureSpec(w)), 0.25);
}

TEST(EdgeMass, TotalIsOne) {
  for (double w : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (int n = 0; n <= 6; ++n) {
      CompensatedSum total;
      for (const auto& row : edge_measure_table(n, MeasureSpec(w))) total.add(row.mass);
      EXPECT_NEAR(total.value(), 1.0, 1e-12) << "w=" << w << " n=" << n;
    }
  }
}

TEST(Pushforward, Examples) {
  const auto r = pushforward_consistency(EdgeWord{}, MeasureSpec(0.5));
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.residual, 0.0);
  for (double w : {0.01, 0.3, 0.77, 0.99}) {
    for (std::uint64_t i = 0; i < edge_count_at(3); ++i) {
      EXPECT_LT(pushforward_consistency(EdgeWord::from_index(3, i), MeasureSpec(w)).residual, 1e-12);
    }
  }
  const auto deep = pushforward_consistency(EdgeWord::from_string("2345234523452345234"), MeasureSpec(0.3));
  EXPECT_TRUE(deep.consistent);
}

TEST(Pushforward, BrokenLawIsDetected) {
  auto law = DensityLaw::of(MeasureSpec(0.4));
  law.factor[1] = 0.5;
  const auto r = pushforward_consistency(EdgeWord{}, law);
  EXPECT_FALSE(r.consistent);
  EXPECT_NEAR(r.residual, 0.1 / 4, 1e-15);
}

TEST(DensityTable, AgreesWithEdgeDensity) {
  const auto g = build_level(4);
  const MeasureSpec m(0.3);
  const DensityTable table(g, m);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) EXPECT_NEAR(table.density(e), edge_density(g.word(e), m), 1e-15);
}

TEST(BallMass, Examples) {
  const auto g1 = build_level(1);
  const MeasureSpec m(0.3);
  const auto vtop = PointAddress::end_of(word("2"));
  EXPECT_NEAR(ball_mass(ball_cover(g1, vtop, Length::edge(1)), m), 0.15, 1e-15);
  EXPECT_EQ(ball_mass(ball_cover(g1, vtop, Length()), m), 0.0);
  const auto g3 = build_level(3);
  const auto full = ball_cover(g3, PointAddress::midpoint_of(g3.word(7)), Length::one() * 2);
  EXPECT_NEAR(ball_mass(full, m), 1.0, 1e-12);
  EXPECT_NEAR(ball_mass(full, DensityTable(g3, m)), 1.0, 1e-12);
}

TEST(BallMass, SegmentSumOracle) {
  const auto g = build_level(3);
  const MeasureSpec m(0.2);
  const DensityTable table(g, m);
  for (EdgeIndex c = 0; c < g.edge_count(); c += 17) {
    const auto cover = ball_cover(g, PointAddress::midpoint_of(g.word(c)), Length::one().scaled(3, 32));
    double expected = 0.0;
    for (const auto& s : cover.segments) expected += density_oracle(g.word(s.edge), 0.2) * s.length().to_double();
    EXPECT_NEAR(ball_mass(cover, table), expected, 1e-14);
    EXPECT_NEAR(ball_mass(cover, m), expected, 1e-14);
  }
}

TEST(RnRatio, Examples) {
  const MeasureSpec a(0.3), b(0.6);
  for (std::uint64_t i = 0; i < 36; ++i) EXPECT_DOUBLE_EQ(rn_ratio(EdgeWord::from_index(2, i), a, a), 1.0);
  EXPECT_NEAR(rn_ratio(word("23"), a, b), 0.25, 1e-15);
  EXPECT_EQ(rn_ratio(word("161166"), a, b), 1.0);
  EXPECT_NEAR(log_rn_ratio(word("45"), a, b), 2.0 * std::log(0.7 / 0.4), 1e-14);
}

TEST(CompensatedSum, BeatsNaiveSummation) {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-17);
  EXPECT_NEAR(s.value(), 1.0 + 1e-14, 1e-17);
}
