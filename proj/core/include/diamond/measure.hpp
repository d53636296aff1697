#pragma once

#include <array>
#include <vector>

#include "diamond/address.hpp"
#include "diamond/graph.hpp"

namespace diamond {

/// Parameter of the measure mu_w. Valid range is (kEpsilon, 1 - kEpsilon).
class MeasureSpec {
 public:
  static constexpr double kEpsilon = 1e-9;

  explicit MeasureSpec(double w);
  double w() const { return w_; }

  friend bool operator==(const MeasureSpec&, const MeasureSpec&) = default;

 private:
  double w_;
};

// Per-digit density multipliers: 1 on digits 1,6, w on the top branch and
// 1-w on the bottom branch.
struct DensityLaw {
  std::array<double, kDigitCount> factor;

  static DensityLaw of(const MeasureSpec& m);
  double operator()(int digit) const { return factor[static_cast<std::size_t>(digit - 1)]; }
};

// Density of mu_{w,n} on e with respect to arclength.
double edge_density(const EdgeWord& e, const MeasureSpec& m);
double edge_density(const EdgeWord& e, const DensityLaw& law);

// edge_density * 4^-level.
double edge_mass(const EdgeWord& e, const MeasureSpec& m);
double edge_mass(const EdgeWord& e, const DensityLaw& law);

struct ConsistencyResult {
  bool consistent;
  double residual;  // |mass(e) - sum of child masses|
};

inline constexpr double kIdentityTolerance = 1e-12;

ConsistencyResult pushforward_consistency(const EdgeWord& e, const MeasureSpec& m,
                                          double tolerance = kIdentityTolerance);
ConsistencyResult pushforward_consistency(const EdgeWord& e, const DensityLaw& law,
                                          double tolerance = kIdentityTolerance);

// Densities of every edge of a graph, indexed by edge.
class DensityTable {
 public:
  DensityTable(const LevelGraph& g, const MeasureSpec& m);

  double density(EdgeIndex e) const { return density_[e]; }
  const MeasureSpec& spec() const { return spec_; }
  int level() const { return level_; }

 private:
  MeasureSpec spec_;
  int level_;
  std::vector<double> density_;
};

double ball_mass(const BallCover& cover, const MeasureSpec& m);
double ball_mass(const BallCover& cover, const DensityTable& table);

// density(e, m) / density(e, m2), evaluated in log space.
double rn_ratio(const EdgeWord& e, const MeasureSpec& m, const MeasureSpec& m2);
double log_rn_ratio(const EdgeWord& e, const MeasureSpec& m, const MeasureSpec& m2);

struct EdgeMeasureRecord {
  EdgeWord word;
  double density;
  double mass;
};

std::vector<EdgeMeasureRecord> edge_measure_table(int level, const MeasureSpec& m);

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace diamond
