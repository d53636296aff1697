#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "diamond/graph.hpp"
#include "diamond/measure.hpp"

namespace diamond {

// ---------------------------------------------------------------------------
// Singularity certificates (exhaustive sums over the 6^n edges of X_n)

// Sum over edges of |mu_{w,n}(e) - mu_{w2,n}(e)|. Tends to 2 iff the limits are singular.
double tv_distance(int level, const MeasureSpec& m, const MeasureSpec& m2);

// Sum over edges of sqrt(mu_{w,n}(e) mu_{w2,n}(e)).
double hellinger_affinity(int level, const MeasureSpec& m, const MeasureSpec& m2);

// Per-level affinity factor (1 + sqrt(w w2) + sqrt((1-w)(1-w2))) / 2; the
// level-n affinity is its n-th power.
double affinity_factor(const MeasureSpec& m, const MeasureSpec& m2);

// ---------------------------------------------------------------------------
// Test functions

/// Piecewise-linear function given by its vertex values; on each edge its
/// minimal upper gradient is the constant slope magnitude.
struct LipschitzFunction {
  std::vector<double> values;  // indexed by VertexId

  double value_at(const LevelGraph& g, const PointAddress& p) const;
  double upper_gradient(const LevelGraph& g, EdgeIndex e) const;
};

struct LipschitzOptions {
  double amplitude = 1.0;  // scale of the two level-0 endpoint values
  double decay = 0.25;     // per-level amplitude ratio of the refinement noise
};

// Random values at the X_0 endpoints, then at every refinement the new
// vertices take the linear interpolation of their parent edge plus noise of
// amplitude * decay^(k+1).
LipschitzFunction random_lipschitz(const LevelGraph& g, std::uint64_t seed, LipschitzOptions options = {});

// u = intercept + slope * chart_coordinate; factors through the projection to X_0.
LipschitzFunction chart_linear_function(const LevelGraph& g, double slope, double intercept = 0.0);

// ---------------------------------------------------------------------------
// Doubling and Poincare estimators

// 4^-j * {1, 3/2, 2, 3} for j = 1..max(level, 1), keeping radii <= 1/4.
std::vector<Length> radius_grid(int level);

struct DoublingSample {
  PointAddress center;
  Length radius;
  double inner_mass;
  double outer_mass;
  double ratio;
};

DoublingSample doubling_ratio(const DistanceField& field, const DensityTable& table, Length radius);

struct DoublingReport {
  int level = 0;
  double w = 0.5;
  std::size_t samples = 0;
  std::size_t skipped = 0;  // zero-mass inner balls
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  PointAddress worst_center;
  Length worst_radius;
};

// Centers: uniform edge, then uniform interior offset. Radii: uniform over `radii`.
DoublingReport doubling_estimate(const LevelGraph& g, const MeasureSpec& m, std::size_t samples,
                                 std::span<const Length> radii, std::uint64_t seed);

struct PoincareTerms {
  double oscillation = 0.0;    // mean of |u - u_B| over B
  double mean_gradient = 0.0;  // mean of the upper gradient over lambda B
  double radius = 0.0;
  double ratio = 0.0;
  bool degenerate = false;  // gradient vanishes on lambda B
};

PoincareTerms poincare_ratio(const LevelGraph& g, const DensityTable& table, const LipschitzFunction& u,
                             const PointAddress& center, Length radius, double lambda);

struct PoincareReport {
  int level = 0;
  double w = 0.5;
  double lambda = 2.0;
  std::size_t trials = 0;
  std::size_t skipped = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  PointAddress worst_center;
  Length worst_radius;
};

PoincareReport poincare_estimate(const LevelGraph& g, const MeasureSpec& m, std::size_t trials, double lambda,
                                 std::span<const Length> radii, std::uint64_t seed,
                                 LipschitzOptions options = {});

// ---------------------------------------------------------------------------
// Pencils of curves

/// Monotone left-to-right geodesic of X_n. top_choices lists, in refinement
/// order, the branch taken at each diamond that the curve traverses.
struct PencilCurve {
  int level = 0;
  std::vector<bool> top_choices;
  std::vector<EdgeIndex> edges;  // in traversal order

  Length length() const { return Length::edge(level) * static_cast<std::int64_t>(edges.size()); }
};

// Takes the top branch with probability w, independently at every diamond.
PencilCurve pencil_sample(std::uint64_t seed, const MeasureSpec& m, int level);

}  // namespace diamond
