#include "diamond/measure.hpp"

#include <cmath>
#include <string>

#include "diamond/errors.hpp"

namespace diamond {

MeasureSpec::MeasureSpec(double w) : w_(w) {
  if (!(w > kEpsilon && w < 1.0 - kEpsilon)) {
    throw InvalidParameterError("w = " + std::to_string(w) + " must lie strictly inside (0,1)");
  }
}

DensityLaw DensityLaw::of(const MeasureSpec& m) {
  const double w = m.w();
  return {{1.0, w, w, 1.0 - w, 1.0 - w, 1.0}};
}

double edge_density(const EdgeWord& e, const DensityLaw& law) {
  // Counts per digit, then one pow per distinct factor: accurate for deep words.
  std::array<int, kDigitCount> counts{};
  for (auto d : e.digits()) ++counts[d - 1u];
  double log_density = 0.0;
  for (int d = 1; d <= kDigitCount; ++d) {
    const int count = counts[static_cast<std::size_t>(d - 1)];
    if (count != 0) log_density += count * std::log(law(d));
  }
  return std::exp(log_density);
}

double edge_density(const EdgeWord& e, const MeasureSpec& m) {
  return std::pow(m.w(), e.top_count()) * std::pow(1.0 - m.w(), e.bottom_count());
}

double edge_mass(const EdgeWord& e, const MeasureSpec& m) { return std::ldexp(edge_density(e, m), -2 * e.level()); }

double edge_mass(const EdgeWord& e, const DensityLaw& law) {
  return std::ldexp(edge_density(e, law), -2 * e.level());
}

ConsistencyResult pushforward_consistency(const EdgeWord& e, const DensityLaw& law, double tolerance) {
  CompensatedSum children;
  for (int d = 1; d <= kDigitCount; ++d) children.add(edge_mass(e.child(d), law));
  const double residual = std::abs(edge_mass(e, law) - children.value());
  return {residual < tolerance, residual};
}

ConsistencyResult pushforward_consistency(const EdgeWord& e, const MeasureSpec& m, double tolerance) {
  CompensatedSum children;
  for (int d = 1; d <= kDigitCount; ++d) children.add(edge_mass(e.child(d), m));
  const double residual = std::abs(edge_mass(e, m) - children.value());
  return {residual < tolerance, residual};
}

DensityTable::DensityTable(const LevelGraph& g, const MeasureSpec& m) : spec_(m), level_(g.level()) {
  // Fill by refinement: child density = parent density * factor(digit).
  const auto law = DensityLaw::of(m);
  density_ = {1.0};
  for (int k = 0; k < level_; ++k) {
    std::vector<double> next(density_.size() * kDigitCount);
    for (std::size_t i = 0; i < density_.size(); ++i) {
      for (int d = 1; d <= kDigitCount; ++d) next[6 * i + static_cast<std::size_t>(d - 1)] = density_[i] * law(d);
    }
    density_.swap(next);
  }
}

double ball_mass(const BallCover& cover, const DensityTable& table) {
  if (cover.center.level() != table.level()) throw InvalidLevelError("ball cover and density table levels differ");
  CompensatedSum total;
  for (const auto& s : cover.segments) total.add(table.density(s.edge) * s.length().to_double());
  return total.value();
}

double ball_mass(const BallCover& cover, const MeasureSpec& m) {
  const int level = cover.center.level();
  CompensatedSum total;
  for (const auto& s : cover.segments) total.add(edge_density(EdgeWord::from_index(level, s.edge), m) * s.length().to_double());
  return total.value();
}

double log_rn_ratio(const EdgeWord& e, const MeasureSpec& m, const MeasureSpec& m2) {
  const double top = e.top_count();
  const double bottom = e.bottom_count();
  double log_ratio = 0.0;
  if (top != 0) log_ratio += top * std::log(m.w() / m2.w());
  if (bottom != 0) log_ratio += bottom * std::log((1.0 - m.w()) / (1.0 - m2.w()));
  return log_ratio;
}

double rn_ratio(const EdgeWord& e, const MeasureSpec& m, const MeasureSpec& m2) {
  return std::exp(log_rn_ratio(e, m, m2));
}

std::vector<EdgeMeasureRecord> edge_measure_table(int level, const MeasureSpec& m) {
  if (level < 0 || level > kHardMaxLevel) throw InvalidLevelError("edge table level out of range");
  const auto count = edge_count_at(level);
  std::vector<EdgeMeasureRecord> rows;
  rows.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto word = EdgeWord::from_index(level, i);
    const double density = edge_density(word, m);
    rows.push_back({std::move(word), density, std::ldexp(density, -2 * level)});
  }
  return rows;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

}  // namespace diamond
