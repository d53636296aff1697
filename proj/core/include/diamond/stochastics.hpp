#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "diamond/address.hpp"
#include "diamond/measure.hpp"

namespace diamond {

/// Seedable generator with independent substreams. A (seed, stream) pair
/// always yields the same sequence on every platform: the engine is
/// mt19937_64 keyed through std::seed_seq, and uniform() / below() are
/// computed here rather than by <random> distributions.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return std::numeric_limits<result_type>::min(); }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

/// nu_w on {1..6}: (1/4, w/4, w/4, (1-w)/4, (1-w)/4, 1/4).
struct OutcomeDistribution {
  std::array<double, kDigitCount> probability;

  double operator()(int digit) const { return probability[static_cast<std::size_t>(digit - 1)]; }
};

OutcomeDistribution outcome_distribution(const MeasureSpec& m);

// Inverse-CDF draw with the outcome order 1..6.
int sample_digit(const OutcomeDistribution& nu, double u);

struct SamplePath {
  double w = 0.5;
  CantorAddress digits;
  std::array<std::int64_t, kDigitCount> counters{};  // S_{i,n}

  std::int64_t length() const { return static_cast<std::int64_t>(digits.length()); }
  std::int64_t count(int digit) const { return counters[static_cast<std::size_t>(digit - 1)]; }
};

// n i.i.d. digits from nu_w drawn from substream `stream` of `seed`.
SamplePath sample_path(std::uint64_t seed, const MeasureSpec& m, std::int64_t n, std::uint64_t stream = 0);

// Recomputes S_{i,n} from the digits.
std::array<std::int64_t, kDigitCount> count_digits(const CantorAddress& digits);

struct FrequencyRow {
  int digit;
  std::int64_t count;
  double frequency;       // S_{i,n} / n
  double limit;           // almost-sure limit of the frequency
  double deviation;       // frequency - limit
  double standard_error;  // sqrt(p (1 - p) / n)
};

std::vector<FrequencyRow> slln_report(const SamplePath& path);

// (1/n) ln c_n for the density ratio of m against m2 along the path.
double empirical_rate(const SamplePath& path, const MeasureSpec& m, const MeasureSpec& m2);

// Limit of the empirical rate for paths drawn under m2.
double theoretical_rate(const MeasureSpec& m, const MeasureSpec& m2);

struct RatePoint {
  std::int64_t n;
  double empirical;
  double theoretical;
};

// Incremental (1/k) ln c_k evaluated at each checkpoint k (sorted, <= path length).
std::vector<RatePoint> rate_trace(const SamplePath& path, const MeasureSpec& m, const MeasureSpec& m2,
                                  std::span<const std::int64_t> checkpoints);

// Default checkpoints: 10, 100, ..., plus the path length itself.
std::vector<std::int64_t> decade_checkpoints(std::int64_t n);

// Standard deviation of the per-digit log increment under m2.
double rate_increment_stddev(const MeasureSpec& m, const MeasureSpec& m2);

struct NegativityCertificate {
  bool passed = true;
  std::size_t pairs = 0;
  double max_rate = -std::numeric_limits<double>::infinity();
  std::pair<double, double> argmax{0.0, 0.0};
  std::vector<std::pair<double, double>> failures;
};

// Requires w != w2 for every pair; throws InvalidParameterError otherwise.
NegativityCertificate negativity_certificate(std::span<const std::pair<double, double>> pairs);

// Points lo + (hi - lo) (i + 1) / (count + 1), i < count: `count` interior points.
std::vector<double> interior_grid(double lo, double hi, int count);

}  // namespace diamond
