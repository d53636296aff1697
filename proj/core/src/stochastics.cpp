#include "diamond/stochastics.hpp"

#include <algorithm>
#include <cmath>

#include "diamond/errors.hpp"

namespace diamond {
namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(make_engine(seed, stream)) {}

double Rng::uniform() { return std::ldexp(static_cast<double>(engine_() >> 11), -53); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidParameterError("Rng::below needs n > 0");
  // Rejection on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = max() - max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

OutcomeDistribution outcome_distribution(const MeasureSpec& m) {
  const double w = m.w();
  return {{0.25, w / 4, w / 4, (1 - w) / 4, (1 - w) / 4, 0.25}};
}

int sample_digit(const OutcomeDistribution& nu, double u) {
  double cdf = 0.0;
  for (int d = 1; d < kDigitCount; ++d) {
    cdf += nu(d);
    if (u < cdf) return d;
  }
  return kDigitCount;
}

SamplePath sample_path(std::uint64_t seed, const MeasureSpec& m, std::int64_t n, std::uint64_t stream) {
  if (n < 0) throw InvalidParameterError("path length must be non-negative");
  const auto nu = outcome_distribution(m);
  Rng rng(seed, stream);
  std::vector<std::uint8_t> digits(static_cast<std::size_t>(n));
  SamplePath path;
  path.w = m.w();
  for (auto& d : digits) {
    d = static_cast<std::uint8_t>(sample_digit(nu, rng.uniform()));
    ++path.counters[d - 1u];
  }
  path.digits = CantorAddress(std::move(digits));
  return path;
}

std::array<std::int64_t, kDigitCount> count_digits(const CantorAddress& digits) {
  std::array<std::int64_t, kDigitCount> counts{};
  for (auto d : digits.digits()) ++counts[d - 1u];
  return counts;
}

std::vector<FrequencyRow> slln_report(const SamplePath& path) {
  const auto n = path.length();
  if (n < 1) throw InvalidParameterError("frequency report needs a non-empty path");
  const auto nu = outcome_distribution(MeasureSpec(path.w));
  std::vector<FrequencyRow> rows;
  for (int d = 1; d <= kDigitCount; ++d) {
    const double freq = static_cast<double>(path.count(d)) / static_cast<double>(n);
    const double p = nu(d);
    rows.push_back({d, path.count(d), freq, p, freq - p, std::sqrt(p * (1 - p) / static_cast<double>(n))});
  }
  return rows;
}

namespace {

struct LogFactors {
  double top;
  double bottom;
};

LogFactors log_factors(const MeasureSpec& m, const MeasureSpec& m2) {
  return {std::log(m.w() / m2.w()), std::log((1 - m.w()) / (1 - m2.w()))};
}

}  // namespace

double empirical_rate(const SamplePath& path, const MeasureSpec& m, const MeasureSpec& m2) {
  const auto n = path.length();
  if (n < 1) throw InvalidParameterError("rate needs a non-empty path");
  if (m == m2) return 0.0;
  const auto f = log_factors(m, m2);
  const double top = static_cast<double>(path.count(2) + path.count(3));
  const double bottom = static_cast<double>(path.count(4) + path.count(5));
  return (top * f.top + bottom * f.bottom) / static_cast<double>(n);
}

double theoretical_rate(const MeasureSpec& m, const MeasureSpec& m2) {
  if (m == m2) return 0.0;
  const auto f = log_factors(m, m2);
  return 0.5 * (m2.w() * f.top + (1 - m2.w()) * f.bottom);
}

std::vector<RatePoint> rate_trace(const SamplePath& path, const MeasureSpec& m, const MeasureSpec& m2,
                                  std::span<const std::int64_t> checkpoints) {
  const auto f = log_factors(m, m2);
  const double limit = theoretical_rate(m, m2);
  std::vector<RatePoint> trace;
  trace.reserve(checkpoints.size());
  double log_c = 0.0;
  std::int64_t k = 0;
  for (const auto checkpoint : checkpoints) {
    if (checkpoint < 1 || checkpoint > path.length() || checkpoint < k) {
      throw InvalidParameterError("rate checkpoints must be increasing and within the path");
    }
    for (; k < checkpoint; ++k) {
      const int d = path.digits[static_cast<std::size_t>(k)];
      if (is_top_digit(d)) log_c += f.top;
      if (is_bottom_digit(d)) log_c += f.bottom;
    }
    trace.push_back({checkpoint, m == m2 ? 0.0 : log_c / static_cast<double>(checkpoint), limit});
  }
  return trace;
}

std::vector<std::int64_t> decade_checkpoints(std::int64_t n) {
  std::vector<std::int64_t> points;
  for (std::int64_t k = 10; k < n; k *= 10) points.push_back(k);
  if (n >= 1) points.push_back(n);
  return points;
}

double rate_increment_stddev(const MeasureSpec& m, const MeasureSpec& m2) {
  if (m == m2) return 0.0;
  const auto f = log_factors(m, m2);
  const double p_top = m2.w() / 2;
  const double p_bottom = (1 - m2.w()) / 2;
  const double mean = p_top * f.top + p_bottom * f.bottom;
  const double second = p_top * f.top * f.top + p_bottom * f.bottom * f.bottom;
  return std::sqrt(std::max(0.0, second - mean * mean));
}

NegativityCertificate negativity_certificate(std::span<const std::pair<double, double>> pairs) {
  NegativityCertificate cert;
  for (const auto& [w, w2] : pairs) {
    if (w == w2) throw InvalidParameterError("negativity certificate excludes w == w2");
    const double rate = theoretical_rate(MeasureSpec(w), MeasureSpec(w2));
    ++cert.pairs;
    if (rate > cert.max_rate) {
      cert.max_rate = rate;
      cert.argmax = {w, w2};
    }
    if (!(rate < 0.0)) {
      cert.passed = false;
      cert.failures.emplace_back(w, w2);
    }
  }
  return cert;
}

std::vector<double> interior_grid(double lo, double hi, int count) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) grid.push_back(lo + (hi - lo) * (i + 1) / (count + 1));
  return grid;
}

}  // namespace diamond
