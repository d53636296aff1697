#include "diamond/length.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "diamond/errors.hpp"

namespace diamond {
namespace {

constexpr std::int64_t kUnitsPerOne = std::int64_t{1} << (2 * kUnitLevel);

std::int64_t parse_integer(std::string_view text) {
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw InvalidParameterError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Length Length::from_fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidParameterError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g != 0) {
    num /= g;
    den /= g;
  }
  if ((den & (den - 1)) != 0 || den > kUnitsPerOne) {
    throw InvalidParameterError("length " + std::to_string(num) + "/" + std::to_string(den) +
                                " is not a multiple of 4^-" + std::to_string(kUnitLevel));
  }
  std::int64_t units = 0;
  if (__builtin_mul_overflow(num, kUnitsPerOne / den, &units)) {
    throw InvalidParameterError("length out of range");
  }
  return Length(units);
}

Length Length::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_fraction(parse_integer(text), 1);
  return from_fraction(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

Length Length::nearest(double value) {
  if (!std::isfinite(value) || std::abs(value) > 1e6) {
    throw InvalidParameterError("length out of range");
  }
  return Length(static_cast<std::int64_t>(std::llround(std::ldexp(value, 2 * kUnitLevel))));
}

double Length::to_double() const { return std::ldexp(static_cast<double>(units_), -2 * kUnitLevel); }

std::string Length::to_fraction_string() const {
  std::int64_t g = std::gcd(units_, kUnitsPerOne);
  if (g == 0) g = 1;
  return std::to_string(units_ / g) + "/" + std::to_string(kUnitsPerOne / g);
}

Length Length::scaled(std::int64_t num, std::int64_t den) const {
  if (den == 0) throw InvalidParameterError("zero denominator");
  std::int64_t product = 0;
  if (__builtin_mul_overflow(units_, num, &product)) throw InvalidParameterError("length overflow");
  if (product % den != 0) throw InvalidParameterError("scaled length is not representable");
  return Length(product / den);
}

}  // namespace diamond
