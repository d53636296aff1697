#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace diamond {

// All lengths are integer multiples of 4^-kUnitLevel. Every edge of X_n
// (n <= kUnitLevel) has an integral length in these units, so projections,
// distances and ball covers are exact.
inline constexpr int kUnitLevel = 24;

// Deepest level at which a point (including an edge midpoint) is representable.
inline constexpr int kMaxPointLevel = kUnitLevel - 1;

class Length {
 public:
  constexpr Length() = default;

  static constexpr Length from_units(std::int64_t units) { return Length(units); }

  // Length of one edge of X_level, i.e. 4^-level.
  static constexpr Length edge(int level) {
    return Length(std::int64_t{1} << (2 * (kUnitLevel - level)));
  }
  static constexpr Length one() { return edge(0); }

  // Exact num/den; throws InvalidParameterError when not a multiple of the unit.
  static Length from_fraction(std::int64_t num, std::int64_t den);

  // Accepts "num/den" or a plain integer.
  static Length parse(std::string_view text);

  // Nearest representable length; used only at input boundaries for real radii.
  static Length nearest(double value);

  constexpr std::int64_t units() const { return units_; }
  double to_double() const;

  // Reduced "num/den" form, always with an explicit denominator.
  std::string to_fraction_string() const;

  // this * num / den, throwing when the result is not an integral number of units.
  Length scaled(std::int64_t num, std::int64_t den) const;

  constexpr Length& operator+=(Length o) {
    units_ += o.units_;
    return *this;
  }
  constexpr Length& operator-=(Length o) {
    units_ -= o.units_;
    return *this;
  }
  friend constexpr Length operator+(Length a, Length b) { return Length(a.units_ + b.units_); }
  friend constexpr Length operator-(Length a, Length b) { return Length(a.units_ - b.units_); }
  friend constexpr Length operator*(Length a, std::int64_t k) { return Length(a.units_ * k); }
  friend constexpr Length operator*(std::int64_t k, Length a) { return Length(a.units_ * k); }

  friend constexpr auto operator<=>(Length, Length) = default;
  friend constexpr bool operator==(Length, Length) = default;

 private:
  constexpr explicit Length(std::int64_t units) : units_(units) {}
  std::int64_t units_ = 0;
};

constexpr Length min(Length a, Length b) { return a < b ? a : b; }
constexpr Length max(Length a, Length b) { return a < b ? b : a; }

}  // namespace diamond
