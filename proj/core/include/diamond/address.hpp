#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diamond/length.hpp"

namespace diamond {

// Diamond replacement labels each parent edge (a, b) with six children 1..6:
//
//   1: a -> v1      2: v1 -> top      3: top -> v4
//   6: v4 -> b      4: v1 -> bottom   5: bottom -> v4
//
// Children are oriented from a towards b. The top branch {2,3} and the bottom
// branch {4,5} collapse onto the same middle half of the parent edge.
inline constexpr int kDigitCount = 6;

// Which quarter of the parent edge a child collapses onto: 1->0, 2,4->1, 3,5->2, 6->3.
constexpr int quarter_index(int digit) {
  constexpr std::array<int, kDigitCount + 1> kQuarter{-1, 0, 1, 2, 1, 2, 3};
  return kQuarter[static_cast<std::size_t>(digit)];
}
constexpr bool is_top_digit(int digit) { return digit == 2 || digit == 3; }
constexpr bool is_bottom_digit(int digit) { return digit == 4 || digit == 5; }
constexpr bool is_valid_digit(int digit) { return digit >= 1 && digit <= kDigitCount; }

/// A word over {1..6} naming one edge of X_n, n = word length. The empty
/// word is the unique edge of X_0.
class EdgeWord {
 public:
  EdgeWord() = default;
  explicit EdgeWord(std::vector<std::uint8_t> digits);

  static EdgeWord from_string(std::string_view text);

  // Inverse of index(): the index-th word of the given level in lexicographic order.
  static EdgeWord from_index(int level, std::uint64_t index);

  int level() const { return static_cast<int>(digits_.size()); }
  std::span<const std::uint8_t> digits() const { return digits_; }
  int operator[](std::size_t i) const { return digits_[i]; }

  // Lexicographic rank among the 6^level words of this level (base-6 reading).
  std::uint64_t index() const;

  EdgeWord child(int digit) const;
  EdgeWord prefix(int k) const;

  int top_count() const;     // digits in {2,3}
  int bottom_count() const;  // digits in {4,5}

  std::string to_string() const;

  friend bool operator==(const EdgeWord&, const EdgeWord&) = default;
  friend auto operator<=>(const EdgeWord&, const EdgeWord&) = default;

 private:
  std::vector<std::uint8_t> digits_;
};

// The six children of e in label order.
std::vector<EdgeWord> child_edges(const EdgeWord& e);

// First k digits: the edge of X_k containing the image of e under pi_{n,k}.
EdgeWord truncate(const EdgeWord& e, int k);

/// A point of X_n: an edge plus an arclength offset measured along the
/// edge's orientation. Offsets 0 and 4^-n are the edge's endpoints.
class PointAddress {
 public:
  PointAddress() = default;
  PointAddress(EdgeWord word, Length offset);

  static PointAddress start_of(EdgeWord word);
  static PointAddress end_of(EdgeWord word);
  static PointAddress midpoint_of(EdgeWord word);

  // "<word>@<num>/<den>", with "-" standing for the empty word.
  static PointAddress parse(std::string_view text);
  std::string to_string() const;

  const EdgeWord& word() const { return word_; }
  Length offset() const { return offset_; }
  int level() const { return word_.level(); }
  Length edge_length() const { return Length::edge(level()); }

  friend bool operator==(const PointAddress&, const PointAddress&) = default;

 private:
  EdgeWord word_;
  Length offset_;
};

/// Finite prefix of an element of {1..6}^N.
class CantorAddress {
 public:
  CantorAddress() = default;
  explicit CantorAddress(std::vector<std::uint8_t> digits);

  std::size_t length() const { return digits_.size(); }
  std::span<const std::uint8_t> digits() const { return digits_; }
  int operator[](std::size_t i) const { return digits_[i]; }

  CantorAddress prefix(std::size_t k) const;
  void push_back(int digit);

  friend bool operator==(const CantorAddress&, const CantorAddress&) = default;

 private:
  std::vector<std::uint8_t> digits_;
};

// Image of p under pi_{level(p),k}.
PointAddress project_point(const PointAddress& p, int k);

// pi_{inf,0} through level(p): offset of the level-0 image, exact.
Length chart_position(const PointAddress& p);
double chart_coordinate(const PointAddress& p);

// Edge-level stand-in for A(c): the edge named by the digits of c, with the
// midpoint as the distinguished point of that edge.
PointAddress point_from_cantor(const CantorAddress& c);

bool is_vertex_point(const PointAddress& p);

}  // namespace diamond
