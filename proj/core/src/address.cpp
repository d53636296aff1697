#include "diamond/address.hpp"

#include <algorithm>

#include "diamond/errors.hpp"

namespace diamond {
namespace {

// 6^24 still fits in 64 bits, so every word up to the unit level has an index.
constexpr int kMaxIndexedLevel = kUnitLevel;

void require_digits(std::span<const std::uint8_t> digits) {
  for (auto d : digits) {
    if (!is_valid_digit(d)) {
      throw InvalidParameterError("digit " + std::to_string(int{d}) + " outside {1..6}");
    }
  }
}

}  // namespace

EdgeWord::EdgeWord(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
  require_digits(digits_);
}

EdgeWord EdgeWord::from_string(std::string_view text) {
  if (text == "-") return EdgeWord();
  std::vector<std::uint8_t> digits;
  digits.reserve(text.size());
  for (char c : text) {
    if (c < '1' || c > '6') {
      throw InvalidParameterError("edge word '" + std::string(text) + "' has a symbol outside 1..6");
    }
    digits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return EdgeWord(std::move(digits));
}

EdgeWord EdgeWord::from_index(int level, std::uint64_t index) {
  if (level < 0 || level > kMaxIndexedLevel) {
    throw InvalidLevelError("edge index level " + std::to_string(level) + " out of range");
  }
  EdgeWord word;
  word.digits_.resize(static_cast<std::size_t>(level));
  for (int i = level - 1; i >= 0; --i) {
    word.digits_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(index % 6 + 1);
    index /= 6;
  }
  if (index != 0) throw InvalidParameterError("edge index exceeds 6^level");
  return word;
}

std::uint64_t EdgeWord::index() const {
  if (level() > kMaxIndexedLevel) throw InvalidLevelError("edge word too deep to index");
  std::uint64_t index = 0;
  for (auto d : digits_) index = index * 6 + (d - 1u);
  return index;
}

EdgeWord EdgeWord::child(int digit) const {
  if (!is_valid_digit(digit)) throw InvalidParameterError("child digit outside {1..6}");
  EdgeWord result = *this;
  result.digits_.push_back(static_cast<std::uint8_t>(digit));
  return result;
}

EdgeWord EdgeWord::prefix(int k) const {
  if (k < 0 || k > level()) {
    throw InvalidLevelError("cannot truncate a level-" + std::to_string(level()) + " word to level " +
                            std::to_string(k));
  }
  EdgeWord result;
  result.digits_.assign(digits_.begin(), digits_.begin() + k);
  return result;
}

int EdgeWord::top_count() const {
  return static_cast<int>(std::count_if(digits_.begin(), digits_.end(), [](auto d) { return is_top_digit(d); }));
}

int EdgeWord::bottom_count() const {
  return static_cast<int>(
      std::count_if(digits_.begin(), digits_.end(), [](auto d) { return is_bottom_digit(d); }));
}

std::string EdgeWord::to_string() const {
  std::string out;
  out.reserve(digits_.size());
  for (auto d : digits_) out.push_back(static_cast<char>('0' + d));
  return out;
}

std::vector<EdgeWord> child_edges(const EdgeWord& e) {
  std::vector<EdgeWord> children;
  children.reserve(kDigitCount);
  for (int d = 1; d <= kDigitCount; ++d) children.push_back(e.child(d));
  return children;
}

EdgeWord truncate(const EdgeWord& e, int k) { return e.prefix(k); }

PointAddress::PointAddress(EdgeWord word, Length offset) : word_(std::move(word)), offset_(offset) {
  if (word_.level() > kMaxPointLevel) {
    throw InvalidLevelError("point addresses are limited to level " + std::to_string(kMaxPointLevel));
  }
  if (offset_ < Length() || offset_ > Length::edge(word_.level())) {
    throw InvalidParameterError("offset " + offset_.to_fraction_string() + " outside edge '" +
                                word_.to_string() + "'");
  }
}

PointAddress PointAddress::start_of(EdgeWord word) { return PointAddress(std::move(word), Length()); }

PointAddress PointAddress::end_of(EdgeWord word) {
  const auto len = Length::edge(word.level());
  return PointAddress(std::move(word), len);
}

PointAddress PointAddress::midpoint_of(EdgeWord word) {
  if (word.level() > kMaxPointLevel) {
    throw InvalidLevelError("point addresses are limited to level " + std::to_string(kMaxPointLevel));
  }
  const auto half = Length::edge(word.level()).scaled(1, 2);
  return PointAddress(std::move(word), half);
}

PointAddress PointAddress::parse(std::string_view text) {
  const auto at = text.find('@');
  if (at == std::string_view::npos) throw InvalidParameterError("point address needs '<word>@<offset>'");
  return PointAddress(EdgeWord::from_string(text.substr(0, at)), Length::parse(text.substr(at + 1)));
}

std::string PointAddress::to_string() const {
  const auto w = word_.to_string();
  return (w.empty() ? std::string("-") : w) + "@" + offset_.to_fraction_string();
}

CantorAddress::CantorAddress(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
  require_digits(digits_);
}

CantorAddress CantorAddress::prefix(std::size_t k) const {
  if (k > digits_.size()) throw InvalidLevelError("prefix longer than the Cantor address");
  return CantorAddress(std::vector<std::uint8_t>(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(k)));
}

void CantorAddress::push_back(int digit) {
  if (!is_valid_digit(digit)) throw InvalidParameterError("digit outside {1..6}");
  digits_.push_back(static_cast<std::uint8_t>(digit));
}

PointAddress project_point(const PointAddress& p, int k) {
  if (k < 0 || k > p.level()) {
    throw InvalidLevelError("cannot project a level-" + std::to_string(p.level()) + " point to level " +
                            std::to_string(k));
  }
  const auto digits = p.word().digits();
  Length offset = p.offset();
  for (int m = p.level(); m > k; --m) {
    offset += Length::edge(m) * quarter_index(digits[static_cast<std::size_t>(m - 1)]);
  }
  return PointAddress(p.word().prefix(k), offset);
}

Length chart_position(const PointAddress& p) { return project_point(p, 0).offset(); }

double chart_coordinate(const PointAddress& p) { return chart_position(p).to_double(); }

PointAddress point_from_cantor(const CantorAddress& c) {
  return PointAddress::midpoint_of(EdgeWord(std::vector<std::uint8_t>(c.digits().begin(), c.digits().end())));
}

bool is_vertex_point(const PointAddress& p) {
  return p.offset() == Length() || p.offset() == p.edge_length();
}

}  // namespace diamond
