#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mstd {

/// Thrown for malformed set literals; the message names the offending
/// token and its byte offset in the input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A nonempty, strictly increasing sequence of non-negative integers.
/// Every element is at most 2^62 - 1 so any pairwise sum fits in int64.
/// Immutable after construction; safe to share across threads.
class FiniteSet {
 public:
  static constexpr std::int64_t kMaxElement = (std::int64_t{1} << 62) - 1;

  /// `elements` must already be strictly increasing.
  explicit FiniteSet(std::vector<std::int64_t> elements);

  /// Sorts and deduplicates `values`; sets *had_duplicates when given.
  static FiniteSet from_values(std::vector<std::int64_t> values,
                               bool* had_duplicates = nullptr);

  std::span<const std::int64_t> elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  std::int64_t min() const { return elements_.front(); }
  std::int64_t max() const { return elements_.back(); }
  std::int64_t diameter() const { return max() - min(); }
  bool contains(std::int64_t value) const;

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;
  friend auto operator<=>(const FiniteSet& a, const FiniteSet& b) {
    return a.elements_ <=> b.elements_;
  }

 private:
  std::vector<std::int64_t> elements_;
};

/// Gap representation of a set: minimum element plus the sequence of
/// consecutive differences. Rebuilding via to_set() is lossless.
struct GapForm {
  std::int64_t base = 0;
  std::vector<std::int64_t> gaps;

  FiniteSet to_set() const;

  friend bool operator==(const GapForm&, const GapForm&) = default;
};

GapForm to_spohn(const FiniteSet& set);

/// Parses a roster literal "{n1,n2,...}". Duplicates are accepted and
/// dropped; *duplicate_warning is set when that happens.
FiniteSet parse_roster(std::string_view text, bool* duplicate_warning = nullptr);

/// Parses a gap literal "(base|g1,g2,...)"; "(b|)" is a singleton.
FiniteSet parse_spohn(std::string_view text);

/// Accepts either literal form, dispatching on the leading brace.
FiniteSet parse_set(std::string_view text, bool* duplicate_warning = nullptr);

std::string format_roster(const FiniteSet& set);
std::string format_spohn(const GapForm& form);
std::string format_spohn(const FiniteSet& set);

}  // namespace mstd
