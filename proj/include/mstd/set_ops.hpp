#pragma once

#include <optional>
#include <string_view>

#include "mstd/finite_set.hpp"

namespace mstd {

enum class Verdict { sum_dominant, balanced, difference_dominant };

std::string_view verdict_name(Verdict verdict);

/// Cardinalities of A+A and A-A, their margin, and the three-way verdict.
struct Classification {
  std::int64_t sum_card = 0;
  std::int64_t diff_card = 0;
  std::int64_t margin = 0;  // sum_card - diff_card
  Verdict verdict = Verdict::balanced;

  friend bool operator==(const Classification&, const Classification&) = default;
};

/// Distinct positive differences d+ and the collision excess
/// x = C(n,2) - d+, so that |A-A| = n(n-1)+1-2x holds exactly.
struct DiffStats {
  std::int64_t n = 0;
  std::int64_t distinct_pos = 0;
  std::int64_t collision_excess = 0;

  friend bool operator==(const DiffStats&, const DiffStats&) = default;
};

/// All pairwise sums, doubles included.
FiniteSet sumset(const FiniteSet& set);

/// The full signed difference set, shifted by +diameter into non-negative
/// coordinates. Cardinality is always 2*d+ + 1.
FiniteSet diffset(const FiniteSet& set);

Classification classify(const FiniteSet& set);

DiffStats diff_stats(const FiniteSet& set);

/// Canonical representative of the affine class: min 0, gap gcd 1, and the
/// lexicographically smaller of the gap vector and its reversal.
/// Requires |A| >= 2.
FiniteSet normalize_affine(const FiniteSet& set);

/// The center a with a - A = A, when one exists. Only a = min+max can work.
std::optional<std::int64_t> symmetry_center(const FiniteSet& set);

/// True iff some `length` elements of the set form an arithmetic
/// progression (as a subset). Requires length >= 3.
bool contains_ap(const FiniteSet& set, int length);

/// True for singletons, pairs, and sets whose gaps are all equal.
bool is_arithmetic_progression(const FiniteSet& set);

FiniteSet translate(const FiniteSet& set, std::int64_t shift);
FiniteSet scale(const FiniteSet& set, std::int64_t factor);
FiniteSet reflect(const FiniteSet& set);  // max - A

}  // namespace mstd
