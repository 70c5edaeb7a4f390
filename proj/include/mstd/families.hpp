#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mstd/finite_set.hpp"
#include "mstd/set_ops.hpp"

namespace mstd::families {

inline constexpr int kFamilyCount = 15;

/// Symbolic gap template for one of the fifteen 6-element families:
/// each gap is a linear combination of the parameters d, a, b.
struct FamilySpec {
  struct GapTerm {
    int d = 0, a = 0, b = 0;
  };
  int id = 0;
  std::array<GapTerm, 5> gap_template{};
  bool constrained = false;  // family 1 requires a + b = d
  bool uses_d = false, uses_a = false, uses_b = false;
  std::string_view display;
};

/// id must be in 1..15.
const FamilySpec& family_spec(int id);

/// Instantiates the family template at (d, a, b). Unused parameters are
/// ignored; used parameters must be >= 1; family 1 requires a + b = d.
FiniteSet build_family(int id, std::int64_t d, std::int64_t a, std::int64_t b);

struct FamilyReport {
  int id = 0;
  std::string grid;
  std::uint64_t instances_checked = 0;
  std::vector<std::array<std::int64_t, 3>> violations;  // (d,a,b) sum-dominant
  std::int64_t max_margin_seen = 0;
};

/// Classifies every instance with used parameters in 1..pmax (subject to
/// the family constraint) and reports any sum-dominant one.
FamilyReport verify_family(int id, std::int64_t pmax);

/// {0,2} with an AP 3,7,...,4k-1 and a tail {4k,4k+2}; cardinality k+4.
/// Symmetric about 4k+2 for every k, hence always balanced.
FiniteSet build_nathanson_star(std::int64_t k);

/// Union of the AP {start, start+step, ...} (ap_len terms) with `extras`.
/// Fails listing the colliding elements if extras meet the AP.
FiniteSet build_ap_plus(std::int64_t ap_start, std::int64_t ap_step,
                        std::int64_t ap_len,
                        const std::vector<std::int64_t>& extras);

}  // namespace mstd::families
