#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mstd/finite_set.hpp"
#include "mstd/set_ops.hpp"

namespace mstd::search {

/// Opt-in leaf predicates. Never applied implicitly: "no MSTD found"
/// claims must not depend on the structural facts being verified.
enum class Filter { none, require_ap3, require_ap4, symmetric_only };

std::string_view filter_name(Filter filter);

struct SearchParams {
  int n = 6;                    // cardinality, >= 3
  std::int64_t diameter_max = 0;  // bounds max - min; enumeration fixes min = 0
  bool canonical_only = true;   // gap gcd 1 and gap vector lex <= its reversal
  Filter filter = Filter::none;
  int threads = 0;              // <= 0 picks hardware concurrency
};

/// Called for every visited complete set with its incremental
/// classification. Runs concurrently when threads > 1.
using NodeVisitor =
    std::function<void(std::span<const std::int64_t>, const Classification&)>;

struct SearchReport {
  std::string op = "enumerate";
  SearchParams params;
  std::uint64_t sets_enumerated = 0;
  std::vector<FiniteSet> mstd_found;  // margin > 0, sorted by gap vector
  std::map<std::int64_t, std::uint64_t> margin_histogram;
  std::int64_t max_x_seen = 0;
  std::vector<FiniteSet> inequality_violations;
  double elapsed_ms = 0.0;
};

/// Visits every gap vector (a1..a_{n-1}) with sum <= diameter_max exactly
/// once, classifying by incremental sum/difference counters.
SearchReport enumerate_sets(const SearchParams& params,
                            const NodeVisitor& visitor = {});

/// n in 3..7; any set in mstd_found falsifies a known impossibility.
SearchReport verify_no_mstd(int n, std::int64_t diameter, int threads = 0);

/// Lists all canonical MSTD sets of the given cardinality and diameter.
SearchReport find_mstd(int n, std::int64_t diameter, int threads = 0);

/// Checks, for every enumerated set (n in {6,7}), the collision-excess
/// sum bounds 2|A+A| <= n(n+1) - x, with the sharpened n=6 form
/// 2|A+A| <= 40 - (x-1) for sets containing a 3-term AP. Violating sets
/// are reported, not asserted away.
SearchReport check_collision_bounds(int n, std::int64_t diameter,
                                    int threads = 0);

/// Every 6-set with diameter <= D containing a 4-term AP must have
/// margin <= 0; violators are reported.
SearchReport check_four_ap(std::int64_t diameter, int threads = 0);

/// Adjoins k_added elements from {-R .. ap_len-1+R} to the unit AP
/// {0..ap_len-1} and classifies every union (reported shifted to min 0).
SearchReport verify_ap_plus(std::int64_t ap_len, int k_added, std::int64_t range,
                            int threads = 0);

}  // namespace mstd::search
