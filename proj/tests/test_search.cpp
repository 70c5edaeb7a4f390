#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "mstd/json_io.hpp"
#include "mstd/search.hpp"
#include "mstd/set_ops.hpp"
#include "oracle.hpp"

using mstd::FiniteSet;
namespace search = mstd::search;

namespace {

FiniteSet set_of(std::vector<std::int64_t> v) { return FiniteSet(std::move(v)); }

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t c = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    c = c * static_cast<std::uint64_t>(n - i + 1) / static_cast<std::uint64_t>(i);
  }
  return c;
}

mstd::Json payload(const search::SearchReport& report) {
  mstd::Json j = mstd::json_of(report);
  j.erase("elapsed_ms");
  return j;
}

// All 8-element subsets of {0..max_value} that are sum-dominant per the
// naive oracle, reduced to canonical affine representatives.
std::set<std::vector<std::int64_t>> brute_force_canonical_mstd8(
    std::int64_t max_value) {
  std::set<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> subset(8);
  std::vector<int> idx = {0, 1, 2, 3, 4, 5, 6, 7};
  const int n = static_cast<int>(max_value) + 1;
  while (true) {
    for (int i = 0; i < 8; ++i) subset[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i)];
    if (oracle::sum_dominant(subset)) {
      FiniteSet canon = mstd::normalize_affine(FiniteSet(subset));
      out.emplace(canon.elements().begin(), canon.elements().end());
    }
    int pos = 7;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - 8 + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < 8; ++i) {
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("enumeration visits exactly the gap vectors in range") {
  std::vector<std::vector<std::int64_t>> seen;
  search::SearchParams params{3, 3, /*canonical_only=*/false,
                              search::Filter::none, 1};
  search::SearchReport r = search::enumerate_sets(
      params, [&](std::span<const std::int64_t> elems, const mstd::Classification&) {
        seen.emplace_back(elems.begin(), elems.end());
      });
  CHECK(r.sets_enumerated == 3);
  REQUIRE(seen.size() == 3);
  CHECK(seen[0] == std::vector<std::int64_t>{0, 1, 2});
  CHECK(seen[1] == std::vector<std::int64_t>{0, 1, 3});
  CHECK(seen[2] == std::vector<std::int64_t>{0, 2, 3});

  params.canonical_only = true;
  seen.clear();
  r = search::enumerate_sets(
      params, [&](std::span<const std::int64_t> elems, const mstd::Classification&) {
        seen.emplace_back(elems.begin(), elems.end());
      });
  CHECK(r.sets_enumerated == 2);  // (2,1) is the reversal of (1,2)
  REQUIRE(seen.size() == 2);
  CHECK(seen[0] == std::vector<std::int64_t>{0, 1, 2});
  CHECK(seen[1] == std::vector<std::int64_t>{0, 1, 3});
}

TEST_CASE("enumeration counts match the closed form") {
  for (int n = 3; n <= 6; ++n) {
    for (std::int64_t d = n - 1; d <= 12; ++d) {
      search::SearchParams params{n, d, /*canonical_only=*/false,
                                  search::Filter::none, 1};
      search::SearchReport r = search::enumerate_sets(params);
      CHECK(r.sets_enumerated == binomial(d, n - 1));
      std::uint64_t histogram_total = 0;
      for (const auto& [margin, count] : r.margin_histogram) {
        histogram_total += count;
      }
      CHECK(histogram_total == r.sets_enumerated);
    }
  }
  // the worked example: 252 six-element gap vectors within diameter 10
  search::SearchParams params{6, 10, false, search::Filter::none, 1};
  CHECK(search::enumerate_sets(params).sets_enumerated == 252);
}

TEST_CASE("incremental counters agree with from-scratch classification") {
  std::uint64_t checked = 0;
  search::SearchParams params{6, 20, /*canonical_only=*/false,
                              search::Filter::none, 1};
  search::enumerate_sets(
      params, [&](std::span<const std::int64_t> elems, const mstd::Classification& c) {
        FiniteSet a{std::vector<std::int64_t>(elems.begin(), elems.end())};
        REQUIRE(mstd::classify(a) == c);
        ++checked;
      });
  CHECK(checked == binomial(20, 5));

  // sparser sampling at a larger size
  std::uint64_t visit = 0;
  params = {7, 16, false, search::Filter::none, 1};
  search::enumerate_sets(
      params, [&](std::span<const std::int64_t> elems, const mstd::Classification& c) {
        if (++visit % 7 != 0) return;
        FiniteSet a{std::vector<std::int64_t>(elems.begin(), elems.end())};
        REQUIRE(mstd::classify(a) == c);
      });
}

TEST_CASE("leaf filters select exactly the matching sets") {
  search::SearchParams params{4, 7, /*canonical_only=*/false,
                              search::Filter::require_ap3, 1};
  std::uint64_t with_ap3 = 0;
  search::enumerate_sets(
      params, [&](std::span<const std::int64_t> elems, const mstd::Classification&) {
        FiniteSet a{std::vector<std::int64_t>(elems.begin(), elems.end())};
        REQUIRE(mstd::contains_ap(a, 3));
        ++with_ap3;
      });
  // complement check against an unfiltered run
  params.filter = search::Filter::none;
  std::uint64_t ap3_recount = 0;
  search::SearchReport all = search::enumerate_sets(
      params, [&](std::span<const std::int64_t> elems, const mstd::Classification&) {
        FiniteSet a{std::vector<std::int64_t>(elems.begin(), elems.end())};
        if (mstd::contains_ap(a, 3)) ++ap3_recount;
      });
  CHECK(with_ap3 == ap3_recount);
  CHECK(with_ap3 < all.sets_enumerated);

  params.filter = search::Filter::symmetric_only;
  search::SearchReport symmetric = search::enumerate_sets(
      params, [&](std::span<const std::int64_t> elems, const mstd::Classification& c) {
        FiniteSet a{std::vector<std::int64_t>(elems.begin(), elems.end())};
        REQUIRE(mstd::symmetry_center(a).has_value());
        REQUIRE(c.margin == 0);
      });
  CHECK(symmetric.sets_enumerated > 0);
}

TEST_CASE("small-cardinality searches find no sum-dominant set") {
  CHECK(search::verify_no_mstd(4, 20).mstd_found.empty());
  CHECK(search::verify_no_mstd(5, 16).mstd_found.empty());
  CHECK(search::verify_no_mstd(6, 25).mstd_found.empty());
  CHECK_THROWS_AS(search::verify_no_mstd(8, 14), std::invalid_argument);
  CHECK_THROWS_AS(search::verify_no_mstd(2, 10), std::invalid_argument);
}

TEST_CASE("the minimal 8-element set is rediscovered at diameter 14") {
  search::SearchReport found = search::find_mstd(8, 14);
  REQUIRE(found.mstd_found.size() == 1);
  CHECK(found.mstd_found[0] == set_of({0, 2, 3, 4, 7, 11, 12, 14}));
  // every reported set is genuinely sum-dominant per the naive oracle
  for (const FiniteSet& s : found.mstd_found) {
    std::vector<std::int64_t> v(s.elements().begin(), s.elements().end());
    CHECK(oracle::sum_dominant(v));
  }

  CHECK(search::find_mstd(8, 13).mstd_found.empty());

  // cross-check both diameters against an independent subset sweep
  const auto brute14 = brute_force_canonical_mstd8(14);
  std::set<std::vector<std::int64_t>> engine14;
  for (const FiniteSet& s : found.mstd_found) {
    engine14.emplace(s.elements().begin(), s.elements().end());
  }
  CHECK(engine14 == brute14);
  CHECK(brute_force_canonical_mstd8(13).empty());
}

TEST_CASE("canonical output expands to the full min-0 list") {
  const std::int64_t diameter = 14;
  search::SearchReport canonical = search::find_mstd(8, diameter);
  std::set<std::vector<std::int64_t>> expanded;
  for (const FiniteSet& s : canonical.mstd_found) {
    for (std::int64_t u = 1; u * s.diameter() <= diameter; ++u) {
      FiniteSet scaled = mstd::scale(s, u);
      expanded.emplace(scaled.elements().begin(), scaled.elements().end());
      FiniteSet mirrored = mstd::reflect(scaled);
      expanded.emplace(mirrored.elements().begin(), mirrored.elements().end());
    }
  }
  search::SearchParams params{8, diameter, /*canonical_only=*/false,
                              search::Filter::none, 0};
  search::SearchReport all = search::enumerate_sets(params);
  std::set<std::vector<std::int64_t>> full;
  for (const FiniteSet& s : all.mstd_found) {
    full.emplace(s.elements().begin(), s.elements().end());
  }
  CHECK(expanded == full);
  CHECK(full.size() == 2);
}

TEST_CASE("found sets for 9 elements normalize back to sum-dominant sets") {
  search::SearchReport r = search::find_mstd(9, 16);
  CHECK(!r.mstd_found.empty());
  for (const FiniteSet& s : r.mstd_found) {
    CHECK(mstd::classify(mstd::normalize_affine(s)).margin > 0);
    std::vector<std::int64_t> v(s.elements().begin(), s.elements().end());
    CHECK(oracle::sum_dominant(v));
  }
}

TEST_CASE("collision-excess bounds: worked examples") {
  // the full AP is far inside the bound
  mstd::Classification ap = mstd::classify(set_of({0, 1, 2, 3, 4, 5}));
  mstd::DiffStats ap_stats = mstd::diff_stats(set_of({0, 1, 2, 3, 4, 5}));
  CHECK(ap.sum_card == 11);
  CHECK(ap_stats.collision_excess == 10);
  CHECK(2 * ap.sum_card <= 42 - ap_stats.collision_excess);

  // a perfect difference set is tight
  mstd::Classification sidon = mstd::classify(set_of({0, 1, 3, 7, 12, 20}));
  mstd::DiffStats sidon_stats = mstd::diff_stats(set_of({0, 1, 3, 7, 12, 20}));
  CHECK(sidon_stats.collision_excess == 0);
  CHECK(sidon.sum_card == 21);
  CHECK(2 * sidon.sum_card == 42 - sidon_stats.collision_excess);
}

TEST_CASE("collision-excess bounds fail for symmetric collapse sets") {
  // The unconditional form of the bound is false: three coincident sums
  // (0+10 = 1+9 = 3+7) let six difference collisions kill only two sums.
  search::SearchReport r = search::check_collision_bounds(6, 12);
  CHECK(!r.inequality_violations.empty());
  bool has_witness = false;
  for (const FiniteSet& s : r.inequality_violations) {
    if (s == set_of({0, 1, 3, 7, 9, 10})) has_witness = true;
    // re-verify each reported violation with the oracle
    std::vector<std::int64_t> v(s.elements().begin(), s.elements().end());
    const auto c = oracle::classify(v);
    const std::int64_t n = static_cast<std::int64_t>(v.size());
    const std::int64_t x = n * (n - 1) / 2 - oracle::distinct_pos(v);
    const bool base_violated = 2 * c.sum_card > n * (n + 1) - x;
    const bool ap3_violated =
        mstd::contains_ap(s, 3) && 2 * c.sum_card > 40 - (x - 1);
    CHECK((base_violated || ap3_violated));
    // none of them is sum-dominant, so the conclusions they supported stand
    CHECK(c.margin <= 0);
  }
  CHECK(has_witness);
  CHECK(r.max_x_seen == 10);  // the AP floor d+ = n-1 gives x = 15 - 5

  search::SearchReport r7 = search::check_collision_bounds(7, 14);
  std::set<std::vector<std::int64_t>> got;
  for (const FiniteSet& s : r7.inequality_violations) {
    got.emplace(s.elements().begin(), s.elements().end());
  }
  const std::set<std::vector<std::int64_t>> expected = {
      {0, 1, 3, 7, 11, 13, 14}, {0, 2, 3, 7, 11, 12, 14}};
  CHECK(got == expected);

  CHECK_THROWS_AS(search::check_collision_bounds(5, 10), std::invalid_argument);
}

TEST_CASE("every 6-set with a 4-term AP has margin <= 0") {
  search::SearchReport r = search::check_four_ap(16);
  CHECK(r.mstd_found.empty());
  CHECK(r.sets_enumerated > 0);
  CHECK(mstd::classify(set_of({0, 1, 2, 3, 5, 9})).margin <= 0);
  CHECK_FALSE(mstd::contains_ap(set_of({0, 1, 3, 7, 12, 20}), 4));
}

TEST_CASE("adjoining elements to an AP") {
  search::SearchReport two = search::verify_ap_plus(6, 2, 8);
  CHECK(two.mstd_found.empty());
  CHECK(two.sets_enumerated == binomial(16, 2));

  search::SearchReport one = search::verify_ap_plus(8, 1, 10);
  CHECK(one.mstd_found.empty());
  CHECK(one.sets_enumerated == 20);

  search::SearchReport four = search::verify_ap_plus(11, 4, 13);
  CHECK(four.sets_enumerated == binomial(26, 4));
  CHECK(!four.mstd_found.empty());
  bool has_example = false;
  for (const FiniteSet& s : four.mstd_found) {
    std::vector<std::int64_t> v(s.elements().begin(), s.elements().end());
    CHECK(oracle::sum_dominant(v));
    if (s == set_of({0, 1, 3, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 24})) {
      has_example = true;
    }
  }
  CHECK(has_example);

  CHECK_THROWS_AS(search::verify_ap_plus(2, 1, 5), std::invalid_argument);
  CHECK_THROWS_AS(search::verify_ap_plus(8, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(search::verify_ap_plus(8, 1, 0), std::invalid_argument);
}

TEST_CASE("parallel runs produce identical reports") {
  const mstd::Json single = payload(search::verify_no_mstd(6, 25, 1));
  CHECK(payload(search::verify_no_mstd(6, 25, 2)) == single);
  CHECK(payload(search::verify_no_mstd(6, 25, 5)) == single);

  const mstd::Json find1 = payload(search::find_mstd(8, 14, 1));
  CHECK(payload(search::find_mstd(8, 14, 4)) == find1);

  const mstd::Json lemmas1 = payload(search::check_collision_bounds(6, 18, 1));
  CHECK(payload(search::check_collision_bounds(6, 18, 3)) == lemmas1);
  CHECK(single.dump() == payload(search::verify_no_mstd(6, 25, 8)).dump());
}
