#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "mstd/finite_set.hpp"
#include "mstd/set_ops.hpp"
#include "oracle.hpp"

using mstd::FiniteSet;

namespace {

FiniteSet set_of(std::vector<std::int64_t> v) { return FiniteSet(std::move(v)); }

std::vector<std::int64_t> subset_of_mask(std::uint32_t mask) {
  std::vector<std::int64_t> v;
  for (int i = 0; i < 32; ++i) {
    if (mask >> i & 1) v.push_back(i);
  }
  return v;
}

}  // namespace

TEST_CASE("roster parsing") {
  bool dup = false;
  CHECK(mstd::parse_roster("{3,2,15,10,9}") == set_of({2, 3, 9, 10, 15}));
  CHECK(mstd::parse_roster("{0}") == set_of({0}));
  CHECK(mstd::parse_roster("{5,5,5}", &dup) == set_of({5}));
  CHECK(dup);
  CHECK(mstd::parse_roster("{ 1 ,\t2 , 4 }", &dup) == set_of({1, 2, 4}));
  CHECK_FALSE(dup);

  CHECK_THROWS_AS(mstd::parse_roster("{}"), mstd::ParseError);
  CHECK_THROWS_AS(mstd::parse_roster("{1,-2}"), mstd::ParseError);
  CHECK_THROWS_AS(mstd::parse_roster("{1,,2}"), mstd::ParseError);
  CHECK_THROWS_AS(mstd::parse_roster("{1,2"), mstd::ParseError);
  CHECK_THROWS_AS(mstd::parse_roster("{1,2} junk"), mstd::ParseError);
  CHECK_THROWS_AS(mstd::parse_roster("1,2"), mstd::ParseError);
  CHECK_THROWS_WITH_AS(mstd::parse_roster("{1, -7}"),
                       doctest::Contains("position"), mstd::ParseError);
}

TEST_CASE("spohn parsing and printing") {
  CHECK(mstd::parse_spohn("(2|1,6,1,5)") == set_of({2, 3, 9, 10, 15}));
  CHECK(mstd::parse_spohn("(7|)") == set_of({7}));
  CHECK(mstd::parse_spohn("(0|2,1,1,3,7,1,2)") ==
        set_of({0, 2, 3, 4, 7, 14, 15, 17}));

  CHECK_THROWS_WITH_AS(mstd::parse_spohn("(1|0)"),
                       doctest::Contains("gaps must be positive"),
                       mstd::ParseError);
  CHECK_THROWS_AS(mstd::parse_spohn("(1|-2)"), mstd::ParseError);
  CHECK_THROWS_AS(mstd::parse_spohn("(-1|2)"), mstd::ParseError);
  CHECK_THROWS_AS(mstd::parse_spohn("(1|2,)"), mstd::ParseError);
  CHECK_THROWS_AS(mstd::parse_spohn("(1|2"), mstd::ParseError);

  CHECK(mstd::format_spohn(set_of({2, 3, 9, 10, 15})) == "(2|1,6,1,5)");
  CHECK(mstd::format_spohn(set_of({0})) == "(0|)");
  CHECK(mstd::format_roster(set_of({0, 2, 3})) == "{0,2,3}");

  mstd::GapForm g = mstd::to_spohn(
      set_of({103, 127, 151, 199, 211, 223, 283, 307, 331}));
  CHECK(g.base == 103);
  CHECK(g.gaps == std::vector<std::int64_t>{24, 24, 48, 12, 12, 60, 24, 24});
}

TEST_CASE("spohn round trip on random sets") {
  std::mt19937_64 rng(20250811);
  std::uniform_int_distribution<int> size_dist(1, 12);
  std::uniform_int_distribution<std::int64_t> gap_dist(1, 5000);
  std::uniform_int_distribution<std::int64_t> base_dist(0, 100000);
  for (int iter = 0; iter < 500; ++iter) {
    std::vector<std::int64_t> v{base_dist(rng)};
    const int n = size_dist(rng);
    while (static_cast<int>(v.size()) < n) v.push_back(v.back() + gap_dist(rng));
    FiniteSet a = set_of(v);
    CHECK(mstd::parse_spohn(mstd::format_spohn(a)) == a);
    CHECK(mstd::parse_set(mstd::format_roster(a)) == a);
    CHECK(mstd::to_spohn(a).to_set() == a);
  }
}

TEST_CASE("sumset and diffset basics") {
  CHECK(mstd::sumset(set_of({0, 1, 2, 4})) == set_of({0, 1, 2, 3, 4, 5, 6, 8}));
  CHECK(mstd::sumset(set_of({0})) == set_of({0}));
  CHECK(mstd::sumset(set_of({3, 5, 7, 9, 11})) ==
        set_of({6, 8, 10, 12, 14, 16, 18, 20, 22}));

  // signed difference sets, shifted by +diameter
  CHECK(mstd::diffset(set_of({0, 1, 2, 4})) ==
        set_of({0, 1, 2, 3, 4, 5, 6, 7, 8}));
  CHECK(mstd::diffset(set_of({7})) == set_of({0}));
  CHECK(mstd::diffset(set_of({0, 1, 3})) == set_of({0, 1, 2, 3, 4, 5, 6}));
  CHECK(mstd::diffset(set_of({0, 1, 3})).size() == 7);
}

TEST_CASE("classification of the named sets") {
  mstd::Classification c = mstd::classify(set_of({0, 1, 2, 4}));
  CHECK(c.sum_card == 8);
  CHECK(c.diff_card == 9);
  CHECK(c.margin == -1);
  CHECK(c.verdict == mstd::Verdict::difference_dominant);

  c = mstd::classify(set_of({3, 5, 7, 9, 11}));
  CHECK(c.margin == 0);
  CHECK(c.verdict == mstd::Verdict::balanced);

  c = mstd::classify(set_of({0, 2, 3, 4, 7, 11, 12, 14}));
  CHECK(c.sum_card == 26);
  CHECK(c.diff_card == 25);
  CHECK(c.margin == 1);
  CHECK(c.verdict == mstd::Verdict::sum_dominant);
}

TEST_CASE("difference statistics") {
  mstd::DiffStats s = mstd::diff_stats(set_of({0, 1, 2, 3, 4, 5}));
  CHECK(s.distinct_pos == 5);
  CHECK(s.collision_excess == 10);

  s = mstd::diff_stats(set_of({0, 1, 3}));
  CHECK(s.distinct_pos == 3);
  CHECK(s.collision_excess == 0);

  s = mstd::diff_stats(set_of({0, 2, 3, 4, 7, 11, 12, 14}));
  CHECK(s.distinct_pos == 12);
  CHECK(s.collision_excess == 16);
  CHECK(mstd::classify(set_of({0, 2, 3, 4, 7, 11, 12, 14})).diff_card ==
        2 * s.distinct_pos + 1);
}

TEST_CASE("affine normalization") {
  CHECK(mstd::normalize_affine(
            set_of({103, 127, 151, 199, 211, 223, 283, 307, 331})) ==
        set_of({0, 2, 4, 8, 9, 10, 15, 17, 19}));
  CHECK(mstd::normalize_affine(set_of({0, 1, 2})) == set_of({0, 1, 2}));
  CHECK(mstd::normalize_affine(set_of({10, 30, 50})) == set_of({0, 1, 2}));
  CHECK_THROWS_AS(mstd::normalize_affine(set_of({7})), std::invalid_argument);
}

TEST_CASE("symmetry detection") {
  CHECK(mstd::symmetry_center(set_of({3, 5, 7, 9, 11})) == 14);
  CHECK(mstd::symmetry_center(set_of({0, 1, 3, 4})) == 4);
  CHECK_FALSE(mstd::symmetry_center(set_of({0, 1, 2, 4})).has_value());
  CHECK(mstd::symmetry_center(set_of({5})) == 10);
}

TEST_CASE("arithmetic progression detection") {
  CHECK(mstd::contains_ap(set_of({0, 2, 3, 4, 7}), 3));
  CHECK_FALSE(mstd::contains_ap(set_of({0, 1, 3, 7}), 3));
  CHECK(mstd::contains_ap(set_of({0, 2, 3, 4, 6, 8}), 4));
  CHECK(mstd::contains_ap(set_of({1, 5, 9, 13, 17}), 5));
  CHECK_FALSE(mstd::contains_ap(set_of({1, 5, 9, 13, 17}), 6));
  // 0,10,20 as a non-consecutive subset
  CHECK(mstd::contains_ap(set_of({0, 3, 7, 10, 20}), 3));
  CHECK_THROWS_AS(mstd::contains_ap(set_of({0, 1, 2}), 2),
                  std::invalid_argument);
}

TEST_CASE("bit-vector paths match the naive oracle exhaustively") {
  // all nonempty subsets of {0..14}
  for (std::uint32_t mask = 1; mask < (1u << 15); ++mask) {
    auto v = subset_of_mask(mask);
    FiniteSet a = set_of(v);
    const auto expect = oracle::classify(v);
    const auto got = mstd::classify(a);
    REQUIRE(got.sum_card == expect.sum_card);
    REQUIRE(got.diff_card == expect.diff_card);
    REQUIRE(got.diff_card == 2 * mstd::diff_stats(a).distinct_pos + 1);

    // bounds: 2n-1 <= |A+A| <= n(n+1)/2 and 2n-1 <= |A-A| <= n(n-1)+1
    const std::int64_t n = static_cast<std::int64_t>(a.size());
    REQUIRE(got.sum_card >= 2 * n - 1);
    REQUIRE(got.sum_card <= n * (n + 1) / 2);
    REQUIRE(got.diff_card >= 2 * n - 1);
    REQUIRE(got.diff_card <= n * (n - 1) + 1);

    // materialized sets agree too (smaller masks keep the oracle cheap)
    if (mask < (1u << 11)) {
      const auto s = oracle::sumset(v);
      const auto d = oracle::diffset(v);
      const FiniteSet sum = mstd::sumset(a);
      REQUIRE(sum.size() == s.size());
      REQUIRE(std::equal(s.begin(), s.end(), sum.elements().begin()));
      const FiniteSet diff = mstd::diffset(a);
      REQUIRE(diff.size() == d.size());
      std::size_t i = 0;
      for (std::int64_t value : d) {
        REQUIRE(diff.elements()[i++] == value + a.diameter());
      }
    }
  }
}

TEST_CASE("bit-vector paths match the naive oracle on random large sets") {
  std::mt19937_64 rng(987654321);
  std::uniform_int_distribution<int> size_dist(1, 12);
  std::uniform_int_distribution<std::int64_t> value_dist(0, 1000000);
  for (int iter = 0; iter < 10000; ++iter) {
    std::vector<std::int64_t> v;
    const int n = size_dist(rng);
    for (int i = 0; i < n; ++i) v.push_back(value_dist(rng));
    FiniteSet a = FiniteSet::from_values(v);
    std::vector<std::int64_t> sorted(a.elements().begin(), a.elements().end());
    const auto expect = oracle::classify(sorted);
    const auto got = mstd::classify(a);
    REQUIRE(got.sum_card == expect.sum_card);
    REQUIRE(got.diff_card == expect.diff_card);
    REQUIRE(got.margin == expect.margin);
  }
}

TEST_CASE("classification is affine-invariant") {
  std::mt19937_64 rng(555);
  std::uniform_int_distribution<int> size_dist(2, 10);
  std::uniform_int_distribution<std::int64_t> value_dist(0, 500);
  std::uniform_int_distribution<std::int64_t> u_dist(1, 50);
  std::uniform_int_distribution<std::int64_t> v_dist(0, 1000);
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<std::int64_t> values;
    const int n = size_dist(rng);
    for (int i = 0; i < n; ++i) values.push_back(value_dist(rng));
    FiniteSet a = FiniteSet::from_values(values);
    const auto base = mstd::classify(a);

    FiniteSet mapped = mstd::translate(mstd::scale(a, u_dist(rng)), v_dist(rng));
    const auto moved = mstd::classify(mapped);
    REQUIRE(moved.sum_card == base.sum_card);
    REQUIRE(moved.diff_card == base.diff_card);
    REQUIRE(moved.margin == base.margin);

    const auto mirrored = mstd::classify(mstd::reflect(a));
    REQUIRE(mirrored.sum_card == base.sum_card);
    REQUIRE(mirrored.diff_card == base.diff_card);

    // canonical form is constant on the affine orbit and idempotent
    FiniteSet canon = mstd::normalize_affine(a);
    REQUIRE(mstd::normalize_affine(mapped) == canon);
    REQUIRE(mstd::normalize_affine(mstd::reflect(a)) == canon);
    REQUIRE(mstd::normalize_affine(canon) == canon);
  }
}

TEST_CASE("symmetric sets are balanced") {
  // exhaustive over subsets of {0..16}
  for (std::uint32_t mask = 1; mask < (1u << 17); ++mask) {
    auto v = subset_of_mask(mask);
    FiniteSet a = set_of(v);
    if (mstd::symmetry_center(a).has_value()) {
      REQUIRE(mstd::classify(a).margin == 0);
    }
  }
  // constructed symmetric sets B u (a - B)
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> size_dist(1, 8);
  std::uniform_int_distribution<std::int64_t> value_dist(0, 2000);
  for (int iter = 0; iter < 10000; ++iter) {
    std::vector<std::int64_t> b;
    const int n = size_dist(rng);
    for (int i = 0; i < n; ++i) b.push_back(value_dist(rng));
    const std::int64_t center = 2000 + value_dist(rng);
    std::vector<std::int64_t> v = b;
    for (std::int64_t x : b) v.push_back(center - x);
    FiniteSet a = FiniteSet::from_values(v);
    REQUIRE(mstd::symmetry_center(a) == center);
    REQUIRE(mstd::classify(a).margin == 0);
  }
}

TEST_CASE("arithmetic progressions are exactly the 2n-1 extremes") {
  // forward direction over a grid of APs
  for (std::int64_t start = 0; start <= 15; ++start) {
    for (std::int64_t step = 1; step <= 8; ++step) {
      for (int len = 3; len <= 10; ++len) {
        std::vector<std::int64_t> v;
        for (int i = 0; i < len; ++i) v.push_back(start + step * i);
        const auto c = mstd::classify(set_of(v));
        REQUIRE(c.sum_card == 2 * len - 1);
        REQUIRE(c.diff_card == 2 * len - 1);
        REQUIRE(c.margin == 0);
      }
    }
  }
  // converse over all subsets of {0..14}
  for (std::uint32_t mask = 1; mask < (1u << 15); ++mask) {
    auto v = subset_of_mask(mask);
    FiniteSet a = set_of(v);
    const auto c = mstd::classify(a);
    const std::int64_t n = static_cast<std::int64_t>(a.size());
    const bool is_ap = mstd::is_arithmetic_progression(a);
    REQUIRE((c.sum_card == 2 * n - 1) == is_ap);
    REQUIRE((c.diff_card == 2 * n - 1) == is_ap);
  }
}
