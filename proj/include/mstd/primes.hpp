#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mstd/finite_set.hpp"
#include "mstd/set_ops.hpp"

namespace mstd::primes {

struct PrimePool {
  std::int64_t limit = 0;
  bool include_two = false;
  std::vector<std::int64_t> primes;
};

/// Primes up to `limit` by Eratosthenes. 2 is omitted unless asked for:
/// adjoining 2 to a set of odd primes only ever adds differences faster
/// than sums (see check_two_exclusion), so odd pools are the default.
PrimePool sieve(std::int64_t limit, bool include_two = false);

struct PrimeSearchOptions {
  int min_card = 8;  // subsets below this size are traversed, not classified
  int threads = 0;
  bool allow_large_pool = false;  // override the 40-prime feasibility guard
  std::string checkpoint_path;    // empty disables checkpointing
  double checkpoint_interval_s = 5.0;
  /// Stop after this many new tasks, leaving a resumable checkpoint.
  std::size_t stop_after_tasks = std::numeric_limits<std::size_t>::max();
  /// When set, every sample_every-th visited subset is reported with its
  /// incremental classification (meaningful on single-threaded runs).
  std::uint64_t sample_every = 0;
  std::function<void(std::span<const std::int64_t>, const Classification&)>
      node_sample;
};

struct CheckpointInfo {
  std::string path;
  std::size_t tasks_total = 0;
  std::size_t tasks_resumed = 0;
  std::size_t tasks_run = 0;
  bool complete = true;
};

struct PrimeSearchReport {
  PrimePool pool;
  int min_card = 8;
  std::uint64_t count = 0;
  std::vector<FiniteSet> mstd_sets;    // lexicographically sorted
  std::vector<FiniteSet> min_by_max;   // all sets achieving the smallest max
  bool unique_min = false;
  std::int64_t max_margin = 0;         // over mstd_sets; 0 when none found
  std::optional<bool> two_exclusion_ok;
  CheckpointInfo checkpoint;
  double elapsed_ms = 0.0;
};

/// Exhaustive DFS over all subsets of the pool with incremental
/// sum/difference counters; every MSTD subset of size >= min_card is
/// recorded. Deterministic output for any thread count.
PrimeSearchReport search_prime_mstd(const PrimePool& pool,
                                    const PrimeSearchOptions& options = {});

/// (new differences, new sums) produced by adjoining 2 to a set of odd
/// numbers; for odd sets both counts are exact: 2|S| and |S|+1.
std::pair<std::int64_t, std::int64_t> adjoin_two_delta(const FiniteSet& odd_set);

/// For every found MSTD set S: margin(S) <= 4, S u {2} is not
/// sum-dominant, and adjoining 2 adds at least 7 more differences than
/// sums. Fills report.two_exclusion_ok and returns it.
bool check_two_exclusion(PrimeSearchReport& report);

/// Offset tuple, rebased so the first offset is 0.
struct TupleSpec {
  std::vector<std::int64_t> offsets;
  explicit TupleSpec(std::vector<std::int64_t> raw);
};

/// True iff for every k in 2..m the offsets miss a residue class mod k.
bool is_admissible(const TupleSpec& tuple);

/// Smallest n in [1, n_max] with every offset+n prime, if any.
std::optional<std::int64_t> find_match(const TupleSpec& tuple, std::int64_t n_max);

}  // namespace mstd::primes
