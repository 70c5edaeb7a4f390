#include "mstd/primes.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace mstd::primes {

namespace {

using Json = nlohmann::ordered_json;

int resolve_threads(int requested) {
  if (requested > 0) return std::min(requested, 64);
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min<unsigned>(hw, 64));
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % m);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    for (; e != 0; e >>= 1) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic for 64-bit inputs
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Tasks are include/exclude patterns over the first split_depth primes; a
// function of the pool size alone so checkpoints stay valid across
// different thread counts.
int split_depth_for(std::size_t pool_size) {
  if (pool_size <= 14) return 0;
  return static_cast<int>(std::min<std::size_t>(8, pool_size - 14));
}

struct TaskOutput {
  bool done = false;
  std::uint64_t count = 0;
  std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> found;
};

class SubsetSearcher {
 public:
  SubsetSearcher(const PrimePool& pool, const PrimeSearchOptions& options)
      : primes_(pool.primes),
        options_(options),
        sum_mult_(static_cast<std::size_t>(2 * pool.limit + 1), 0),
        diff_mult_(static_cast<std::size_t>(pool.limit + 1), 0) {
    elems_.reserve(primes_.size());
  }

  void run_task(std::uint32_t pattern, int split_depth, TaskOutput& out) {
    int pushed = 0;
    for (int i = 0; i < split_depth; ++i) {
      if (pattern >> i & 1) {
        add(primes_[static_cast<std::size_t>(i)]);
        ++pushed;
      }
    }
    if (!elems_.empty()) visit(out);
    dfs(static_cast<std::size_t>(split_depth), out);
    for (int i = 0; i < pushed; ++i) remove();
  }

 private:
  void add(std::int64_t p) {
    for (std::int64_t e : elems_) {
      if (++diff_mult_[static_cast<std::size_t>(p - e)] == 1) ++diff_distinct_;
      if (++sum_mult_[static_cast<std::size_t>(p + e)] == 1) ++sum_distinct_;
    }
    if (++sum_mult_[static_cast<std::size_t>(2 * p)] == 1) ++sum_distinct_;
    elems_.push_back(p);
  }

  void remove() {
    std::int64_t p = elems_.back();
    elems_.pop_back();
    if (--sum_mult_[static_cast<std::size_t>(2 * p)] == 0) --sum_distinct_;
    for (std::int64_t e : elems_) {
      if (--diff_mult_[static_cast<std::size_t>(p - e)] == 0) --diff_distinct_;
      if (--sum_mult_[static_cast<std::size_t>(p + e)] == 0) --sum_distinct_;
    }
  }

  void visit(TaskOutput& out) {
    const std::int64_t margin = sum_distinct_ - (2 * diff_distinct_ + 1);
    if (options_.sample_every != 0 && options_.node_sample &&
        ++visit_counter_ % options_.sample_every == 0) {
      Classification c;
      c.sum_card = sum_distinct_;
      c.diff_card = 2 * diff_distinct_ + 1;
      c.margin = margin;
      c.verdict = margin > 0   ? Verdict::sum_dominant
                  : margin < 0 ? Verdict::difference_dominant
                               : Verdict::balanced;
      options_.node_sample(std::span<const std::int64_t>(elems_), c);
    }
    if (static_cast<int>(elems_.size()) >= options_.min_card && margin > 0) {
      ++out.count;
      out.found.emplace_back(elems_, margin);
    }
  }

  void dfs(std::size_t i, TaskOutput& out) {
    for (std::size_t j = i; j < primes_.size(); ++j) {
      add(primes_[j]);
      visit(out);
      dfs(j + 1, out);
      remove();
    }
  }

  const std::vector<std::int64_t>& primes_;
  const PrimeSearchOptions& options_;
  std::vector<std::uint16_t> sum_mult_;
  std::vector<std::uint16_t> diff_mult_;
  std::int64_t sum_distinct_ = 0;
  std::int64_t diff_distinct_ = 0;
  std::vector<std::int64_t> elems_;
  std::uint64_t visit_counter_ = 0;
};

Json checkpoint_header(const PrimePool& pool, int min_card, int split_depth) {
  Json j;
  j["limit"] = pool.limit;
  j["include_two"] = pool.include_two;
  j["pool_size"] = pool.primes.size();
  j["min_card"] = min_card;
  j["split_depth"] = split_depth;
  return j;
}

void write_checkpoint(const std::string& path, const Json& header,
                      const std::vector<TaskOutput>& tasks) {
  Json j = header;
  Json done = Json::array();
  for (std::size_t id = 0; id < tasks.size(); ++id) {
    if (!tasks[id].done) continue;
    Json t;
    t["task"] = id;
    t["count"] = tasks[id].count;
    Json found = Json::array();
    for (const auto& [roster, margin] : tasks[id].found) {
      found.push_back(Json{{"set", roster}, {"margin", margin}});
    }
    t["found"] = std::move(found);
    done.push_back(std::move(t));
  }
  j["completed"] = std::move(done);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint: " + tmp);
    out << j.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

std::size_t load_checkpoint(const std::string& path, const Json& header,
                            std::vector<TaskOutput>& tasks) {
  std::ifstream in(path);
  if (!in) return 0;
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("checkpoint " + path + " is not valid JSON: " +
                             e.what());
  }
  for (auto& [key, value] : header.items()) {
    if (!j.contains(key) || j[key] != value) {
      throw std::runtime_error(
          "checkpoint " + path + " was written for different parameters (" +
          key + " mismatch)");
    }
  }
  std::size_t resumed = 0;
  for (const Json& t : j.at("completed")) {
    const std::size_t id = t.at("task").get<std::size_t>();
    if (id >= tasks.size()) {
      throw std::runtime_error("checkpoint " + path + " has out-of-range task");
    }
    TaskOutput& out = tasks[id];
    out.done = true;
    out.count = t.at("count").get<std::uint64_t>();
    out.found.clear();
    for (const Json& f : t.at("found")) {
      out.found.emplace_back(f.at("set").get<std::vector<std::int64_t>>(),
                             f.at("margin").get<std::int64_t>());
    }
    ++resumed;
  }
  return resumed;
}

}  // namespace

PrimePool sieve(std::int64_t limit, bool include_two) {
  if (limit < 2) throw std::invalid_argument("sieve: limit must be >= 2");
  if (limit > 100'000'000) {
    throw std::invalid_argument("sieve: limit too large for a dense sieve");
  }
  std::vector<bool> composite(static_cast<std::size_t>(limit + 1), false);
  PrimePool pool;
  pool.limit = limit;
  pool.include_two = include_two;
  for (std::int64_t p = 2; p <= limit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    if (p != 2 || include_two) pool.primes.push_back(p);
    for (std::int64_t q = p * p; q <= limit; q += p) {
      composite[static_cast<std::size_t>(q)] = true;
    }
  }
  return pool;
}

PrimeSearchReport search_prime_mstd(const PrimePool& pool,
                                    const PrimeSearchOptions& options) {
  if (pool.primes.empty()) throw std::invalid_argument("empty prime pool");
  if (pool.primes.size() > 40 && !options.allow_large_pool) {
    std::ostringstream os;
    os << "pool has " << pool.primes.size() << " primes: 2^"
       << pool.primes.size()
       << " subsets is beyond the exhaustive-DFS budget (pass "
          "allow_large_pool to override)";
    throw std::invalid_argument(os.str());
  }
  if (options.min_card < 1) throw std::invalid_argument("min_card must be >= 1");

  const auto t0 = std::chrono::steady_clock::now();
  PrimeSearchReport report;
  report.pool = pool;
  report.min_card = options.min_card;

  const int split_depth = split_depth_for(pool.primes.size());
  const std::size_t task_count = std::size_t{1} << split_depth;
  std::vector<TaskOutput> tasks(task_count);

  const Json header = checkpoint_header(pool, options.min_card, split_depth);
  report.checkpoint.path = options.checkpoint_path;
  report.checkpoint.tasks_total = task_count;
  const bool checkpointing = !options.checkpoint_path.empty();
  if (checkpointing &&
      std::filesystem::exists(options.checkpoint_path)) {
    report.checkpoint.tasks_resumed =
        load_checkpoint(options.checkpoint_path, header, tasks);
  }

  std::mutex checkpoint_mu;
  auto last_flush = std::chrono::steady_clock::now();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> ran{0};
  std::atomic<bool> stop{false};

  auto worker = [&] {
    SubsetSearcher searcher(pool, options);
    for (;;) {
      if (stop.load(std::memory_order_relaxed)) break;
      const std::size_t id = next.fetch_add(1, std::memory_order_relaxed);
      if (id >= task_count) break;
      if (tasks[id].done) continue;
      TaskOutput out;
      searcher.run_task(static_cast<std::uint32_t>(id), split_depth, out);
      out.done = true;
      {
        // the checkpoint writer iterates all slots under this lock
        std::lock_guard<std::mutex> lock(checkpoint_mu);
        tasks[id] = std::move(out);
      }
      const std::size_t total_ran = ran.fetch_add(1) + 1;
      if (total_ran >= options.stop_after_tasks) stop.store(true);
      if (checkpointing) {
        std::lock_guard<std::mutex> lock(checkpoint_mu);
        const auto now = std::chrono::steady_clock::now();
        if (std::chrono::duration<double>(now - last_flush).count() >=
            options.checkpoint_interval_s) {
          write_checkpoint(options.checkpoint_path, header, tasks);
          last_flush = now;
        }
      }
    }
  };

  const int threads = std::min<int>(resolve_threads(options.threads),
                                    static_cast<int>(task_count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) workers.emplace_back(worker);
    for (std::thread& th : workers) th.join();
  }
  report.checkpoint.tasks_run = ran.load();

  const bool complete =
      std::all_of(tasks.begin(), tasks.end(), [](const TaskOutput& t) {
        return t.done;
      });
  report.checkpoint.complete = complete;
  if (checkpointing) {
    if (complete) {
      std::error_code ec;
      std::filesystem::remove(options.checkpoint_path, ec);
    } else {
      write_checkpoint(options.checkpoint_path, header, tasks);
    }
  }

  std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> found;
  for (TaskOutput& t : tasks) {
    report.count += t.count;
    for (auto& entry : t.found) found.push_back(std::move(entry));
  }
  std::sort(found.begin(), found.end());
  report.max_margin = 0;
  std::int64_t min_max = std::numeric_limits<std::int64_t>::max();
  for (const auto& [roster, margin] : found) {
    report.max_margin = std::max(report.max_margin, margin);
    min_max = std::min(min_max, roster.back());
  }
  report.mstd_sets.reserve(found.size());
  for (const auto& [roster, margin] : found) {
    report.mstd_sets.emplace_back(roster);
    if (roster.back() == min_max) report.min_by_max.emplace_back(roster);
  }
  report.unique_min = report.min_by_max.size() == 1;

  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                t0)
          .count();
  return report;
}

std::pair<std::int64_t, std::int64_t> adjoin_two_delta(const FiniteSet& odd_set) {
  if (odd_set.contains(2)) {
    throw std::invalid_argument("adjoin_two_delta: set already contains 2");
  }
  std::vector<std::int64_t> with_two(odd_set.elements().begin(),
                                     odd_set.elements().end());
  with_two.push_back(2);
  FiniteSet extended = FiniteSet::from_values(std::move(with_two));
  const Classification before = classify(odd_set);
  const Classification after = classify(extended);
  return {after.diff_card - before.diff_card, after.sum_card - before.sum_card};
}

bool check_two_exclusion(PrimeSearchReport& report) {
  if (report.pool.include_two) {
    throw std::invalid_argument(
        "check_two_exclusion: report must come from an odd-prime pool");
  }
  bool ok = true;
  for (const FiniteSet& set : report.mstd_sets) {
    const Classification c = classify(set);
    if (c.margin > 4) ok = false;
    const auto [new_diffs, new_sums] = adjoin_two_delta(set);
    if (new_diffs - new_sums < 7) ok = false;
    std::vector<std::int64_t> with_two(set.elements().begin(),
                                       set.elements().end());
    with_two.push_back(2);
    if (classify(FiniteSet::from_values(std::move(with_two))).verdict ==
        Verdict::sum_dominant) {
      ok = false;
    }
    if (!ok) break;
  }
  report.two_exclusion_ok = ok;
  return ok;
}

TupleSpec::TupleSpec(std::vector<std::int64_t> raw) : offsets(std::move(raw)) {
  if (offsets.empty()) throw std::invalid_argument("TupleSpec: empty tuple");
  std::sort(offsets.begin(), offsets.end());
  if (std::adjacent_find(offsets.begin(), offsets.end()) != offsets.end()) {
    throw std::invalid_argument("TupleSpec: offsets must be distinct");
  }
  const std::int64_t base = offsets.front();
  for (std::int64_t& b : offsets) b -= base;
}

bool is_admissible(const TupleSpec& tuple) {
  const std::int64_t m = static_cast<std::int64_t>(tuple.offsets.size());
  std::vector<bool> seen;
  for (std::int64_t k = 2; k <= m; ++k) {
    seen.assign(static_cast<std::size_t>(k), false);
    std::int64_t hit = 0;
    for (std::int64_t b : tuple.offsets) {
      const auto r = static_cast<std::size_t>(b % k);
      if (!seen[r]) {
        seen[r] = true;
        ++hit;
      }
    }
    if (hit == k) return false;  // covers every residue class mod k
  }
  return true;
}

std::optional<std::int64_t> find_match(const TupleSpec& tuple,
                                       std::int64_t n_max) {
  if (n_max < 1) throw std::invalid_argument("find_match: n_max must be >= 1");
  for (std::int64_t n = 1; n <= n_max; ++n) {
    bool all_prime = true;
    for (std::int64_t b : tuple.offsets) {
      if (!is_prime_u64(static_cast<std::uint64_t>(b + n))) {
        all_prime = false;
        break;
      }
    }
    if (all_prime) return n;
  }
  return std::nullopt;
}

}  // namespace mstd::primes
