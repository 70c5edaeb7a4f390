#include "mstd/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <sstream>
#include <thread>

namespace mstd::search {

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return std::min(requested, 64);
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min<unsigned>(hw, 64));
}

// Leaves of the gap-vector tree: C(D, n-1) by the hockey-stick identity.
std::uint64_t leaf_estimate(int n, std::int64_t diameter) {
  long double c = 1.0L;
  for (int i = 1; i <= n - 1; ++i) {
    c = c * static_cast<long double>(diameter - i + 1) / i;
    if (c > 1e13L) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(c);
}

struct Partial {
  std::uint64_t sets_enumerated = 0;
  std::vector<std::vector<std::int64_t>> mstd;
  std::map<std::int64_t, std::uint64_t> histogram;
  std::int64_t max_x = 0;
  std::vector<std::vector<std::int64_t>> violations;
};

// One DFS engine per worker. Adding an element costs O(|prefix|) counter
// updates; everything is undone on backtrack, so state survives across
// tasks within the worker.
class Enumerator {
 public:
  Enumerator(const SearchParams& params, bool bound_check,
             const NodeVisitor& visitor)
      : params_(params),
        bound_check_(bound_check),
        visitor_(visitor),
        sum_mult_(static_cast<std::size_t>(2 * params.diameter_max + 1), 0),
        diff_mult_(static_cast<std::size_t>(params.diameter_max + 1), 0) {
    elems_.reserve(static_cast<std::size_t>(params.n));
    gaps_.reserve(static_cast<std::size_t>(params.n - 1));
    add_element(0);
  }

  void run_prefix(std::span<const std::int64_t> prefix, Partial& out) {
    for (std::int64_t g : prefix) push_gap(g);
    dfs(out);
    for (std::size_t i = 0; i < prefix.size(); ++i) pop_gap();
  }

 private:
  void add_element(std::int64_t e) {
    for (std::int64_t p : elems_) {
      if (++diff_mult_[static_cast<std::size_t>(e - p)] == 1) ++diff_distinct_;
      if (++sum_mult_[static_cast<std::size_t>(e + p)] == 1) ++sum_distinct_;
    }
    if (++sum_mult_[static_cast<std::size_t>(2 * e)] == 1) ++sum_distinct_;
    elems_.push_back(e);
  }

  void remove_element() {
    std::int64_t e = elems_.back();
    elems_.pop_back();
    if (--sum_mult_[static_cast<std::size_t>(2 * e)] == 0) --sum_distinct_;
    for (std::int64_t p : elems_) {
      if (--diff_mult_[static_cast<std::size_t>(e - p)] == 0) --diff_distinct_;
      if (--sum_mult_[static_cast<std::size_t>(e + p)] == 0) --sum_distinct_;
    }
  }

  void push_gap(std::int64_t g) {
    gaps_.push_back(g);
    add_element(elems_.back() + g);
  }

  void pop_gap() {
    remove_element();
    gaps_.pop_back();
  }

  bool canonical() const {
    std::int64_t g = 0;
    for (std::int64_t gap : gaps_) g = std::gcd(g, gap);
    if (g != 1) return false;
    // lexicographically <= reversal
    std::size_t m = gaps_.size();
    for (std::size_t i = 0; i < m; ++i) {
      if (gaps_[i] < gaps_[m - 1 - i]) return true;
      if (gaps_[i] > gaps_[m - 1 - i]) return false;
    }
    return true;  // palindrome
  }

  bool passes_filter() const {
    switch (params_.filter) {
      case Filter::none:
        return true;
      case Filter::require_ap3:
        return contains_ap(FiniteSet(elems_), 3);
      case Filter::require_ap4:
        return contains_ap(FiniteSet(elems_), 4);
      case Filter::symmetric_only: {
        std::size_t m = gaps_.size();
        for (std::size_t i = 0; 2 * i < m; ++i) {
          if (gaps_[i] != gaps_[m - 1 - i]) return false;
        }
        return true;
      }
    }
    return true;
  }

  void leaf(Partial& out) {
    if (params_.canonical_only && !canonical()) return;
    if (!passes_filter()) return;

    const std::int64_t n = params_.n;
    const std::int64_t sum_card = sum_distinct_;
    const std::int64_t diff_card = 2 * diff_distinct_ + 1;
    const std::int64_t margin = sum_card - diff_card;
    const std::int64_t x = n * (n - 1) / 2 - diff_distinct_;

    ++out.sets_enumerated;
    ++out.histogram[margin];
    out.max_x = std::max(out.max_x, x);
    if (margin > 0) out.mstd.push_back(elems_);

    if (bound_check_) {
      bool bad = 2 * sum_card > n * (n + 1) - x;
      if (!bad && n == 6 && contains_ap(FiniteSet(elems_), 3)) {
        bad = 2 * sum_card > 40 - (x - 1);
      }
      if (bad) out.violations.push_back(elems_);
    }

    if (visitor_) {
      Classification c;
      c.sum_card = sum_card;
      c.diff_card = diff_card;
      c.margin = margin;
      c.verdict = margin > 0   ? Verdict::sum_dominant
                  : margin < 0 ? Verdict::difference_dominant
                               : Verdict::balanced;
      visitor_(std::span<const std::int64_t>(elems_), c);
    }
  }

  void dfs(Partial& out) {
    const int depth = static_cast<int>(elems_.size());
    if (depth == params_.n) {
      leaf(out);
      return;
    }
    // leave room for the remaining gaps (>= 1 each)
    const std::int64_t reserve = params_.n - depth - 1;
    const std::int64_t max_gap = params_.diameter_max - elems_.back() - reserve;
    for (std::int64_t g = 1; g <= max_gap; ++g) {
      push_gap(g);
      dfs(out);
      pop_gap();
    }
  }

  const SearchParams& params_;
  const bool bound_check_;
  const NodeVisitor& visitor_;
  std::vector<std::uint16_t> sum_mult_;
  std::vector<std::uint16_t> diff_mult_;
  std::int64_t sum_distinct_ = 0;
  std::int64_t diff_distinct_ = 0;
  std::vector<std::int64_t> elems_;
  std::vector<std::int64_t> gaps_;
};

// Work is partitioned on the first gap, and on the first two once the
// vector is long enough; prefixes are processed in lexicographic order
// and merged in that same order.
std::vector<std::vector<std::int64_t>> make_prefixes(const SearchParams& p) {
  std::vector<std::vector<std::int64_t>> prefixes;
  const int depth = p.n >= 5 ? 2 : 1;
  const std::int64_t a1_max = p.diameter_max - (p.n - 2);
  for (std::int64_t a1 = 1; a1 <= a1_max; ++a1) {
    if (depth == 1) {
      prefixes.push_back({a1});
      continue;
    }
    const std::int64_t a2_max = p.diameter_max - a1 - (p.n - 3);
    for (std::int64_t a2 = 1; a2 <= a2_max; ++a2) prefixes.push_back({a1, a2});
  }
  return prefixes;
}

SearchReport run_search(const SearchParams& params, bool bound_check,
                        const NodeVisitor& visitor, std::string op) {
  if (params.n < 3) throw std::invalid_argument("search: n must be >= 3");
  if (params.diameter_max < params.n - 1) {
    throw std::invalid_argument("search: diameter must be >= n-1");
  }
  if (leaf_estimate(params.n, params.diameter_max) > std::uint64_t{1} << 40) {
    std::ostringstream os;
    os << "search: ~C(" << params.diameter_max << "," << params.n - 1
       << ") gap vectors exceed the 2^40 budget; reduce the diameter";
    throw std::invalid_argument(os.str());
  }

  const auto t0 = std::chrono::steady_clock::now();
  SearchReport report;
  report.op = std::move(op);
  report.params = params;

  const auto prefixes = make_prefixes(params);
  std::vector<Partial> partials(prefixes.size());
  const int threads =
      std::min<int>(resolve_threads(params.threads),
                    std::max<std::size_t>(prefixes.size(), 1));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    Enumerator engine(params, bound_check, visitor);
    for (;;) {
      const std::size_t t = next.fetch_add(1, std::memory_order_relaxed);
      if (t >= prefixes.size()) break;
      engine.run_prefix(prefixes[t], partials[t]);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  for (Partial& part : partials) {
    report.sets_enumerated += part.sets_enumerated;
    for (auto& [margin, count] : part.histogram) {
      report.margin_histogram[margin] += count;
    }
    report.max_x_seen = std::max(report.max_x_seen, part.max_x);
    for (auto& elems : part.mstd) report.mstd_found.emplace_back(std::move(elems));
    for (auto& elems : part.violations) {
      report.inequality_violations.emplace_back(std::move(elems));
    }
  }
  std::sort(report.mstd_found.begin(), report.mstd_found.end());
  std::sort(report.inequality_violations.begin(),
            report.inequality_violations.end());

  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                t0)
          .count();
  return report;
}

}  // namespace

std::string_view filter_name(Filter filter) {
  switch (filter) {
    case Filter::none: return "none";
    case Filter::require_ap3: return "require_ap3";
    case Filter::require_ap4: return "require_ap4";
    case Filter::symmetric_only: return "symmetric_only";
  }
  return "?";
}

SearchReport enumerate_sets(const SearchParams& params,
                            const NodeVisitor& visitor) {
  return run_search(params, /*bound_check=*/false, visitor, "enumerate");
}

SearchReport verify_no_mstd(int n, std::int64_t diameter, int threads) {
  if (n < 3 || n > 7) {
    throw std::invalid_argument("verify_no_mstd: n must be in 3..7");
  }
  SearchParams params{n, diameter, /*canonical_only=*/true, Filter::none, threads};
  return run_search(params, false, {}, "verify");
}

SearchReport find_mstd(int n, std::int64_t diameter, int threads) {
  SearchParams params{n, diameter, /*canonical_only=*/true, Filter::none, threads};
  return run_search(params, false, {}, "find");
}

SearchReport check_collision_bounds(int n, std::int64_t diameter, int threads) {
  if (n != 6 && n != 7) {
    throw std::invalid_argument("check_collision_bounds: n must be 6 or 7");
  }
  SearchParams params{n, diameter, /*canonical_only=*/false, Filter::none,
                      threads};
  return run_search(params, /*bound_check=*/true, {}, "lemmas");
}

SearchReport check_four_ap(std::int64_t diameter, int threads) {
  SearchParams params{6, diameter, /*canonical_only=*/false, Filter::require_ap4,
                      threads};
  return run_search(params, false, {}, "prop4");
}

SearchReport verify_ap_plus(std::int64_t ap_len, int k_added, std::int64_t range,
                            int threads) {
  (void)threads;  // the grids here are tiny; a single pass is deterministic
  if (ap_len < 3) throw std::invalid_argument("verify_ap_plus: ap_len must be >= 3");
  if (k_added < 1 || k_added > 4) {
    throw std::invalid_argument("verify_ap_plus: k_added must be in 1..4");
  }
  if (range < 1) throw std::invalid_argument("verify_ap_plus: range must be >= 1");

  const auto t0 = std::chrono::steady_clock::now();
  SearchReport report;
  {
    std::ostringstream os;
    os << "ap-plus(len=" << ap_len << ",added=" << k_added << ",range=" << range
       << ")";
    report.op = os.str();
  }
  report.params.n = static_cast<int>(ap_len) + k_added;
  report.params.diameter_max = ap_len - 1 + 2 * range;
  report.params.canonical_only = false;
  report.params.filter = Filter::none;
  report.params.threads = 1;

  std::vector<std::int64_t> pool;
  for (std::int64_t v = -range; v < ap_len + range; ++v) {
    if (v < 0 || v >= ap_len) pool.push_back(v);
  }

  std::vector<std::int64_t> chosen;
  std::vector<std::int64_t> scratch;
  scratch.reserve(static_cast<std::size_t>(ap_len) + 4);

  auto evaluate = [&] {
    scratch.clear();
    for (std::int64_t v : chosen) scratch.push_back(v);
    for (std::int64_t v = 0; v < ap_len; ++v) scratch.push_back(v);
    std::sort(scratch.begin(), scratch.end());
    const std::int64_t base = scratch.front();
    for (std::int64_t& v : scratch) v -= base;  // shift non-negative
    FiniteSet set{scratch};
    Classification c = classify(set);
    ++report.sets_enumerated;
    ++report.margin_histogram[c.margin];
    const std::int64_t n = static_cast<std::int64_t>(set.size());
    report.max_x_seen =
        std::max(report.max_x_seen,
                 n * (n - 1) / 2 - (c.diff_card - 1) / 2);
    if (c.margin > 0) report.mstd_found.push_back(std::move(set));
  };

  auto combos = [&](auto&& self, std::size_t start, std::size_t remaining) -> void {
    if (remaining == 0) {
      evaluate();
      return;
    }
    for (std::size_t i = start; i + remaining <= pool.size(); ++i) {
      chosen.push_back(pool[i]);
      self(self, i + 1, remaining - 1);
      chosen.pop_back();
    }
  };
  combos(combos, 0, static_cast<std::size_t>(k_added));

  std::sort(report.mstd_found.begin(), report.mstd_found.end());
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                t0)
          .count();
  return report;
}

}  // namespace mstd::search
