#include "mstd/set_ops.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace mstd {

namespace {

// Dense bit vector sized per call. Spans beyond kDenseLimit bits fall back
// to a sort-unique path so huge-element sets stay usable.
constexpr std::int64_t kDenseLimit = std::int64_t{1} << 28;

class BitVec {
 public:
  explicit BitVec(std::int64_t bits)
      : words_(static_cast<std::size_t>((bits + 63) / 64), 0) {}

  void set(std::int64_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool test(std::int64_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1;
  }
  std::int64_t count() const {
    std::int64_t total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
  }
  // Appends the indices of set bits, in increasing order, plus `offset`.
  void collect(std::vector<std::int64_t>& out, std::int64_t offset = 0) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w != 0) {
        int b = std::countr_zero(w);
        out.push_back(static_cast<std::int64_t>(wi) * 64 + b + offset);
        w &= w - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<std::int64_t> all_sums(const FiniteSet& set) {
  auto e = set.elements();
  std::vector<std::int64_t> sums;
  sums.reserve(e.size() * (e.size() + 1) / 2);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i; j < e.size(); ++j) sums.push_back(e[i] + e[j]);
  }
  return sorted_unique(std::move(sums));
}

std::vector<std::int64_t> positive_diffs(const FiniteSet& set) {
  auto e = set.elements();
  std::vector<std::int64_t> diffs;
  diffs.reserve(e.size() * (e.size() - 1) / 2);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) diffs.push_back(e[j] - e[i]);
  }
  return sorted_unique(std::move(diffs));
}

bool dense_feasible(std::int64_t span_bits) { return span_bits <= kDenseLimit; }

std::int64_t sum_card_of(const FiniteSet& set) {
  auto e = set.elements();
  std::int64_t lo = 2 * e.front(), hi = 2 * e.back();
  if (!dense_feasible(hi - lo + 1)) {
    return static_cast<std::int64_t>(all_sums(set).size());
  }
  BitVec bits(hi - lo + 1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i; j < e.size(); ++j) bits.set(e[i] + e[j] - lo);
  }
  return bits.count();
}

std::int64_t distinct_pos_of(const FiniteSet& set) {
  auto e = set.elements();
  std::int64_t diam = e.back() - e.front();
  if (diam == 0) return 0;
  if (!dense_feasible(diam + 1)) {
    return static_cast<std::int64_t>(positive_diffs(set).size());
  }
  BitVec bits(diam + 1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) bits.set(e[j] - e[i]);
  }
  return bits.count();
}

}  // namespace

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::sum_dominant: return "sum-dominant";
    case Verdict::balanced: return "balanced";
    case Verdict::difference_dominant: return "difference-dominant";
  }
  return "?";
}

FiniteSet sumset(const FiniteSet& set) {
  auto e = set.elements();
  // Pre-invariant makes overflow unreachable; guard anyway.
  if (e.back() > FiniteSet::kMaxElement) {
    throw std::logic_error("sumset: element beyond representable range");
  }
  std::int64_t lo = 2 * e.front(), hi = 2 * e.back();
  if (!dense_feasible(hi - lo + 1)) return FiniteSet(all_sums(set));
  BitVec bits(hi - lo + 1);
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i; j < e.size(); ++j) bits.set(e[i] + e[j] - lo);
  }
  std::vector<std::int64_t> out;
  bits.collect(out, lo);
  return FiniteSet(std::move(out));
}

FiniteSet diffset(const FiniteSet& set) {
  auto e = set.elements();
  std::int64_t diam = e.back() - e.front();
  if (diam == 0) return FiniteSet({0});
  std::vector<std::int64_t> pos;
  if (dense_feasible(diam + 1)) {
    BitVec bits(diam + 1);
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) bits.set(e[j] - e[i]);
    }
    bits.collect(pos);
  } else {
    pos = positive_diffs(set);
  }
  // Mirror around 0, then shift by +diameter.
  std::vector<std::int64_t> out;
  out.reserve(2 * pos.size() + 1);
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back(diam - *it);
  out.push_back(diam);
  for (std::int64_t p : pos) out.push_back(diam + p);
  return FiniteSet(std::move(out));
}

Classification classify(const FiniteSet& set) {
  Classification c;
  c.sum_card = sum_card_of(set);
  c.diff_card = 2 * distinct_pos_of(set) + 1;
  c.margin = c.sum_card - c.diff_card;
  c.verdict = c.margin > 0   ? Verdict::sum_dominant
              : c.margin < 0 ? Verdict::difference_dominant
                             : Verdict::balanced;
  return c;
}

DiffStats diff_stats(const FiniteSet& set) {
  DiffStats s;
  s.n = static_cast<std::int64_t>(set.size());
  s.distinct_pos = distinct_pos_of(set);
  s.collision_excess = s.n * (s.n - 1) / 2 - s.distinct_pos;
  return s;
}

FiniteSet normalize_affine(const FiniteSet& set) {
  if (set.size() < 2) {
    throw std::invalid_argument("normalize_affine: need at least 2 elements");
  }
  GapForm form = to_spohn(set);
  form.base = 0;
  std::int64_t g = 0;
  for (std::int64_t gap : form.gaps) g = std::gcd(g, gap);
  for (std::int64_t& gap : form.gaps) gap /= g;
  std::vector<std::int64_t> reversed(form.gaps.rbegin(), form.gaps.rend());
  if (reversed < form.gaps) form.gaps = std::move(reversed);
  return form.to_set();
}

std::optional<std::int64_t> symmetry_center(const FiniteSet& set) {
  auto e = set.elements();
  const std::int64_t a = e.front() + e.back();
  std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(e.size()) - 1;
  for (; i <= j; ++i, --j) {
    if (e[static_cast<std::size_t>(i)] + e[static_cast<std::size_t>(j)] != a) {
      return std::nullopt;
    }
  }
  return a;
}

bool contains_ap(const FiniteSet& set, int length) {
  if (length < 3) throw std::invalid_argument("contains_ap: length must be >= 3");
  auto e = set.elements();
  std::size_t n = e.size();
  if (n < static_cast<std::size_t>(length)) return false;
  // len[i*n+j] = longest AP ending with elements i < j; extends the pair
  // (h, i) whenever e[h] = 2 e[i] - e[j] exists.
  std::vector<int> len(n * n, 0);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      std::int64_t prev = 2 * e[i] - e[j];
      int best = 2;
      if (prev >= e.front()) {
        auto it = std::lower_bound(e.begin(), e.begin() + i, prev);
        if (it != e.begin() + i && *it == prev) {
          std::size_t h = static_cast<std::size_t>(it - e.begin());
          best = len[h * n + i] + 1;
        }
      }
      len[i * n + j] = best;
      if (best >= length) return true;
    }
  }
  return false;
}

bool is_arithmetic_progression(const FiniteSet& set) {
  auto e = set.elements();
  if (e.size() <= 2) return true;
  std::int64_t step = e[1] - e[0];
  for (std::size_t i = 2; i < e.size(); ++i) {
    if (e[i] - e[i - 1] != step) return false;
  }
  return true;
}

FiniteSet translate(const FiniteSet& set, std::int64_t shift) {
  std::vector<std::int64_t> out(set.elements().begin(), set.elements().end());
  if (shift < 0 && set.min() + shift < 0) {
    throw std::invalid_argument("translate: result would be negative");
  }
  if (shift > 0 && set.max() > FiniteSet::kMaxElement - shift) {
    throw std::invalid_argument("translate: result exceeds 2^62-1");
  }
  for (std::int64_t& v : out) v += shift;
  return FiniteSet(std::move(out));
}

FiniteSet scale(const FiniteSet& set, std::int64_t factor) {
  if (factor < 1) throw std::invalid_argument("scale: factor must be >= 1");
  if (set.max() > FiniteSet::kMaxElement / factor) {
    throw std::invalid_argument("scale: result exceeds 2^62-1");
  }
  std::vector<std::int64_t> out(set.elements().begin(), set.elements().end());
  for (std::int64_t& v : out) v *= factor;
  return FiniteSet(std::move(out));
}

FiniteSet reflect(const FiniteSet& set) {
  auto e = set.elements();
  std::vector<std::int64_t> out;
  out.reserve(e.size());
  for (auto it = e.rbegin(); it != e.rend(); ++it) out.push_back(e.back() - *it);
  return FiniteSet(std::move(out));
}

}  // namespace mstd
