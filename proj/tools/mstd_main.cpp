// mstd: sum-dominant set toolkit.
//
// Exit codes: 0 success / expected result, 1 usage or input error,
// 2 mathematical falsification (a counterexample was found where the
// verified statement says none exists).

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mstd/families.hpp"
#include "mstd/finite_set.hpp"
#include "mstd/json_io.hpp"
#include "mstd/primes.hpp"
#include "mstd/search.hpp"
#include "mstd/set_ops.hpp"

namespace {

using mstd::FiniteSet;
using mstd::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFalsified = 2;

struct Output {
  std::string format = "text";

  void emit(std::string_view command, const Json& params, const Json& result,
            double elapsed_ms, const std::string& text,
            const std::string& csv) const {
    if (format == "json") {
      std::cout << mstd::report_envelope(command, params, result, elapsed_ms)
                       .dump(1)
                << '\n';
    } else if (format == "csv") {
      std::cout << csv;
    } else {
      std::cout << text;
    }
  }
};

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) throw mstd::ParseError("empty entry in integer list");
    out.push_back(std::stoll(token));
  }
  if (out.empty()) throw mstd::ParseError("empty integer list");
  return out;
}

std::string roster_lines(const std::vector<FiniteSet>& sets) {
  std::string out;
  for (const FiniteSet& s : sets) {
    out += mstd::format_roster(s);
    out += '\n';
  }
  return out;
}

// ---- classify / spohn / normalize -----------------------------------------

int run_classify(const std::string& literal, const Output& output) {
  const auto t0 = std::chrono::steady_clock::now();
  bool duplicates = false;
  FiniteSet set = mstd::parse_set(literal, &duplicates);
  if (duplicates) std::cerr << "note: duplicate elements were dropped\n";
  const mstd::Classification c = mstd::classify(set);
  const Json result = mstd::json_of(set, c);

  std::ostringstream text;
  text << "set:       " << mstd::format_roster(set) << '\n'
       << "spohn:     " << mstd::format_spohn(set) << '\n'
       << "sum_card:  " << c.sum_card << '\n'
       << "diff_card: " << c.diff_card << '\n'
       << "margin:    " << c.margin << '\n'
       << "verdict:   " << mstd::verdict_name(c.verdict) << '\n';
  std::ostringstream csv;
  csv << "set,spohn,sum_card,diff_card,margin,verdict\n"
      << '"' << mstd::format_roster(set) << "\",\"" << mstd::format_spohn(set)
      << "\"," << c.sum_card << ',' << c.diff_card << ',' << c.margin << ','
      << mstd::verdict_name(c.verdict) << '\n';
  output.emit("classify", Json{{"input", literal}}, result, ms_since(t0),
              text.str(), csv.str());
  return kExitOk;
}

int run_spohn(const std::string& literal, const Output& output) {
  const auto t0 = std::chrono::steady_clock::now();
  FiniteSet set = mstd::parse_set(literal);
  Json result;
  result["set"] = mstd::json_of(set);
  result["spohn"] = mstd::format_spohn(set);
  std::ostringstream text;
  text << "set:   " << mstd::format_roster(set) << '\n'
       << "spohn: " << mstd::format_spohn(set) << '\n';
  std::ostringstream csv;
  csv << "set,spohn\n\"" << mstd::format_roster(set) << "\",\""
      << mstd::format_spohn(set) << "\"\n";
  output.emit("spohn", Json{{"input", literal}}, result, ms_since(t0),
              text.str(), csv.str());
  return kExitOk;
}

int run_normalize(const std::string& literal, const Output& output) {
  const auto t0 = std::chrono::steady_clock::now();
  FiniteSet set = mstd::parse_set(literal);
  FiniteSet canon = mstd::normalize_affine(set);
  Json result;
  result["set"] = mstd::json_of(set);
  result["canonical"] = mstd::json_of(canon);
  result["canonical_spohn"] = mstd::format_spohn(canon);
  std::ostringstream text;
  text << "set:       " << mstd::format_roster(set) << '\n'
       << "canonical: " << mstd::format_roster(canon) << "  "
       << mstd::format_spohn(canon) << '\n';
  std::ostringstream csv;
  csv << "set,canonical,canonical_spohn\n\"" << mstd::format_roster(set)
      << "\",\"" << mstd::format_roster(canon) << "\",\""
      << mstd::format_spohn(canon) << "\"\n";
  output.emit("normalize", Json{{"input", literal}}, result, ms_since(t0),
              text.str(), csv.str());
  return kExitOk;
}

// ---- families --------------------------------------------------------------

int run_families_verify(const std::string& id_arg, std::int64_t pmax,
                        const Output& output) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<int> ids;
  if (id_arg == "all") {
    for (int id = 1; id <= mstd::families::kFamilyCount; ++id) ids.push_back(id);
  } else {
    ids.push_back(std::stoi(id_arg));
  }
  std::vector<mstd::families::FamilyReport> reports;
  reports.reserve(ids.size());
  std::uint64_t total_violations = 0;
  for (int id : ids) {
    reports.push_back(mstd::families::verify_family(id, pmax));
    total_violations += reports.back().violations.size();
  }

  Json result;
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(mstd::json_of(r));
  result["reports"] = std::move(arr);
  result["total_violations"] = total_violations;

  std::ostringstream text;
  std::ostringstream csv;
  csv << "id,instances_checked,violations,max_margin_seen\n";
  for (const auto& r : reports) {
    text << "S" << r.id << ": instances=" << r.instances_checked
         << " violations=" << r.violations.size()
         << " max_margin=" << r.max_margin_seen << '\n';
    csv << r.id << ',' << r.instances_checked << ',' << r.violations.size()
        << ',' << r.max_margin_seen << '\n';
    for (const auto& [d, a, b] : r.violations) {
      text << "  SUM-DOMINANT instance at d=" << d << " a=" << a << " b=" << b
           << '\n';
    }
  }
  text << (total_violations == 0 ? "all families verified: no sum-dominant instance\n"
                                 : "FALSIFIED: sum-dominant instances found\n");
  output.emit("families verify", Json{{"id", id_arg}, {"pmax", pmax}}, result,
              ms_since(t0), text.str(), csv.str());
  return total_violations == 0 ? kExitOk : kExitFalsified;
}

// ---- search ----------------------------------------------------------------

std::string search_text(const mstd::search::SearchReport& r,
                        std::string_view found_label) {
  std::ostringstream text;
  text << r.op << ": n=" << r.params.n << " diameter<=" << r.params.diameter_max
       << " canonical=" << (r.params.canonical_only ? "yes" : "no")
       << " filter=" << mstd::search::filter_name(r.params.filter) << '\n'
       << "sets enumerated: " << r.sets_enumerated << '\n'
       << found_label << ": " << r.mstd_found.size() << '\n';
  for (const FiniteSet& s : r.mstd_found) {
    text << "  " << mstd::format_roster(s) << "  " << mstd::format_spohn(s)
         << '\n';
  }
  if (!r.inequality_violations.empty()) {
    text << "bound violations: " << r.inequality_violations.size() << '\n';
    for (const FiniteSet& s : r.inequality_violations) {
      text << "  " << mstd::format_roster(s) << '\n';
    }
  }
  text << "elapsed: " << r.elapsed_ms << " ms\n";
  return text.str();
}

std::string search_csv(const mstd::search::SearchReport& r) {
  std::ostringstream csv;
  csv << "set,spohn,kind\n";
  for (const FiniteSet& s : r.mstd_found) {
    csv << '"' << mstd::format_roster(s) << "\",\"" << mstd::format_spohn(s)
        << "\",mstd\n";
  }
  for (const FiniteSet& s : r.inequality_violations) {
    csv << '"' << mstd::format_roster(s) << "\",\"" << mstd::format_spohn(s)
        << "\",violation\n";
  }
  return csv.str();
}

int emit_search(const mstd::search::SearchReport& r, const Json& params,
                std::string_view command, std::string_view found_label,
                bool finding_falsifies, const Output& output) {
  output.emit(command, params, mstd::json_of(r), r.elapsed_ms,
              search_text(r, found_label), search_csv(r));
  const bool bad = finding_falsifies &&
                   (!r.mstd_found.empty() || !r.inequality_violations.empty());
  return bad ? kExitFalsified : kExitOk;
}

// ---- primes ----------------------------------------------------------------

std::string primes_text(const mstd::primes::PrimeSearchReport& r, bool list) {
  std::ostringstream text;
  text << "pool: " << r.pool.primes.size() << " primes <= " << r.pool.limit
       << (r.pool.include_two ? "" : " (2 excluded)") << '\n'
       << "mstd subsets: " << r.count << '\n'
       << "max margin: " << r.max_margin << '\n';
  if (!r.checkpoint.complete) text << "INCOMPLETE RUN (resumable checkpoint)\n";
  text << "smallest maximum: ";
  if (r.min_by_max.empty()) {
    text << "none\n";
  } else {
    text << r.min_by_max.front().max()
         << (r.unique_min ? " (unique)" : " (NOT unique)") << '\n';
    for (const FiniteSet& s : r.min_by_max) {
      text << "  " << mstd::format_roster(s) << '\n';
    }
  }
  if (r.two_exclusion_ok.has_value()) {
    text << "two-exclusion check: " << (*r.two_exclusion_ok ? "ok" : "FAILED")
         << '\n';
  }
  if (list) {
    text << "all sets:\n" << roster_lines(r.mstd_sets);
  }
  text << "elapsed: " << r.elapsed_ms << " ms\n";
  return text.str();
}

int run_primes_search(std::int64_t limit, bool include_two, int min_card,
                      bool no_min_card, bool list, bool force,
                      const std::string& checkpoint, double interval,
                      int threads, const Output& output) {
  const mstd::primes::PrimePool pool = mstd::primes::sieve(limit, include_two);
  mstd::primes::PrimeSearchOptions options;
  options.min_card = no_min_card ? 1 : min_card;
  options.threads = threads;
  options.allow_large_pool = force;
  options.checkpoint_path = checkpoint;
  options.checkpoint_interval_s = interval;
  mstd::primes::PrimeSearchReport report =
      mstd::primes::search_prime_mstd(pool, options);
  mstd::primes::check_two_exclusion(report);

  Json result = mstd::json_of(report);
  if (!list) result.erase("mstd_sets");
  Json params{{"max", limit},        {"min_card", options.min_card},
              {"list", list},        {"threads", threads},
              {"include_two", include_two}};
  output.emit("primes search", params, result, report.elapsed_ms,
              primes_text(report, list), roster_lines(report.mstd_sets));
  return kExitOk;
}

int run_primes_admissible(const std::string& tuple_arg, const Output& output) {
  const auto t0 = std::chrono::steady_clock::now();
  mstd::primes::TupleSpec tuple(parse_int_list(tuple_arg));
  const bool ok = mstd::primes::is_admissible(tuple);
  Json result{{"tuple", tuple.offsets}, {"admissible", ok}};
  std::ostringstream text;
  text << (ok ? "admissible" : "not admissible") << '\n';
  std::ostringstream csv;
  csv << "admissible\n" << (ok ? "true" : "false") << '\n';
  output.emit("primes admissible", Json{{"tuple", tuple_arg}}, result,
              ms_since(t0), text.str(), csv.str());
  return kExitOk;
}

int run_primes_match(const std::string& tuple_arg, std::int64_t nmax,
                     const Output& output) {
  const auto t0 = std::chrono::steady_clock::now();
  mstd::primes::TupleSpec tuple(parse_int_list(tuple_arg));
  const auto match = mstd::primes::find_match(tuple, nmax);
  Json result;
  result["tuple"] = tuple.offsets;
  result["nmax"] = nmax;
  result["match"] = match.has_value() ? Json(*match) : Json(nullptr);
  if (match) {
    Json primes_json = Json::array();
    for (std::int64_t b : tuple.offsets) primes_json.push_back(b + *match);
    result["primes"] = std::move(primes_json);
  }
  std::ostringstream text;
  if (match) {
    text << "smallest match: " << *match << '\n' << "primes:";
    for (std::int64_t b : tuple.offsets) text << ' ' << b + *match;
    text << '\n';
  } else {
    text << "no match up to " << nmax << '\n';
  }
  std::ostringstream csv;
  csv << "match\n" << (match ? std::to_string(*match) : "none") << '\n';
  output.emit("primes match", Json{{"tuple", tuple_arg}, {"nmax", nmax}},
              result, ms_since(t0), text.str(), csv.str());
  return kExitOk;
}

int run_primes_verify_exclusion(const std::string& report_path,
                                const Output& output) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ifstream in(report_path);
  if (!in) {
    std::cerr << "error: cannot open report file " << report_path << '\n';
    return kExitUsage;
  }
  Json envelope;
  in >> envelope;
  const Json& body = envelope.contains("result") ? envelope["result"] : envelope;
  if (!body.contains("mstd_sets")) {
    std::cerr << "error: report has no mstd_sets (rerun primes search with "
                 "--list)\n";
    return kExitUsage;
  }
  mstd::primes::PrimeSearchReport report;
  report.pool.limit = body["pool"]["limit"].get<std::int64_t>();
  report.pool.include_two = body["pool"]["include_two"].get<bool>();
  for (const Json& arr : body["mstd_sets"]) {
    report.mstd_sets.emplace_back(arr.get<std::vector<std::int64_t>>());
  }
  report.count = report.mstd_sets.size();
  const bool ok = mstd::primes::check_two_exclusion(report);
  Json result{{"sets_checked", report.mstd_sets.size()},
              {"two_exclusion_ok", ok}};
  std::ostringstream text;
  text << "checked " << report.mstd_sets.size() << " sets: "
       << (ok ? "two-exclusion holds" : "TWO-EXCLUSION FAILED") << '\n';
  std::ostringstream csv;
  csv << "two_exclusion_ok\n" << (ok ? "true" : "false") << '\n';
  output.emit("primes verify-exclusion", Json{{"from", report_path}}, result,
              ms_since(t0), text.str(), csv.str());
  return ok ? kExitOk : kExitFalsified;
}

// ---- reproduce -------------------------------------------------------------

struct Criterion {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Naive from-scratch classification used only for the built-in
// self-verification; deliberately separate from the library paths.
mstd::Classification naive_classify(std::span<const std::int64_t> a) {
  std::set<std::int64_t> sums, diffs;
  for (std::int64_t x : a) {
    for (std::int64_t y : a) {
      sums.insert(x + y);
      diffs.insert(x - y);
    }
  }
  mstd::Classification c;
  c.sum_card = static_cast<std::int64_t>(sums.size());
  c.diff_card = static_cast<std::int64_t>(diffs.size());
  c.margin = c.sum_card - c.diff_card;
  c.verdict = c.margin > 0   ? mstd::Verdict::sum_dominant
              : c.margin < 0 ? mstd::Verdict::difference_dominant
                             : mstd::Verdict::balanced;
  return c;
}

Json strip_elapsed(Json j) {
  j.erase("elapsed_ms");
  return j;
}

std::vector<Criterion> run_reproduce_checks(bool quick, std::uint64_t seed,
                                            int threads) {
  namespace search = mstd::search;
  namespace primes = mstd::primes;
  namespace families = mstd::families;
  std::vector<Criterion> out;
  const FiniteSet theorem2_set{{3, 5, 7, 13, 17, 19, 23, 43, 47, 53, 59, 61,
                                67, 71, 73}};

  {  // 1: smallest prime sum-dominant set, and nothing below 73
    Criterion c;
      c.name = "1. prime search at 73: expected unique minimal set";
    primes::PrimeSearchOptions options;
    options.threads = threads;
    auto at73 = primes::search_prime_mstd(primes::sieve(73), options);
    auto at71 = primes::search_prime_mstd(primes::sieve(71), options);
    const bool expected_min = at73.min_by_max.size() == 1 &&
                              at73.min_by_max.front() == theorem2_set &&
                              at73.unique_min;
    c.pass = expected_min && at71.count == 0;
    std::ostringstream os;
    os << "sets with max 73: " << at73.min_by_max.size() << " (";
    for (const FiniteSet& s : at73.min_by_max) os << mstd::format_roster(s) << ' ';
    os << "), count below 73: " << at71.count;
    c.detail = os.str();
    out.push_back(std::move(c));
  }

  if (!quick) {  // 2: census at 109
    Criterion c;
      c.name = "2. census at 109: 2725 sets, margin <= 4, two-exclusion";
    primes::PrimeSearchOptions options;
    options.threads = threads;
    auto census = primes::search_prime_mstd(primes::sieve(109), options);
    const bool exclusion = primes::check_two_exclusion(census);
    c.pass = census.count == 2725 && census.max_margin <= 4 && exclusion;
    std::ostringstream os;
    os << "count=" << census.count << " max_margin=" << census.max_margin
       << " two_exclusion=" << (exclusion ? "ok" : "failed");
    c.detail = os.str();
    out.push_back(std::move(c));
  }

  {  // 3: no 6-element sum-dominant set at desk diameter
    Criterion c;
      c.name = "3. no sum-dominant 6-set";
    const std::int64_t diameter = quick ? 25 : 36;
    auto r = search::verify_no_mstd(6, diameter, threads);
    c.pass = r.mstd_found.empty();
    std::ostringstream os;
    os << "diameter<=" << diameter << " enumerated=" << r.sets_enumerated
       << " found=" << r.mstd_found.size();
    c.detail = os.str();
    out.push_back(std::move(c));
  }

  if (!quick) {  // 4: 8-element threshold
    Criterion c;
      c.name = "4. 8-element threshold at diameters 13/14, 7-set check";
    auto seven = search::verify_no_mstd(7, 24, threads);
    auto found14 = search::find_mstd(8, 14, threads);
    auto found13 = search::find_mstd(8, 13, threads);
    const FiniteSet minimal{{0, 2, 3, 4, 7, 11, 12, 14}};
    const bool contains_minimal =
        std::find(found14.mstd_found.begin(), found14.mstd_found.end(),
                  minimal) != found14.mstd_found.end();
    c.pass = seven.mstd_found.empty() && contains_minimal &&
             !found14.mstd_found.empty() && found13.mstd_found.empty();
    std::ostringstream os;
    os << "n=7 found=" << seven.mstd_found.size()
       << " n=8 D=14 found=" << found14.mstd_found.size()
       << " D=13 found=" << found13.mstd_found.size();
    c.detail = os.str();
    out.push_back(std::move(c));
  }

  {  // 5: family grid
    Criterion c;
      c.name = "5. family grid has no sum-dominant instance";
    const std::int64_t pmax = quick ? 10 : 30;
    std::uint64_t violations = 0, instances = 0;
    for (int id = 1; id <= families::kFamilyCount; ++id) {
      auto r = families::verify_family(id, pmax);
      violations += r.violations.size();
      instances += r.instances_checked;
    }
    c.pass = violations == 0;
    std::ostringstream os;
    os << "pmax=" << pmax << " instances=" << instances
       << " violations=" << violations;
    c.detail = os.str();
    out.push_back(std::move(c));
  }

  if (!quick) {
    {  // 6: helper-set regressions
      Criterion c;
      c.name = "6. helper sets: {0,1,2,4} = (8,9,-1); {0,2,3,4} surplus 3";
      auto k = mstd::classify(FiniteSet{{0, 1, 2, 4}});
      auto k4 = mstd::classify(FiniteSet{{0, 2, 3, 4}});
      const bool first = k.sum_card == 8 && k.diff_card == 9 && k.margin == -1;
      const bool second = k4.diff_card - k4.sum_card == 3;
      c.pass = first && second;
      std::ostringstream os;
      os << "{0,1,2,4}=(" << k.sum_card << ',' << k.diff_card << ',' << k.margin
         << "); {0,2,3,4} diff-sum=" << k4.diff_card - k4.sum_card
         << " (expected 3)";
      c.detail = os.str();
      out.push_back(std::move(c));
    }
    {  // 7: named sum-dominant sets
      Criterion c;
      c.name = "7. named sets classify as sum-dominant";
      const std::vector<FiniteSet> sets = {
          mstd::families::build_ap_plus(7, 1, 11, {0, 1, 3, 24}),
          FiniteSet{{19, 79, 109, 139, 229, 349, 379, 439}},
          FiniteSet{{103, 127, 151, 199, 211, 223, 283, 307, 331}},
          FiniteSet{{23, 47, 59, 71, 89, 107, 137, 149, 173}},
      };
      c.pass = true;
      for (const FiniteSet& s : sets) {
        if (mstd::classify(s).verdict != mstd::Verdict::sum_dominant) {
          c.pass = false;
        }
      }
      c.detail = "4 sets checked";
      out.push_back(std::move(c));
    }
    {  // 8: collision-excess bounds
      Criterion c;
      c.name = "8. collision-excess bounds report zero violations";
      auto six = search::check_collision_bounds(6, 25, threads);
      auto seven = search::check_collision_bounds(7, 18, threads);
      c.pass = six.inequality_violations.empty() &&
               seven.inequality_violations.empty();
      std::ostringstream os;
      os << "n=6 violations=" << six.inequality_violations.size();
      if (!six.inequality_violations.empty()) {
        os << " (first " << mstd::format_roster(six.inequality_violations[0])
           << ")";
      }
      os << ", n=7 violations=" << seven.inequality_violations.size();
      c.detail = os.str();
      out.push_back(std::move(c));
    }
    {  // 9: symmetric sets balanced; 4-term AP implies margin <= 0
      Criterion c;
      c.name = "9. symmetric balanced; 4-AP 6-sets never sum-dominant";
      bool ok = true;
      for (std::uint32_t mask = 1; mask < (1u << 17) && ok; ++mask) {
        std::vector<std::int64_t> v;
        for (int i = 0; i < 17; ++i) {
          if (mask >> i & 1) v.push_back(i);
        }
        FiniteSet a{v};
        if (mstd::symmetry_center(a) && mstd::classify(a).margin != 0) ok = false;
      }
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<int> size_dist(1, 8);
      std::uniform_int_distribution<std::int64_t> value_dist(0, 2000);
      for (int iter = 0; iter < 10000 && ok; ++iter) {
        std::vector<std::int64_t> b;
        const int n = size_dist(rng);
        for (int i = 0; i < n; ++i) b.push_back(value_dist(rng));
        const std::int64_t center = 2000 + value_dist(rng);
        std::vector<std::int64_t> v = b;
        for (std::int64_t x : b) v.push_back(center - x);
        if (mstd::classify(FiniteSet::from_values(v)).margin != 0) ok = false;
      }
      auto prop4 = search::check_four_ap(30, threads);
      c.pass = ok && prop4.mstd_found.empty();
      std::ostringstream os;
      os << "symmetric ok=" << (ok ? "yes" : "no")
         << " 4-AP violators=" << prop4.mstd_found.size();
      c.detail = os.str();
      out.push_back(std::move(c));
    }
    {  // 10: oracle equivalence and determinism
      Criterion c;
      c.name = "10. naive/bit-vector agreement and parallel determinism";
      bool ok = true;
      for (std::uint32_t mask = 1; mask < (1u << 15) && ok; ++mask) {
        std::vector<std::int64_t> v;
        for (int i = 0; i < 15; ++i) {
          if (mask >> i & 1) v.push_back(i);
        }
        if (naive_classify(v) != mstd::classify(FiniteSet{v})) ok = false;
      }
      std::mt19937_64 rng(seed + 1);
      std::uniform_int_distribution<int> size_dist(1, 12);
      std::uniform_int_distribution<std::int64_t> value_dist(0, 1000000);
      for (int iter = 0; iter < 10000 && ok; ++iter) {
        std::vector<std::int64_t> v;
        const int n = size_dist(rng);
        for (int i = 0; i < n; ++i) v.push_back(value_dist(rng));
        FiniteSet a = FiniteSet::from_values(v);
        std::vector<std::int64_t> sorted(a.elements().begin(),
                                         a.elements().end());
        if (naive_classify(sorted) != mstd::classify(a)) ok = false;
      }
      const Json f1 = strip_elapsed(mstd::json_of(search::find_mstd(8, 14, 1)));
      const Json f4 = strip_elapsed(mstd::json_of(search::find_mstd(8, 14, 4)));
      primes::PrimeSearchOptions o1, o4;
      o1.threads = 1;
      o4.threads = 4;
      Json p1 = strip_elapsed(
          mstd::json_of(primes::search_prime_mstd(primes::sieve(73), o1)));
      Json p4 = strip_elapsed(
          mstd::json_of(primes::search_prime_mstd(primes::sieve(73), o4)));
      const bool deterministic = f1.dump() == f4.dump() && p1.dump() == p4.dump();
      c.pass = ok && deterministic;
      std::ostringstream os;
      os << "oracle ok=" << (ok ? "yes" : "no")
         << " deterministic=" << (deterministic ? "yes" : "no");
      c.detail = os.str();
      out.push_back(std::move(c));
    }
    {  // 11: admissible tuple machinery
      Criterion c;
      c.name = "11. admissibility and matching integers";
      primes::TupleSpec a8x12({0, 24, 48, 96, 108, 120, 180, 204, 228});
      primes::TupleSpec a11x6({0, 24, 36, 48, 66, 84, 114, 126, 150});
      const auto m8 = primes::find_match(a8x12, 200);
      const auto m11 = primes::find_match(a11x6, 100);
      c.pass = primes::is_admissible(a8x12) && m8 == 103 && m11 == 23;
      std::ostringstream os;
      os << "admissible=" << (primes::is_admissible(a8x12) ? "yes" : "no")
         << " matches: " << (m8 ? std::to_string(*m8) : "none") << ", "
         << (m11 ? std::to_string(*m11) : "none");
      c.detail = os.str();
      out.push_back(std::move(c));
    }
  }
  return out;
}

int run_reproduce(bool quick, std::uint64_t seed, int threads,
                  const Output& output) {
  const auto checks = run_reproduce_checks(quick, seed, threads);
  int failures = 0;
  Json rows = Json::array();
  std::ostringstream text;
  std::ostringstream csv;
  csv << "criterion,pass,detail\n";
  for (const Criterion& c : checks) {
    if (!c.pass) ++failures;
    text << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " -- " << c.detail
         << '\n';
    rows.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    csv << '"' << c.name << "\"," << (c.pass ? "true" : "false") << ",\""
        << c.detail << "\"\n";
  }
  text << failures << " of " << checks.size() << " checks failed\n";
  Json result{{"checks", rows}, {"failures", failures}};
  // no timing in the payload: reproduce output is bit-stable across runs
  output.emit("reproduce",
              Json{{"quick", quick}, {"seed", seed}, {"threads", threads}},
              result, 0.0, text.str(), csv.str());
  return failures == 0 ? kExitOk : kExitFalsified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sum-dominant (MSTD) set toolkit"};
  app.require_subcommand(1);

  Output output;
  app.add_option("--format", output.format, "output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (0 = hardware)")
      ->envname("MSTD_THREADS");

  // classify / spohn / normalize
  std::string literal;
  CLI::App* classify_cmd = app.add_subcommand("classify", "classify a set");
  classify_cmd->add_option("set", literal, "set literal, {..} or (b|..)")
      ->required();
  CLI::App* spohn_cmd = app.add_subcommand("spohn", "convert between notations");
  spohn_cmd->add_option("set", literal)->required();
  CLI::App* normalize_cmd =
      app.add_subcommand("normalize", "canonical affine representative");
  normalize_cmd->add_option("set", literal)->required();

  // families
  CLI::App* families_cmd = app.add_subcommand("families", "set families");
  CLI::App* families_verify = families_cmd->add_subcommand(
      "verify", "classify a family over a parameter grid");
  std::string family_id = "all";
  std::int64_t pmax = 20;
  families_verify->add_option("--id", family_id, "family id 1..15 or 'all'");
  families_verify->add_option("--pmax", pmax, "parameter grid bound");
  families_cmd->require_subcommand(1);

  // search
  CLI::App* search_cmd = app.add_subcommand("search", "bounded-diameter searches");
  search_cmd->require_subcommand(1);
  int n = 6;
  std::int64_t diameter = 0;
  CLI::App* search_verify =
      search_cmd->add_subcommand("verify", "confirm no sum-dominant set exists");
  search_verify->add_option("--n", n)->required();
  search_verify->add_option("--diameter", diameter)->required();
  CLI::App* search_find =
      search_cmd->add_subcommand("find", "list canonical sum-dominant sets");
  search_find->add_option("--n", n)->required();
  search_find->add_option("--diameter", diameter)->required();
  CLI::App* search_lemmas = search_cmd->add_subcommand(
      "lemmas", "check the collision-excess sum bounds");
  search_lemmas->add_option("--n", n)->required();
  search_lemmas->add_option("--diameter", diameter)->required();
  CLI::App* search_prop4 = search_cmd->add_subcommand(
      "prop4", "verify 6-sets containing a 4-term AP are never sum-dominant");
  search_prop4->add_option("--diameter", diameter)->required();
  std::int64_t ap_len = 11, range = 13;
  int added = 4;
  CLI::App* search_ap = search_cmd->add_subcommand(
      "ap-plus", "adjoin elements to an arithmetic progression");
  search_ap->add_option("--ap-len", ap_len)->required();
  search_ap->add_option("--added", added)->required();
  search_ap->add_option("--range", range)->required();

  // primes
  CLI::App* primes_cmd = app.add_subcommand("primes", "prime-set searches");
  primes_cmd->require_subcommand(1);
  std::int64_t prime_max = 73;
  int min_card = 8;
  bool no_min_card = false, list_sets = false, include_two = false, force = false;
  std::string checkpoint;
  double checkpoint_interval = 5.0;
  CLI::App* primes_search =
      primes_cmd->add_subcommand("search", "census of sum-dominant prime subsets");
  primes_search->add_option("--max", prime_max, "prime pool limit")->required();
  primes_search->add_option("--min-card", min_card,
                            "smallest cardinality classified");
  primes_search->add_flag("--no-min-card", no_min_card,
                          "classify every subset size");
  primes_search->add_flag("--list", list_sets, "emit every set found");
  primes_search->add_flag("--include-two", include_two, "keep 2 in the pool");
  primes_search->add_flag("--force", force, "override the pool-size guard");
  primes_search->add_option("--checkpoint", checkpoint, "resumable state file");
  primes_search->add_option("--checkpoint-interval", checkpoint_interval,
                            "seconds between checkpoint flushes");
  std::string tuple_arg;
  CLI::App* primes_admissible =
      primes_cmd->add_subcommand("admissible", "admissibility of an offset tuple");
  primes_admissible->add_option("--tuple", tuple_arg, "comma-separated offsets")
      ->required();
  std::int64_t nmax = 500;
  CLI::App* primes_match =
      primes_cmd->add_subcommand("match", "smallest matching integer");
  primes_match->add_option("--tuple", tuple_arg)->required();
  primes_match->add_option("--nmax", nmax);
  std::string report_path;
  CLI::App* primes_exclusion = primes_cmd->add_subcommand(
      "verify-exclusion", "re-check the two-exclusion argument on a report");
  primes_exclusion->add_option("--from", report_path, "report JSON file")
      ->required();

  // reproduce
  bool quick = false;
  std::uint64_t seed = 20250811;
  CLI::App* reproduce_cmd =
      app.add_subcommand("reproduce", "run the verification suite");
  reproduce_cmd->add_flag("--quick", quick, "small grids only");
  reproduce_cmd->add_option("--seed", seed, "seed for randomized checks");

  // let --format/--threads appear after any subcommand
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* cmd) {
    cmd->fallthrough();
    for (CLI::App* sub :
         cmd->get_subcommands([](const CLI::App*) { return true; })) {
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (classify_cmd->parsed()) return run_classify(literal, output);
    if (spohn_cmd->parsed()) return run_spohn(literal, output);
    if (normalize_cmd->parsed()) return run_normalize(literal, output);
    if (families_verify->parsed()) {
      return run_families_verify(family_id, pmax, output);
    }
    if (search_verify->parsed()) {
      auto r = mstd::search::verify_no_mstd(n, diameter, threads);
      return emit_search(r, Json{{"n", n}, {"diameter", diameter}},
                         "search verify", "sum-dominant sets",
                         /*finding_falsifies=*/true, output);
    }
    if (search_find->parsed()) {
      auto r = mstd::search::find_mstd(n, diameter, threads);
      return emit_search(r, Json{{"n", n}, {"diameter", diameter}},
                         "search find", "sum-dominant sets",
                         /*finding_falsifies=*/false, output);
    }
    if (search_lemmas->parsed()) {
      auto r = mstd::search::check_collision_bounds(n, diameter, threads);
      return emit_search(r, Json{{"n", n}, {"diameter", diameter}},
                         "search lemmas", "sum-dominant sets",
                         /*finding_falsifies=*/true, output);
    }
    if (search_prop4->parsed()) {
      auto r = mstd::search::check_four_ap(diameter, threads);
      return emit_search(r, Json{{"diameter", diameter}}, "search prop4",
                         "sum-dominant sets with a 4-term AP",
                         /*finding_falsifies=*/true, output);
    }
    if (search_ap->parsed()) {
      auto r = mstd::search::verify_ap_plus(ap_len, added, range, threads);
      return emit_search(
          r, Json{{"ap_len", ap_len}, {"added", added}, {"range", range}},
          "search ap-plus", "sum-dominant unions",
          /*finding_falsifies=*/added <= 2, output);
    }
    if (primes_search->parsed()) {
      return run_primes_search(prime_max, include_two, min_card, no_min_card,
                               list_sets, force, checkpoint,
                               checkpoint_interval, threads, output);
    }
    if (primes_admissible->parsed()) {
      return run_primes_admissible(tuple_arg, output);
    }
    if (primes_match->parsed()) return run_primes_match(tuple_arg, nmax, output);
    if (primes_exclusion->parsed()) {
      return run_primes_verify_exclusion(report_path, output);
    }
    if (reproduce_cmd->parsed()) {
      return run_reproduce(quick, seed, threads, output);
    }
  } catch (const mstd::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n'
              << "hint: sets are written {2,3,9} or (2|1,6)\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
