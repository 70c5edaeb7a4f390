#include "mstd/json_io.hpp"

namespace mstd {

Json json_of(const FiniteSet& set) {
  return Json(std::vector<std::int64_t>(set.elements().begin(),
                                        set.elements().end()));
}

Json json_of(const FiniteSet& set, const Classification& classification) {
  Json j;
  j["set"] = json_of(set);
  j["spohn"] = format_spohn(set);
  j["sum_card"] = classification.sum_card;
  j["diff_card"] = classification.diff_card;
  j["margin"] = classification.margin;
  j["verdict"] = verdict_name(classification.verdict);
  return j;
}

Json json_of(const families::FamilyReport& report) {
  Json j;
  j["id"] = report.id;
  j["grid"] = report.grid;
  j["instances_checked"] = report.instances_checked;
  Json violations = Json::array();
  for (const auto& [d, a, b] : report.violations) {
    violations.push_back(Json{{"d", d}, {"a", a}, {"b", b}});
  }
  j["violations"] = std::move(violations);
  j["max_margin_seen"] = report.max_margin_seen;
  return j;
}

namespace {

Json sets_with_spohn(const std::vector<FiniteSet>& sets) {
  Json arr = Json::array();
  for (const FiniteSet& s : sets) {
    arr.push_back(Json{{"set", json_of(s)}, {"spohn", format_spohn(s)}});
  }
  return arr;
}

}  // namespace

Json json_of(const search::SearchReport& report) {
  Json j;
  j["op"] = report.op;
  j["params"] = Json{{"n", report.params.n},
                     {"diameter", report.params.diameter_max},
                     {"canonical_only", report.params.canonical_only},
                     {"filter", search::filter_name(report.params.filter)}};
  j["sets_enumerated"] = report.sets_enumerated;
  j["mstd_found"] = sets_with_spohn(report.mstd_found);
  Json histogram = Json::object();
  for (const auto& [margin, count] : report.margin_histogram) {
    histogram[std::to_string(margin)] = count;
  }
  j["margin_histogram"] = std::move(histogram);
  j["max_x_seen"] = report.max_x_seen;
  j["inequality_violations"] = sets_with_spohn(report.inequality_violations);
  j["elapsed_ms"] = report.elapsed_ms;
  return j;
}

Json json_of(const primes::PrimeSearchReport& report) {
  Json j;
  j["pool"] = Json{{"limit", report.pool.limit},
                   {"include_two", report.pool.include_two},
                   {"size", report.pool.primes.size()}};
  j["min_card"] = report.min_card;
  j["count"] = report.count;
  Json sets = Json::array();
  for (const FiniteSet& s : report.mstd_sets) sets.push_back(json_of(s));
  j["mstd_sets"] = std::move(sets);
  Json min_sets = Json::array();
  for (const FiniteSet& s : report.min_by_max) min_sets.push_back(json_of(s));
  j["min_by_max"] = std::move(min_sets);
  j["unique_min"] = report.unique_min;
  j["max_margin"] = report.max_margin;
  if (report.two_exclusion_ok.has_value()) {
    j["two_exclusion_ok"] = *report.two_exclusion_ok;
  } else {
    j["two_exclusion_ok"] = nullptr;
  }
  if (!report.checkpoint.path.empty()) {
    j["checkpoint"] = Json{{"path", report.checkpoint.path},
                           {"tasks_total", report.checkpoint.tasks_total},
                           {"tasks_resumed", report.checkpoint.tasks_resumed},
                           {"tasks_run", report.checkpoint.tasks_run},
                           {"complete", report.checkpoint.complete}};
  }
  j["complete"] = report.checkpoint.complete;
  j["elapsed_ms"] = report.elapsed_ms;
  return j;
}

Json report_envelope(std::string_view command, Json params, Json result,
                     double elapsed_ms) {
  Json j;
  j["command"] = command;
  j["params"] = std::move(params);
  j["result"] = std::move(result);
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

}  // namespace mstd
