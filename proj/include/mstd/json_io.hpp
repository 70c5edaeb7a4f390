#pragma once

#include <string_view>

#include "json.hpp"
#include "mstd/families.hpp"
#include "mstd/finite_set.hpp"
#include "mstd/primes.hpp"
#include "mstd/search.hpp"
#include "mstd/set_ops.hpp"

namespace mstd {

using Json = nlohmann::ordered_json;

Json json_of(const FiniteSet& set);
Json json_of(const FiniteSet& set, const Classification& classification);
Json json_of(const families::FamilyReport& report);
Json json_of(const search::SearchReport& report);
Json json_of(const primes::PrimeSearchReport& report);

/// Shared report envelope used by every CLI subcommand.
Json report_envelope(std::string_view command, Json params, Json result,
                     double elapsed_ms);

}  // namespace mstd
