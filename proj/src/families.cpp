#include "mstd/families.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace mstd::families {

namespace {

using GapTerm = FamilySpec::GapTerm;

constexpr GapTerm D{1, 0, 0}, D2{2, 0, 0};
constexpr GapTerm A{0, 1, 0}, A2{0, 2, 0};
constexpr GapTerm B{0, 0, 1}, B2{0, 0, 2};
constexpr GapTerm AB{0, 1, 1}, A2B{0, 2, 1};

FamilySpec make(int id, std::array<GapTerm, 5> tpl, bool constrained,
                std::string_view display) {
  FamilySpec spec;
  spec.id = id;
  spec.gap_template = tpl;
  spec.constrained = constrained;
  spec.display = display;
  for (const GapTerm& t : tpl) {
    spec.uses_d |= t.d != 0;
    spec.uses_a |= t.a != 0;
    spec.uses_b |= t.b != 0;
  }
  if (constrained) spec.uses_d = spec.uses_a = spec.uses_b = true;
  return spec;
}

const std::array<FamilySpec, kFamilyCount>& all_specs() {
  static const std::array<FamilySpec, kFamilyCount> specs = {
      make(1, {D, D, D2, A, B}, true, "(0|d,d,2d,a,b), a+b=d"),
      make(2, {D, D, D2, D, A}, false, "(0|d,d,2d,d,a)"),
      make(3, {D, D, D2, A, D}, false, "(0|d,d,2d,a,d)"),
      make(4, {D2, D, D, A, D2}, false, "(0|2d,d,d,a,2d)"),
      make(5, {A, B, B, A, A}, false, "(0|a,b,b,a,a)"),
      make(6, {AB, A, A, B, AB}, false, "(0|a+b,a,a,b,a+b)"),
      make(7, {AB, A, A, B, A}, false, "(0|a+b,a,a,b,a)"),
      make(8, {A, A2, A, A, B}, false, "(0|a,2a,a,a,b)"),
      make(9, {AB, A, AB, A, B}, false, "(0|a+b,a,a+b,a,b)"),
      make(10, {AB, A2B, AB, A, B}, false, "(0|a+b,2a+b,a+b,a,b)"),
      make(11, {A, B, A, AB, A}, false, "(0|a,b,a,a+b,a)"),
      make(12, {A, B, AB, A, A}, false, "(0|a,b,a+b,a,a)"),
      make(13, {A2B, A, A, B, A}, false, "(0|2a+b,a,a,b,a)"),
      make(14, {AB, A, A, B, A2}, false, "(0|a+b,a,a,b,2a)"),
      make(15, {A, AB, A, B, A}, false, "(0|a,a+b,a,b,a)"),
  };
  return specs;
}

}  // namespace

const FamilySpec& family_spec(int id) {
  if (id < 1 || id > kFamilyCount) {
    throw std::invalid_argument("family id must be in 1..15");
  }
  return all_specs()[static_cast<std::size_t>(id - 1)];
}

FiniteSet build_family(int id, std::int64_t d, std::int64_t a, std::int64_t b) {
  const FamilySpec& spec = family_spec(id);
  if ((spec.uses_d && d < 1) || (spec.uses_a && a < 1) || (spec.uses_b && b < 1)) {
    std::ostringstream os;
    os << "family " << id << ": used parameters must be >= 1";
    throw std::invalid_argument(os.str());
  }
  if (spec.constrained && a + b != d) {
    std::ostringstream os;
    os << "family " << id << ": constraint a+b=d violated (a=" << a << ", b=" << b
       << ", d=" << d << ")";
    throw std::invalid_argument(os.str());
  }
  GapForm form;
  form.gaps.reserve(5);
  for (const FamilySpec::GapTerm& t : spec.gap_template) {
    form.gaps.push_back(t.d * d + t.a * a + t.b * b);
  }
  return form.to_set();
}

FamilyReport verify_family(int id, std::int64_t pmax) {
  if (pmax < 1) throw std::invalid_argument("pmax must be >= 1");
  const FamilySpec& spec = family_spec(id);
  FamilyReport report;
  report.id = id;
  report.max_margin_seen = std::numeric_limits<std::int64_t>::min();
  {
    std::ostringstream os;
    os << "used parameters in 1.." << pmax;
    if (spec.constrained) os << " with a+b=d";
    report.grid = os.str();
  }
  auto check = [&](std::int64_t d, std::int64_t a, std::int64_t b) {
    Classification c = classify(build_family(id, d, a, b));
    ++report.instances_checked;
    report.max_margin_seen = std::max(report.max_margin_seen, c.margin);
    if (c.margin > 0) report.violations.push_back({d, a, b});
  };
  if (spec.constrained) {
    for (std::int64_t d = 2; d <= pmax; ++d) {
      for (std::int64_t a = 1; a < d; ++a) check(d, a, d - a);
    }
  } else {
    const std::int64_t d_hi = spec.uses_d ? pmax : 0;
    const std::int64_t a_hi = spec.uses_a ? pmax : 0;
    const std::int64_t b_hi = spec.uses_b ? pmax : 0;
    for (std::int64_t d = spec.uses_d ? 1 : 0; d <= d_hi; ++d) {
      for (std::int64_t a = spec.uses_a ? 1 : 0; a <= a_hi; ++a) {
        for (std::int64_t b = spec.uses_b ? 1 : 0; b <= b_hi; ++b) check(d, a, b);
      }
    }
  }
  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

FiniteSet build_nathanson_star(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("build_nathanson_star: k must be >= 1");
  std::vector<std::int64_t> values = {0, 2};
  for (std::int64_t i = 0; i < k; ++i) values.push_back(4 * i + 3);
  values.push_back(4 * k);
  values.push_back(4 * k + 2);
  return FiniteSet::from_values(std::move(values));
}

FiniteSet build_ap_plus(std::int64_t ap_start, std::int64_t ap_step,
                        std::int64_t ap_len,
                        const std::vector<std::int64_t>& extras) {
  if (ap_len < 1) throw std::invalid_argument("build_ap_plus: ap_len must be >= 1");
  if (ap_step < 1) throw std::invalid_argument("build_ap_plus: ap_step must be >= 1");
  if (ap_start < 0) throw std::invalid_argument("build_ap_plus: ap_start must be >= 0");
  std::vector<std::int64_t> values;
  values.reserve(static_cast<std::size_t>(ap_len) + extras.size());
  std::int64_t v = ap_start;
  for (std::int64_t i = 0; i < ap_len; ++i, v += ap_step) {
    if (v > FiniteSet::kMaxElement) {
      throw std::invalid_argument("build_ap_plus: AP exceeds 2^62-1");
    }
    values.push_back(v);
  }
  std::vector<std::int64_t> colliding;
  for (std::int64_t e : extras) {
    if (e >= ap_start && e <= values.back() && (e - ap_start) % ap_step == 0) {
      colliding.push_back(e);
    }
  }
  if (!colliding.empty()) {
    std::ostringstream os;
    os << "build_ap_plus: extras overlap the AP:";
    for (std::int64_t e : colliding) os << ' ' << e;
    throw std::invalid_argument(os.str());
  }
  values.insert(values.end(), extras.begin(), extras.end());
  return FiniteSet::from_values(std::move(values));
}

}  // namespace mstd::families
