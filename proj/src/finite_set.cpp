#include "mstd/finite_set.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace mstd {

namespace {

[[noreturn]] void fail_parse(std::string_view what, std::size_t pos) {
  std::ostringstream os;
  os << "parse error at position " << pos << ": " << what;
  throw ParseError(os.str());
}

void check_element(std::int64_t v, std::size_t pos) {
  if (v < 0) fail_parse("negative value not allowed", pos);
  if (v > FiniteSet::kMaxElement) fail_parse("value exceeds 2^62-1", pos);
}

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  void expect(char c, std::string_view what) {
    skip_ws();
    if (done() || text[pos] != c) fail_parse(what, pos);
    ++pos;
  }
  std::int64_t integer(bool allow_negative_token) {
    skip_ws();
    std::size_t start = pos;
    if (!done() && text[pos] == '-') ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail_parse("expected an integer", start);
    std::string_view token = text.substr(start, pos - start);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      fail_parse("bad integer token '" + std::string(token) + "'", start);
    }
    if (!allow_negative_token && value < 0) {
      fail_parse("negative value '" + std::string(token) + "' not allowed", start);
    }
    return value;
  }
};

}  // namespace

FiniteSet::FiniteSet(std::vector<std::int64_t> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw std::invalid_argument("FiniteSet: empty");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] < 0 || elements_[i] > kMaxElement) {
      throw std::invalid_argument("FiniteSet: element out of range");
    }
    if (i > 0 && elements_[i] <= elements_[i - 1]) {
      throw std::invalid_argument("FiniteSet: elements not strictly increasing");
    }
  }
}

FiniteSet FiniteSet::from_values(std::vector<std::int64_t> values,
                                 bool* had_duplicates) {
  std::sort(values.begin(), values.end());
  auto last = std::unique(values.begin(), values.end());
  if (had_duplicates) *had_duplicates = last != values.end();
  values.erase(last, values.end());
  return FiniteSet(std::move(values));
}

bool FiniteSet::contains(std::int64_t value) const {
  return std::binary_search(elements_.begin(), elements_.end(), value);
}

FiniteSet GapForm::to_set() const {
  if (base < 0) throw std::invalid_argument("GapForm: negative base");
  std::vector<std::int64_t> out;
  out.reserve(gaps.size() + 1);
  std::int64_t acc = base;
  out.push_back(acc);
  for (std::int64_t g : gaps) {
    if (g < 1) throw std::invalid_argument("GapForm: gaps must be positive");
    if (acc > FiniteSet::kMaxElement - g) {
      throw std::invalid_argument("GapForm: element exceeds 2^62-1");
    }
    acc += g;
    out.push_back(acc);
  }
  return FiniteSet(std::move(out));
}

GapForm to_spohn(const FiniteSet& set) {
  GapForm form;
  auto elems = set.elements();
  form.base = elems.front();
  form.gaps.reserve(elems.size() - 1);
  for (std::size_t i = 1; i < elems.size(); ++i) {
    form.gaps.push_back(elems[i] - elems[i - 1]);
  }
  return form;
}

FiniteSet parse_roster(std::string_view text, bool* duplicate_warning) {
  Cursor cur{text};
  cur.expect('{', "expected '{'");
  cur.skip_ws();
  if (!cur.done() && cur.peek() == '}') fail_parse("empty set", cur.pos);
  std::vector<std::int64_t> values;
  while (true) {
    std::size_t at = cur.pos;
    std::int64_t v = cur.integer(/*allow_negative_token=*/true);
    check_element(v, at);
    values.push_back(v);
    cur.skip_ws();
    if (cur.done()) fail_parse("expected ',' or '}'", cur.pos);
    if (cur.peek() == ',') {
      ++cur.pos;
      continue;
    }
    if (cur.peek() == '}') {
      ++cur.pos;
      break;
    }
    fail_parse("expected ',' or '}'", cur.pos);
  }
  cur.skip_ws();
  if (!cur.done()) fail_parse("trailing characters after '}'", cur.pos);
  return FiniteSet::from_values(std::move(values), duplicate_warning);
}

FiniteSet parse_spohn(std::string_view text) {
  Cursor cur{text};
  cur.expect('(', "expected '('");
  std::size_t base_at = cur.pos;
  GapForm form;
  form.base = cur.integer(/*allow_negative_token=*/true);
  check_element(form.base, base_at);
  cur.expect('|', "expected '|'");
  cur.skip_ws();
  if (!cur.done() && cur.peek() == ')') {
    ++cur.pos;
  } else {
    while (true) {
      std::size_t at = cur.pos;
      std::int64_t g = cur.integer(/*allow_negative_token=*/true);
      if (g <= 0) fail_parse("gaps must be positive", at);
      form.gaps.push_back(g);
      cur.skip_ws();
      if (cur.done()) fail_parse("expected ',' or ')'", cur.pos);
      if (cur.peek() == ',') {
        ++cur.pos;
        continue;
      }
      if (cur.peek() == ')') {
        ++cur.pos;
        break;
      }
      fail_parse("expected ',' or ')'", cur.pos);
    }
  }
  cur.skip_ws();
  if (!cur.done()) fail_parse("trailing characters after ')'", cur.pos);
  try {
    return form.to_set();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

FiniteSet parse_set(std::string_view text, bool* duplicate_warning) {
  if (duplicate_warning) *duplicate_warning = false;
  std::size_t i = 0;
  while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  if (i < text.size() && text[i] == '{') return parse_roster(text, duplicate_warning);
  if (i < text.size() && text[i] == '(') return parse_spohn(text);
  fail_parse("expected a set literal '{...}' or '(b|...)'", i);
}

std::string format_roster(const FiniteSet& set) {
  std::string out = "{";
  bool first = true;
  for (std::int64_t v : set.elements()) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(v);
  }
  out += '}';
  return out;
}

std::string format_spohn(const GapForm& form) {
  std::string out = "(";
  out += std::to_string(form.base);
  out += '|';
  bool first = true;
  for (std::int64_t g : form.gaps) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(g);
  }
  out += ')';
  return out;
}

std::string format_spohn(const FiniteSet& set) { return format_spohn(to_spohn(set)); }

}  // namespace mstd
