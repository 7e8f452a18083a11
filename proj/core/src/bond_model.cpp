#include "textpart/bond_model.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "textpart/error.hpp"
#include "textpart/random.hpp"

namespace textpart {

namespace {

constexpr std::string_view kHeader = "left\tright\tf_break\tf_preserve";

enum class BondFlag : unsigned char { none, preserve, brk };

std::uint64_t parse_count(std::string_view field, std::size_t line,
                          std::string_view what) {
  std::uint64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || field.empty()) {
    throw ParseError(line, "invalid " + std::string(what) + " count '" +
                               std::string(field) + "'");
  }
  return value;
}

void validate_token(std::string_view tok, std::size_t line,
                    std::string_view what) {
  if (tok.empty()) throw ParseError(line, "empty " + std::string(what) + " token");
  if (normalize_token(tok) != tok) {
    throw ParseError(line, std::string(what) + " token '" + std::string(tok) +
                               "' is not in normalized form");
  }
  for (char c : tok) {
    if (c == ' ' || c == '\t' || static_cast<unsigned char>(c) < 0x20) {
      throw ParseError(line, std::string(what) + " token contains whitespace");
    }
  }
}

}  // namespace

std::size_t PairKeyHash::operator()(const PairKey& k) const noexcept {
  const std::hash<std::string> h;
  return mix64(h(k.left) ^ (h(k.right) * 0x9e3779b97f4a7c15ULL));
}

double BondModel::q(const PairKey& key) const {
  auto it = counts_.find(key);
  if (it == counts_.end()) return 1.0;
  const auto& c = it->second;
  return static_cast<double>(c.breaks) / static_cast<double>(c.total());
}

double BondModel::q(const Token& left, const Token& right) const {
  return q(PairKey{left, right});
}

void BondModel::add(const PairKey& key, std::uint64_t breaks,
                    std::uint64_t preserves) {
  if (breaks == 0 && preserves == 0) return;
  auto& c = counts_[key];
  c.breaks += breaks;
  c.preserves += preserves;
}

void BondModel::train(const AnnotatedExample& example) {
  const std::size_t n = example.tokens.size();
  for (const auto& span : example.spans) {
    if (span.size() < 2 || span.end > n) {
      throw std::invalid_argument("annotated span out of bounds or too short");
    }
  }
  auto spans = example.spans;
  std::sort(spans.begin(), spans.end(),
            [](const IndexRange& a, const IndexRange& b) {
              return a.begin < b.begin;
            });
  for (std::size_t s = 1; s < spans.size(); ++s) {
    if (spans[s].begin < spans[s - 1].end) {
      throw std::invalid_argument("annotated spans overlap");
    }
  }

  // clause id per token, from the sorted clause starts
  auto clause_of = [&](std::size_t i) {
    const auto& starts = example.clause_starts;
    auto it = std::upper_bound(starts.begin(), starts.end(), i);
    return static_cast<std::size_t>(it - starts.begin());
  };
  for (const auto& span : spans) {
    if (clause_of(span.begin) != clause_of(span.end - 1)) {
      throw std::invalid_argument("annotated span crosses a clause boundary");
    }
  }

  if (n < 2) return;
  std::vector<BondFlag> bond(n - 1, BondFlag::none);
  for (const auto& span : spans) {
    for (std::size_t i = span.begin; i + 1 < span.end; ++i) {
      bond[i] = BondFlag::preserve;
    }
    if (span.begin > 0 && clause_of(span.begin - 1) == clause_of(span.begin)) {
      bond[span.begin - 1] = BondFlag::brk;
    }
    if (span.end < n && clause_of(span.end - 1) == clause_of(span.end)) {
      bond[span.end - 1] = BondFlag::brk;
    }
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (bond[i] == BondFlag::none) continue;
    PairKey key{example.tokens[i], example.tokens[i + 1]};
    if (bond[i] == BondFlag::preserve) {
      add(key, 0, 1);
    } else {
      add(key, 1, 0);
    }
  }
}

void BondModel::merge_from(const BondModel& other) {
  for (const auto& [key, c] : other.counts_) {
    add(key, c.breaks, c.preserves);
  }
}

BondModel merge(BondModel a, const BondModel& b) {
  a.merge_from(b);
  return a;
}

const PairCounts* BondModel::find(const PairKey& key) const {
  auto it = counts_.find(key);
  return it == counts_.end() ? nullptr : &it->second;
}

std::vector<std::pair<PairKey, PairCounts>> BondModel::sorted_entries() const {
  std::vector<std::pair<PairKey, PairCounts>> rows(counts_.begin(),
                                                   counts_.end());
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return rows;
}

void BondModel::save(std::ostream& out) const {
  out << kHeader << '\n';
  for (const auto& [key, c] : sorted_entries()) {
    out << key.left << '\t' << key.right << '\t' << c.breaks << '\t'
        << c.preserves << '\n';
  }
}

BondModel BondModel::load(std::istream& in) {
  BondModel model;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kHeader) {
        throw ParseError(lineno, "expected header '" + std::string(kHeader) +
                                     "', got '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      auto tab = rest.find('\t');
      if (tab == std::string_view::npos) {
        fields.push_back(rest);
        break;
      }
      fields.push_back(rest.substr(0, tab));
      rest.remove_prefix(tab + 1);
    }
    if (fields.size() != 4) {
      throw ParseError(lineno, "expected 4 tab-separated fields, got " +
                                   std::to_string(fields.size()));
    }
    validate_token(fields[0], lineno, "left");
    validate_token(fields[1], lineno, "right");
    PairCounts c;
    c.breaks = parse_count(fields[2], lineno, "f_break");
    c.preserves = parse_count(fields[3], lineno, "f_preserve");
    if (c.total() == 0) {
      throw ParseError(lineno, "pair with zero total count");
    }
    PairKey key{std::string(fields[0]), std::string(fields[1])};
    if (model.find(key)) {
      throw ParseError(lineno, "duplicate pair (" + key.left + ", " +
                                   key.right + ")");
    }
    model.add(key, c.breaks, c.preserves);
  }
  if (!header_seen) {
    throw ParseError(lineno == 0 ? 1 : lineno, "missing q-table header");
  }
  return model;
}

std::optional<double> agreement(const BondModel& a, const BondModel& b,
                                std::uint64_t min_total) {
  std::uint64_t eligible = 0;
  std::uint64_t same = 0;
  const BondModel& small = a.size() <= b.size() ? a : b;
  const BondModel& large = a.size() <= b.size() ? b : a;
  for (const auto& [key, ca] : small.counts()) {
    if (ca.total() < min_total) continue;
    const PairCounts* cb = large.find(key);
    if (!cb || cb->total() < min_total) continue;
    ++eligible;
    const bool side_a = small.q(key) >= 0.5;
    const bool side_b = large.q(key) >= 0.5;
    if (side_a == side_b) ++same;
  }
  if (eligible == 0) return std::nullopt;
  return static_cast<double>(same) / static_cast<double>(eligible);
}

namespace detail {

std::vector<AnnotatedExample> build_examples(
    std::string_view text, const std::vector<ByteRange>& annotations,
    std::size_t& warnings) {
  std::vector<AnnotatedExample> out;
  if (annotations.empty()) return out;
  auto anns = annotations;
  std::sort(anns.begin(), anns.end(),
            [](const ByteRange& a, const ByteRange& b) {
              return a.begin < b.begin;
            });
  const auto clauses = tokenize_spans(text);

  std::size_t ci = 0, ti = 0;  // monotone cursor over clause tokens
  std::ptrdiff_t open_idx = -1;
  std::size_t open_clause = 0;
  std::size_t open_end_tok = 0;  // first token index after the last span

  for (const auto& ann : anns) {
    while (ci < clauses.size()) {
      const auto& toks = clauses[ci].tokens;
      while (ti < toks.size() && toks[ti].end <= ann.begin) ++ti;
      if (ti < toks.size()) break;
      ti = 0;
      ++ci;
    }
    if (ci >= clauses.size()) {
      ++warnings;  // annotation past the last token
      continue;
    }
    const auto& toks = clauses[ci].tokens;
    std::size_t first = ti;
    std::size_t last = ti;
    while (last < toks.size() && toks[last].begin < ann.end) ++last;
    // annotation reaching into the next clause is truncated here
    if (last == toks.size() && ci + 1 < clauses.size() &&
        !clauses[ci + 1].tokens.empty() &&
        clauses[ci + 1].tokens.front().begin < ann.end) {
      ++warnings;
    }
    if (open_idx >= 0 && open_clause == ci && first < open_end_tok) {
      first = open_end_tok;  // annotation boundary fell inside a token
    }
    if (last < first + 2) {
      ++warnings;  // fewer than two tokens survive
      continue;
    }
    if (open_idx < 0 || open_clause != ci) {
      AnnotatedExample ex;
      ex.clause_starts = {0};
      ex.tokens.reserve(toks.size());
      for (const auto& t : toks) ex.tokens.push_back(t.surface);
      out.push_back(std::move(ex));
      open_idx = static_cast<std::ptrdiff_t>(out.size()) - 1;
      open_clause = ci;
    }
    out[static_cast<std::size_t>(open_idx)].spans.push_back({first, last});
    open_end_tok = last;
  }
  return out;
}

}  // namespace detail

AnnotatedParse parse_annotated_line(std::string_view line) {
  std::string clean;
  clean.reserve(line.size());
  std::vector<detail::ByteRange> ranges;
  std::size_t open_at = 0;
  bool open = false;
  for (char ch : line) {
    if (ch == '{') {
      if (open) throw ParseError(1, "nested '{' in annotated line");
      open = true;
      open_at = clean.size();
    } else if (ch == '}') {
      if (!open) throw ParseError(1, "unmatched '}' in annotated line");
      open = false;
      ranges.push_back({open_at, clean.size()});
    } else {
      clean.push_back(ch);
    }
  }
  if (open) throw ParseError(1, "unclosed '{' in annotated line");

  AnnotatedParse parsed;
  parsed.examples = detail::build_examples(clean, ranges, parsed.warnings);
  return parsed;
}

}  // namespace textpart
