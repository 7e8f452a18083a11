#include "textpart/text_norm.hpp"

namespace textpart {
namespace {

constexpr std::string_view kEmDash = "\xe2\x80\x94";

// Multi-byte marks stripped from token edges: curly quotes U+2018, U+2019,
// U+201C, U+201D and the ellipsis U+2026. All are "\xe2\x80" followed by
// one distinguishing byte.
constexpr bool is_edge_mark_tail(unsigned char b) noexcept {
  return b == 0x98 || b == 0x99 || b == 0x9c || b == 0x9d || b == 0xa6;
}

constexpr bool is_space_byte(unsigned char c) noexcept {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

bool starts_with_edge_mark(std::string_view s) noexcept {
  return s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xe2 &&
         static_cast<unsigned char>(s[1]) == 0x80 &&
         is_edge_mark_tail(static_cast<unsigned char>(s[2]));
}

bool ends_with_edge_mark(std::string_view s) noexcept {
  return s.size() >= 3 && starts_with_edge_mark(s.substr(s.size() - 3));
}

}  // namespace

bool is_clause_delimiter(unsigned char c) noexcept {
  switch (c) {
    case '.':
    case '!':
    case '?':
    case ';':
    case ':':
    case ',':
    case '(':
    case ')':
    case '[':
    case ']':
    case '{':
    case '}':
    case '"':
    case '\n':
      return true;
    default:
      return false;
  }
}

bool is_edge_punct(unsigned char c) noexcept {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
         (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

std::string normalize_token(std::string_view raw) {
  while (!raw.empty()) {
    if (is_edge_punct(static_cast<unsigned char>(raw.front()))) {
      raw.remove_prefix(1);
    } else if (starts_with_edge_mark(raw)) {
      raw.remove_prefix(3);
    } else {
      break;
    }
  }
  while (!raw.empty()) {
    if (is_edge_punct(static_cast<unsigned char>(raw.back()))) {
      raw.remove_suffix(1);
    } else if (ends_with_edge_mark(raw)) {
      raw.remove_suffix(3);
    } else {
      break;
    }
  }
  std::string out(raw);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
  }
  return out;
}

std::vector<SourceClause> tokenize_spans(std::string_view text) {
  std::vector<SourceClause> clauses;
  SourceClause clause;
  std::size_t tok_begin = 0;
  bool in_token = false;

  auto end_token = [&](std::size_t end) {
    if (!in_token) return;
    in_token = false;
    std::string norm = normalize_token(text.substr(tok_begin, end - tok_begin));
    if (!norm.empty()) {
      clause.tokens.push_back({std::move(norm), tok_begin, end});
    }
  };
  auto end_clause = [&](std::size_t end) {
    end_token(end);
    if (!clause.tokens.empty()) {
      clauses.push_back(std::move(clause));
      clause = {};
    }
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_clause_delimiter(c)) {
      end_clause(i);
      ++i;
    } else if (is_space_byte(c)) {
      end_token(i);
      ++i;
    } else if (text.substr(i, 3) == kEmDash) {
      end_clause(i);
      i += 3;
    } else {
      if (!in_token) {
        in_token = true;
        tok_begin = i;
      }
      ++i;
    }
  }
  end_clause(text.size());
  return clauses;
}

std::vector<Clause> tokenize(std::string_view text) {
  std::vector<Clause> out;
  for (auto& sc : tokenize_spans(text)) {
    Clause c;
    c.tokens.reserve(sc.tokens.size());
    for (auto& t : sc.tokens) c.tokens.push_back(std::move(t.surface));
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace textpart
