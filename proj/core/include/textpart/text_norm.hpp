#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace textpart {

// A token is a normalized word: lowercased (ASCII), non-empty, free of
// whitespace, with punctuation stripped from both ends. Internal
// apostrophes and hyphens survive ("don't", "well-known").
using Token = std::string;

struct Clause {
  std::vector<Token> tokens;
};

/// A token together with its byte range [begin, end) in the source text.
/// The range covers the raw word before edge stripping and case folding.
struct SourceToken {
  Token surface;
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct SourceClause {
  std::vector<SourceToken> tokens;
};

/// True for bytes that terminate a clause: . ! ? ; : , ( ) [ ] { } " and
/// newline. U+2014 (em dash) also terminates a clause; multi-byte marks
/// are handled inside the tokenizer.
bool is_clause_delimiter(unsigned char c) noexcept;

/// True for ASCII bytes stripped from token edges (all ASCII punctuation).
bool is_edge_punct(unsigned char c) noexcept;

/// Normalizes one raw word: strips edge punctuation (ASCII punctuation
/// plus curly quotes and the ellipsis), folds ASCII letters to lowercase.
/// Returns the empty string when nothing survives.
std::string normalize_token(std::string_view raw);

/// Splits UTF-8 text into clauses of normalized tokens.
std::vector<Clause> tokenize(std::string_view text);

/// As tokenize(), but each token keeps its source byte range. Used to map
/// character-level annotations onto token indices.
std::vector<SourceClause> tokenize_spans(std::string_view text);

}  // namespace textpart
