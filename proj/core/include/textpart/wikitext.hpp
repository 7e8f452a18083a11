#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "textpart/bond_model.hpp"

namespace textpart {

enum class WikiMode {
  bold_spans,  // '''...''' marks a phrase
  link_spans,  // [[target]] or [[target|label]] marks a phrase
};

struct WikiExtraction {
  std::vector<AnnotatedExample> examples;
  std::size_t warnings = 0;
};

/// Extracts phrase annotations from raw wiki markup. Both bold quotes and
/// links are stripped from the text in either mode; only the markup kind
/// selected by `mode` produces spans. Malformed markup (an unclosed bold
/// run or link) is skipped and counted as a warning, never fatal. When
/// links nest, only the innermost complete links are annotated.
WikiExtraction extract_wikitext(std::string_view page, WikiMode mode);

}  // namespace textpart
