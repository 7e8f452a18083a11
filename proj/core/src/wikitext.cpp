#include "textpart/wikitext.hpp"

#include <string>

namespace textpart {

namespace {

// Streams wiki markup into clean text while collecting annotation byte
// ranges over that clean text. Apostrophe runs: 1 -> literal, 2 ->
// italics (dropped), 3 -> bold toggle, 4 -> literal ' plus bold toggle,
// 5+ -> bold toggle (italics dropped). Links may nest (e.g. image
// captions); the label of a link is the text after its last top-level
// pipe.
class WikiScanner {
 public:
  WikiScanner(std::string_view text, WikiMode mode) : text_(text), mode_(mode) {}

  void run() {
    scan(0, text_.size());
    if (bold_open_) {
      ++warnings_;  // unclosed bold run: text kept, no annotation
      bold_open_ = false;
    }
  }

  std::string_view clean() const { return clean_; }
  const std::vector<detail::ByteRange>& annotations() const {
    return annotations_;
  }
  std::size_t warnings() const { return warnings_; }

 private:
  // Scans [from, to); returns true when any link annotation was emitted.
  bool scan(std::size_t from, std::size_t to) {
    bool annotated = false;
    std::size_t i = from;
    while (i < to) {
      const char c = text_[i];
      if (c == '\'') {
        std::size_t run = 1;
        while (i + run < to && text_[i + run] == '\'') ++run;
        handle_quote_run(run);
        i += run;
      } else if (c == '[' && i + 1 < to && text_[i + 1] == '[') {
        std::size_t close = find_link_close(i + 2, to);
        if (close == to) {
          ++warnings_;  // unclosed link: skip the marker, keep the text
          i += 2;
          continue;
        }
        annotated |= emit_link(i + 2, close);
        i = close + 2;
      } else {
        clean_.push_back(c);
        ++i;
      }
    }
    return annotated;
  }

  void handle_quote_run(std::size_t run) {
    if (run == 1) {
      clean_.push_back('\'');
      return;
    }
    if (run == 2) return;  // italics
    if (run == 4) clean_.push_back('\'');
    if (!bold_open_) {
      bold_open_ = true;
      bold_start_ = clean_.size();
    } else {
      bold_open_ = false;
      if (mode_ == WikiMode::bold_spans && clean_.size() > bold_start_) {
        annotations_.push_back({bold_start_, clean_.size()});
      }
    }
  }

  // Returns the index of the matching "]]" or `to` when unbalanced.
  std::size_t find_link_close(std::size_t from, std::size_t to) const {
    std::size_t depth = 1;
    std::size_t i = from;
    while (i + 1 < to) {
      if (text_[i] == '[' && text_[i + 1] == '[') {
        ++depth;
        i += 2;
      } else if (text_[i] == ']' && text_[i + 1] == ']') {
        if (--depth == 0) return i;
        i += 2;
      } else {
        ++i;
      }
    }
    return to;
  }

  // content of the link is text_[from, close); emits its label.
  bool emit_link(std::size_t from, std::size_t close) {
    std::size_t label_start = from;
    std::size_t depth = 0;
    for (std::size_t i = from; i < close;) {
      if (text_[i] == '[' && i + 1 < close && text_[i + 1] == '[') {
        ++depth;
        i += 2;
      } else if (text_[i] == ']' && i + 1 < close && text_[i + 1] == ']') {
        --depth;
        i += 2;
      } else {
        if (depth == 0 && text_[i] == '|') label_start = i + 1;
        ++i;
      }
    }
    const std::size_t clean_start = clean_.size();
    const bool child_annotated = scan(label_start, close);
    if (mode_ == WikiMode::link_spans && !child_annotated &&
        clean_.size() > clean_start) {
      annotations_.push_back({clean_start, clean_.size()});
      return true;
    }
    return child_annotated;
  }

  std::string_view text_;
  WikiMode mode_;
  std::string clean_;
  std::vector<detail::ByteRange> annotations_;
  std::size_t warnings_ = 0;
  bool bold_open_ = false;
  std::size_t bold_start_ = 0;
};

}  // namespace

WikiExtraction extract_wikitext(std::string_view page, WikiMode mode) {
  WikiScanner scanner(page, mode);
  scanner.run();
  WikiExtraction out;
  out.warnings = scanner.warnings();
  out.examples =
      detail::build_examples(scanner.clean(), scanner.annotations(), out.warnings);
  return out;
}

}  // namespace textpart
