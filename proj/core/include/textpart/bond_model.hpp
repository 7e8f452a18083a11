#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "textpart/text_norm.hpp"

namespace textpart {

/// Ordered pair of adjacent tokens; (a,b) and (b,a) are distinct.
struct PairKey {
  Token left;
  Token right;

  bool operator==(const PairKey&) const = default;
  auto operator<=>(const PairKey&) const = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const noexcept;
};

struct PairCounts {
  std::uint64_t breaks = 0;
  std::uint64_t preserves = 0;

  std::uint64_t total() const noexcept { return breaks + preserves; }
};

/// Half-open token index range [begin, end).
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool operator==(const IndexRange&) const = default;
};

/// A training observation: a tokenized passage with phrase spans marked.
/// Spans are non-overlapping, at least two tokens long, and never cross a
/// clause boundary. clause_starts lists the index of each clause's first
/// token (so it begins with 0 whenever tokens is non-empty).
struct AnnotatedExample {
  std::vector<Token> tokens;
  std::vector<std::size_t> clause_starts;
  std::vector<IndexRange> spans;
};

/// Bond-breakage statistics over ordered word pairs. Every stored pair has
/// at least one observation; unobserved pairs report probability 1.
class BondModel {
 public:
  using Map = std::unordered_map<PairKey, PairCounts, PairKeyHash>;

  /// Breakage probability breaks/(breaks+preserves); 1 when unobserved.
  double q(const PairKey& key) const;
  double q(const Token& left, const Token& right) const;

  /// Adds raw counts for a pair. No-op when both are zero.
  void add(const PairKey& key, std::uint64_t breaks, std::uint64_t preserves);

  /// Applies one annotated example: adjacent pairs inside a span count as
  /// preserved; pairs with exactly one end inside a span (same clause)
  /// count as broken; everything else is untouched. Throws
  /// std::invalid_argument when the spans violate the example invariants.
  void train(const AnnotatedExample& example);

  /// Keywise count addition; commutative and associative.
  void merge_from(const BondModel& other);

  const PairCounts* find(const PairKey& key) const;
  std::size_t size() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return counts_.empty(); }
  const Map& counts() const noexcept { return counts_; }

  /// Entries sorted by (left, right); the on-disk row order.
  std::vector<std::pair<PairKey, PairCounts>> sorted_entries() const;

  /// TSV with header "left\tright\tf_break\tf_preserve", rows sorted.
  void save(std::ostream& out) const;

  /// Parses the TSV format; '#' comment lines and blank lines are skipped.
  /// Throws ParseError (with the offending line number) on malformed rows.
  static BondModel load(std::istream& in);

 private:
  Map counts_;
};

BondModel merge(BondModel a, const BondModel& b);

/// Fraction of pairs, among those stored in both models with at least
/// min_total observations in each, whose q values fall on the same side of
/// 0.5 (q = 0.5 counts as the break side). nullopt when no pair qualifies.
std::optional<double> agreement(const BondModel& a, const BondModel& b,
                                std::uint64_t min_total);

/// Result of parsing one line of the annotated training format, where
/// phrase spans are wrapped in braces: "The kids {had a ball} playing...".
/// One example is produced per clause containing at least one usable span.
/// Spans that normalize to fewer than two tokens are dropped with a
/// warning; unbalanced or nested braces throw ParseError (line 1; callers
/// rethrow with the real line number).
struct AnnotatedParse {
  std::vector<AnnotatedExample> examples;
  std::size_t warnings = 0;
};

AnnotatedParse parse_annotated_line(std::string_view line);

namespace detail {
// Maps annotation byte ranges in `text` onto per-clause examples.
// Shared by the annotated-line parser and the wikitext extractor.
struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};
std::vector<AnnotatedExample> build_examples(
    std::string_view text, const std::vector<ByteRange>& annotations,
    std::size_t& warnings);
}  // namespace detail

}  // namespace textpart
