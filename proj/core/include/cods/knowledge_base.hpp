#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cods/predicate.hpp"

namespace cods {

/// Placeholder name -> bound argument.
using Substitution = std::map<std::string, Arg>;

enum class MatchKind { none, partial, exact };

const char* to_string(MatchKind kind);

struct MatchResult {
  MatchKind kind = MatchKind::none;
  double score = 0.0;
  BlockId block_id = 0;
  std::size_t entry_ordinal = 0;
  Substitution substitution;
};

/// Positional similarity between an input construct and an entry's source
/// pattern. Names must agree; each shared position scores 1 when the pattern
/// holds a placeholder or both sides hold equal literals, and the total is
/// divided by the larger arity. The first binding of a placeholder wins; a
/// later conflicting position scores 0.
///
/// `block_id` and `entry_ordinal` of the result are left at zero.
MatchResult match_score(const Predicate& construct, const Predicate& pattern);
MatchResult match_score(const ModelConstruct& construct, const MappingEntry& entry);

/// Replaces bound placeholders in `p`. Unbound placeholders become `fill`
/// when given, otherwise they are kept.
Predicate apply_substitution(const Predicate& p, const Substitution& s,
                             const std::optional<Arg>& fill = std::nullopt);

/// First entry in file order that matches exactly.
std::optional<MatchResult> find_exact_in_block(const ModelConstruct& construct,
                                               const MappingBlock& block);

class KnowledgeBase {
 public:
  struct Posting {
    BlockId block_id;
    std::size_t entry_ordinal;
  };

  /// Throws std::invalid_argument on an empty block list or duplicate ids.
  explicit KnowledgeBase(std::vector<MappingBlock> blocks);

  /// Blocks ordered by ascending id.
  const std::vector<MappingBlock>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t posting_count() const;

  /// Throws std::out_of_range for an unknown id.
  const MappingBlock& block(BlockId id) const;
  bool contains(BlockId id) const;
  /// Position of `id` in blocks(); throws std::out_of_range when unknown.
  std::size_t block_index(BlockId id) const;

  /// Postings for one (name, arity) key, ordered by (block id, entry ordinal).
  const std::vector<Posting>& postings(const std::string& name, std::size_t arity) const;

  /// Highest-scoring entry across the whole knowledge base regardless of any
  /// threshold; ties go to the lower block id, then the lower entry ordinal.
  /// Absent only when no entry shares the construct's name.
  std::optional<MatchResult> best_match(const ModelConstruct& construct) const;

 private:
  std::vector<MappingBlock> blocks_;
  std::map<BlockId, std::size_t> by_id_;
  std::map<std::pair<std::string, std::size_t>, std::vector<Posting>> index_;
};

KnowledgeBase build_kb(std::vector<MappingBlock> blocks);

/// Nearest match over every entry in the knowledge base, returned only when
/// its score reaches `threshold` (0 < threshold <= 1).
std::optional<MatchResult> find_nearest_in_kb(const ModelConstruct& construct,
                                              const KnowledgeBase& kb, double threshold);

}  // namespace cods
