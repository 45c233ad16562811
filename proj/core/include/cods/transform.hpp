#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cods/knowledge_base.hpp"
#include "cods/predicate.hpp"
#include "cods/search.hpp"

namespace cods {

enum class OutcomeStatus { exact, nearest, unmatched };

const char* to_string(OutcomeStatus status);

/// Literal written in place of a target placeholder that nothing bound.
inline constexpr std::string_view kTodoLiteral = "TODO";

struct ConstructOutcome {
  std::size_t construct_index = 0;
  Predicate construct;
  OutcomeStatus status = OutcomeStatus::unmatched;
  /// 1 for exact, the similarity for nearest, the best (sub-threshold) score
  /// for unmatched.
  double score = 0.0;
  std::optional<BlockId> used_block;
  std::optional<std::size_t> used_entry;
  std::vector<Predicate> code_predicates;
};

struct MismatchDetail {
  std::size_t construct_index = 0;
  std::string construct;
  BlockId assigned_block = 0;
  double best_score = 0.0;
  std::optional<BlockId> suggested_block;
  std::optional<std::size_t> suggested_entry;
};

/// The step-3 report, one field per numbered section.
struct TransformReport {
  std::size_t construct_count = 0;
  std::size_t block_count = 0;
  double best_fitness = 0.0;
  Assignment assignment;
  std::size_t evaluations = 0;
  std::vector<MismatchDetail> mismatch_details;
};

struct TransformResult {
  std::vector<ConstructOutcome> outcomes;
  TransformReport report;
};

ConstructOutcome transform_one(const ModelConstruct& construct, const MappingBlock& assigned_block,
                               const KnowledgeBase& kb, double threshold);

/// Throws std::invalid_argument when the assignment length differs from the
/// construct count.
TransformResult transform_all(std::span<const ModelConstruct> constructs, const SearchOutcome& outcome,
                              const KnowledgeBase& kb, double threshold);

/// Contents of the `Predicates` output file.
std::string write_predicates_file(std::span<const ConstructOutcome> outcomes);

/// Contents of the step-3 `readme`.
std::string write_transform_report(const TransformReport& report);

/// A construct flagged in a `Predicates` file by a `% nearest` or
/// `% unmatched` comment.
struct FlaggedConstruct {
  OutcomeStatus status = OutcomeStatus::unmatched;
  Predicate construct;
  double score = 0.0;
  /// Indices into PredicatesFile::predicates derived from this construct.
  std::vector<std::size_t> predicate_indices;
};

struct PredicatesFile {
  std::vector<Predicate> predicates;
  std::vector<FlaggedConstruct> flagged;
};

/// Reads back a `Predicates` file. Throws ParseError on malformed lines.
PredicatesFile read_predicates_file(std::string_view text);

}  // namespace cods
