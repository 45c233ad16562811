#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cods/knowledge_base.hpp"
#include "cods/predicate.hpp"

namespace cods {

/// One mapping-block id per input construct, in construct order.
struct Assignment {
  std::vector<BlockId> block_ids;

  std::size_t size() const { return block_ids.size(); }
  bool operator==(const Assignment&) const = default;
};

struct PsoParams {
  std::size_t swarm_size = 30;
  std::size_t iterations = 200;
  double inertia = 0.729;
  double cognitive = 1.49445;
  double social = 1.49445;
  /// Velocity clamp; defaults to (M - 1) / 2, or 0.5 when M == 1.
  std::optional<double> v_max;
  std::uint64_t seed = 0;
};

struct SearchOutcome {
  Assignment best;
  double best_fitness = 0.0;
  std::size_t evaluations = 0;
  /// gbest fitness after initialization, then after every iteration.
  std::vector<double> per_iteration_best;
};

/// Fraction of constructs whose assigned block holds an exact match.
/// Throws std::invalid_argument for a length mismatch, an empty model or an
/// id that is not in `kb`.
double fitness(const Assignment& a, std::span<const ModelConstruct> constructs, const KnowledgeBase& kb);

/// Precomputed exact-match indicators, one row per construct and one column
/// per block (blocks in ascending id order). Fitness is separable, so this
/// table is all the search needs.
class ExactMatchTable {
 public:
  ExactMatchTable(std::span<const ModelConstruct> constructs, const KnowledgeBase& kb);

  std::size_t construct_count() const { return rows_; }
  std::size_t block_count() const { return cols_; }
  bool exact(std::size_t construct, std::size_t block_index) const { return bits_[construct * cols_ + block_index]; }
  /// Fitness of an assignment given as block indices (not ids).
  double fitness(std::span<const std::size_t> block_indices) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<char> bits_;
};

/// Particle swarm search over assignments. Positions are continuous in
/// [0, M-1] per construct and decode by rounding to a block index.
/// The same inputs and seed give a bit-identical outcome.
SearchOutcome pso_search(std::span<const ModelConstruct> constructs, const KnowledgeBase& kb,
                         const PsoParams& params);

/// Lowest-id exact block per construct (lowest id overall when none).
/// Fitness is separable, so this is a global optimum.
SearchOutcome greedy_oracle(std::span<const ModelConstruct> constructs, const KnowledgeBase& kb);

/// Exhaustive search over all M^N assignments; ties keep the
/// lexicographically smallest. Throws std::length_error past `cap`.
SearchOutcome brute_force_oracle(std::span<const ModelConstruct> constructs, const KnowledgeBase& kb,
                                 std::uint64_t cap = 1'000'000);

}  // namespace cods
