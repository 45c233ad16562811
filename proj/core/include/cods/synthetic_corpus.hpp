#pragma once

// Deterministic generator for an elevator-control-system sized workload:
// 62 mapping blocks spread over 9 training files and a 364-construct model
// (12 classes, a 13-state / 27-transition state machine, ASL statement
// predicates). Eight constructs are deliberately outside the training data:
//
//   * 5 have a nearest match at or above 0.5, of which 4 yield the intended
//     code and 1 leaves a TODO hole;
//   * 3 have no match reaching 0.5.
//
// Every other construct has an exact match in at least one block.

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cods/predicate.hpp"

namespace cods {

struct SyntheticCorpus {
  /// (file name, file text) for each training file.
  std::vector<std::pair<std::string, std::string>> training_files;
  std::string model_text;

  std::vector<MappingBlock> blocks;
  std::vector<ModelConstruct> model;
  /// Intended code predicates per construct, used to judge correctness.
  std::vector<std::vector<Predicate>> reference;
  /// Constructs without an exact match anywhere, split by expected outcome.
  std::vector<std::size_t> nearest_correct;
  std::vector<std::size_t> nearest_incorrect;
  std::vector<std::size_t> unmatched;
};

inline constexpr std::uint64_t kDefaultCorpusSeed = 364;

SyntheticCorpus make_ecs_corpus(std::uint64_t seed = kDefaultCorpusSeed);

}  // namespace cods
