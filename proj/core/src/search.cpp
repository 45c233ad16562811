#include "cods/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace cods {

namespace {

void require_nonempty(std::span<const ModelConstruct> constructs) {
  if (constructs.empty()) throw std::invalid_argument("empty model: nothing to search");
}

// mt19937_64 output is fixed by the standard, unlike the distributions, so
// the unit interval is drawn by hand to keep seeded runs portable.
class UnitRng {
 public:
  explicit UnitRng(std::uint64_t seed) : engine_(seed) {}
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

Assignment to_assignment(std::span<const std::size_t> indices, const KnowledgeBase& kb) {
  Assignment a;
  a.block_ids.reserve(indices.size());
  for (std::size_t i : indices) a.block_ids.push_back(kb.blocks()[i].id);
  return a;
}

}  // namespace

double fitness(const Assignment& a, std::span<const ModelConstruct> constructs, const KnowledgeBase& kb) {
  require_nonempty(constructs);
  if (a.size() != constructs.size()) {
    throw std::invalid_argument("assignment length " + std::to_string(a.size()) + " does not match " +
                                std::to_string(constructs.size()) + " constructs");
  }
  std::size_t exact = 0;
  for (std::size_t i = 0; i < constructs.size(); ++i) {
    if (!kb.contains(a.block_ids[i])) {
      throw std::invalid_argument("assignment references unknown block id " + std::to_string(a.block_ids[i]));
    }
    if (find_exact_in_block(constructs[i], kb.block(a.block_ids[i]))) ++exact;
  }
  return static_cast<double>(exact) / static_cast<double>(constructs.size());
}

ExactMatchTable::ExactMatchTable(std::span<const ModelConstruct> constructs, const KnowledgeBase& kb)
    : rows_(constructs.size()), cols_(kb.block_count()), bits_(rows_ * cols_, 0) {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t b = 0; b < cols_; ++b) {
      bits_[i * cols_ + b] = find_exact_in_block(constructs[i], kb.blocks()[b]).has_value();
    }
  }
}

double ExactMatchTable::fitness(std::span<const std::size_t> block_indices) const {
  std::size_t exact = 0;
  for (std::size_t i = 0; i < rows_; ++i) exact += bits_[i * cols_ + block_indices[i]] ? 1 : 0;
  return static_cast<double>(exact) / static_cast<double>(rows_);
}

SearchOutcome pso_search(std::span<const ModelConstruct> constructs, const KnowledgeBase& kb,
                         const PsoParams& params) {
  require_nonempty(constructs);
  if (params.swarm_size < 1) throw std::invalid_argument("swarm size must be at least 1");
  if (params.iterations < 1) throw std::invalid_argument("iteration count must be at least 1");

  const std::size_t n = constructs.size();
  const std::size_t m = kb.block_count();
  const double upper = static_cast<double>(m - 1);
  const double v_max = params.v_max.value_or(m > 1 ? upper / 2.0 : 0.5);
  if (!(v_max > 0.0)) throw std::invalid_argument("v_max must be positive");

  const ExactMatchTable table(constructs, kb);
  UnitRng rng(params.seed);

  struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> best_position;
    double best_fitness = -1.0;
    std::vector<std::size_t> decoded;
    double fitness = 0.0;
  };

  auto decode = [&](Particle& p) {
    for (std::size_t d = 0; d < n; ++d) {
      auto idx = static_cast<std::size_t>(std::llround(p.position[d]));
      p.decoded[d] = std::min(idx, m - 1);
    }
  };

  SearchOutcome out;
  std::vector<Particle> swarm(params.swarm_size);
  for (auto& p : swarm) {
    p.position.resize(n);
    p.velocity.resize(n);
    p.decoded.resize(n);
    for (std::size_t d = 0; d < n; ++d) p.position[d] = rng() * upper;
    for (std::size_t d = 0; d < n; ++d) p.velocity[d] = (2.0 * rng() - 1.0) * v_max;
  }

  std::vector<double> gbest_position;
  std::vector<std::size_t> gbest_decoded;
  double gbest_fitness = -1.0;

  // Evaluation touches only the particle itself; merging runs in index order.
  auto evaluate_and_merge = [&]() {
    for (auto& p : swarm) {
      decode(p);
      p.fitness = table.fitness(p.decoded);
      ++out.evaluations;
    }
    for (auto& p : swarm) {
      if (p.fitness > p.best_fitness) {
        p.best_fitness = p.fitness;
        p.best_position = p.position;
      }
      if (p.fitness > gbest_fitness) {
        gbest_fitness = p.fitness;
        gbest_position = p.position;
        gbest_decoded = p.decoded;
      }
    }
    out.per_iteration_best.push_back(gbest_fitness);
  };

  evaluate_and_merge();

  for (std::size_t it = 0; it < params.iterations; ++it) {
    for (auto& p : swarm) {
      for (std::size_t d = 0; d < n; ++d) {
        const double r1 = rng();
        const double r2 = rng();
        double v = params.inertia * p.velocity[d] +
                   params.cognitive * r1 * (p.best_position[d] - p.position[d]) +
                   params.social * r2 * (gbest_position[d] - p.position[d]);
        v = std::clamp(v, -v_max, v_max);
        p.velocity[d] = v;
        p.position[d] = std::clamp(p.position[d] + v, 0.0, upper);
      }
    }
    evaluate_and_merge();
  }

  out.best = to_assignment(gbest_decoded, kb);
  out.best_fitness = gbest_fitness;
  return out;
}

SearchOutcome greedy_oracle(std::span<const ModelConstruct> constructs, const KnowledgeBase& kb) {
  require_nonempty(constructs);
  SearchOutcome out;
  out.best.block_ids.reserve(constructs.size());
  for (const auto& c : constructs) {
    BlockId chosen = kb.blocks().front().id;
    for (const auto& b : kb.blocks()) {
      if (find_exact_in_block(c, b)) {
        chosen = b.id;
        break;
      }
    }
    out.best.block_ids.push_back(chosen);
  }
  out.best_fitness = fitness(out.best, constructs, kb);
  out.evaluations = 1;
  out.per_iteration_best = {out.best_fitness};
  return out;
}

SearchOutcome brute_force_oracle(std::span<const ModelConstruct> constructs, const KnowledgeBase& kb,
                                 std::uint64_t cap) {
  require_nonempty(constructs);
  const std::size_t n = constructs.size();
  const std::size_t m = kb.block_count();

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / m) throw std::length_error("brute force search space exceeds cap of " + std::to_string(cap));
    total *= m;
  }

  SearchOutcome out;
  std::vector<std::size_t> digits(n, 0);
  Assignment current = to_assignment(digits, kb);
  out.best_fitness = -1.0;
  for (std::uint64_t k = 0; k < total; ++k) {
    double f = fitness(current, constructs, kb);
    ++out.evaluations;
    if (f > out.best_fitness) {
      out.best_fitness = f;
      out.best = current;
    }
    // Odometer increment with the last construct as the fastest digit, so
    // enumeration is lexicographic.
    for (std::size_t d = n; d-- > 0;) {
      if (++digits[d] < m) {
        current.block_ids[d] = kb.blocks()[digits[d]].id;
        break;
      }
      digits[d] = 0;
      current.block_ids[d] = kb.blocks()[0].id;
    }
  }
  out.per_iteration_best = {out.best_fitness};
  return out;
}

}  // namespace cods
