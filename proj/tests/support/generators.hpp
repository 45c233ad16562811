#pragma once

// Seeded random generators shared by the property tests and the acceptance
// runner. Draws are built directly on mt19937_64 output so the same seed
// yields the same cases on every standard library.

#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cods/knowledge_base.hpp"
#include "cods/predicate.hpp"

namespace cods::testgen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t bits() { return rng_(); }
  /// Uniform in [0, n).
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin(unsigned percent) { return below(100) < percent; }

  std::string name() {
    static constexpr std::string_view head = "abcdefghijklmnopqrstuvwxyz";
    static constexpr std::string_view tail = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
    std::string s(1, head[below(head.size())]);
    for (std::size_t n = below(8); n > 0; --n) s += tail[below(tail.size())];
    return s;
  }

  std::string identifier() {
    static constexpr std::string_view head = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_";
    static constexpr std::string_view tail = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
    std::string s(1, head[below(head.size())]);
    for (std::size_t n = below(8); n > 0; --n) s += tail[below(tail.size())];
    return s;
  }

  std::string text() {
    std::string s;
    for (std::size_t n = below(12); n > 0; --n) {
      switch (below(10)) {
        case 0: s += '"'; break;
        case 1: s += '\\'; break;
        case 2: s += '\n'; break;
        case 3: s += '\t'; break;
        default: s += static_cast<char>(' ' + below(95)); break;
      }
    }
    return s;
  }

  std::int64_t integer() {
    switch (below(4)) {
      case 0: return std::numeric_limits<std::int64_t>::min();
      case 1: return std::numeric_limits<std::int64_t>::max();
      default: return between(-1000, 1000);
    }
  }

  Arg arg(bool allow_placeholder) {
    switch (below(allow_placeholder ? 4 : 3)) {
      case 0: return Arg::identifier(identifier());
      case 1: return Arg::integer(integer());
      case 2: return Arg::string(text());
      default: return Arg::placeholder(identifier());
    }
  }

  Predicate predicate(bool allow_placeholder) {
    Predicate p{name(), {}};
    for (std::size_t n = below(6); n > 0; --n) p.args.push_back(arg(allow_placeholder));
    return p;
  }

  /// A block list with distinct positive ids; every entry has at least one
  /// argument in its source.
  std::vector<MappingBlock> blocks(std::size_t max_blocks, std::size_t max_entries) {
    std::vector<MappingBlock> out;
    std::set<BlockId> used;
    for (std::size_t n = 1 + below(max_blocks); n > 0; --n) {
      BlockId id = 0;
      do id = between(1, 1'000'000); while (!used.insert(id).second);
      MappingBlock b{id, {}};
      for (std::size_t e = 1 + below(max_entries); e > 0; --e) {
        MappingEntry entry{predicate(true), {}};
        if (entry.source.args.empty()) entry.source.args.push_back(Arg::placeholder("X"));
        for (std::size_t t = 1 + below(3); t > 0; --t) {
          Predicate target{name(), {}};
          for (std::size_t a = below(4); a > 0; --a) {
            // Reuse a source placeholder half the time so substitutions are exercised.
            const auto& src = entry.source.args[below(entry.source.args.size())];
            target.args.push_back(src.is_placeholder() && coin(50) ? src : arg(false));
          }
          entry.targets.push_back(std::move(target));
        }
        b.entries.push_back(std::move(entry));
      }
      out.push_back(std::move(b));
    }
    return out;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// A small search instance drawn from a narrow vocabulary so that exact,
/// partial and missing matches all occur.
struct Instance {
  std::vector<ModelConstruct> model;
  std::vector<MappingBlock> blocks;
};

inline Instance random_instance(Gen& g, std::size_t max_n, std::size_t max_m) {
  static const std::vector<std::string> names = {"class", "attribute", "operation", "state"};
  static const std::vector<std::string> values = {"Door", "Lift", "open", "int", "Idle"};
  auto literal = [&] { return Arg::identifier(values[g.below(values.size())]); };

  Instance inst;
  std::size_t n = 1 + g.below(max_n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& name = names[g.below(names.size())];
    Predicate p{name, {}};
    for (std::size_t a = 1 + g.below(3); a > 0; --a) p.args.push_back(literal());
    inst.model.push_back({i, std::move(p)});
  }
  std::size_t m = 1 + g.below(max_m);
  for (std::size_t b = 0; b < m; ++b) {
    MappingBlock block{static_cast<BlockId>(b + 1), {}};
    for (std::size_t e = 1 + g.below(3); e > 0; --e) {
      Predicate src{names[g.below(names.size())], {}};
      for (std::size_t a = 1 + g.below(3); a > 0; --a) {
        src.args.push_back(g.coin(60) ? Arg::placeholder("P" + std::to_string(a)) : literal());
      }
      Predicate tgt{"java_" + src.name, src.args};
      block.entries.push_back({std::move(src), {std::move(tgt)}});
    }
    inst.blocks.push_back(std::move(block));
  }
  return inst;
}

}  // namespace cods::testgen
