#include "cods/knowledge_base.hpp"

#include <algorithm>

namespace cods {

const char* to_string(MatchKind kind) {
  switch (kind) {
    case MatchKind::exact: return "exact";
    case MatchKind::partial: return "partial";
    case MatchKind::none: return "none";
  }
  return "none";
}

MatchResult match_score(const Predicate& construct, const Predicate& pattern) {
  MatchResult r;
  if (construct.name != pattern.name) return r;

  const std::size_t shared = std::min(construct.arity(), pattern.arity());
  const std::size_t widest = std::max(construct.arity(), pattern.arity());
  std::size_t matched = 0;
  for (std::size_t k = 0; k < shared; ++k) {
    const Arg& want = pattern.args[k];
    const Arg& have = construct.args[k];
    if (const auto* ph = std::get_if<Placeholder>(&want.value)) {
      auto [it, inserted] = r.substitution.emplace(ph->name, have);
      if (inserted || it->second == have) ++matched;
    } else if (have == want) {
      ++matched;
    }
  }

  if (matched == widest) {
    r.kind = MatchKind::exact;
    r.score = 1.0;
  } else if (matched == 0) {
    r.kind = MatchKind::none;
    r.score = 0.0;
  } else {
    r.kind = MatchKind::partial;
    r.score = static_cast<double>(matched) / static_cast<double>(widest);
  }
  return r;
}

MatchResult match_score(const ModelConstruct& construct, const MappingEntry& entry) {
  return match_score(construct.predicate, entry.source);
}

Predicate apply_substitution(const Predicate& p, const Substitution& s, const std::optional<Arg>& fill) {
  Predicate out{p.name, {}};
  out.args.reserve(p.args.size());
  for (const auto& a : p.args) {
    const auto* ph = std::get_if<Placeholder>(&a.value);
    if (!ph) {
      out.args.push_back(a);
    } else if (auto it = s.find(ph->name); it != s.end()) {
      out.args.push_back(it->second);
    } else {
      out.args.push_back(fill ? *fill : a);
    }
  }
  return out;
}

std::optional<MatchResult> find_exact_in_block(const ModelConstruct& construct, const MappingBlock& block) {
  for (std::size_t i = 0; i < block.entries.size(); ++i) {
    MatchResult r = match_score(construct, block.entries[i]);
    if (r.kind == MatchKind::exact) {
      r.block_id = block.id;
      r.entry_ordinal = i;
      return r;
    }
  }
  return std::nullopt;
}

KnowledgeBase::KnowledgeBase(std::vector<MappingBlock> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("no training data: knowledge base has no mapping blocks");
  std::stable_sort(blocks_.begin(), blocks_.end(),
                   [](const MappingBlock& a, const MappingBlock& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (!by_id_.emplace(blocks_[i].id, i).second) {
      throw std::invalid_argument("duplicate block id " + std::to_string(blocks_[i].id));
    }
    const auto& entries = blocks_[i].entries;
    for (std::size_t e = 0; e < entries.size(); ++e) {
      index_[{entries[e].source.name, entries[e].source.arity()}].push_back({blocks_[i].id, e});
    }
  }
}

std::size_t KnowledgeBase::posting_count() const {
  std::size_t n = 0;
  for (const auto& [key, list] : index_) n += list.size();
  return n;
}

const MappingBlock& KnowledgeBase::block(BlockId id) const { return blocks_[block_index(id)]; }

bool KnowledgeBase::contains(BlockId id) const { return by_id_.count(id) != 0; }

std::size_t KnowledgeBase::block_index(BlockId id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw std::out_of_range("unknown block id " + std::to_string(id));
  return it->second;
}

const std::vector<KnowledgeBase::Posting>& KnowledgeBase::postings(const std::string& name,
                                                                   std::size_t arity) const {
  static const std::vector<Posting> empty;
  auto it = index_.find({name, arity});
  return it == index_.end() ? empty : it->second;
}

std::optional<MatchResult> KnowledgeBase::best_match(const ModelConstruct& construct) const {
  std::optional<MatchResult> best;
  const std::string& name = construct.predicate.name;
  for (auto it = index_.lower_bound({name, 0}); it != index_.end() && it->first.first == name; ++it) {
    for (const Posting& p : it->second) {
      MatchResult r = match_score(construct, block(p.block_id).entries[p.entry_ordinal]);
      r.block_id = p.block_id;
      r.entry_ordinal = p.entry_ordinal;
      bool better = !best || r.score > best->score ||
                    (r.score == best->score &&
                     std::pair(r.block_id, r.entry_ordinal) < std::pair(best->block_id, best->entry_ordinal));
      if (better) best = std::move(r);
    }
  }
  return best;
}

KnowledgeBase build_kb(std::vector<MappingBlock> blocks) { return KnowledgeBase(std::move(blocks)); }

std::optional<MatchResult> find_nearest_in_kb(const ModelConstruct& construct, const KnowledgeBase& kb,
                                              double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("nearest-match threshold must lie in (0, 1]");
  }
  auto best = kb.best_match(construct);
  if (!best || best->score < threshold) return std::nullopt;
  return best;
}

}  // namespace cods
