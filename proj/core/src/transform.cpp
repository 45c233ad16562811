#include "cods/transform.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cods {

namespace {

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::vector<Predicate> instantiate(const MappingEntry& entry, const Substitution& s) {
  const std::optional<Arg> todo = Arg::identifier(std::string(kTodoLiteral));
  std::vector<Predicate> out;
  out.reserve(entry.targets.size());
  for (const auto& t : entry.targets) out.push_back(apply_substitution(t, s, todo));
  return out;
}

constexpr std::string_view kNearestPrefix = "% nearest (score=";
constexpr std::string_view kUnmatchedPrefix = "% unmatched: ";

}  // namespace

const char* to_string(OutcomeStatus status) {
  switch (status) {
    case OutcomeStatus::exact: return "exact";
    case OutcomeStatus::nearest: return "nearest";
    case OutcomeStatus::unmatched: return "unmatched";
  }
  return "unmatched";
}

ConstructOutcome transform_one(const ModelConstruct& construct, const MappingBlock& assigned_block,
                               const KnowledgeBase& kb, double threshold) {
  ConstructOutcome out;
  out.construct_index = construct.index;
  out.construct = construct.predicate;

  if (auto exact = find_exact_in_block(construct, assigned_block)) {
    out.status = OutcomeStatus::exact;
    out.score = 1.0;
    out.used_block = exact->block_id;
    out.used_entry = exact->entry_ordinal;
    out.code_predicates = instantiate(assigned_block.entries[exact->entry_ordinal], exact->substitution);
    return out;
  }

  auto best = kb.best_match(construct);
  if (best && best->score >= threshold) {
    out.status = OutcomeStatus::nearest;
    out.score = best->score;
    out.used_block = best->block_id;
    out.used_entry = best->entry_ordinal;
    out.code_predicates = instantiate(kb.block(best->block_id).entries[best->entry_ordinal], best->substitution);
    return out;
  }

  out.status = OutcomeStatus::unmatched;
  out.score = best ? best->score : 0.0;
  return out;
}

TransformResult transform_all(std::span<const ModelConstruct> constructs, const SearchOutcome& outcome,
                              const KnowledgeBase& kb, double threshold) {
  if (outcome.best.size() != constructs.size()) {
    throw std::invalid_argument("assignment length " + std::to_string(outcome.best.size()) +
                                " does not match " + std::to_string(constructs.size()) + " constructs");
  }
  TransformResult result;
  TransformReport& report = result.report;
  report.construct_count = constructs.size();
  report.block_count = kb.block_count();
  report.best_fitness = outcome.best_fitness;
  report.assignment = outcome.best;
  report.evaluations = outcome.evaluations;

  result.outcomes.reserve(constructs.size());
  for (std::size_t i = 0; i < constructs.size(); ++i) {
    const BlockId assigned = outcome.best.block_ids[i];
    ConstructOutcome o = transform_one(constructs[i], kb.block(assigned), kb, threshold);
    if (o.status != OutcomeStatus::exact) {
      MismatchDetail d;
      d.construct_index = constructs[i].index;
      d.construct = serialize_predicate(constructs[i].predicate);
      d.assigned_block = assigned;
      d.best_score = o.score;
      if (o.status == OutcomeStatus::nearest) {
        d.suggested_block = o.used_block;
        d.suggested_entry = o.used_entry;
      }
      report.mismatch_details.push_back(std::move(d));
    }
    result.outcomes.push_back(std::move(o));
  }
  return result;
}

std::string write_predicates_file(std::span<const ConstructOutcome> outcomes) {
  std::string out;
  for (const auto& o : outcomes) {
    switch (o.status) {
      case OutcomeStatus::exact:
        break;
      case OutcomeStatus::nearest:
        out += std::string(kNearestPrefix) + fixed4(o.score) +
               ", predicates=" + std::to_string(o.code_predicates.size()) +
               "): " + serialize_predicate(o.construct) + "\n";
        break;
      case OutcomeStatus::unmatched:
        out += std::string(kUnmatchedPrefix) + serialize_predicate(o.construct) + "\n";
        break;
    }
    for (const auto& p : o.code_predicates) {
      out += serialize_predicate(p);
      out.push_back('\n');
    }
  }
  return out;
}

std::string write_transform_report(const TransformReport& r) {
  std::ostringstream os;
  os << "Transformation report\n";
  os << "1. Input model constructs: " << r.construct_count << '\n';
  os << "2. Mapping blocks in training data: " << r.block_count << '\n';
  os << "3. Best fitness: " << fixed4(r.best_fitness) << '\n';
  os << "4. Selected mapping blocks (construct -> block):\n";
  for (std::size_t i = 0; i < r.assignment.size(); ++i) {
    os << "   " << i << " -> " << r.assignment.block_ids[i] << '\n';
  }
  os << "5. Fitness evaluations: " << r.evaluations << '\n';
  os << "6. Constructs without an exact match: " << r.mismatch_details.size() << '\n';
  for (const auto& d : r.mismatch_details) {
    os << "   [" << d.construct_index << "] " << d.construct << " | assigned block " << d.assigned_block
       << " | best score " << fixed4(d.best_score) << " | ";
    if (d.suggested_block) {
      os << "suggested block " << *d.suggested_block << " entry " << *d.suggested_entry;
    } else {
      os << "no suggestion";
    }
    os << '\n';
  }
  return os.str();
}

PredicatesFile read_predicates_file(std::string_view text) {
  PredicatesFile out;
  std::size_t line_no = 0;
  std::size_t pending = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    try {
      if (line.starts_with(kNearestPrefix)) {
        auto rest = line.substr(kNearestPrefix.size());
        auto comma = rest.find(", predicates=");
        auto close = rest.find("): ");
        if (comma == std::string_view::npos || close == std::string_view::npos || close < comma) {
          throw ParseError(line_no, 1, "malformed nearest annotation");
        }
        FlaggedConstruct f;
        f.status = OutcomeStatus::nearest;
        f.score = std::stod(std::string(rest.substr(0, comma)));
        pending = std::stoul(std::string(rest.substr(comma + 13, close - comma - 13)));
        f.construct = parse_predicate(rest.substr(close + 3));
        out.flagged.push_back(std::move(f));
        continue;
      }
      if (line.starts_with(kUnmatchedPrefix)) {
        FlaggedConstruct f;
        f.status = OutcomeStatus::unmatched;
        f.construct = parse_predicate(line.substr(kUnmatchedPrefix.size()));
        out.flagged.push_back(std::move(f));
        pending = 0;
        continue;
      }
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.column(), e.detail());
    } catch (const std::logic_error&) {
      throw ParseError(line_no, 1, "malformed nearest annotation");
    }

    std::vector<ModelConstruct> parsed;
    try {
      parsed = parse_predicates(line);
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.column(), e.detail());
    }
    if (parsed.empty()) continue;
    if (pending > 0) {
      out.flagged.back().predicate_indices.push_back(out.predicates.size());
      --pending;
    }
    out.predicates.push_back(std::move(parsed.front().predicate));
  }
  return out;
}

}  // namespace cods
