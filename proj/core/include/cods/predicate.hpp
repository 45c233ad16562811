#pragma once

// Predicate data model and the two text formats built on it: model files
// (one fact per line) and training files (numbered mapping blocks).
//
// Grammar summary (see docs/formats.md for the full, byte-exact description):
//
//   predicate  := name [ '(' arg { ',' arg } ')' ]
//   name       := [a-z][A-Za-z0-9_]*
//   arg        := '$' ident | ident | integer | '"' chars '"'
//   model line := predicate '.'
//   block      := 'block' int NL { 'map:' predicate '=>' predicate { ';' predicate } '.' NL } 'endblock'
//
// '%' starts a comment that runs to the end of the line.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cods {

struct Placeholder {
  std::string name;
  bool operator==(const Placeholder&) const = default;
};

struct Identifier {
  std::string value;
  bool operator==(const Identifier&) const = default;
};

struct Integer {
  std::int64_t value = 0;
  bool operator==(const Integer&) const = default;
};

struct QuotedString {
  std::string value;
  bool operator==(const QuotedString&) const = default;
};

/// One positional argument. Placeholders only carry meaning inside mapping
/// entries; everything else is a literal.
struct Arg {
  std::variant<Placeholder, Identifier, Integer, QuotedString> value;

  static Arg placeholder(std::string name) { return Arg{Placeholder{std::move(name)}}; }
  static Arg identifier(std::string value) { return Arg{Identifier{std::move(value)}}; }
  static Arg integer(std::int64_t value) { return Arg{Integer{value}}; }
  static Arg string(std::string value) { return Arg{QuotedString{std::move(value)}}; }

  bool is_placeholder() const { return std::holds_alternative<Placeholder>(value); }
  bool is_literal() const { return !is_placeholder(); }

  /// Identifier text, or empty when the arg is not an identifier literal.
  std::string_view identifier_text() const;

  bool operator==(const Arg&) const = default;
};

struct Predicate {
  std::string name;
  std::vector<Arg> args;

  std::size_t arity() const { return args.size(); }
  bool has_placeholder() const;

  bool operator==(const Predicate&) const = default;
};

/// A numbered training example entry: one source pattern and the code
/// predicates it transforms into.
struct MappingEntry {
  Predicate source;
  std::vector<Predicate> targets;

  bool operator==(const MappingEntry&) const = default;
};

using BlockId = std::int64_t;

struct MappingBlock {
  BlockId id = 0;
  std::vector<MappingEntry> entries;

  bool operator==(const MappingBlock&) const = default;
};

struct ModelConstruct {
  std::size_t index = 0;
  Predicate predicate;

  bool operator==(const ModelConstruct&) const = default;
};

/// Non-fatal diagnostic produced while parsing.
struct Lint {
  std::size_t line = 0;
  std::string message;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  /// Message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

bool is_predicate_name(std::string_view text);
bool is_identifier(std::string_view text);

/// Parses a single predicate. A trailing '.' is accepted but not required.
Predicate parse_predicate(std::string_view text);

/// Model file: one predicate per line. Placeholders in the model are reported
/// through `lints` when provided.
std::vector<ModelConstruct> parse_predicates(std::string_view text,
                                             std::vector<Lint>* lints = nullptr);

/// Training file. Block ids must be unique within one call; uniqueness across
/// files is checked by the knowledge base.
std::vector<MappingBlock> parse_mapping_blocks(std::string_view text,
                                               std::vector<Lint>* lints = nullptr);

std::string to_string(const Arg& arg);
/// Canonical form without the terminating '.'.
std::string to_string(const Predicate& p);
/// Canonical form with the terminating '.'.
std::string serialize_predicate(const Predicate& p);
std::string serialize_entry(const MappingEntry& entry);
std::string serialize_mapping_blocks(const std::vector<MappingBlock>& blocks);
std::string serialize_model(const std::vector<ModelConstruct>& constructs);

}  // namespace cods
