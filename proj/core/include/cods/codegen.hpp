#pragma once

// Renders code predicates into Java compilation units.
//
// Recognized vocabulary (anything else is reported as unknown):
//   java_class(Name)                      java_extends(Sub, Super)
//   java_field(Class, Name, Type)         java_method(Class, Name, RetType)
//   java_param(Class, Method, Name, Type) java_stmt(Class, Method, Seq, Code)
//   java_state_enum(Class, State)         java_initial_state(Class, State)
//   java_transition(Class, Event, From, To)

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cods/predicate.hpp"
#include "cods/transform.hpp"

namespace cods {

/// File that collects unknown predicates whose class cannot be resolved.
inline constexpr std::string_view kUnmappedFile = "_Unmapped.java";

bool is_code_predicate(const Predicate& p);

struct SourceFile {
  std::string filename;
  std::string content;

  bool operator==(const SourceFile&) const = default;
};

enum class ReportReason { partial, no_match, unknown_predicate, synthesized };

const char* to_string(ReportReason reason);

struct CodegenRow {
  std::string text;
  ReportReason reason = ReportReason::partial;
  std::optional<std::string> file;
};

struct CodegenReport {
  std::vector<CodegenRow> rows;
};

struct RenderResult {
  std::vector<SourceFile> files;  // sorted by filename
  CodegenReport report;
  /// Known code predicates consumed into some file, duplicates included.
  std::size_t rendered_count = 0;
  std::size_t unknown_count = 0;
};

class CodegenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `flagged` cross-references nearest/unmatched constructs for the report;
/// its predicate indices point into `code_predicates`.
/// Throws CodegenError on conflicting initial states or superclasses.
RenderResult render_files(std::span<const Predicate> code_predicates,
                          std::span<const FlaggedConstruct> flagged = {});

/// The step-4 `readme`: a header line, then rows sorted by file then text.
std::string write_codegen_report(const CodegenReport& report);

/// Structural problems in a generated file: unbalanced braces or
/// parentheses, a missing or duplicated top-level class, a class name that
/// disagrees with the filename, or a `$` anywhere. Empty when clean.
std::vector<std::string> check_java_structure(const SourceFile& file);

}  // namespace cods
