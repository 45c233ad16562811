#include "cods/codegen.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

namespace cods {

namespace {

struct VocabularyEntry {
  std::string_view name;
  std::size_t arity;
};

constexpr std::array<VocabularyEntry, 9> kVocabulary{{
    {"java_class", 1},
    {"java_extends", 2},
    {"java_field", 3},
    {"java_method", 3},
    {"java_param", 4},
    {"java_stmt", 4},
    {"java_state_enum", 2},
    {"java_initial_state", 2},
    {"java_transition", 4},
}};

constexpr std::string_view kIndent = "    ";

std::string arg_text(const Arg& a) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Placeholder>) return std::string(kTodoLiteral);
        else if constexpr (std::is_same_v<T, Integer>) return std::to_string(v.value);
        else return v.value;
      },
      a.value);
}

bool mentions_todo(const Predicate& p) {
  return std::any_of(p.args.begin(), p.args.end(), [](const Arg& a) {
    return a.is_placeholder() || a.identifier_text() == kTodoLiteral;
  });
}

std::string java_string_literal(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

struct Statement {
  std::int64_t seq;
  std::string code;
};

struct MethodModel {
  std::string name;
  std::string return_type = "void";
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<Statement> body;
};

struct Transition {
  std::string event;
  std::string from;
  std::string to;
};

struct ClassModel {
  std::string name;
  std::optional<std::string> super;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> states;
  std::optional<std::string> initial;
  std::vector<Transition> transitions;
  std::vector<MethodModel> methods;
  std::vector<std::string> unmapped;
  bool has_state = false;

  void add_state(const std::string& s) {
    has_state = true;
    if (std::find(states.begin(), states.end(), s) == states.end()) states.push_back(s);
  }

  MethodModel* find_method(const std::string& method) {
    for (auto& m : methods) {
      if (m.name == method) return &m;
    }
    return nullptr;
  }
};

std::string render_class(const ClassModel& c) {
  std::vector<std::vector<std::string>> sections;
  std::string in1(kIndent);
  std::string in2 = in1 + in1;
  std::string in3 = in2 + in1;
  std::string in4 = in2 + in2;

  if (c.has_state) {
    std::string line = in1 + "private enum State { ";
    for (std::size_t i = 0; i < c.states.size(); ++i) {
      if (i) line += ", ";
      line += c.states[i];
    }
    line += " }";
    sections.push_back({line});
  }

  std::vector<std::string> fields;
  for (const auto& [name, type] : c.fields) fields.push_back(in1 + "private " + type + " " + name + ";");
  if (c.has_state) {
    const std::string& init = c.initial ? *c.initial : c.states.front();
    fields.push_back(in1 + "private State currentState = State." + init + ";");
  }
  if (!fields.empty()) sections.push_back(std::move(fields));

  if (c.has_state) {
    std::vector<std::string> h{in1 + "public void handleEvent(String event) {"};
    std::vector<std::string> froms;
    for (const auto& t : c.transitions) {
      if (std::find(froms.begin(), froms.end(), t.from) == froms.end()) froms.push_back(t.from);
    }
    for (std::size_t i = 0; i < froms.size(); ++i) {
      h.push_back(in2 + (i ? "} else if" : "if") + " (currentState == State." + froms[i] + ") {");
      bool first = true;
      for (const auto& t : c.transitions) {
        if (t.from != froms[i]) continue;
        h.push_back(in3 + (first ? "if" : "} else if") + " (" + java_string_literal(t.event) + ".equals(event)) {");
        h.push_back(in4 + "currentState = State." + t.to + ";");
        first = false;
      }
      h.push_back(in3 + "}");
    }
    if (!froms.empty()) h.push_back(in2 + "}");
    h.push_back(in1 + "}");
    sections.push_back(std::move(h));
  }

  for (const auto& m : c.methods) {
    std::string sig = in1 + "public " + m.return_type + " " + m.name + "(";
    for (std::size_t i = 0; i < m.params.size(); ++i) {
      if (i) sig += ", ";
      sig += m.params[i].second + " " + m.params[i].first;
    }
    sig += ") {";
    std::vector<std::string> lines{sig};
    for (const auto& s : m.body) {
      std::istringstream code(s.code);
      std::string line;
      while (std::getline(code, line)) lines.push_back(in2 + line);
    }
    lines.push_back(in1 + "}");
    sections.push_back(std::move(lines));
  }

  if (!c.unmapped.empty()) {
    std::vector<std::string> lines;
    for (const auto& u : c.unmapped) lines.push_back(in1 + "// UNMAPPED: " + u);
    sections.push_back(std::move(lines));
  }

  std::string out = "public class " + c.name;
  if (c.super) out += " extends " + *c.super;
  out += " {\n";
  for (std::size_t i = 0; i < sections.size(); ++i) {
    if (i) out += "\n";
    for (const auto& l : sections[i]) out += l + "\n";
  }
  out += "}\n";
  return out;
}

std::string file_for(const std::string& class_name) { return class_name + ".java"; }

}  // namespace

bool is_code_predicate(const Predicate& p) {
  return std::any_of(kVocabulary.begin(), kVocabulary.end(),
                     [&](const VocabularyEntry& v) { return v.name == p.name && v.arity == p.arity(); });
}

const char* to_string(ReportReason reason) {
  switch (reason) {
    case ReportReason::partial: return "partial";
    case ReportReason::no_match: return "no-match";
    case ReportReason::unknown_predicate: return "unknown-predicate";
    case ReportReason::synthesized: return "synthesized";
  }
  return "partial";
}

RenderResult render_files(std::span<const Predicate> code_predicates, std::span<const FlaggedConstruct> flagged) {
  RenderResult result;
  std::map<std::string, ClassModel> classes;
  std::vector<std::string> file_of(code_predicates.size());
  std::set<std::size_t> flagged_predicates;
  for (const auto& f : flagged) flagged_predicates.insert(f.predicate_indices.begin(), f.predicate_indices.end());

  auto& rows = result.report.rows;

  // Pass 1: declared classes and methods, so forward references resolve.
  std::set<std::pair<std::string, std::string>> declared_methods;
  for (const auto& p : code_predicates) {
    if (!is_code_predicate(p)) continue;
    if (p.name == "java_class" && is_identifier(arg_text(p.args[0]))) {
      auto name = arg_text(p.args[0]);
      classes.try_emplace(name).first->second.name = name;
    } else if (p.name == "java_method") {
      declared_methods.emplace(arg_text(p.args[0]), arg_text(p.args[1]));
    }
  }

  auto class_for = [&](const Predicate& p) -> ClassModel& {
    auto name = arg_text(p.args[0]);
    auto [it, inserted] = classes.try_emplace(name);
    if (inserted) {
      it->second.name = name;
      rows.push_back({serialize_predicate(p), ReportReason::synthesized, file_for(name)});
    }
    return it->second;
  };

  auto method_for = [&](ClassModel& c, const Predicate& p) -> MethodModel& {
    auto name = arg_text(p.args[1]);
    if (auto* m = c.find_method(name)) return *m;
    c.methods.push_back(MethodModel{name, "void", {}, {}});
    if (!declared_methods.count({c.name, name})) {
      rows.push_back({serialize_predicate(p), ReportReason::synthesized, file_for(c.name)});
    }
    return c.methods.back();
  };

  std::vector<std::size_t> unknown;
  for (std::size_t i = 0; i < code_predicates.size(); ++i) {
    const Predicate& p = code_predicates[i];
    if (!is_code_predicate(p) || !is_identifier(arg_text(p.args[0]))) {
      unknown.push_back(i);
      continue;
    }
    ++result.rendered_count;
    ClassModel& c = class_for(p);
    file_of[i] = file_for(c.name);
    const auto& a = p.args;

    if (p.name == "java_class") {
      // declared in pass 1
    } else if (p.name == "java_extends") {
      auto super = arg_text(a[1]);
      if (c.super && *c.super != super) {
        throw CodegenError("conflicting superclasses for class " + c.name + ": " + *c.super + " and " + super);
      }
      c.super = super;
    } else if (p.name == "java_field") {
      std::pair<std::string, std::string> field{arg_text(a[1]), arg_text(a[2])};
      if (std::find(c.fields.begin(), c.fields.end(), field) == c.fields.end()) c.fields.push_back(field);
    } else if (p.name == "java_method") {
      auto name = arg_text(a[1]);
      if (auto* m = c.find_method(name)) {
        m->return_type = arg_text(a[2]);
      } else {
        c.methods.push_back(MethodModel{name, arg_text(a[2]), {}, {}});
      }
    } else if (p.name == "java_param") {
      MethodModel& m = method_for(c, p);
      std::pair<std::string, std::string> param{arg_text(a[2]), arg_text(a[3])};
      if (std::find(m.params.begin(), m.params.end(), param) == m.params.end()) m.params.push_back(param);
    } else if (p.name == "java_stmt") {
      MethodModel& m = method_for(c, p);
      const auto* seq = std::get_if<Integer>(&a[2].value);
      m.body.push_back({seq ? seq->value : 0, arg_text(a[3])});
    } else if (p.name == "java_state_enum") {
      c.add_state(arg_text(a[1]));
    } else if (p.name == "java_initial_state") {
      auto state = arg_text(a[1]);
      if (c.initial && *c.initial != state) {
        throw CodegenError("conflicting initial states for class " + c.name + ": " + *c.initial + " and " + state);
      }
      c.initial = state;
      c.add_state(state);
    } else if (p.name == "java_transition") {
      c.transitions.push_back({arg_text(a[1]), arg_text(a[2]), arg_text(a[3])});
      c.add_state(arg_text(a[2]));
      c.add_state(arg_text(a[3]));
    }

    if (mentions_todo(p) && !flagged_predicates.count(i)) {
      rows.push_back({serialize_predicate(p), ReportReason::partial, file_of[i]});
    }
  }

  bool any_unresolved = false;
  for (std::size_t i : unknown) {
    const Predicate& p = code_predicates[i];
    ++result.unknown_count;
    std::string target;
    if (!p.args.empty()) {
      auto it = classes.find(arg_text(p.args[0]));
      if (it != classes.end()) {
        it->second.unmapped.push_back(serialize_predicate(p));
        target = file_for(it->first);
      }
    }
    if (target.empty()) {
      any_unresolved = true;
      target = std::string(kUnmappedFile);
    }
    file_of[i] = target;
    rows.push_back({serialize_predicate(p), ReportReason::unknown_predicate, target});
  }

  for (auto& [name, c] : classes) {
    for (auto& m : c.methods) {
      std::stable_sort(m.body.begin(), m.body.end(),
                       [](const Statement& x, const Statement& y) { return x.seq < y.seq; });
    }
    result.files.push_back({file_for(name), render_class(c)});
  }
  if (any_unresolved) {
    std::string content = "public class _Unmapped {\n";
    for (std::size_t i : unknown) {
      if (file_of[i] == kUnmappedFile) content += std::string(kIndent) + "// UNMAPPED: " + serialize_predicate(code_predicates[i]) + "\n";
    }
    content += "}\n";
    result.files.push_back({std::string(kUnmappedFile), std::move(content)});
  }
  std::sort(result.files.begin(), result.files.end(),
            [](const SourceFile& x, const SourceFile& y) { return x.filename < y.filename; });

  for (const auto& f : flagged) {
    std::optional<std::string> file;
    if (f.status == OutcomeStatus::nearest) {
      for (std::size_t i : f.predicate_indices) {
        if (i < file_of.size() && !file_of[i].empty()) {
          file = file_of[i];
          break;
        }
      }
    } else {
      for (const auto& a : f.construct.args) {
        if (a.is_literal() && classes.count(arg_text(a))) {
          file = file_for(arg_text(a));
          break;
        }
      }
    }
    rows.push_back({serialize_predicate(f.construct),
                    f.status == OutcomeStatus::nearest ? ReportReason::partial : ReportReason::no_match, file});
  }
  return result;
}

std::string write_codegen_report(const CodegenReport& report) {
  std::vector<std::pair<std::string, const CodegenRow*>> sorted;
  for (const auto& r : report.rows) sorted.emplace_back(r.file.value_or("-"), &r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    return std::tie(x.first, x.second->text) < std::tie(y.first, y.second->text);
  });
  std::string out = "file | reason | construct or predicate\n";
  for (const auto& [file, row] : sorted) {
    out += file + " | " + to_string(row->reason) + " | " + row->text + "\n";
  }
  return out;
}

std::vector<std::string> check_java_structure(const SourceFile& file) {
  std::vector<std::string> problems;
  const std::string& s = file.content;

  if (s.find('$') != std::string::npos) problems.push_back("contains '$'");

  int braces = 0;
  int parens = 0;
  bool unbalanced = false;
  std::vector<std::string> top_level_classes;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      i = s.find('\n', i);
      if (i == std::string::npos) break;
      continue;
    }
    if (c == '"' || c == '\'') {
      for (++i; i < s.size() && s[i] != c; ++i) {
        if (s[i] == '\\') ++i;
      }
      continue;
    }
    if (c == '{') ++braces;
    else if (c == '}') --braces;
    else if (c == '(') ++parens;
    else if (c == ')') --parens;
    if (braces < 0 || parens < 0) unbalanced = true;

    if (braces == 0 && s.compare(i, 6, "class ") == 0 && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\n')) {
      std::size_t start = i + 6;
      std::size_t end = start;
      while (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_')) ++end;
      top_level_classes.push_back(s.substr(start, end - start));
    }
  }
  if (unbalanced || braces != 0) problems.push_back("unbalanced braces");
  if (unbalanced || parens != 0) problems.push_back("unbalanced parentheses");

  std::string stem = file.filename;
  if (stem.size() > 5 && stem.ends_with(".java")) stem.resize(stem.size() - 5);
  if (top_level_classes.size() != 1) {
    problems.push_back("expected exactly one top-level class, found " + std::to_string(top_level_classes.size()));
  } else if (top_level_classes.front() != stem) {
    problems.push_back("class " + top_level_classes.front() + " does not match file name " + file.filename);
  }
  return problems;
}

}  // namespace cods
