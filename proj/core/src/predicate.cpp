#include "cods/predicate.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace cods {

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return is_alpha(c) || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

// Scans one line. Columns are 1-based; '%' outside a string ends the line.
class LineCursor {
 public:
  LineCursor(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

  void skip_space() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r')) {
      ++pos_;
    }
    if (pos_ < line_.size() && line_[pos_] == '%') pos_ = line_.size();
  }

  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }

  char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }

  bool consume(std::string_view token) {
    skip_space();
    if (line_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token, std::string_view what) {
    if (!consume(token)) fail("expected " + std::string(what) + found());
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_no_, pos_ + 1, message);
  }

  std::string found() const {
    if (pos_ >= line_.size()) return ", found end of line";
    return std::string(", found '") + line_[pos_] + "'";
  }

  std::string_view identifier() {
    std::size_t start = pos_;
    while (pos_ < line_.size() && is_ident_char(line_[pos_])) ++pos_;
    return line_.substr(start, pos_ - start);
  }

  Predicate predicate() {
    skip_space();
    if (!is_lower(peek())) fail("expected predicate name" + found());
    Predicate p;
    p.name = std::string(identifier());
    skip_space();
    if (peek() != '(') return p;
    ++pos_;
    if (consume(")")) fail("empty argument list; write a zero-arity predicate without parentheses");
    for (;;) {
      p.args.push_back(arg());
      skip_space();
      if (consume(",")) continue;
      if (consume(")")) break;
      fail("expected ',' or ')'" + found());
    }
    return p;
  }

  Arg arg() {
    skip_space();
    char c = peek();
    if (c == '$') {
      ++pos_;
      if (!is_ident_start(peek())) fail("expected placeholder name after '$'");
      return Arg::placeholder(std::string(identifier()));
    }
    if (c == '"') return Arg::string(quoted());
    if (is_digit(c) || c == '-') return Arg::integer(integer());
    if (is_ident_start(c)) return Arg::identifier(std::string(identifier()));
    fail("expected argument" + found());
  }

  std::size_t line_no() const { return line_no_; }
  std::size_t column() const { return pos_ + 1; }

 private:
  std::string quoted() {
    std::size_t open = pos_;
    ++pos_;
    std::string out;
    while (pos_ < line_.size()) {
      char c = line_[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (pos_ >= line_.size()) break;
      char e = line_[pos_++];
      switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        default:
          pos_ -= 2;
          fail(std::string("unknown escape '\\") + e + "'");
      }
    }
    pos_ = open;
    fail("unterminated string");
  }

  std::int64_t integer() {
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    if (!is_digit(peek())) fail("expected digit after '-'");
    while (pos_ < line_.size() && is_digit(line_[pos_])) ++pos_;
    if (pos_ < line_.size() && is_ident_char(line_[pos_])) fail("malformed integer");
    std::int64_t value = 0;
    auto text = line_.substr(start, pos_ - start);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      pos_ = start;
      fail("integer out of range");
    }
    return value;
  }

  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    fn(text.substr(start, end - start), line_no);
    if (end == text.size()) break;
    start = end + 1;
    ++line_no;
  }
}

void collect_placeholders(const Predicate& p, std::set<std::string>& out) {
  for (const auto& a : p.args) {
    if (const auto* ph = std::get_if<Placeholder>(&a.value)) out.insert(ph->name);
  }
}

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

std::string_view Arg::identifier_text() const {
  if (const auto* id = std::get_if<Identifier>(&value)) return id->value;
  return {};
}

bool Predicate::has_placeholder() const {
  return std::any_of(args.begin(), args.end(), [](const Arg& a) { return a.is_placeholder(); });
}

bool is_predicate_name(std::string_view text) {
  return !text.empty() && is_lower(text.front()) &&
         std::all_of(text.begin(), text.end(), is_ident_char);
}

bool is_identifier(std::string_view text) {
  return !text.empty() && is_ident_start(text.front()) &&
         std::all_of(text.begin(), text.end(), is_ident_char);
}

Predicate parse_predicate(std::string_view text) {
  LineCursor cur(text, 1);
  Predicate p = cur.predicate();
  cur.consume(".");
  if (!cur.at_end()) cur.fail("unexpected trailing input" + cur.found());
  return p;
}

std::vector<ModelConstruct> parse_predicates(std::string_view text, std::vector<Lint>* lints) {
  std::vector<ModelConstruct> out;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    LineCursor cur(line, line_no);
    if (cur.at_end()) return;
    Predicate p = cur.predicate();
    cur.expect(".", "'.' terminating the predicate");
    if (!cur.at_end()) cur.fail("expected end of line after '.'" + cur.found());
    if (lints && p.has_placeholder()) {
      lints->push_back({line_no, "placeholder in input model construct " + to_string(p)});
    }
    out.push_back(ModelConstruct{out.size(), std::move(p)});
  });
  return out;
}

std::vector<MappingBlock> parse_mapping_blocks(std::string_view text, std::vector<Lint>* lints) {
  std::vector<MappingBlock> out;
  std::set<BlockId> seen;
  bool open = false;
  std::size_t open_line = 0;

  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    LineCursor cur(line, line_no);
    if (cur.at_end()) return;

    if (cur.consume("endblock")) {
      if (!cur.at_end()) cur.fail("unexpected input after 'endblock'" + cur.found());
      if (!open) cur.fail("'endblock' without matching 'block'");
      if (out.back().entries.empty()) {
        throw ParseError(line_no, 1, "block " + std::to_string(out.back().id) + " has no entries");
      }
      open = false;
      return;
    }
    if (cur.consume("map:")) {
      if (!open) cur.fail("'map:' outside of a block");
      MappingEntry entry;
      entry.source = cur.predicate();
      cur.expect("=>", "'=>' after source pattern");
      entry.targets.push_back(cur.predicate());
      while (cur.consume(";")) entry.targets.push_back(cur.predicate());
      cur.expect(".", "'.' terminating the mapping entry");
      if (!cur.at_end()) cur.fail("expected end of line after '.'" + cur.found());
      if (lints) {
        std::set<std::string> bound;
        std::set<std::string> used;
        collect_placeholders(entry.source, bound);
        for (const auto& t : entry.targets) collect_placeholders(t, used);
        for (const auto& name : used) {
          if (!bound.count(name)) {
            lints->push_back({line_no, "placeholder $" + name + " in targets is not bound by source " +
                                           to_string(entry.source)});
          }
        }
      }
      out.back().entries.push_back(std::move(entry));
      return;
    }
    if (cur.consume("block")) {
      if (open) {
        throw ParseError(open_line, 1,
                         "missing 'endblock' for block " + std::to_string(out.back().id));
      }
      cur.skip_space();
      std::size_t col = cur.column();
      Arg id = cur.arg();
      const auto* num = std::get_if<Integer>(&id.value);
      if (!num || num->value <= 0) throw ParseError(line_no, col, "block id must be a positive integer");
      if (!cur.at_end()) cur.fail("unexpected input after block id" + cur.found());
      if (!seen.insert(num->value).second) {
        throw ParseError(line_no, col, "duplicate block id " + std::to_string(num->value));
      }
      out.push_back(MappingBlock{num->value, {}});
      open = true;
      open_line = line_no;
      return;
    }
    cur.fail("expected 'block', 'map:' or 'endblock'" + cur.found());
  });

  if (open) {
    throw ParseError(open_line, 1, "missing 'endblock' for block " + std::to_string(out.back().id));
  }
  return out;
}

std::string to_string(const Arg& arg) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Placeholder>) return "$" + v.name;
        else if constexpr (std::is_same_v<T, Identifier>) return v.value;
        else if constexpr (std::is_same_v<T, Integer>) return std::to_string(v.value);
        else return escape(v.value);
      },
      arg.value);
}

std::string to_string(const Predicate& p) {
  std::string out = p.name;
  if (p.args.empty()) return out;
  out.push_back('(');
  for (std::size_t i = 0; i < p.args.size(); ++i) {
    if (i) out += ", ";
    out += to_string(p.args[i]);
  }
  out.push_back(')');
  return out;
}

std::string serialize_predicate(const Predicate& p) { return to_string(p) + "."; }

std::string serialize_entry(const MappingEntry& entry) {
  std::string out = "map: " + to_string(entry.source) + " =>";
  for (std::size_t i = 0; i < entry.targets.size(); ++i) {
    out += i ? "; " : " ";
    out += to_string(entry.targets[i]);
  }
  out.push_back('.');
  return out;
}

std::string serialize_mapping_blocks(const std::vector<MappingBlock>& blocks) {
  std::ostringstream os;
  for (const auto& b : blocks) {
    os << "block " << b.id << '\n';
    for (const auto& e : b.entries) os << serialize_entry(e) << '\n';
    os << "endblock\n";
  }
  return os.str();
}

std::string serialize_model(const std::vector<ModelConstruct>& constructs) {
  std::string out;
  for (const auto& c : constructs) {
    out += serialize_predicate(c.predicate);
    out.push_back('\n');
  }
  return out;
}

}  // namespace cods
