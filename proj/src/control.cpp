#include "control.hpp"

#include <algorithm>
#include <cctype>

#include "error.hpp"
#include "version.hpp"

namespace tmig {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_name_char(char c) {
  return !is_space(c) && c != ',' && c != '|' && c != '(' && c != ')' && c != '[' && c != ']' &&
         c != '<' && c != '>' && c != '=';
}

[[noreturn]] void malformed(std::string_view text, std::size_t offset, const std::string& why) {
  throw Error(Errc::MalformedDependency, "malformed dependency '" + std::string(text) + "' at offset " +
                                             std::to_string(offset) + ": " + why);
}

class DependencyLexer {
 public:
  explicit DependencyLexer(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::size_t pos() const { return pos_; }

  VersionConstraint constraint() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    if (pos_ == start) malformed(text_, start, "expected package name");
    VersionConstraint c;
    c.name = std::string(text_.substr(start, pos_ - start));
    if (!accept('(')) return c;
    c.relation = relation();
    skip_space();
    const std::size_t vstart = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != ')') ++pos_;
    if (pos_ == vstart) malformed(text_, vstart, "empty version bound");
    c.bound = std::string(text_.substr(vstart, pos_ - vstart));
    if (!is_valid_version(c.bound)) malformed(text_, vstart, "invalid version '" + c.bound + "'");
    if (!accept(')')) malformed(text_, pos_, "expected ')'");
    return c;
  }

 private:
  Relation relation() {
    skip_space();
    auto rest = text_.substr(pos_);
    static constexpr std::pair<std::string_view, Relation> ops[] = {
        {"<<", Relation::Less}, {"<=", Relation::LessEq},   {">>", Relation::Greater},
        {">=", Relation::GreaterEq}, {"=", Relation::Eq},
    };
    for (auto [tok, rel] : ops) {
      if (rest.starts_with(tok)) {
        pos_ += tok.size();
        return rel;
      }
    }
    malformed(text_, pos_, "expected one of << <= = >= >>");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

struct RawStanza {
  std::size_t index = 0;  // 1-based
  std::size_t first_line = 0;
  std::vector<std::pair<std::string, std::string>> fields;  // lowercased key, folded value
};

std::vector<RawStanza> split_stanzas(std::string_view text) {
  std::vector<RawStanza> out;
  RawStanza cur;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (!cur.fields.empty()) {
      cur.index = out.size() + 1;
      out.push_back(std::move(cur));
    }
    cur = RawStanza{};
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = nl + 1;
    if (std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\t'; })) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;
    if (line.front() == ' ' || line.front() == '\t') {
      if (cur.fields.empty())
        throw Error(Errc::MalformedStanza, "line " + std::to_string(line_no) + ": continuation line without a field");
      auto& value = cur.fields.back().second;
      const std::string more = trim(line);
      if (more != ".") {
        if (!value.empty()) value += ' ';
        value += more;
      }
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos || colon == 0)
      throw Error(Errc::MalformedStanza, "line " + std::to_string(line_no) + ": expected 'Key: value'");
    if (cur.fields.empty()) cur.first_line = line_no;
    cur.fields.emplace_back(lower(line.substr(0, colon)), trim(line.substr(colon + 1)));
  }
  flush();
  return out;
}

void append_groups(DependencyExpr& into, DependencyExpr more) {
  for (auto& g : more) into.push_back(std::move(g));
}

}  // namespace

const char* relation_token(Relation r) noexcept {
  switch (r) {
    case Relation::Any: return "";
    case Relation::Less: return "<<";
    case Relation::LessEq: return "<=";
    case Relation::Eq: return "=";
    case Relation::GreaterEq: return ">=";
    case Relation::Greater: return ">>";
  }
  return "";
}

bool VersionConstraint::matches(std::string_view version) const {
  if (relation == Relation::Any) return true;
  const auto cmp = compare_versions(version, bound);
  switch (relation) {
    case Relation::Less: return cmp < 0;
    case Relation::LessEq: return cmp <= 0;
    case Relation::Eq: return cmp == 0;
    case Relation::GreaterEq: return cmp >= 0;
    case Relation::Greater: return cmp > 0;
    case Relation::Any: break;
  }
  return true;
}

bool is_valid_package_name(std::string_view name) noexcept {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), is_name_char);
}

DependencyExpr parse_dependency_expr(std::string_view text) {
  DependencyExpr out;
  DependencyLexer lex(text);
  if (lex.at_end()) return out;
  while (true) {
    Alternatives alts;
    alts.push_back(lex.constraint());
    while (lex.accept('|')) alts.push_back(lex.constraint());
    out.push_back(std::move(alts));
    if (lex.at_end()) break;
    if (!lex.accept(',')) malformed(text, lex.pos(), "expected ',' or '|'");
  }
  return out;
}

std::vector<VersionConstraint> parse_conflict_expr(std::string_view text) {
  std::vector<VersionConstraint> out;
  DependencyLexer lex(text);
  if (lex.at_end()) return out;
  while (true) {
    out.push_back(lex.constraint());
    if (lex.at_end()) break;
    if (!lex.accept(',')) malformed(text, lex.pos(), "expected ','");
  }
  return out;
}

std::vector<PackageStanza> parse_packages(std::string_view text) {
  std::vector<PackageStanza> out;
  for (const RawStanza& raw : split_stanzas(text)) {
    PackageStanza s;
    bool have_name = false, have_version = false;
    for (const auto& [key, value] : raw.fields) {
      if (key == "package") {
        s.name = value;
        have_name = true;
      } else if (key == "version") {
        s.version = value;
        have_version = true;
      } else if (key == "depends" || key == "pre-depends") {
        append_groups(s.depends, parse_dependency_expr(value));
      } else if (key == "conflicts" || key == "breaks") {
        for (auto& c : parse_conflict_expr(value)) s.conflicts.push_back(std::move(c));
      } else if (key == "provides") {
        for (auto& c : parse_conflict_expr(value)) s.provides.push_back(std::move(c.name));
      } else if (key == "architecture") {
        s.architecture = value;
      }
    }
    const std::string where = "stanza " + std::to_string(raw.index) + " (line " + std::to_string(raw.first_line) + ")";
    if (!have_name) throw Error(Errc::MissingField, where + ": missing field Package");
    if (!have_version) throw Error(Errc::MissingField, where + ": missing field Version");
    if (!is_valid_package_name(s.name))
      throw Error(Errc::MalformedStanza, where + ": invalid package name '" + s.name + "'");
    if (!is_valid_version(s.version))
      throw Error(Errc::MalformedVersion, where + ": malformed version '" + s.version + "'");
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_constraint(const VersionConstraint& c) {
  if (c.relation == Relation::Any) return c.name;
  return c.name + " (" + relation_token(c.relation) + " " + c.bound + ")";
}

std::string format_alternatives(const Alternatives& alts) {
  std::string out;
  for (std::size_t i = 0; i < alts.size(); ++i) {
    if (i) out += " | ";
    out += format_constraint(alts[i]);
  }
  return out;
}

std::string format_dependency_expr(const DependencyExpr& expr) {
  std::string out;
  for (std::size_t i = 0; i < expr.size(); ++i) {
    if (i) out += ", ";
    out += format_alternatives(expr[i]);
  }
  return out;
}

std::string format_stanza(const PackageStanza& s) {
  std::string out = "Package: " + s.name + "\nVersion: " + s.version + "\n";
  if (!s.architecture.empty()) out += "Architecture: " + s.architecture + "\n";
  if (!s.depends.empty()) out += "Depends: " + format_dependency_expr(s.depends) + "\n";
  if (!s.conflicts.empty()) {
    out += "Conflicts: ";
    for (std::size_t i = 0; i < s.conflicts.size(); ++i) {
      if (i) out += ", ";
      out += format_constraint(s.conflicts[i]);
    }
    out += "\n";
  }
  if (!s.provides.empty()) {
    out += "Provides: ";
    for (std::size_t i = 0; i < s.provides.size(); ++i) {
      if (i) out += ", ";
      out += s.provides[i];
    }
    out += "\n";
  }
  return out + "\n";
}

}  // namespace tmig
