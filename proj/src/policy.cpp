#include "policy.hpp"

#include <string>

#include "error.hpp"

namespace tmig {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool holds(const PolicyLiteral& l, const PackageSet& t_prime) { return contains(t_prime, l.pkg) == l.positive; }

std::string render(const std::vector<PolicyLiteral>& lits, const Universe& u) {
  std::string out;
  for (const auto& l : lits) {
    if (!out.empty()) out += ' ';
    out += (l.positive ? '+' : '-') + u.label(l.pkg);
  }
  return out;
}

}  // namespace

PolicyRules parse_policy(std::string_view text, const Universe& u) {
  PolicyRules rules;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = "policy line " + std::to_string(line_no);
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw Error(Errc::MalformedPolicy, where + ": expected 'group:' or 'clause:'");
    const std::string_view kind = trim(line.substr(0, colon));
    if (kind != "group" && kind != "clause")
      throw Error(Errc::MalformedPolicy, where + ": unknown rule kind '" + std::string(kind) + "'");

    std::vector<PolicyLiteral> lits;
    std::string_view rest = line.substr(colon + 1);
    while (true) {
      rest = trim(rest);
      if (rest.empty()) break;
      std::size_t end = rest.find_first_of(" \t");
      if (end == std::string_view::npos) end = rest.size();
      std::string_view tok = rest.substr(0, end);
      rest = rest.substr(end);
      bool positive = true;
      if (tok.front() == '+' || tok.front() == '-') {
        positive = tok.front() == '+';
        tok.remove_prefix(1);
      }
      const auto spec = parse_package_spec(tok);
      if (!spec) throw Error(Errc::MalformedPolicy, where + ": expected name/version, got '" + std::string(tok) + "'");
      const auto id = u.find(*spec);
      if (!id) throw Error(Errc::UnknownPackage, where + ": unknown package " + to_string(*spec));
      lits.push_back({*id, positive});
    }
    if (lits.empty()) throw Error(Errc::MalformedPolicy, where + ": empty " + std::string(kind));
    (kind == "group" ? rules.groups : rules.clauses).push_back(std::move(lits));
  }
  return rules;
}

std::vector<PolicyClause> policy_clauses(const PolicyRules& rules) {
  std::vector<PolicyClause> out;
  std::size_t rule = 0;
  for (const auto& g : rules.groups) {
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        if (i != j) out.push_back({{-policy_lit(g[i]), policy_lit(g[j])}, rule});
    ++rule;
  }
  for (const auto& c : rules.clauses) {
    PolicyClause pc{{}, rule++};
    for (const auto& l : c) pc.lits.push_back(policy_lit(l));
    out.push_back(std::move(pc));
  }
  return out;
}

std::optional<std::size_t> first_violated_rule(const PolicyRules& rules, const PackageSet& t_prime) {
  std::size_t rule = 0;
  for (const auto& g : rules.groups) {
    std::size_t true_count = 0;
    for (const auto& l : g) true_count += holds(l, t_prime) ? 1 : 0;
    if (true_count != 0 && true_count != g.size()) return rule;
    ++rule;
  }
  for (const auto& c : rules.clauses) {
    bool sat = false;
    for (const auto& l : c) sat = sat || holds(l, t_prime);
    if (!sat) return rule;
    ++rule;
  }
  return std::nullopt;
}

std::string describe_rule(const PolicyRules& rules, std::size_t rule, const Universe& u) {
  if (rule < rules.groups.size()) return "group: " + render(rules.groups[rule], u);
  return "clause: " + render(rules.clauses.at(rule - rules.groups.size()), u);
}

}  // namespace tmig
