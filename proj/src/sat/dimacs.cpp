#include "sat/dimacs.hpp"

#include <charconv>
#include <vector>

#include "error.hpp"

namespace tmig::sat {
namespace {

void append_clause(std::string& out, std::span<const Lit> clause) {
  for (Lit l : clause) {
    out += std::to_string(l);
    out += ' ';
  }
  out += "0\n";
}

[[noreturn]] void bad(const std::string& why) { throw Error(Errc::UnparsableOutput, "DIMACS: " + why); }

long long to_int(std::string_view tok) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) bad("expected integer, got '" + std::string(tok) + "'");
  return v;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

std::string emit_dimacs(const Instance& instance, DimacsKind kind) {
  std::string out;
  if (kind == DimacsKind::Cnf) {
    if (!instance.soft.empty())
      throw Error(Errc::InvalidArgument, "CNF output cannot carry soft clauses; use WCNF");
    out = "p cnf " + std::to_string(instance.num_vars) + " " + std::to_string(instance.hard.size()) + "\n";
    for (std::size_t i = 0; i < instance.hard.size(); ++i) append_clause(out, instance.hard[i]);
    return out;
  }
  const std::size_t top = instance.soft.size() + 1;
  const std::string top_prefix = std::to_string(top) + " ";
  out = "p wcnf " + std::to_string(instance.num_vars) + " " +
        std::to_string(instance.hard.size() + instance.soft.size()) + " " + std::to_string(top) + "\n";
  for (std::size_t i = 0; i < instance.hard.size(); ++i) {
    out += top_prefix;
    append_clause(out, instance.hard[i]);
  }
  for (std::size_t i = 0; i < instance.soft.size(); ++i) {
    out += "1 ";
    append_clause(out, instance.soft[i]);
  }
  return out;
}

Instance parse_dimacs(std::string_view text) {
  Instance inst;
  bool header = false, weighted = false;
  long long declared = 0, top = 0;
  std::vector<Lit> clause;
  long long weight = -1;
  std::size_t seen = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    const auto toks = tokens(line);
    if (toks.empty() || toks[0] == "c" || toks[0].front() == 'c') continue;
    if (toks[0] == "p") {
      if (header) bad("duplicate header");
      header = true;
      if (toks.size() == 4 && toks[1] == "cnf") {
        inst.num_vars = static_cast<Var>(to_int(toks[2]));
        declared = to_int(toks[3]);
      } else if (toks.size() == 5 && toks[1] == "wcnf") {
        weighted = true;
        inst.num_vars = static_cast<Var>(to_int(toks[2]));
        declared = to_int(toks[3]);
        top = to_int(toks[4]);
      } else {
        bad("unrecognised header '" + std::string(line) + "'");
      }
      continue;
    }
    if (!header) bad("clause before header");
    for (std::string_view tok : toks) {
      const long long v = to_int(tok);
      if (weighted && weight < 0) {
        if (v <= 0) bad("non-positive weight");
        weight = v;
        continue;
      }
      if (v == 0) {
        if (!weighted || weight == top)
          inst.hard.add(clause);
        else if (weight == 1)
          inst.soft.add(clause);
        else
          bad("unsupported weight " + std::to_string(weight));
        clause.clear();
        weight = -1;
        ++seen;
        continue;
      }
      if (static_cast<unsigned long long>(v < 0 ? -v : v) > inst.num_vars) bad("literal out of range");
      clause.push_back(static_cast<Lit>(v));
    }
  }
  if (!header) bad("missing header");
  if (!clause.empty() || weight >= 0) bad("unterminated clause");
  if (static_cast<long long>(seen) != declared) bad("clause count does not match header");
  return inst;
}

}  // namespace tmig::sat
