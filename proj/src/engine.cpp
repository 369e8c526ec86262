#include "engine.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "error.hpp"
#include "sat/external.hpp"
#include "sat/maxsat.hpp"
#include "sat/mus.hpp"
#include "sat/solver.hpp"

namespace tmig {
namespace {

std::string join_labels(const Universe& u, const PackageSet& s, const char* sep = " ") {
  std::string out;
  for (PkgId p : s) {
    if (!out.empty()) out += sep;
    out += u.label(p);
  }
  return out;
}

PackageSet set_difference(const PackageSet& a, const PackageSet& b) {
  PackageSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string disjunction_text(const Universe& u, const Disjunction& d) {
  std::string text = d.source.empty() ? join_labels(u, d.members, " | ") : d.source;
  if (d.members.empty()) return text + " (no candidate exists)";
  return text + " (candidates: " + join_labels(u, d.members, ", ") + ")";
}

std::string context_suffix(const Universe& u, PkgId ctx, PkgId pkg) {
  if (ctx == kNoPkg || ctx == pkg) return {};
  return " [installing " + u.label(ctx) + "]";
}

std::string origin_text(const Universe& u, const ClauseOrigin& o, const PolicyRules& policy) {
  switch (o.family) {
    case Family::U:
      return u.label(o.pkg) + " and " + u.label(o.other) + " share a name; at most one may be in testing";
    case Family::V:
      return "policy " + describe_rule(policy, o.index, u);
    case Family::I:
      return u.label(o.pkg) + " in testing needs a healthy installation";
    case Family::E:
      return u.label(o.pkg) + " used to install " + u.label(o.ctx) + " must itself be in testing";
    case Family::D:
      return u.label(o.pkg) + " depends on " + disjunction_text(u, u.deps(o.pkg)[o.index]) +
             context_suffix(u, o.ctx, o.pkg);
    case Family::C:
      return u.label(o.pkg) + " conflicts with " + u.label(o.other) + context_suffix(u, o.ctx, kNoPkg);
    case Family::NT:
      return "at least one package must change";
    case Family::Target:
      return u.label(o.pkg) + " is requested to migrate";
  }
  return {};
}

sat::SolveResult run_solver(const sat::Instance& inst, const MigrationRequest& req) {
  const sat::Deadline deadline = sat::Deadline::after(req.timeout);
  if (!req.solver_command.empty()) return sat::run_external(inst, req.solver_command, sat::DimacsKind::Wcnf, deadline);
  return sat::solve_pmaxsat(inst, deadline);
}

std::size_t symmetric_delta(const PackageSet& a, const PackageSet& b) {
  PackageSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out.size();
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Max: return "max";
    case Mode::MinNontrivial: return "min";
    case Mode::Target: return "target";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view name) {
  for (Mode m : {Mode::Max, Mode::MinNontrivial, Mode::Target})
    if (name == mode_name(m)) return m;
  return std::nullopt;
}

TestingDiagnosis diagnose_testing(const ClosureIndex& idx) {
  const Universe& u = idx.universe();
  const PackageSet t = u.testing();
  TestingDiagnosis d;
  for (const auto& [a, b] : unique_pairs(u))
    if (a < b && u.in_testing(a) && u.in_testing(b)) d.duplicates.emplace_back(a, b);
  for (PkgId p : t)
    if (!is_installable(idx, p, t)) d.uninstallable.push_back(p);
  return d;
}

EncodedProblem build_problem(const ClosureIndex& idx, const MigrationRequest& req, bool with_objective) {
  const Universe& u = idx.universe();
  EncodedProblem ep = encode(req.encoding, idx, req.policy, {req.p2_bound});
  if (!with_objective) return ep;
  switch (req.mode) {
    case Mode::Max:
      ep.soft = soft_max(u);
      break;
    case Mode::MinNontrivial:
      ep.add_hard(nontriviality_clause(u), {Family::NT});
      ep.soft = soft_min(u);
      break;
    case Mode::Target:
      if (!req.target) throw Error(Errc::InvalidArgument, "target mode needs a target package");
      ep.add_hard(target_clause(u, *req.target), {Family::Target, *req.target});
      ep.soft = soft_min(u);
      break;
  }
  return ep;
}

PackageSet decode_solution(const sat::Assignment& a, const AtomTable& atoms) {
  PackageSet out;
  for (PkgId p = 0; p < atoms.package_count(); ++p)
    if (a.value(atoms.pkg_var(p))) out.push_back(p);
  return out;
}

MigrationResult solve_migration(const ClosureIndex& idx, const MigrationRequest& req) {
  const Universe& u = idx.universe();
  MigrationResult res;
  res.testing = diagnose_testing(idx);
  if (!res.testing.clean() && req.abort_on_untrimmed) {
    std::string msg = "testing is not unique and trimmed:";
    for (const auto& [a, b] : res.testing.duplicates) msg += " duplicate " + u.label(a) + "," + u.label(b) + ";";
    for (PkgId p : res.testing.uninstallable) msg += " uninstallable " + u.label(p) + ";";
    throw Error(Errc::UntrimmedTesting, msg);
  }

  EncodedProblem ep = build_problem(idx, req);
  res.stats = instance_stats(ep);
  sat::Instance inst = ep.instance();
  const sat::SolveResult r = run_solver(inst, req);
  if (r.status == sat::Status::Unsat)
    throw Error(Errc::Unsolvable, std::string("no admissible migration satisfies the hard constraints (mode ") +
                                      mode_name(req.mode) + ", encoding " + encoding_name(req.encoding) + ")");
  if (r.status == sat::Status::Timeout) throw Error(Errc::Timeout, "solver budget exhausted");

  const std::size_t satisfied = sat::count_satisfied(r.assignment, inst.soft);
  if (r.claimed_cost && *r.claimed_cost != inst.soft.size() - satisfied)
    throw Error(Errc::OptimumMismatch, "external solver claims cost " + std::to_string(*r.claimed_cost) +
                                           " but its model violates " + std::to_string(inst.soft.size() - satisfied) +
                                           " soft clauses");

  const PackageSet t = u.testing();
  res.t_prime = decode_solution(r.assignment, ep.atoms);
  res.migrated_in = set_difference(res.t_prime, t);
  res.removed = set_difference(t, res.t_prime);
  res.delta = res.migrated_in.size() + res.removed.size();
  res.verification = is_admissible(idx, res.t_prime, req.policy);
  res.optimum = {satisfied, inst.soft.size(), r.externally_claimed};

  // Candidates are the packages carrying a soft unit.
  std::vector<sat::Var> candidates;
  for (std::size_t i = 0; i < inst.soft.size(); ++i) candidates.push_back(sat::var_of(inst.soft[i][0]));
  sat::Assignment last = r.assignment;
  for (std::size_t k = 0; k < req.alternatives && !candidates.empty(); ++k) {
    std::vector<sat::Lit> block;
    for (sat::Var v : candidates) block.push_back(last.value(v) ? -static_cast<sat::Lit>(v) : static_cast<sat::Lit>(v));
    inst.hard.add(block);
    const sat::SolveResult alt = run_solver(inst, req);
    if (alt.status != sat::Status::Optimal && alt.status != sat::Status::Sat) break;
    Alternative a;
    a.t_prime = decode_solution(alt.assignment, ep.atoms);
    a.delta = symmetric_delta(a.t_prime, t);
    a.satisfied = sat::count_satisfied(alt.assignment, inst.soft);
    res.alternatives.push_back(std::move(a));
    last = alt.assignment;
  }
  return res;
}

Explanation explain_non_migration(const ClosureIndex& idx, const MigrationRequest& req) {
  const Universe& u = idx.universe();
  MigrationRequest target_req = req;
  target_req.mode = Mode::Target;
  const EncodedProblem ep = build_problem(idx, target_req);
  const sat::Deadline deadline = sat::Deadline::after(req.timeout);
  const sat::SolveResult r = sat::solve_sat(ep.hard, ep.atoms.num_vars(), deadline);
  if (r.status == sat::Status::Timeout) throw Error(Errc::Timeout, "solver budget exhausted");
  if (r.status == sat::Status::Sat) throw Error(Errc::ActuallySolvable, u.label(*req.target) + " can migrate");
  const sat::MusResult mus = sat::extract_mus(ep.hard, deadline);
  Explanation ex;
  for (std::size_t i : mus.core) {
    ex.families.push_back(ep.origins[i].family);
    ex.lines.push_back(origin_text(u, ep.origins[i], req.policy));
  }
  return ex;
}

std::vector<std::string> explain_uninstallable(const ClosureIndex& idx, PkgId p, const PackageSet& repo) {
  const Universe& u = idx.universe();
  const InstallQuery q = installability_query(idx, p, repo);
  const sat::MusResult mus = sat::extract_mus(q.clauses);
  std::vector<std::string> out;
  for (std::size_t i : mus.core) {
    const auto& o = q.origins[i];
    switch (o.kind) {
      case InstallQuery::Kind::Root:
        out.push_back(u.label(o.pkg) + (contains(repo, o.pkg) ? " must be installed" : " is not in the repository"));
        break;
      case InstallQuery::Kind::Dependency: {
        const Disjunction& d = u.deps(o.pkg)[o.disjunction];
        PackageSet inside;
        for (PkgId x : d.members)
          if (contains(repo, x)) inside.push_back(x);
        std::string text = d.source.empty() ? join_labels(u, d.members, " | ") : d.source;
        out.push_back(u.label(o.pkg) + " depends on " + text +
                      (inside.empty() ? " (no candidate in the repository)"
                                      : " (candidates: " + join_labels(u, inside, ", ") + ")"));
        break;
      }
      case InstallQuery::Kind::Conflict:
        out.push_back(u.label(o.pkg) + " conflicts with " + u.label(o.other));
        break;
    }
  }
  return out;
}

std::string render_hints(const Universe& u, const MigrationResult& r) {
  if (!r.verification.ok()) throw Error(Errc::RefuseUnverified, "refusing to emit hints for an unverified migration");
  std::string out;
  if (!r.migrated_in.empty()) out += "easy " + join_labels(u, r.migrated_in) + "\n";
  for (PkgId p : r.removed) {
    const auto& name = u.package(p).name;
    const bool replaced =
        std::any_of(r.t_prime.begin(), r.t_prime.end(), [&](PkgId q) { return u.package(q).name == name; });
    if (!replaced) out += "remove " + u.label(p) + "\n";
  }
  return out;
}

std::string render_report(const Universe& u, const MigrationResult& r, const PolicyRules& policy) {
  std::ostringstream os;
  for (const auto& [a, b] : r.testing.duplicates)
    os << "warning: testing holds both " << u.label(a) << " and " << u.label(b) << "\n";
  for (PkgId p : r.testing.uninstallable) os << "warning: " << u.label(p) << " is not installable in testing\n";
  os << "t_prime: " << join_labels(u, r.t_prime) << "\n";
  os << "migrated_in: " << join_labels(u, r.migrated_in) << "\n";
  os << "removed: " << join_labels(u, r.removed) << "\n";
  os << "delta: " << r.delta << "\n";
  os << "verified: " << (r.verification.ok() ? "yes" : "no") << " (" << describe(r.verification, u, policy) << ")\n";
  os << "optimum: " << r.optimum.satisfied << " of " << r.optimum.total << " soft clauses"
     << (r.optimum.externally_claimed ? " (externally claimed)" : "") << "\n";
  for (std::size_t i = 0; i < r.alternatives.size(); ++i) {
    const auto& a = r.alternatives[i];
    os << "alternative " << i + 1 << ": delta " << a.delta << ", optimum " << a.satisfied << ": "
       << join_labels(u, a.t_prime) << "\n";
  }
  if (r.verification.ok()) os << "hints:\n" << render_hints(u, r);
  return os.str();
}

std::vector<std::string> suggest_names(const Universe& u, std::string_view name, std::size_t limit) {
  std::vector<std::pair<std::size_t, std::string>> scored;
  const std::size_t cutoff = std::max<std::size_t>(2, name.size() / 3);
  for (auto& n : u.names()) {
    const std::size_t d = levenshtein(name, n);
    if (d <= cutoff) scored.emplace_back(d, std::move(n));
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < limit; ++i) out.push_back(scored[i].second);
  return out;
}

PkgId resolve_package(const Universe& u, std::string_view spec) {
  const auto pkg = parse_package_spec(spec);
  if (!pkg) throw Error(Errc::InvalidArgument, "expected name/version, got '" + std::string(spec) + "'");
  if (auto id = u.find(*pkg)) return *id;
  std::string msg = "unknown package " + to_string(*pkg);
  const auto versions = u.versions_of(pkg->name);
  if (!versions.empty()) {
    msg += "; known versions:";
    for (PkgId v : versions) msg += " " + u.label(v);
  } else if (auto near = suggest_names(u, pkg->name); !near.empty()) {
    msg += "; did you mean:";
    for (const auto& n : near) msg += " " + n;
  }
  throw Error(Errc::UnknownPackage, msg);
}

StatsReport collect_stats(const ClosureIndex& idx, const PolicyRules& policy, std::size_t top_k, std::size_t p2_bound) {
  const Universe& u = idx.universe();
  StatsReport s;
  s.packages = u.size();
  s.testing = u.testing().size();
  s.unstable = u.unstable().size();
  s.conflicts = u.conflict_pairs().size();
  s.easy = idx.easy().size();
  std::vector<Encoding> encs;
  if (!u.has_conflicts()) encs.push_back(Encoding::P1);
  if (u.size() <= p2_bound) encs.push_back(Encoding::P2);
  encs.insert(encs.end(), {Encoding::P3, Encoding::P4, Encoding::P5Strict, Encoding::P5Pruned});
  for (Encoding e : encs) s.rows.push_back({e, instance_stats(encode(e, idx, policy, {p2_bound}))});
  for (PkgId p = 0; p < u.size(); ++p) {
    s.closure_sizes.push_back(idx.closure(p).size());
    s.connecting_sizes.push_back(idx.connecting(p).size());
    s.top_closures.emplace_back(p, idx.closure(p).size());
  }
  std::stable_sort(s.top_closures.begin(), s.top_closures.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (s.top_closures.size() > top_k) s.top_closures.resize(top_k);
  return s;
}

namespace {

std::string distribution(std::vector<std::size_t> v) {
  if (v.empty()) return "min 0 median 0 mean 0 max 0";
  std::sort(v.begin(), v.end());
  const double mean = static_cast<double>(std::accumulate(v.begin(), v.end(), std::size_t{0})) / static_cast<double>(v.size());
  std::ostringstream os;
  os << "min " << v.front() << " median " << v[v.size() / 2] << " mean " << std::fixed << std::setprecision(2) << mean
     << " max " << v.back();
  return os.str();
}

}  // namespace

std::string render_stats(const Universe& u, const StatsReport& s) {
  std::ostringstream os;
  os << "packages: " << s.packages << " (testing " << s.testing << ", unstable " << s.unstable << ")\n";
  os << "conflict pairs: " << s.conflicts << "\n";
  os << "easy packages: " << s.easy << "\n";
  os << std::left << std::setw(10) << "encoding" << std::right << std::setw(10) << "pkg-atoms" << std::setw(11)
     << "inst-atoms" << std::setw(10) << "clauses";
  for (Family f : {Family::U, Family::V, Family::E, Family::I, Family::D, Family::C}) os << std::setw(9) << family_name(f);
  os << "\n";
  for (const auto& row : s.rows) {
    os << std::left << std::setw(10) << encoding_name(row.encoding) << std::right << std::setw(10) << row.stats.pkg_atoms
       << std::setw(11) << row.stats.inst_atoms << std::setw(10) << row.stats.clauses;
    for (Family f : {Family::U, Family::V, Family::E, Family::I, Family::D, Family::C})
      os << std::setw(9) << row.stats.family(f);
    os << "\n";
  }
  os << "closure size: " << distribution(s.closure_sizes) << "\n";
  os << "connecting size: " << distribution(s.connecting_sizes) << "\n";
  os << "largest closures:\n";
  for (const auto& [p, n] : s.top_closures) os << "  " << u.label(p) << " " << n << "\n";
  return os.str();
}

std::string render_atom_map(const Universe& u, const AtomTable& atoms) {
  std::string out;
  for (sat::Var v = 1; v <= atoms.num_vars(); ++v) {
    const auto a = atoms.atom(v);
    out += std::to_string(v);
    if (a.inst)
      out += " inst " + u.label(a.pkg) + " @ " + u.label(a.ctx) + "\n";
    else
      out += " pkg " + u.label(a.pkg) + "\n";
  }
  return out;
}

}  // namespace tmig
