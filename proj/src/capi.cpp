#include "tmig/tmig.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "closure.hpp"
#include "control.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "report.hpp"
#include "sat/dimacs.hpp"
#include "sat/external.hpp"
#include "universe.hpp"

struct tmig_universe {
  std::unique_ptr<tmig::Universe> universe;
  std::unique_ptr<tmig::ClosureIndex> index;
};

struct tmig_result {
  std::size_t delta = 0;
  bool verified = false;
  std::string text;
  std::string structured;
  std::string hints;
};

namespace {

using tmig::Errc;

thread_local std::string last_error;

tmig_status status_of(Errc code) {
  switch (code) {
    case Errc::MissingField:
    case Errc::MalformedStanza:
    case Errc::MalformedDependency:
    case Errc::MalformedVersion:
    case Errc::DuplicatePackage:
    case Errc::MalformedPolicy:
      return TMIG_E_PARSE;
    case Errc::UnknownPackage:
      return TMIG_E_UNKNOWN_PACKAGE;
    case Errc::ContextTooLarge:
    case Errc::TooLarge:
    case Errc::InvalidArgument:
      return TMIG_E_INVALID_ARGUMENT;
    case Errc::ConflictsPresent:
    case Errc::UniverseTooLarge:
      return TMIG_E_UNSUPPORTED;
    case Errc::NoChangeCandidates:
    case Errc::NotAMigrationCandidate:
      return TMIG_E_NOT_CANDIDATE;
    case Errc::SolverCrashed:
    case Errc::UnparsableOutput:
    case Errc::AssignmentInvalid:
    case Errc::OptimumMismatch:
      return TMIG_E_SOLVER;
    case Errc::Unsolvable:
      return TMIG_E_UNSOLVABLE;
    case Errc::Timeout:
      return TMIG_E_TIMEOUT;
    case Errc::ActuallySolvable:
      return TMIG_E_ACTUALLY_SOLVABLE;
    case Errc::RefuseUnverified:
      return TMIG_E_UNVERIFIED;
    case Errc::UntrimmedTesting:
      return TMIG_E_UNTRIMMED;
    case Errc::Io:
      return TMIG_E_IO;
    case Errc::NotUnsat:
      return TMIG_E_INTERNAL;
  }
  return TMIG_E_INTERNAL;
}

template <class F>
tmig_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return TMIG_OK;
  } catch (const tmig::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TMIG_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TMIG_E_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string read_file(const char* path) {
  if (!path) throw tmig::Error(Errc::InvalidArgument, "missing file path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tmig::Error(Errc::Io, std::string("cannot read ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<tmig::PackageStanza> parse_named(const std::string& text, const std::string& what) {
  try {
    return tmig::parse_packages(text);
  } catch (const tmig::Error& e) {
    throw tmig::Error(e.code(), what + ": " + e.what());
  }
}

tmig_universe* make_universe(const std::string& testing, const std::string& unstable, const std::string& tname,
                             const std::string& uname) {
  auto t = parse_named(testing, tname);
  auto u = parse_named(unstable, uname);
  auto h = std::make_unique<tmig_universe>();
  h->universe = std::make_unique<tmig::Universe>(tmig::build_universe(t, u));
  h->index = std::make_unique<tmig::ClosureIndex>(*h->universe);
  return h.release();
}

tmig::MigrationRequest to_request(const tmig_universe* h, const tmig_options* opts) {
  tmig_options defaults;
  tmig_options_init(&defaults);
  if (!opts) opts = &defaults;
  const tmig::Universe& u = *h->universe;
  tmig::MigrationRequest req;
  switch (opts->mode) {
    case TMIG_MODE_MAX: req.mode = tmig::Mode::Max; break;
    case TMIG_MODE_MIN: req.mode = tmig::Mode::MinNontrivial; break;
    case TMIG_MODE_TARGET: req.mode = tmig::Mode::Target; break;
    default: throw tmig::Error(Errc::InvalidArgument, "unknown mode");
  }
  if (opts->target) req.target = tmig::resolve_package(u, opts->target);
  if (req.mode == tmig::Mode::Target && !req.target) throw tmig::Error(Errc::InvalidArgument, "target mode needs --target");
  if (opts->encoding) {
    auto e = tmig::parse_encoding(opts->encoding);
    if (!e) throw tmig::Error(Errc::InvalidArgument, std::string("unknown encoding '") + opts->encoding + "'");
    req.encoding = *e;
  }
  if (opts->policy_path) req.policy = tmig::parse_policy(read_file(opts->policy_path), u);
  if (opts->solver) {
    req.solver_command = tmig::sat::split_command(opts->solver);
    if (req.solver_command.empty()) throw tmig::Error(Errc::InvalidArgument, "empty solver command");
  }
  req.timeout = opts->timeout;
  req.p2_bound = opts->p2_bound;
  req.abort_on_untrimmed = opts->abort_on_untrimmed != 0;
  req.alternatives = opts->alternatives;
  return req;
}

}  // namespace

extern "C" {

void tmig_options_init(tmig_options* opts) {
  if (!opts) return;
  *opts = tmig_options{};
  opts->mode = TMIG_MODE_MAX;
  opts->timeout = 300;
  opts->p2_bound = tmig::kDefaultP2Bound;
}

const char* tmig_last_error(void) { return last_error.c_str(); }

const char* tmig_status_name(tmig_status status) {
  switch (status) {
    case TMIG_OK: return "ok";
    case TMIG_E_PARSE: return "parse error";
    case TMIG_E_UNKNOWN_PACKAGE: return "unknown package";
    case TMIG_E_INVALID_ARGUMENT: return "invalid argument";
    case TMIG_E_IO: return "i/o error";
    case TMIG_E_UNSOLVABLE: return "unsolvable";
    case TMIG_E_TIMEOUT: return "timeout";
    case TMIG_E_SOLVER: return "solver failure";
    case TMIG_E_UNSUPPORTED: return "unsupported encoding";
    case TMIG_E_NOT_CANDIDATE: return "not a migration candidate";
    case TMIG_E_ACTUALLY_SOLVABLE: return "actually solvable";
    case TMIG_E_UNVERIFIED: return "unverified";
    case TMIG_E_UNTRIMMED: return "untrimmed testing";
    case TMIG_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

tmig_status tmig_universe_load(const char* testing_path, const char* unstable_path, tmig_universe** out) {
  if (!out) return TMIG_E_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded([&] { *out = make_universe(read_file(testing_path), read_file(unstable_path), testing_path, unstable_path); });
}

tmig_status tmig_universe_from_text(const char* testing, const char* unstable, tmig_universe** out) {
  if (!out) return TMIG_E_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded([&] { *out = make_universe(testing ? testing : "", unstable ? unstable : "", "testing", "unstable"); });
}

void tmig_universe_free(tmig_universe* u) { delete u; }

size_t tmig_universe_size(const tmig_universe* u) { return u ? u->universe->size() : 0; }

tmig_status tmig_migrate(const tmig_universe* h, const tmig_options* opts, tmig_result** out) {
  if (!h || !out) return TMIG_E_INVALID_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    const tmig::MigrationRequest req = to_request(h, opts);
    const tmig::MigrationResult r = tmig::solve_migration(*h->index, req);
    auto res = std::make_unique<tmig_result>();
    res->delta = r.delta;
    res->verified = r.verification.ok();
    res->text = tmig::render_report(*h->universe, r, req.policy);
    res->structured = tmig::write_document(tmig::make_document(*h->universe, r, req.policy));
    if (res->verified) res->hints = tmig::render_hints(*h->universe, r);
    *out = res.release();
  });
}

void tmig_result_free(tmig_result* r) { delete r; }
size_t tmig_result_delta(const tmig_result* r) { return r ? r->delta : 0; }
int tmig_result_verified(const tmig_result* r) { return r && r->verified ? 1 : 0; }

tmig_status tmig_result_render(const tmig_result* r, tmig_format format, char** out) {
  if (!r || !out) return TMIG_E_INVALID_ARGUMENT;
  return guarded([&] { *out = dup_string(format == TMIG_FORMAT_STRUCTURED ? r->structured : r->text); });
}

tmig_status tmig_result_hints(const tmig_result* r, char** out) {
  if (!r || !out) return TMIG_E_INVALID_ARGUMENT;
  return guarded([&] {
    if (!r->verified) throw tmig::Error(Errc::RefuseUnverified, "refusing to emit hints for an unverified migration");
    *out = dup_string(r->hints);
  });
}

tmig_status tmig_explain(const tmig_universe* h, const tmig_options* opts, tmig_format format, char** out, int* migrates) {
  if (!h || !opts || !out) return TMIG_E_INVALID_ARGUMENT;
  return guarded([&] {
    if (!opts->target) throw tmig::Error(Errc::InvalidArgument, "explain needs a package");
    tmig::MigrationRequest req = to_request(h, opts);
    req.mode = tmig::Mode::Target;
    const std::string label = h->universe->label(*req.target);
    std::string text;
    try {
      const tmig::Explanation ex = tmig::explain_non_migration(*h->index, req);
      if (migrates) *migrates = 0;
      if (format == TMIG_FORMAT_STRUCTURED) {
        text = tmig::explanation_json(label, std::nullopt, ex.lines);
      } else {
        text = label + " cannot migrate:\n";
        for (const auto& line : ex.lines) text += "  " + line + "\n";
      }
    } catch (const tmig::Error& e) {
      if (e.code() != Errc::ActuallySolvable) throw;
      const tmig::MigrationResult r = tmig::solve_migration(*h->index, req);
      if (migrates) *migrates = 1;
      if (format == TMIG_FORMAT_STRUCTURED)
        text = tmig::explanation_json(label, r.delta, {});
      else
        text = label + " migrates with delta " + std::to_string(r.delta) + "\n";
    }
    *out = dup_string(text);
  });
}

tmig_status tmig_check(const tmig_universe* h, tmig_format format, char** out, int* clean) {
  if (!h || !out) return TMIG_E_INVALID_ARGUMENT;
  return guarded([&] {
    const tmig::Universe& u = *h->universe;
    const tmig::TestingDiagnosis d = tmig::diagnose_testing(*h->index);
    const tmig::PackageSet t = u.testing();
    std::vector<std::pair<std::string, std::string>> dups;
    for (const auto& [a, b] : d.duplicates) dups.emplace_back(u.label(a), u.label(b));
    std::vector<tmig::CheckEntry> bad;
    for (tmig::PkgId p : d.uninstallable) bad.push_back({u.label(p), tmig::explain_uninstallable(*h->index, p, t)});
    std::string text;
    if (format == TMIG_FORMAT_STRUCTURED) {
      text = tmig::check_json(dups, bad);
    } else {
      for (const auto& [a, b] : dups) text += "duplicate: " + a + " " + b + "\n";
      for (const auto& e : bad) {
        text += "uninstallable: " + e.package + "\n";
        for (const auto& line : e.explanation) text += "  " + line + "\n";
      }
      if (d.clean()) text += "testing is unique and trimmed\n";
    }
    if (clean) *clean = d.clean() ? 1 : 0;
    *out = dup_string(text);
  });
}

tmig_status tmig_stats(const tmig_universe* h, const tmig_options* opts, tmig_format format, char** out) {
  if (!h || !out) return TMIG_E_INVALID_ARGUMENT;
  return guarded([&] {
    const tmig::MigrationRequest req = to_request(h, opts);
    const tmig::StatsReport s = tmig::collect_stats(*h->index, req.policy, 10, req.p2_bound);
    *out = dup_string(format == TMIG_FORMAT_STRUCTURED ? tmig::stats_json(*h->universe, s)
                                                       : tmig::render_stats(*h->universe, s));
  });
}

tmig_status tmig_emit(const tmig_universe* h, const tmig_options* opts, tmig_dimacs kind, int with_objective,
                      char** dimacs, char** atom_map) {
  if (!h || !dimacs || !atom_map) return TMIG_E_INVALID_ARGUMENT;
  return guarded([&] {
    const tmig::MigrationRequest req = to_request(h, opts);
    const tmig::EncodedProblem ep = tmig::build_problem(*h->index, req, with_objective != 0);
    const auto k = kind == TMIG_DIMACS_CNF ? tmig::sat::DimacsKind::Cnf : tmig::sat::DimacsKind::Wcnf;
    const std::string text = tmig::sat::emit_dimacs(ep.instance(), k);
    const std::string map = tmig::render_atom_map(*h->universe, ep.atoms);
    char* d = dup_string(text);
    try {
      *atom_map = dup_string(map);
    } catch (...) {
      std::free(d);
      throw;
    }
    *dimacs = d;
  });
}

void tmig_string_free(char* s) { std::free(s); }

}  // extern "C"
