#include "report.hpp"

#include <json.hpp>

#include "error.hpp"

namespace tmig {
namespace {

using nlohmann::json;

std::vector<std::string> labels(const Universe& u, const PackageSet& s) {
  std::vector<std::string> out;
  for (PkgId p : s) out.push_back(u.label(p));
  return out;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    out.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return out;
}

}  // namespace

ResultDocument make_document(const Universe& u, const MigrationResult& r, const PolicyRules& policy) {
  ResultDocument d;
  d.t_prime = labels(u, r.t_prime);
  d.migrated_in = labels(u, r.migrated_in);
  d.removed = labels(u, r.removed);
  d.delta = r.delta;
  d.verified = r.verification.ok();
  d.verification = describe(r.verification, u, policy);
  d.optimum = r.optimum;
  if (d.verified) d.hints = split_lines(render_hints(u, r));
  return d;
}

std::string write_document(const ResultDocument& d) {
  json j;
  j["t_prime"] = d.t_prime;
  j["migrated_in"] = d.migrated_in;
  j["removed"] = d.removed;
  j["delta"] = d.delta;
  j["verified"] = d.verified;
  j["verification"] = d.verification;
  j["optimum"] = {{"satisfied", d.optimum.satisfied},
                  {"total", d.optimum.total},
                  {"externally_claimed", d.optimum.externally_claimed}};
  j["explanation"] = d.explanation ? json(*d.explanation) : json(nullptr);
  j["hints"] = d.hints;
  return j.dump(2) + "\n";
}

ResultDocument read_document(std::string_view text) {
  try {
    const json j = json::parse(text);
    ResultDocument d;
    j.at("t_prime").get_to(d.t_prime);
    j.at("migrated_in").get_to(d.migrated_in);
    j.at("removed").get_to(d.removed);
    j.at("delta").get_to(d.delta);
    j.at("verified").get_to(d.verified);
    j.at("verification").get_to(d.verification);
    const json& o = j.at("optimum");
    o.at("satisfied").get_to(d.optimum.satisfied);
    o.at("total").get_to(d.optimum.total);
    o.at("externally_claimed").get_to(d.optimum.externally_claimed);
    if (!j.at("explanation").is_null()) d.explanation = j.at("explanation").get<std::vector<std::string>>();
    j.at("hints").get_to(d.hints);
    return d;
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("malformed result document: ") + e.what());
  }
}

std::string explanation_json(const std::string& target, std::optional<std::size_t> migrates_with_delta,
                             const std::vector<std::string>& lines) {
  json j;
  j["target"] = target;
  j["migrates"] = migrates_with_delta.has_value();
  j["delta"] = migrates_with_delta ? json(*migrates_with_delta) : json(nullptr);
  j["explanation"] = lines;
  return j.dump(2) + "\n";
}

std::string check_json(const std::vector<std::pair<std::string, std::string>>& duplicates,
                       const std::vector<CheckEntry>& uninstallable) {
  json j;
  j["clean"] = duplicates.empty() && uninstallable.empty();
  j["duplicates"] = json::array();
  for (const auto& [a, b] : duplicates) j["duplicates"].push_back({a, b});
  j["uninstallable"] = json::array();
  for (const auto& e : uninstallable) j["uninstallable"].push_back({{"package", e.package}, {"explanation", e.explanation}});
  return j.dump(2) + "\n";
}

std::string stats_json(const Universe& u, const StatsReport& s) {
  json j;
  j["packages"] = s.packages;
  j["testing"] = s.testing;
  j["unstable"] = s.unstable;
  j["conflict_pairs"] = s.conflicts;
  j["easy"] = s.easy;
  j["encodings"] = json::array();
  for (const auto& row : s.rows) {
    json r;
    r["encoding"] = encoding_name(row.encoding);
    r["pkg_atoms"] = row.stats.pkg_atoms;
    r["inst_atoms"] = row.stats.inst_atoms;
    r["clauses"] = row.stats.clauses;
    for (Family f : {Family::U, Family::V, Family::E, Family::I, Family::D, Family::C})
      r["families"][family_name(f)] = row.stats.family(f);
    j["encodings"].push_back(r);
  }
  j["closure_sizes"] = s.closure_sizes;
  j["connecting_sizes"] = s.connecting_sizes;
  j["top_closures"] = json::array();
  for (const auto& [p, n] : s.top_closures) j["top_closures"].push_back({{"package", u.label(p)}, {"size", n}});
  return j.dump(2) + "\n";
}

}  // namespace tmig
