#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "engine.hpp"

namespace tmig {

/// Structured form of a migration result; every set is a list of
/// "name/version" labels in package order.
struct ResultDocument {
  std::vector<std::string> t_prime;
  std::vector<std::string> migrated_in;
  std::vector<std::string> removed;
  std::size_t delta = 0;
  bool verified = false;
  std::string verification;
  Optimum optimum;
  std::optional<std::vector<std::string>> explanation;
  std::vector<std::string> hints;

  friend bool operator==(const ResultDocument&, const ResultDocument&) = default;
};

ResultDocument make_document(const Universe& u, const MigrationResult& r, const PolicyRules& policy);
std::string write_document(const ResultDocument& doc);
/// Throws InvalidArgument on malformed input.
ResultDocument read_document(std::string_view json);

std::string explanation_json(const std::string& target, std::optional<std::size_t> migrates_with_delta,
                             const std::vector<std::string>& lines);

struct CheckEntry {
  std::string package;
  std::vector<std::string> explanation;
};
std::string check_json(const std::vector<std::pair<std::string, std::string>>& duplicates,
                       const std::vector<CheckEntry>& uninstallable);

std::string stats_json(const Universe& u, const StatsReport& s);

}  // namespace tmig
