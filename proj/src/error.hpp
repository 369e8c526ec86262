#pragma once

#include <stdexcept>
#include <string>

namespace tmig {

enum class Errc {
  MissingField,
  MalformedStanza,
  MalformedDependency,
  MalformedVersion,
  DuplicatePackage,
  UnknownPackage,
  MalformedPolicy,
  ContextTooLarge,
  ConflictsPresent,
  UniverseTooLarge,
  NoChangeCandidates,
  NotAMigrationCandidate,
  NotUnsat,
  TooLarge,
  SolverCrashed,
  UnparsableOutput,
  AssignmentInvalid,
  Unsolvable,
  Timeout,
  ActuallySolvable,
  RefuseUnverified,
  OptimumMismatch,
  UntrimmedTesting,
  InvalidArgument,
  Io,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tmig
