#include "error.hpp"

namespace tmig {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::MissingField: return "MissingField";
    case Errc::MalformedStanza: return "MalformedStanza";
    case Errc::MalformedDependency: return "MalformedDependency";
    case Errc::MalformedVersion: return "MalformedVersion";
    case Errc::DuplicatePackage: return "DuplicatePackage";
    case Errc::UnknownPackage: return "UnknownPackage";
    case Errc::MalformedPolicy: return "MalformedPolicy";
    case Errc::ContextTooLarge: return "ContextTooLarge";
    case Errc::ConflictsPresent: return "ConflictsPresent";
    case Errc::UniverseTooLarge: return "UniverseTooLarge";
    case Errc::NoChangeCandidates: return "NoChangeCandidates";
    case Errc::NotAMigrationCandidate: return "NotAMigrationCandidate";
    case Errc::NotUnsat: return "NotUnsat";
    case Errc::TooLarge: return "TooLarge";
    case Errc::SolverCrashed: return "SolverCrashed";
    case Errc::UnparsableOutput: return "UnparsableOutput";
    case Errc::AssignmentInvalid: return "AssignmentInvalid";
    case Errc::Unsolvable: return "Unsolvable";
    case Errc::Timeout: return "Timeout";
    case Errc::ActuallySolvable: return "ActuallySolvable";
    case Errc::RefuseUnverified: return "RefuseUnverified";
    case Errc::OptimumMismatch: return "OptimumMismatch";
    case Errc::UntrimmedTesting: return "UntrimmedTesting";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace tmig
