#pragma once

#include <compare>
#include <string_view>

namespace tmig {

/// Validates `[epoch:]upstream[-revision]`. Throws Error(MalformedVersion).
void validate_version(std::string_view version);

bool is_valid_version(std::string_view version) noexcept;

/// Debian ordering: numeric epoch, then upstream, then revision, each part
/// compared by alternating non-digit/digit segments with '~' sorting lowest.
/// Throws Error(MalformedVersion) when either side is not a version.
std::strong_ordering compare_versions(std::string_view lhs, std::string_view rhs);

}  // namespace tmig
