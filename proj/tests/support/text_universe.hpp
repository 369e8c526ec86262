#pragma once

#include <string>

#include "control.hpp"
#include "universe.hpp"

namespace tmig::testing {

inline Universe universe_of(const std::string& testing, const std::string& unstable = "") {
  return build_universe(parse_packages(testing), parse_packages(unstable));
}

/// Looks up "name/version".
inline PkgId pkg(const Universe& u, const std::string& spec) {
  const auto p = parse_package_spec(spec);
  return *u.find(*p);
}

inline PackageSet pkgs(const Universe& u, std::initializer_list<const char*> specs) {
  PackageSet out;
  for (const char* s : specs) out.push_back(pkg(u, s));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tmig::testing
