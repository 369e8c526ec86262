#include "version.hpp"

#include <string>

#include "error.hpp"

namespace tmig {
namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_alnum(char c) { return is_digit(c) || is_alpha(c); }

struct Parts {
  std::string_view epoch;
  std::string_view upstream;
  std::string_view revision;
};

bool split(std::string_view v, Parts& out) {
  if (v.empty()) return false;
  std::string_view rest = v;
  if (auto colon = v.find(':'); colon != std::string_view::npos) {
    out.epoch = v.substr(0, colon);
    if (out.epoch.empty()) return false;
    for (char c : out.epoch)
      if (!is_digit(c)) return false;
    rest = v.substr(colon + 1);
  }
  if (auto dash = rest.rfind('-'); dash != std::string_view::npos) {
    out.upstream = rest.substr(0, dash);
    out.revision = rest.substr(dash + 1);
    if (out.revision.empty()) return false;
    for (char c : out.revision)
      if (!is_alnum(c) && c != '+' && c != '.' && c != '~') return false;
  } else {
    out.upstream = rest;
  }
  if (out.upstream.empty()) return false;
  const bool has_epoch = !out.epoch.empty();
  const bool has_revision = !out.revision.empty();
  for (char c : out.upstream) {
    if (is_alnum(c) || c == '.' || c == '+' || c == '~') continue;
    if (c == '-' && has_revision) continue;
    if (c == ':' && has_epoch) continue;
    return false;
  }
  return true;
}

int order(std::string_view s, std::size_t i) {
  if (i >= s.size()) return 0;
  const char c = s[i];
  if (is_digit(c)) return 0;
  if (is_alpha(c)) return c;
  if (c == '~') return -1;
  return c + 256;
}

int compare_fragment(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  auto digit_at = [](std::string_view s, std::size_t k) { return k < s.size() && is_digit(s[k]); };
  while (i < a.size() || j < b.size()) {
    while ((i < a.size() && !is_digit(a[i])) || (j < b.size() && !is_digit(b[j]))) {
      const int ac = order(a, i);
      const int bc = order(b, j);
      if (ac != bc) return ac - bc;
      ++i;
      ++j;
    }
    while (i < a.size() && a[i] == '0') ++i;
    while (j < b.size() && b[j] == '0') ++j;
    int first_diff = 0;
    while (digit_at(a, i) && digit_at(b, j)) {
      if (first_diff == 0) first_diff = a[i] - b[j];
      ++i;
      ++j;
    }
    if (digit_at(a, i)) return 1;
    if (digit_at(b, j)) return -1;
    if (first_diff != 0) return first_diff;
  }
  return 0;
}

int compare_epoch(std::string_view a, std::string_view b) {
  while (!a.empty() && a.front() == '0') a.remove_prefix(1);
  while (!b.empty() && b.front() == '0') b.remove_prefix(1);
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return a.compare(b);
}

std::strong_ordering sign(int r) {
  if (r < 0) return std::strong_ordering::less;
  if (r > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Parts parse_or_throw(std::string_view v) {
  Parts p;
  if (!split(v, p)) throw Error(Errc::MalformedVersion, "malformed version '" + std::string(v) + "'");
  return p;
}

}  // namespace

bool is_valid_version(std::string_view version) noexcept {
  Parts p;
  return split(version, p);
}

void validate_version(std::string_view version) { (void)parse_or_throw(version); }

std::strong_ordering compare_versions(std::string_view lhs, std::string_view rhs) {
  const Parts a = parse_or_throw(lhs);
  const Parts b = parse_or_throw(rhs);
  if (int r = compare_epoch(a.epoch, b.epoch); r != 0) return sign(r);
  if (int r = compare_fragment(a.upstream, b.upstream); r != 0) return sign(r);
  return sign(compare_fragment(a.revision, b.revision));
}

}  // namespace tmig
