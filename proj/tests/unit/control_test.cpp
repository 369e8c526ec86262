#include <doctest.h>

#include <random>

#include "control.hpp"
#include "error.hpp"

using namespace tmig;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::Io;
}

}  // namespace

TEST_CASE("minimal stanza") {
  const auto s = parse_packages("Package: a\nVersion: 1.0\n\n");
  REQUIRE(s.size() == 1);
  CHECK(s[0].name == "a");
  CHECK(s[0].version == "1.0");
  CHECK(s[0].depends.empty());
  CHECK(s[0].conflicts.empty());
}

TEST_CASE("depends splits into and-groups of alternatives") {
  const auto s = parse_packages("Package: a\nVersion: 1\nDepends: b (>= 2), c | d\n\n");
  REQUIRE(s.size() == 1);
  const DependencyExpr want = {{{"b", Relation::GreaterEq, "2"}}, {{"c", Relation::Any, ""}, {"d", Relation::Any, ""}}};
  CHECK(s[0].depends == want);
}

TEST_CASE("missing version is reported with the stanza index") {
  CHECK(code_of([] { parse_packages("Package: a\n\n"); }) == Errc::MissingField);
  try {
    parse_packages("Package: a\nVersion: 1\n\nPackage: b\n\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("stanza 2") != std::string::npos);
    CHECK(std::string(e.what()).find("Version") != std::string::npos);
  }
  CHECK(code_of([] { parse_packages("Version: 1\n\n"); }) == Errc::MissingField);
}

TEST_CASE("dependency expressions") {
  CHECK(parse_dependency_expr("b") == DependencyExpr{{{"b", Relation::Any, ""}}});
  const DependencyExpr want = {{{"b", Relation::GreaterEq, "2"}, {"c", Relation::Any, ""}}, {{"d", Relation::Less, "1"}}};
  CHECK(parse_dependency_expr("b (>= 2) | c, d (<< 1)") == want);
  CHECK(code_of([] { parse_dependency_expr("b (>= )"); }) == Errc::MalformedDependency);
  CHECK(code_of([] { parse_dependency_expr("b (>> 1"); }) == Errc::MalformedDependency);
  CHECK(code_of([] { parse_dependency_expr("b (~ 1)"); }) == Errc::MalformedDependency);
  CHECK(code_of([] { parse_dependency_expr("b |, c"); }) == Errc::MalformedDependency);
  CHECK(code_of([] { parse_dependency_expr("b (>= 1:)"); }) == Errc::MalformedDependency);
}

TEST_CASE("malformed dependency reports the offset") {
  try {
    parse_dependency_expr("abc (>= )");
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("abc (>= )") != std::string::npos);
    CHECK(std::string(e.what()).find("offset") != std::string::npos);
  }
}

TEST_CASE("field handling") {
  const char* text =
      "# comment\n"
      "package: a\n"
      "X-Unknown: whatever\n"
      "Version: 2:1.0-1\n"
      "Pre-Depends: c\n"
      "Depends: b,\n"
      " d\n"
      "Breaks: e (<< 2)\n"
      "Conflicts: f\n"
      "Provides: virt, other\n"
      "Architecture: amd64\n"
      "\n\n"
      "Package: b\nVersion: 1\n";
  const auto s = parse_packages(text);
  REQUIRE(s.size() == 2);
  CHECK(s[0].version == "2:1.0-1");
  CHECK(s[0].depends.size() == 3);
  CHECK(s[0].conflicts.size() == 2);
  CHECK(s[0].provides == std::vector<std::string>{"virt", "other"});
  CHECK(s[0].architecture == "amd64");
  CHECK(s[1].name == "b");
}

TEST_CASE("invalid stanza content") {
  CHECK(code_of([] { parse_packages("Package: a b\nVersion: 1\n"); }) == Errc::MalformedStanza);
  CHECK(code_of([] { parse_packages("Package: a\nVersion: 1:\n"); }) == Errc::MalformedVersion);
  CHECK(code_of([] { parse_packages("Package: a\nnot a field\n"); }) == Errc::MalformedStanza);
  CHECK(code_of([] { parse_packages(" orphan continuation\n"); }) == Errc::MalformedStanza);
}

TEST_CASE("parse, format, parse round trip") {
  std::mt19937_64 rng(7);
  const char* names[] = {"a", "libfoo1", "g++", "x-y.z"};
  const char* versions[] = {"1", "1.0-1", "2:3~rc1", "0.9+dfsg-2"};
  const Relation rels[] = {Relation::Any, Relation::Less, Relation::LessEq, Relation::Eq, Relation::GreaterEq,
                           Relation::Greater};
  for (int iter = 0; iter < 200; ++iter) {
    PackageStanza s;
    s.name = names[rng() % 4];
    s.version = versions[rng() % 4];
    for (std::size_t g = rng() % 3; g > 0; --g) {
      Alternatives alts;
      for (std::size_t k = 1 + rng() % 3; k > 0; --k) {
        const Relation r = rels[rng() % 6];
        alts.push_back({names[rng() % 4], r, r == Relation::Any ? "" : versions[rng() % 4]});
      }
      s.depends.push_back(alts);
    }
    for (std::size_t k = rng() % 3; k > 0; --k) s.conflicts.push_back({names[rng() % 4], Relation::Any, ""});
    if (rng() % 2) s.provides = {"virt"};
    const auto back = parse_packages(format_stanza(s));
    REQUIRE(back.size() == 1);
    CHECK(back[0] == s);
    const std::string dep = format_dependency_expr(s.depends);
    CHECK(format_dependency_expr(parse_dependency_expr(dep)) == dep);
  }
}
