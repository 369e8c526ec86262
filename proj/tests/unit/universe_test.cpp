#include <doctest.h>

#include <algorithm>
#include <random>

#include "control.hpp"
#include "error.hpp"
#include "universe.hpp"

using namespace tmig;

namespace {

Universe from_text(const char* testing, const char* unstable) {
  return build_universe(parse_packages(testing), parse_packages(unstable));
}

PkgId id(const Universe& u, const char* name, const char* version) { return *u.find(name, version); }

}  // namespace

TEST_CASE("versioned dependency expands over all of B") {
  const Universe u = from_text("Package: b\nVersion: 1\n",
                               "Package: b\nVersion: 2\n\nPackage: a\nVersion: 1\nDepends: b (>= 2)\n");
  const auto deps = u.deps(id(u, "a", "1"));
  REQUIRE(deps.size() == 1);
  CHECK(deps[0].members == PackageSet{id(u, "b", "2")});
  CHECK(deps[0].source == "b (>= 2)");
}

TEST_CASE("self-conflict is dropped") {
  const Universe u = from_text("Package: a\nVersion: 1\nConflicts: a\n", "");
  CHECK_FALSE(u.has_conflicts());
  CHECK(u.conflicts_of(0).empty());
}

TEST_CASE("unknown dependency yields an empty disjunction") {
  const Universe u = from_text("", "Package: a\nVersion: 1\nDepends: nosuch\n");
  REQUIRE(u.deps(0).size() == 1);
  CHECK(u.deps(0)[0].members.empty());
}

TEST_CASE("virtual packages") {
  const Universe u = from_text(
      "Package: a\nVersion: 1\nDepends: mta, mta (>= 1)\n\n"
      "Package: exim\nVersion: 4\nProvides: mta\n\n"
      "Package: mta\nVersion: 2\n",
      "");
  const auto deps = u.deps(id(u, "a", "1"));
  REQUIRE(deps.size() == 2);
  CHECK(deps[0].members == PackageSet{id(u, "exim", "4"), id(u, "mta", "2")});
  CHECK(deps[1].members == PackageSet{id(u, "mta", "2")});
}

TEST_CASE("conflicts are symmetric and expanded") {
  const Universe u = from_text("Package: a\nVersion: 1\nConflicts: b (<< 3)\n\nPackage: b\nVersion: 2\n",
                               "Package: b\nVersion: 3\n");
  const PkgId a = id(u, "a", "1"), b2 = id(u, "b", "2"), b3 = id(u, "b", "3");
  CHECK(u.conflicts(a, b2));
  CHECK(u.conflicts(b2, a));
  CHECK_FALSE(u.conflicts(a, b3));
  CHECK(u.conflict_pairs().size() == 1);
}

TEST_CASE("membership and shared stanzas") {
  const Universe u = from_text("Package: a\nVersion: 1\n\nPackage: c\nVersion: 1\n",
                               "Package: a\nVersion: 1\n\nPackage: a\nVersion: 2\n");
  CHECK(u.size() == 3);
  CHECK(u.in_testing(id(u, "a", "1")));
  CHECK(u.in_unstable(id(u, "a", "1")));
  CHECK_FALSE(u.in_unstable(id(u, "c", "1")));
  CHECK(u.testing() == PackageSet{id(u, "a", "1"), id(u, "c", "1")});
}

TEST_CASE("differing metadata for one identity is rejected") {
  CHECK_THROWS_AS(from_text("Package: a\nVersion: 1\n", "Package: a\nVersion: 1\nDepends: b\n"), Error);
}

TEST_CASE("unique pairs") {
  const Universe u = from_text("Package: a\nVersion: 1\n\nPackage: a\nVersion: 2\n\nPackage: b\nVersion: 1\n", "");
  const auto pairs = unique_pairs(u);
  const PkgId a1 = id(u, "a", "1"), a2 = id(u, "a", "2");
  CHECK(pairs == std::vector<std::pair<PkgId, PkgId>>{{a1, a2}, {a2, a1}});
  CHECK(unique_pairs(from_text("Package: a\nVersion: 1\n", "")).empty());
  const Universe three = from_text("Package: a\nVersion: 1\n\nPackage: a\nVersion: 2\n\nPackage: a\nVersion: 3\n", "");
  CHECK(unique_pairs(three).size() == 6);
}

TEST_CASE("ids follow name then version order") {
  const Universe u = from_text("Package: b\nVersion: 1\n\nPackage: a\nVersion: 10\n\nPackage: a\nVersion: 9\n", "");
  CHECK(u.label(0) == "a/9");
  CHECK(u.label(1) == "a/10");
  CHECK(u.label(2) == "b/1");
}

TEST_CASE("stanza order does not change the universe") {
  std::mt19937_64 rng(3);
  const auto stanzas = parse_packages(
      "Package: a\nVersion: 1\nDepends: b | c, d\nConflicts: e\n\n"
      "Package: b\nVersion: 1\nDepends: d (>= 2)\n\n"
      "Package: c\nVersion: 1\n\n"
      "Package: d\nVersion: 1\n\n"
      "Package: d\nVersion: 2\nProvides: c\n\n"
      "Package: e\nVersion: 1\nConflicts: b\n");
  const Universe ref = build_universe(stanzas, {});
  for (int i = 0; i < 20; ++i) {
    auto shuffled = stanzas;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const Universe u = build_universe(shuffled, {});
    REQUIRE(u.size() == ref.size());
    for (PkgId p = 0; p < u.size(); ++p) {
      CHECK(u.package(p) == ref.package(p));
      REQUIRE(u.deps(p).size() == ref.deps(p).size());
      for (std::size_t k = 0; k < u.deps(p).size(); ++k) CHECK(u.deps(p)[k].members == ref.deps(p)[k].members);
    }
    CHECK(u.conflict_pairs() == ref.conflict_pairs());
  }
}
