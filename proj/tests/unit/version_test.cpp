#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "error.hpp"
#include "version.hpp"

using namespace tmig;

namespace {

char sign(std::strong_ordering o) { return o < 0 ? '<' : o > 0 ? '>' : '='; }

std::string random_version(std::mt19937_64& rng) {
  static const std::string alpha = "0123456789ab.+~";
  auto part = [&] {
    std::string s(1, "0123456789"[rng() % 10]);
    for (std::size_t k = rng() % 5; k > 0; --k) s += alpha[rng() % alpha.size()];
    return s;
  };
  std::string v;
  if (rng() % 5 == 0) v += std::to_string(rng() % 3) + ":";
  v += part();
  if (rng() % 3 == 0) v += "-" + part();
  return v;
}

}  // namespace

TEST_CASE("comparison examples") {
  CHECK(compare_versions("1.0", "1.0") == 0);
  CHECK(compare_versions("1.2", "1.10") < 0);
  CHECK(compare_versions("1.0~rc1", "1.0") < 0);
  CHECK(compare_versions("1:0.9", "0.10") > 0);
  CHECK(compare_versions("1.0", "1.00") == 0);
  CHECK(compare_versions("0:1", "1") == 0);
  CHECK(compare_versions("1.0-0", "1.0") == 0);
}

TEST_CASE("malformed versions") {
  for (const char* bad : {"", "1:", ":1", "a:1", "1-", "-1", "1 0", "1_0", "1:2:3-"}) {
    CAPTURE(bad);
    CHECK_FALSE(is_valid_version(bad));
    CHECK_THROWS_AS(compare_versions(bad, "1"), Error);
  }
  for (const char* good : {"1", "1.0-1", "1:2", "1:2-3-4", "1.0~rc1+b2", "a1"}) {
    CAPTURE(good);
    CHECK(is_valid_version(good));
  }
}

TEST_CASE("agrees with dpkg on frozen pairs") {
  std::ifstream in(TMIG_FIXTURES "/version_pairs.txt");
  REQUIRE(in);
  std::string a, rel, b;
  int n = 0;
  while (in >> a >> rel >> b) {
    CAPTURE(a);
    CAPTURE(b);
    CHECK(std::string(1, sign(compare_versions(a, b))) == rel);
    ++n;
  }
  CHECK(n == 400);
}

TEST_CASE("total order on random samples") {
  std::mt19937_64 rng(11);
  std::vector<std::string> vs;
  for (int i = 0; i < 120; ++i) vs.push_back(random_version(rng));
  for (const auto& a : vs) {
    CHECK(compare_versions(a, a) == 0);
    for (const auto& b : vs) {
      const auto ab = compare_versions(a, b);
      const auto ba = compare_versions(b, a);
      CHECK((ab < 0) == (ba > 0));
      CHECK((ab == 0) == (ba == 0));
    }
  }
  for (int i = 0; i < 20000; ++i) {
    const auto& a = vs[rng() % vs.size()];
    const auto& b = vs[rng() % vs.size()];
    const auto& c = vs[rng() % vs.size()];
    if (compare_versions(a, b) <= 0 && compare_versions(b, c) <= 0) CHECK(compare_versions(a, c) <= 0);
  }
}
