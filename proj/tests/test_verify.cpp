#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "hermite/errors.hpp"
#include "hermite/verify.hpp"

using namespace hermite;

TEST_CASE("suite ids") {
  const auto ids = verify::suite_ids();
  CHECK(std::find(ids.begin(), ids.end(), "all") != ids.end());
  CHECK(ids.size() == 6);
  CHECK_THROWS_AS(verify::run("bogus"), InputError);
}

TEST_CASE("basis and nodes suites pass") {
  for (const char* suite : {"basis", "nodes"}) {
    const verify::Report r = verify::run(suite);
    CHECK(!r.checks.empty());
    for (const auto& c : r.checks) {
      CHECK_MESSAGE(c.passed, c.suite << ": " << c.name << " value " << c.value << " " << c.detail);
      CHECK(c.suite == suite);
      CHECK(c.seconds >= 0.0);
    }
    CHECK(r.passed());
  }
}

TEST_CASE("another seed also passes the randomized checks") {
  const verify::Report r = verify::run("basis", 1234);
  CHECK(r.passed());
}
