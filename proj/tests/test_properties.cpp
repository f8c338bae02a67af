#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "property_harness.hpp"

using namespace affina;
using namespace affina::testing;

TEST_CASE("randomised property suite over small instances") {
  PropertyRun run = run_property_suite(120, 0x5eed0001);
  for (auto const& f : run.failures) {
    FAIL_CHECK(f);
  }
  CHECK(run.failures.empty());
  // the generator must actually exercise instances, not skip everything
  CHECK(run.iterations - run.skipped >= 60);
}

TEST_CASE("a second seed gives a disjoint but equally clean run") {
  PropertyRun run = run_property_suite(60, 0xfeedbeef);
  for (auto const& f : run.failures) {
    FAIL_CHECK(f);
  }
  CHECK(run.failures.empty());
}
