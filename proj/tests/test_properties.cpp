#include <doctest.h>

#include "properties.hpp"

TEST_CASE("conservative operators sum to zero") { CHECK(props::conservation_defect() <= 1e-12); }

TEST_CASE("Shu-Osher and Butcher steps agree") { CHECK(props::step_equivalence_gap() <= 1e-12); }

TEST_CASE("convex weights sum to one") { CHECK(props::convex_combination_defect() <= 1e-12); }

TEST_CASE("forward Euler and the second-derivative block are TVD on every 16-point pattern") {
  const auto r = props::exhaustive_tvd();
  CHECK(r.patterns == 65536);
  CHECK(r.worst_rise <= 1e-14);
}
