#include "pensionsim/scenario.hpp"

#include "doctest.h"

using namespace pensionsim;

TEST_CASE("scenario notation parses the documented forms") {
  CHECK(parse_scenario("S(ON, OFF, U)") ==
        ScenarioTriple{true, false, DistKind::Uniform});
  CHECK(parse_scenario("S(1,1,N)") == ScenarioTriple{true, true, DistKind::Normal});
  CHECK(parse_scenario("S(0,0,U)") == ScenarioTriple{false, false, DistKind::Uniform});
  CHECK(parse_scenario("s ( off , on , n )") ==
        ScenarioTriple{false, true, DistKind::Normal});
}

TEST_CASE("malformed scenarios report the position") {
  CHECK_THROWS_WITH_AS(parse_scenario("S(maybe,1,N)"), doctest::Contains("position 2"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_scenario("S(1,1,X)"), doctest::Contains("U or N"),
                       std::runtime_error);
  CHECK_THROWS(parse_scenario("T(1,1,N)"));
  CHECK_THROWS(parse_scenario("S(1,1)"));
  CHECK_THROWS(parse_scenario("S(1,1,N) trailing"));
  CHECK_THROWS(parse_scenario(""));
}

TEST_CASE("render and parse round-trip over all triples") {
  for (bool ss : {false, true}) {
    for (bool pd : {false, true}) {
      for (DistKind d : {DistKind::Uniform, DistKind::Normal}) {
        const ScenarioTriple t{ss, pd, d};
        CHECK(parse_scenario(render_scenario(t)) == t);
      }
    }
  }
}

TEST_CASE("uniform-letter defaults") {
  const ScenarioSpec s = ScenarioSpec::from_triple({false, false, DistKind::Uniform});
  CHECK(s.vision_dist == DistributionSpec::uniform_int(1, 6));
  CHECK(s.metabolism_dist == DistributionSpec::uniform_int(1, 4));
  CHECK(s.age_to_reproduce_dist == DistributionSpec::uniform_int(15, 50));
  CHECK(s.children_dist == DistributionSpec::uniform_int(0, 3));
  CHECK(s.max_age_dist == DistributionSpec::uniform_int(60, 100));
  CHECK(s.wealth_dist == DistributionSpec::uniform_int(5, 25));
  CHECK(s.initial_population == 400);
  CHECK_NOTHROW(s.validate());
}

TEST_CASE("normal-letter defaults put mu within the uniform ranges") {
  const ScenarioSpec s = ScenarioSpec::from_triple({true, true, DistKind::Normal});
  CHECK(s.policy.social_services);
  CHECK(s.policy.productivity_decay);
  CHECK(s.vision_dist == DistributionSpec::clamped_normal(3.5, 0.8, 1, 6, true));
  CHECK(s.metabolism_dist == DistributionSpec::clamped_normal(2.5, 0.5, 1, 4, true));
  CHECK(s.age_to_reproduce_dist ==
        DistributionSpec::clamped_normal(32.5, 5.8, 15, 50, true));
  // The letter does not touch the children or maximum-age distributions.
  CHECK(s.children_dist == DistributionSpec::uniform_int(0, 3));
  CHECK(s.max_age_dist == DistributionSpec::uniform_int(60, 100));
}

TEST_CASE("triple reflects policy flags") {
  ScenarioSpec s = ScenarioSpec::from_triple({true, false, DistKind::Normal});
  CHECK(render_scenario(s.triple()) == "S(ON,OFF,N)");
}
