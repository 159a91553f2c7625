#include "doctest.h"

#include "helpers.hpp"
#include "psmanip/engine.hpp"
#include "psmanip/json_io.hpp"

using namespace psmanip;
using psmanip::testing::rat;

TEST_SUITE_BEGIN("json_io");

TEST_CASE("instance round trip keeps rationals exact") {
  Instance instance;
  instance.profile = worked_example().profile;
  instance.valuation = AgentValuation(worked_example().utilities);
  PausePlan plan(3);
  plan.add_pause(0, rat(0), std::nullopt);
  plan.add_pause(2, rat(1, 3), rat(2, 3));
  instance.pauses = plan;

  const std::string json = instance_to_json(instance);
  const Instance parsed = instance_from_json(json);

  CHECK(parsed.profile.prefs == instance.profile.prefs);
  REQUIRE(parsed.valuation.has_value());
  const auto& cardinal = std::get<CardinalUtilities>(*parsed.valuation);
  CHECK(cardinal.values == worked_example().utilities.values);
  REQUIRE(parsed.pauses.has_value());
  CHECK(parsed.pauses->intervals(0).size() == 1);
  CHECK_FALSE(parsed.pauses->intervals(0)[0].end.has_value());
  CHECK(parsed.pauses->intervals(2)[0].start == rat(1, 3));
  CHECK(*parsed.pauses->intervals(2)[0].end == rat(2, 3));

  // second pass is bit-identical
  CHECK(instance_to_json(parsed) == json);
}

TEST_CASE("dichotomous valuations round trip") {
  Instance instance;
  instance.profile = tight_instance(6).profile;
  instance.valuation = AgentValuation(tight_instance(6).valuation);
  const Instance parsed = instance_from_json(instance_to_json(instance));
  REQUIRE(parsed.valuation.has_value());
  const auto& dich = std::get<DichotomousValuation>(*parsed.valuation);
  CHECK(dich.interested == std::vector<int>{0, 1});
  CHECK(dich.epsilon == rat(1, 1000000000));
}

TEST_CASE("instances from json are validated") {
  CHECK_THROWS(instance_from_json(R"({"n":2,"m":2,"prefs":[[0,0],[0,1]]})"));
  CHECK_THROWS(instance_from_json(R"({"n":1,"m":2,"prefs":[[0,1]],
    "utilities":{"agent":0,"interested":[1]}})"));
  CHECK_THROWS(instance_from_json("not json at all"));
  CHECK_NOTHROW(instance_from_json(R"({"n":1,"m":2,"prefs":[[1,0]],
    "utilities":{"agent":0,"interested":[1]}})"));
}

TEST_CASE("trace json carries segments, depletions and the allocation") {
  const auto example = worked_example();
  const EatingTrace trace = run_with_pauses(example.profile, PausePlan::eliminate(3, 0));
  const std::string json = trace_to_json(trace);
  CHECK(json.find("\"3/2\"") != std::string::npos);   // depletion of b and c
  CHECK(json.find("\"eating\"") != std::string::npos);
  CHECK(json.find("null") != std::string::npos);       // idle slot of agent 0

  const auto solo = random_profile(1, 2, Seed(4));
  const EatingTrace never = run_with_pauses(solo, PausePlan::eliminate(1, 0));
  CHECK(trace_to_json(never).find("never") != std::string::npos);
}

TEST_CASE("manipulation result json includes both renderings of the ratio") {
  const auto example = worked_example();
  const auto result =
      best_response(example.profile, 0, AgentValuation(example.utilities), SearchSpace::full());
  const std::string json = manipulation_result_to_json(result);
  CHECK(json.find("\"16/15\"") != std::string::npos);
  CHECK(json.find("1.06666666667") != std::string::npos);
  CHECK(json.find("\"reports_evaluated\": 6") != std::string::npos);
}

TEST_CASE("verify report json") {
  VerifyConfig config;
  config.seeds = 3;
  config.seed = Seed(5);
  const VerifyReport report = run_verification(config);
  const std::string json = verify_report_to_json(report, config, "TEST");
  CHECK(json.find("\"ok\": true") != std::string::npos);
  CHECK(json.find("\"pause_monotonicity\": true") != std::string::npos);
}

TEST_SUITE_END();
