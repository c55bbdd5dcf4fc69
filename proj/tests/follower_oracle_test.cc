// Copyright 2026 The sgs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "sgs/efg.h"
#include "sgs/follower_oracle.h"
#include "sgs/game_suite.h"
#include "sgs/rng.h"
#include "test_games.h"

namespace sgs {
namespace {

using test::AllPlans;
using test::MatrixGame;
using test::RandomGame;
using test::RandomLeader;
using test::UniformLeader;

TEST_CASE("best response matches explicit enumeration exactly") {
  Rng rng(31);
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    ExtensiveGame game = RandomGame(seed);
    LeaderBehaviorStrategy leader = RandomLeader(game, rng);
    BestResponse br = ComputeBestResponse(game, leader);
    CHECK(ValidateRestrictedPlan(game, Player::kFollower, br.strategy).empty());
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& plan : AllPlans(game, Player::kFollower)) {
      best = std::max(best, ExpectedUtilities(game, leader, plan).follower);
    }
    // Same argmax value, both measured through the same evaluator.
    CHECK(br.value.follower == best);
  }
}

TEST_CASE("cached beating strategy short-circuits enumeration") {
  ExtensiveGame game = MatrixGame({{{0, 0}, {0, 1}}, {{0, 0.5}, {0, 0}}});
  LeaderBehaviorStrategy leader;
  leader.probs = {{1.0, 0.0}};  // row 0: follower prefers column 1 (+1)
  PureStrategy requested;
  requested.choices[0] = 0;  // dense follower infoset id
  PureStrategy beating;
  beating.choices[0] = 1;

  OracleCache cache;
  cache.entries.push_back({1, beating});
  OracleStats stats;
  auto result =
      BetterResponse(game, leader, requested, cache, 1e-2, &stats);
  REQUIRE(result.has_value());
  CHECK(*result == beating);
  CHECK(stats.enumerations == 0);  // cache hit, no fresh computation
  CHECK(stats.cache_hits == 1);
  CHECK(cache.entries[0].use_count == 2);
}

TEST_CASE("exact ties are not better responses") {
  // Follower payoff is constant: nothing can beat the requested plan.
  ExtensiveGame game = MatrixGame({{{0, 0.5}, {1, 0.5}}, {{2, 0.5}, {3, 0.5}}});
  LeaderBehaviorStrategy leader;
  leader.probs = {{0.5, 0.5}};
  PureStrategy requested;
  requested.choices[0] = 0;
  OracleCache cache;
  OracleStats stats;
  CHECK_FALSE(
      BetterResponse(game, leader, requested, cache, 1e-2, &stats).has_value());
  CHECK(stats.enumerations == 1);  // had to enumerate to be sure
  CHECK(cache.entries.size() == 1);  // the computed best response was cached
}

TEST_CASE("returned strategy payoff equals the enumeration maximum") {
  Rng rng(77);
  for (uint64_t seed = 30; seed <= 40; ++seed) {
    ExtensiveGame game = RandomGame(seed);
    auto plans = AllPlans(game, Player::kFollower);
    LeaderBehaviorStrategy leader = RandomLeader(game, rng);
    PureStrategy requested = plans[rng.NextInt(plans.size())];
    OracleCache cache;
    auto result = BetterResponse(game, leader, requested, cache);
    double requested_value =
        ExpectedUtilities(game, leader, requested).follower;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& plan : plans) {
      best = std::max(best, ExpectedUtilities(game, leader, plan).follower);
    }
    if (result.has_value()) {
      double value = ExpectedUtilities(game, leader, *result).follower;
      CHECK(value > requested_value + 1e-2);  // soundness
      CHECK(value == doctest::Approx(best));  // fresh results are the argmax
    } else {
      CHECK(best <= requested_value + 1e-2);  // completeness
    }
  }
}

TEST_CASE("eviction removes the smallest use count, oldest on ties") {
  PureStrategy a, b, c, d;
  a.choices[0] = 0;
  b.choices[0] = 1;
  c.choices[0] = 2;
  d.choices[0] = 3;

  OracleCache cache;
  cache.capacity = 3;
  CHECK(EvictAndInsert(cache, a) == InsertOutcome::kInserted);
  CHECK(EvictAndInsert(cache, b) == InsertOutcome::kInserted);
  CHECK(cache.entries.size() == 2);  // below capacity: nothing evicted
  CHECK(EvictAndInsert(cache, c) == InsertOutcome::kInserted);
  CHECK(cache.entries.size() == 3);

  SUBCASE("min use count evicted") {
    cache.entries[0].use_count = 5;
    cache.entries[1].use_count = 1;
    cache.entries[2].use_count = 3;
    EvictAndInsert(cache, d);
    CHECK(cache.entries.size() == 3);
    for (const auto& entry : cache.entries) {
      CHECK(entry.strategy != b);  // the count-1 entry is gone
    }
  }
  SUBCASE("all counts equal: oldest evicted") {
    EvictAndInsert(cache, d);
    CHECK(cache.entries.size() == 3);
    for (const auto& entry : cache.entries) {
      CHECK(entry.strategy != a);
    }
    CHECK(cache.entries.back().strategy == d);
    CHECK(cache.entries.back().use_count == 1);
  }
  SUBCASE("duplicate insert is a no-op") {
    auto before = cache.entries;
    CHECK(EvictAndInsert(cache, b) == InsertOutcome::kDuplicate);
    CHECK(cache.duplicate_inserts == 1);
    REQUIRE(cache.entries.size() == before.size());
    for (size_t i = 0; i < before.size(); ++i) {
      CHECK(cache.entries[i].strategy == before[i].strategy);
      CHECK(cache.entries[i].use_count == before[i].use_count);
    }
  }
}

TEST_CASE("cache never exceeds capacity under random operation sequences") {
  Rng rng(404);
  ExtensiveGame game = RandomGame(3);
  auto plans = AllPlans(game, Player::kFollower);
  OracleCache cache;
  cache.capacity = 5;
  for (int op = 0; op < 500; ++op) {
    if (rng.Bernoulli(0.5)) {
      EvictAndInsert(cache, plans[rng.NextInt(plans.size())]);
    } else {
      LeaderBehaviorStrategy leader = RandomLeader(game, rng);
      BetterResponse(game, leader, plans[rng.NextInt(plans.size())], cache);
    }
    CHECK(cache.entries.size() <= 5);
    std::set<PureStrategy> unique;
    for (const auto& entry : cache.entries) {
      CHECK(unique.insert(entry.strategy).second);  // no duplicates
      CHECK(entry.use_count >= 1);
    }
  }
}

TEST_CASE("best response on interception games stays exact") {
  Rng rng(55);
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    ExtensiveGame game =
        GenerateGame(MakeGridDescriptor(GameFamily::kWnz, 3, 3, 2, seed));
    LeaderBehaviorStrategy leader = RandomLeader(game, rng);
    BestResponse br = ComputeBestResponse(game, leader);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& plan : AllPlans(game, Player::kFollower)) {
      best = std::max(best, ExpectedUtilities(game, leader, plan).follower);
    }
    CHECK(br.value.follower == best);
  }
}

}  // namespace
}  // namespace sgs
