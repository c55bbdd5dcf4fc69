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

#include <cmath>
#include <map>
#include <set>

#include "sgs/efg.h"
#include "sgs/game_io.h"
#include "sgs/game_suite.h"
#include "sgs/rng.h"
#include "test_games.h"

namespace sgs {
namespace {

// Independent node counter: recursion over positions and round only (the
// generator recurses over histories), memoized on (positions, round).
class JointMoveCounter {
 public:
  explicit JointMoveCounter(const GraphGameDescriptor& d)
      : d_(d), targets_(d.targets.begin(), d.targets.end()) {}

  long long Count() {
    return DefenderTurn(d_.defender_start, d_.attacker_start, 1);
  }

 private:
  std::vector<int> DefenderMoves(int pos) const {
    std::vector<int> moves = {pos};
    for (int v : d_.graph.out[pos]) moves.push_back(v);
    return moves;
  }
  std::vector<int> AttackerMoves(int pos) const {
    std::vector<int> moves;
    if (d_.attacker_can_wait) moves.push_back(pos);
    for (int v : d_.graph.out[pos]) moves.push_back(v);
    return moves;
  }

  long long DefenderTurn(int def_pos, int att_pos, int round) {
    auto key = std::make_tuple(def_pos, att_pos, round);
    auto it = defender_memo_.find(key);
    if (it != defender_memo_.end()) return it->second;
    long long count = 1;
    for (int dst : DefenderMoves(def_pos)) {
      count += AttackerTurn(def_pos, dst, att_pos, round);
    }
    defender_memo_[key] = count;
    return count;
  }

  long long AttackerTurn(int def_prev, int def_pos, int att_pos, int round) {
    auto key = std::make_tuple(def_prev, def_pos, att_pos, round);
    auto it = attacker_memo_.find(key);
    if (it != attacker_memo_.end()) return it->second;
    long long count = 1;
    for (int dst : AttackerMoves(att_pos)) {
      bool swap = dst == def_prev && def_pos == att_pos && dst != att_pos;
      if (dst == def_pos || swap || targets_.count(dst) > 0 ||
          round == d_.horizon) {
        count += 1;  // terminal
      } else {
        count += DefenderTurn(def_pos, dst, round + 1);
      }
    }
    attacker_memo_[key] = count;
    return count;
  }

  const GraphGameDescriptor& d_;
  std::set<int> targets_;
  std::map<std::tuple<int, int, int>, long long> defender_memo_;
  std::map<std::tuple<int, int, int, int>, long long> attacker_memo_;
};

TEST_CASE("forced collision on a directed two-vertex line") {
  GraphGameDescriptor d;
  d.family = GameFamily::kSeg;
  d.graph.num_vertices = 2;
  d.graph.out = {{1}, {}};
  d.attacker_start = 0;
  d.defender_start = 1;
  d.horizon = 1;
  d.attacker_can_wait = false;
  PayoffTable payoffs;
  payoffs.attacker_caught_penalty = {-1.0, -1.0};
  payoffs.defender_catch_reward = {1.0, 1.0};
  payoffs.timeout = {0.0, 0.0};
  d.payoffs = payoffs;
  ExtensiveGame game = GenerateGame(d);
  CHECK(ValidateGame(game).empty());
  int terminals = 0;
  for (StateId s = 0; s < game.NumNodes(); ++s) {
    if (!game.IsTerminal(s)) continue;
    ++terminals;
    CHECK(game.TerminalUtility(s).leader == 1.0);
    CHECK(game.TerminalUtility(s).follower == -1.0);
  }
  CHECK(terminals == 1);
}

TEST_CASE("swap along one edge counts as interception") {
  GraphGameDescriptor d;
  d.family = GameFamily::kSeg;
  d.graph.num_vertices = 2;
  d.graph.out = {{1}, {0}};
  d.attacker_start = 0;
  d.defender_start = 1;
  d.horizon = 1;
  d.attacker_can_wait = true;
  PayoffTable payoffs;
  payoffs.attacker_caught_penalty = {-1.0, -1.0};
  payoffs.defender_catch_reward = {1.0, 1.0};
  payoffs.timeout = {0.0, 0.0};
  d.payoffs = payoffs;
  ExtensiveGame game = GenerateGame(d);
  CHECK(ValidateGame(game).empty());
  // Defender: stay or ->0. Attacker: stay or ->1.
  // (stay, stay) timeout; (stay, ->1) catch; (->0, stay) catch;
  // (->0, ->1) swap interception.
  int interceptions = 0, timeouts = 0;
  for (StateId s = 0; s < game.NumNodes(); ++s) {
    if (!game.IsTerminal(s)) continue;
    if (game.TerminalUtility(s).leader == 1.0) {
      ++interceptions;
    } else {
      CHECK(game.TerminalUtility(s).leader == 0.0);
      ++timeouts;
    }
  }
  CHECK(interceptions == 3);
  CHECK(timeouts == 1);
}

TEST_CASE("seg instances carry the fixed catch payoffs") {
  GraphGameDescriptor d = MakeSegDescriptor(4, /*attacker_can_wait=*/true, 11);
  ExtensiveGame game = GenerateGame(d);
  CHECK(ValidateGame(game).empty());
  PayoffTable payoffs = ResolvePayoffs(d);
  int interceptions = 0;
  for (StateId s = 0; s < game.NumNodes(); ++s) {
    if (!game.IsTerminal(s)) continue;
    Utilities u = game.TerminalUtility(s);
    if (u.leader == 1.0) {
      CHECK(u.follower == -1.0);
      ++interceptions;
    }
  }
  CHECK(interceptions > 0);
  CHECK(ValidatePayoffTable(GameFamily::kSeg, payoffs, d.graph, d.targets)
            .empty());
}

TEST_CASE("wnz node count matches the joint-move counter") {
  GraphGameDescriptor d = MakeGridDescriptor(GameFamily::kWnz, 4, 4, 3, 7);
  ExtensiveGame game = GenerateGame(d);
  CHECK(ValidateGame(game).empty());
  CHECK(game.NumNodes() == JointMoveCounter(d).Count());
}

TEST_CASE("seg node count matches the joint-move counter") {
  for (bool wait : {true, false}) {
    GraphGameDescriptor d = MakeSegDescriptor(4, wait, 3);
    ExtensiveGame game = GenerateGame(d);
    CHECK(ValidateGame(game).empty());
    CHECK(game.NumNodes() == JointMoveCounter(d).Count());
  }
}

TEST_CASE("wnz payoff distributions") {
  Graph graph = GridGraph(4, 4);
  std::vector<int> targets = {3, 9, 12};
  Rng rng(5);
  double reward_sum = 0.0;
  const int kSamples = 10000;
  for (int k = 0; k < kSamples; ++k) {
    PayoffTable t = SampleWnzPayoffs(rng, graph, targets);
    CHECK(t.timeout.leader == 0.0);
    CHECK(t.timeout.follower == 0.0);
    for (int v = 0; v < graph.num_vertices; ++v) {
      bool is_target = v == 3 || v == 9 || v == 12;
      CHECK(t.defender_catch_reward[v] == (is_target ? 0.2 : 0.1));
    }
    reward_sum += t.attacker_attack_reward.at(3);
    if (k < 100) {
      CHECK(
          ValidatePayoffTable(GameFamily::kWnz, t, graph, targets).empty());
    }
  }
  // Mean of U[-0.2, 1].
  CHECK(std::abs(reward_sum / kSamples - 0.4) < 0.02);
}

TEST_CASE("seg payoff distributions") {
  Graph graph = SegGraph();
  Rng rng(6);
  for (int k = 0; k < 10000; ++k) {
    PayoffTable t = SampleSegPayoffs(rng, graph, kSegTargets);
    for (int v = 0; v < graph.num_vertices; ++v) {
      CHECK(t.attacker_caught_penalty[v] == -1.0);
      CHECK(t.defender_catch_reward[v] == 1.0);
    }
    for (int target : kSegTargets) {
      double reward = t.attacker_attack_reward.at(target);
      CHECK(reward >= 1.0);
      CHECK(reward <= 2.0);
      CHECK(t.defender_attack_penalty.at(target) == -1.0);
    }
  }
}

TEST_CASE("whg payoffs sit in the near-zero-sum band") {
  Graph graph = GridGraph(4, 4);
  std::vector<int> targets = {1, 6, 11};
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    PayoffTable t = SampleWhgPayoffs(rng, graph, targets);
    CHECK(ValidatePayoffTable(GameFamily::kWhg, t, graph, targets).empty());
  }
}

TEST_CASE("fixed search graph shape") {
  Graph g = SegGraph();
  CHECK(g.num_vertices == 14);
  CHECK(g.out[kSegEntryVertex].size() == 4);
  std::vector<int> in_degree(g.num_vertices, 0);
  for (int v = 0; v < g.num_vertices; ++v) {
    for (int w : g.out[v]) ++in_degree[w];
  }
  CHECK(kSegTargets.size() == 3);
  for (int target : kSegTargets) {
    CHECK(g.out[target].empty());  // absorbing
    CHECK(in_degree[target] >= 1);
  }
}

TEST_CASE("generation is deterministic given descriptor and seed") {
  GraphGameDescriptor d = MakeGridDescriptor(GameFamily::kWnz, 3, 3, 2, 42);
  std::string first = GameToJson(GenerateGame(d)).dump();
  std::string second = GameToJson(GenerateGame(d)).dump();
  CHECK(first == second);
}

TEST_CASE("default wnz set stays inside the declared ranges") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    GraphGameDescriptor d = MakeGridDescriptor(GameFamily::kWnz, 4, 4, 2, seed);
    PayoffTable payoffs = ResolvePayoffs(d);
    CHECK(ValidatePayoffTable(GameFamily::kWnz, payoffs, d.graph, d.targets)
              .empty());
    CHECK(ValidateDescriptor(d).empty());
  }
}

TEST_CASE("descriptor violations are rejected with the field name") {
  GraphGameDescriptor d = MakeGridDescriptor(GameFamily::kWnz, 3, 3, 2, 1);
  d.defender_start = d.attacker_start;
  CHECK_THROWS_WITH_AS(GenerateGame(d), doctest::Contains("defender_start"),
                       std::invalid_argument);
  d = MakeGridDescriptor(GameFamily::kWnz, 3, 3, 2, 1);
  d.horizon = 0;
  CHECK_THROWS_WITH_AS(GenerateGame(d), doctest::Contains("horizon"),
                       std::invalid_argument);
  d = MakeGridDescriptor(GameFamily::kWnz, 3, 3, 2, 1);
  d.targets = {d.attacker_start};
  CHECK_THROWS_WITH_AS(GenerateGame(d), doctest::Contains("targets"),
                       std::invalid_argument);
}

TEST_CASE("descriptors round-trip through json") {
  for (GraphGameDescriptor d :
       {MakeGridDescriptor(GameFamily::kWnz, 4, 4, 3, 7),
        MakeGridDescriptor(GameFamily::kWhg, 3, 3, 2, 9),
        MakeSegDescriptor(4, false, 2)}) {
    GraphGameDescriptor back = DescriptorFromJson(DescriptorToJson(d));
    CHECK(DescriptorToJson(back) == DescriptorToJson(d));
    CHECK(GameToJson(GenerateGame(back)) == GameToJson(GenerateGame(d)));
  }
}

TEST_CASE("whg instances validate cleanly") {
  ExtensiveGame game =
      GenerateGame(MakeGridDescriptor(GameFamily::kWhg, 4, 4, 3, 17));
  CHECK(ValidateGame(game).empty());
}

TEST_CASE("wnz profile value matches a Monte-Carlo estimate") {
  ExtensiveGame game =
      GenerateGame(MakeGridDescriptor(GameFamily::kWnz, 3, 3, 3, 6));
  LeaderBehaviorStrategy leader;
  leader.probs.resize(game.NumInfosets(Player::kLeader));
  for (InfosetId i = 0; i < game.NumInfosets(Player::kLeader); ++i) {
    int k = game.InfosetNumActions(Player::kLeader, i);
    leader.probs[i].assign(k, 1.0 / k);
  }
  PureStrategyEnumerator plans(game, Player::kFollower);
  PureStrategy follower = *plans.Next();
  Utilities exact = ExpectedUtilities(game, leader, follower);
  auto mc = test::MonteCarloUtilities(game, leader, follower, 1'000'000, 77);
  CHECK(std::abs(exact.leader - mc.mean.leader) <=
        3.0 * mc.leader_sem + 1e-9);
  CHECK(std::abs(exact.follower - mc.mean.follower) <=
        3.0 * mc.follower_sem + 1e-9);
}

TEST_CASE("own-history infosets: players cannot see the opponent") {
  // States of one infoset share that player's position but differ in the
  // opponent's.
  GraphGameDescriptor d = MakeGridDescriptor(GameFamily::kWnz, 3, 3, 2, 13);
  ExtensiveGame game = GenerateGame(d);
  int multi_member = 0;
  for (InfosetId i = 0; i < game.NumInfosets(Player::kFollower); ++i) {
    if (game.InfosetMembers(Player::kFollower, i).size() > 1) ++multi_member;
  }
  CHECK(multi_member > 0);  // imperfect information is real
}

}  // namespace
}  // namespace sgs
