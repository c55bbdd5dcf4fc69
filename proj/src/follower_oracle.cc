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

#include "sgs/follower_oracle.h"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace sgs {

namespace {

class BestResponseSolver {
 public:
  BestResponseSolver(const ExtensiveGame& game,
                     const LeaderBehaviorStrategy& leader)
      : game_(game), leader_(leader),
        reach_(game.NumNodes(), 0.0),
        value_(game.NumNodes(), 0.0),
        value_known_(game.NumNodes(), 0),
        chosen_(game.NumInfosets(Player::kFollower), -1) {}

  BestResponse Solve() {
    ComputeLeaderReach();

    // Resolve every follower infoset reachable under the plan's own choices,
    // frontier by frontier, so the plan's domain is exactly the restricted
    // realization plan.
    PureStrategy plan;
    std::vector<StateId> stack = {game_.Root()};
    while (!stack.empty()) {
      StateId s = stack.back();
      stack.pop_back();
      if (game_.IsTerminal(s)) continue;
      if (game_.Owner(s) == Player::kFollower) {
        InfosetId i = game_.Infoset(s);
        ResolveInfoset(i);
        plan.choices[i] = chosen_[i];
        stack.push_back(game_.Child(s, chosen_[i]));
      } else {
        for (ActionId a = 0; a < game_.NumActions(s); ++a) {
          stack.push_back(game_.Child(s, a));
        }
      }
    }
    // Report the value through the shared profile evaluator so it is exactly
    // comparable with enumeration-based checks.
    return {plan, ExpectedUtilities(game_, leader_, plan)};
  }

 private:
  void ComputeLeaderReach() {
    reach_[game_.Root()] = 1.0;
    std::vector<StateId> stack = {game_.Root()};
    while (!stack.empty()) {
      StateId s = stack.back();
      stack.pop_back();
      if (game_.IsTerminal(s)) continue;
      if (game_.Owner(s) == Player::kLeader) {
        const std::vector<double>& vec = LeaderVector(s);
        for (ActionId a = 0; a < game_.NumActions(s); ++a) {
          StateId c = game_.Child(s, a);
          reach_[c] = reach_[s] * vec[a];
          stack.push_back(c);
        }
      } else {
        for (ActionId a = 0; a < game_.NumActions(s); ++a) {
          StateId c = game_.Child(s, a);
          reach_[c] = reach_[s];
          stack.push_back(c);
        }
      }
    }
  }

  const std::vector<double>& LeaderVector(StateId s) const {
    InfosetId i = game_.Infoset(s);
    if (i >= static_cast<InfosetId>(leader_.probs.size()) ||
        leader_.probs[i].empty() ||
        static_cast<int>(leader_.probs[i].size()) != game_.NumActions(s)) {
      throw std::runtime_error(
          "best response: leader strategy missing or malformed at infoset " +
          std::to_string(i));
    }
    return leader_.probs[i];
  }

  // Best-response follower value below s, with deeper infosets resolved on
  // demand.
  double Value(StateId s) {
    if (value_known_[s]) return value_[s];
    double v;
    if (game_.IsTerminal(s)) {
      v = game_.TerminalUtility(s).follower;
    } else if (game_.Owner(s) == Player::kLeader) {
      const std::vector<double>& vec = LeaderVector(s);
      v = 0.0;
      for (ActionId a = 0; a < game_.NumActions(s); ++a) {
        if (vec[a] != 0.0) v += vec[a] * Value(game_.Child(s, a));
      }
    } else {
      InfosetId i = game_.Infoset(s);
      ResolveInfoset(i);
      v = Value(game_.Child(s, chosen_[i]));
    }
    value_[s] = v;
    value_known_[s] = 1;
    return v;
  }

  void ResolveInfoset(InfosetId i) {
    if (chosen_[i] != -1) return;
    const std::vector<StateId>& members =
        game_.InfosetMembers(Player::kFollower, i);
    int num_actions = game_.InfosetNumActions(Player::kFollower, i);
    ActionId best = 0;
    double best_q = -std::numeric_limits<double>::infinity();
    bool any_reach = false;
    for (ActionId a = 0; a < num_actions; ++a) {
      double q = 0.0;
      for (StateId s : members) {
        if (reach_[s] == 0.0) continue;  // counterfactually irrelevant
        any_reach = true;
        q += reach_[s] * Value(game_.Child(s, a));
      }
      if (q > best_q) {
        best_q = q;
        best = a;
      }
    }
    chosen_[i] = any_reach ? best : 0;
  }

  const ExtensiveGame& game_;
  const LeaderBehaviorStrategy& leader_;
  std::vector<double> reach_;
  std::vector<double> value_;
  std::vector<char> value_known_;
  std::vector<ActionId> chosen_;
};

}  // namespace

BestResponse ComputeBestResponse(const ExtensiveGame& game,
                                 const LeaderBehaviorStrategy& leader) {
  return BestResponseSolver(game, leader).Solve();
}

InsertOutcome EvictAndInsert(OracleCache& cache, const PureStrategy& strategy) {
  for (const OracleCache::Entry& entry : cache.entries) {
    if (entry.strategy == strategy) {
      ++cache.duplicate_inserts;
      return InsertOutcome::kDuplicate;
    }
  }
  if (static_cast<int>(cache.entries.size()) >= cache.capacity) {
    auto victim = cache.entries.begin();
    for (auto it = cache.entries.begin(); it != cache.entries.end(); ++it) {
      if (it->use_count < victim->use_count) victim = it;  // oldest on ties
    }
    cache.entries.erase(victim);
  }
  cache.entries.push_back({1, strategy});
  return InsertOutcome::kInserted;
}

std::optional<PureStrategy> BetterResponse(const ExtensiveGame& game,
                                           const LeaderBehaviorStrategy& leader,
                                           const PureStrategy& requested,
                                           OracleCache& cache, double epsilon,
                                           OracleStats* stats) {
  double requested_value = ExpectedUtilities(game, leader, requested).follower;
  for (OracleCache::Entry& entry : cache.entries) {
    double value = ExpectedUtilities(game, leader, entry.strategy).follower;
    if (value > requested_value + epsilon) {
      ++entry.use_count;
      if (stats != nullptr) ++stats->cache_hits;
      return entry.strategy;
    }
  }
  if (stats != nullptr) ++stats->enumerations;
  BestResponse best = ComputeBestResponse(game, leader);
  EvictAndInsert(cache, best.strategy);
  if (best.value.follower > requested_value + epsilon) {
    return best.strategy;
  }
  return std::nullopt;
}

}  // namespace sgs
