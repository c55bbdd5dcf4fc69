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

#include "sgs/uct_solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "sgs/rng.h"

namespace sgs {

ActionId SelectAction(const UctNode& node, double exploration_c) {
  if (node.state.IsTerminal()) {
    throw std::logic_error("SelectAction: terminal node");
  }
  if (!node.expanded) {
    throw std::logic_error("SelectAction: node not expanded");
  }
  ActionId best = -1;
  double best_score = -std::numeric_limits<double>::infinity();
  for (ActionId a = 0; a < static_cast<ActionId>(node.children.size()); ++a) {
    const UctNode& child = *node.children[a];
    if (child.visits == 0) return a;  // unvisited first, lowest id
    double mean = child.value_sum / static_cast<double>(child.visits);
    double bonus = exploration_c *
                   std::sqrt(std::log(static_cast<double>(
                                 std::max<long long>(node.visits, 1))) /
                             static_cast<double>(child.visits));
    double score = mean + bonus;
    if (score > best_score) {
      best_score = score;
      best = a;
    }
  }
  return best;
}

void Backpropagate(const std::vector<UctNode*>& path, double leader_payoff,
                   double u_min, double u_max) {
  double span = u_max - u_min;
  double value =
      span > 0.0 ? std::clamp((leader_payoff - u_min) / span, 0.0, 1.0) : 0.5;
  for (UctNode* node : path) {
    node->visits += 1;
    node->value_sum += value;
  }
}

SseResult RunUctSampler(const ExtensiveGame& game,
                        const SamplerConfig& config) {
  if (config.iterations <= 0) {
    throw std::invalid_argument("sampler: iterations must be positive");
  }
  if (config.exploration_c <= 0.0) {
    throw std::invalid_argument("sampler: exploration constant must be positive");
  }
  double u_min, u_max;
  if (config.utility_bounds.has_value()) {
    u_min = config.utility_bounds->first;
    u_max = config.utility_bounds->second;
    if (!(u_min < u_max)) {
      throw std::invalid_argument("sampler: need u_min < u_max");
    }
  } else {
    u_min = game.MinLeaderUtility();
    u_max = game.MaxLeaderUtility();
    if (!(u_min < u_max)) u_max = u_min + 1.0;  // constant-payoff game
  }

  std::optional<std::chrono::steady_clock::time_point> deadline;
  if (config.time_limit_s.has_value()) {
    deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                   std::chrono::duration<double>(*config.time_limit_s));
  }

  AfgExpander afg(game);
  Rng rng(config.seed);
  LeaderOracle oracle(game, config.oracle, rng.Fork());
  if (deadline.has_value()) oracle.set_deadline(*deadline);

  // Oracle results per distinct sampled plan: re-sampling a leaf reuses the
  // solve instead of repeating it.
  std::map<PureStrategy, LeaderSolveResult> solved;

  UctNode root;
  root.state = afg.InitialState();

  SseResult result;
  result.leader_payoff = -std::numeric_limits<double>::infinity();
  for (long long iter = 0; iter < config.iterations; ++iter) {
    if (deadline.has_value() &&
        std::chrono::steady_clock::now() >= *deadline) {
      result.timed_out = true;
      break;
    }

    // Selection through the expanded frontier.
    std::vector<UctNode*> path = {&root};
    UctNode* node = &root;
    while (node->expanded && !node->state.IsTerminal()) {
      ActionId a = SelectAction(*node, config.exploration_c);
      node = node->children[a].get();
      path.push_back(node);
    }
    // One expansion per playout.
    if (!node->state.IsTerminal()) {
      int num_actions = afg.NumActions(node->state);
      node->children.reserve(num_actions);
      for (ActionId a = 0; a < num_actions; ++a) {
        auto child = std::make_unique<UctNode>();
        child->state = afg.Step(node->state, a);
        node->children.push_back(std::move(child));
      }
      node->expanded = true;
      ActionId a = SelectAction(*node, config.exploration_c);
      node = node->children[a].get();
      path.push_back(node);
    }
    // Simulation to an AFG leaf with uniform random actions.
    AfgState leaf_state = node->state;
    while (!leaf_state.IsTerminal()) {
      leaf_state = afg.Step(leaf_state, rng.NextInt(afg.NumActions(leaf_state)));
    }
    PureStrategy plan = afg.PathToStrategy(leaf_state);

    auto it = solved.find(plan);
    if (it == solved.end()) {
      it = solved.emplace(plan, oracle.Solve(plan)).first;
    }
    const LeaderSolveResult& solve = it->second;

    if (solve.feasible &&
        (!result.found || solve.leader_payoff > result.leader_payoff)) {
      result.found = true;
      result.leader = solve.strategy;
      result.follower = plan;
      result.leader_payoff = solve.leader_payoff;
    }
    // Infeasible plans backpropagate the minimum (normalized 0) to
    // discourage re-sampling them.
    Backpropagate(path, solve.feasible ? solve.leader_payoff : u_min, u_min,
                  u_max);
    ++result.iterations_run;
  }
  result.root_visits = root.visits;
  result.distinct_leaves = static_cast<long long>(solved.size());
  if (!result.found) result.leader_payoff = 0.0;
  if (config.collect_solves) {
    result.solved_leaves.reserve(solved.size());
    for (const auto& [plan, solve] : solved) {
      SolvedLeaf leaf;
      leaf.follower = plan;
      leaf.feasible = solve.feasible;
      if (solve.feasible) {
        leaf.leader = solve.strategy;
        leaf.leader_payoff = solve.leader_payoff;
      }
      result.solved_leaves.push_back(std::move(leaf));
    }
  }
  return result;
}

}  // namespace sgs
