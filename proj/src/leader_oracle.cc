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

#include "sgs/leader_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace sgs {

namespace {

constexpr double kInitExplorationC = 1.4142135623730951;  // sqrt(2)

std::vector<double> ZeroVector(size_t n) { return std::vector<double>(n, 0.0); }

// Positive pass: conditional leader value of each tracked move minus the
// node's mixed value. Unreachable nodes assess to zero.
std::vector<double> AssessPositiveImpl(const ExtensiveGame& game,
                                       const LeaderBehaviorStrategy& leader,
                                       const PureStrategy& requested,
                                       const StrategyTreeNode& node,
                                       const std::vector<char>& cons_r) {
  size_t k = node.moves.size();
  std::vector<double> values(k);
  for (size_t i = 0; i < k; ++i) {
    auto cond = internal::ConditionalWithFilter(game, leader, requested,
                                                node.infoset, node.moves[i],
                                                cons_r);
    if (!cond.has_value()) return ZeroVector(k);
    values[i] = cond->leader;
  }
  double node_value = 0.0;
  for (size_t i = 0; i < k; ++i) node_value += node.prob[i] * values[i];
  std::vector<double> as(k);
  for (size_t i = 0; i < k; ++i) as[i] = values[i] - node_value;
  return as;
}

std::vector<double> AssessFeasibilityImpl(const ExtensiveGame& game,
                                          const LeaderBehaviorStrategy& leader,
                                          const PureStrategy& requested,
                                          const PureStrategy& better,
                                          const StrategyTreeNode& node,
                                          const std::vector<char>& cons_r,
                                          const std::vector<char>& cons_b) {
  size_t k = node.moves.size();
  std::vector<double> values_b(k);
  for (size_t i = 0; i < k; ++i) {
    auto cond = internal::ConditionalWithFilter(
        game, leader, better, node.infoset, node.moves[i], cons_b);
    if (!cond.has_value()) return ZeroVector(k);  // pass routing skips these
    values_b[i] = cond->follower;
  }
  double node_b = 0.0;
  for (size_t i = 0; i < k; ++i) node_b += node.prob[i] * values_b[i];

  std::vector<double> values_r(k);
  bool reachable_r = true;
  for (size_t i = 0; i < k && reachable_r; ++i) {
    auto cond = internal::ConditionalWithFilter(
        game, leader, requested, node.infoset, node.moves[i], cons_r);
    if (!cond.has_value()) {
      reachable_r = false;
    } else {
      values_r[i] = cond->follower;
    }
  }

  std::vector<double> as(k);
  if (reachable_r) {
    double node_r = 0.0;
    for (size_t i = 0; i < k; ++i) node_r += node.prob[i] * values_r[i];
    for (size_t i = 0; i < k; ++i) {
      as[i] = (values_r[i] - values_b[i]) - (node_r - node_b);
    }
  } else {
    // Reachable only against the better response: reward moves that make it
    // score badly.
    for (size_t i = 0; i < k; ++i) as[i] = node_b - values_b[i];
  }
  return as;
}

}  // namespace

StopDecision CheckStop(const StopCounters& counters,
                       const std::vector<double>& best_history,
                       const LeaderOracleLimits& limits) {
  if (counters.consecutive_feasibility_passes > limits.m_max) {
    return StopDecision::kInfeasible;
  }
  if (counters.positive_passes > limits.l_max) return StopDecision::kStop;
  if (static_cast<int>(best_history.size()) >= limits.window + 1) {
    double improvement =
        best_history.back() -
        best_history[best_history.size() - 1 - limits.window];
    if (improvement < limits.eps_improve) return StopDecision::kStop;
  }
  return StopDecision::kContinue;
}

std::vector<double> StrategyTreeNode::DenseRow(int num_actions) const {
  std::vector<double> row(num_actions, 0.0);
  for (size_t i = 0; i < moves.size(); ++i) row[moves[i]] = prob[i];
  return row;
}

StrategyTreeNode* StrategyTree::Find(InfosetId infoset) const {
  auto it = index.find(infoset);
  return it == index.end() ? nullptr : it->second;
}

void AdjustNode(StrategyTreeNode& node, const std::vector<double>& assessment) {
  if (assessment.size() != node.moves.size()) {
    throw std::invalid_argument("AdjustNode: assessment size mismatch");
  }
  double l1 = 0.0;
  for (size_t i = 0; i < assessment.size(); ++i) {
    node.momentum[i] += assessment[i];
    l1 += std::abs(assessment[i]);
  }
  node.weight += l1;
  if (node.weight > 0.0) {
    for (size_t i = 0; i < node.prob.size(); ++i) {
      node.prob[i] = std::max(node.prob[i] + node.momentum[i] / node.weight, 0.0);
    }
  }
  double sum = 0.0;
  for (double p : node.prob) sum += p;
  if (sum > 0.0) {
    for (double& p : node.prob) p /= sum;
  } else if (!node.prob.empty()) {
    double uniform = 1.0 / static_cast<double>(node.prob.size());
    for (double& p : node.prob) p = uniform;
  }
}

LeaderBehaviorStrategy ExportBehavior(const ExtensiveGame& game,
                                      const StrategyTree& tree) {
  LeaderBehaviorStrategy out;
  int n = game.NumInfosets(Player::kLeader);
  out.probs.resize(n);
  for (InfosetId i = 0; i < n; ++i) {
    int k = game.InfosetNumActions(Player::kLeader, i);
    const StrategyTreeNode* node = tree.Find(i);
    if (node != nullptr) {
      out.probs[i] = node->DenseRow(k);
    } else {
      out.probs[i].assign(k, k > 0 ? 1.0 / k : 0.0);
    }
  }
  return out;
}

std::vector<double> AssessmentPositive(const ExtensiveGame& game,
                                       const LeaderBehaviorStrategy& leader,
                                       const PureStrategy& requested,
                                       const StrategyTreeNode& node) {
  return AssessPositiveImpl(game, leader, requested, node,
                            ConsistentWithPlan(game, Player::kFollower,
                                               requested));
}

std::vector<double> AssessmentFeasibility(const ExtensiveGame& game,
                                          const LeaderBehaviorStrategy& leader,
                                          const PureStrategy& requested,
                                          const PureStrategy& better,
                                          const StrategyTreeNode& node) {
  return AssessFeasibilityImpl(
      game, leader, requested, better, node,
      ConsistentWithPlan(game, Player::kFollower, requested),
      ConsistentWithPlan(game, Player::kFollower, better));
}

struct LeaderOracle::PassContext {
  PassKind kind;
  const PureStrategy* requested = nullptr;
  const PureStrategy* better = nullptr;
  std::vector<char> cons_r;
  std::vector<char> cons_b;
  const std::vector<char>* cons_pass = nullptr;
  LeaderBehaviorStrategy sigma;
  StrategyTree* tree = nullptr;
};

LeaderOracle::LeaderOracle(const ExtensiveGame& game,
                           const LeaderOracleLimits& limits, uint64_t seed)
    : game_(game), limits_(limits), rng_(seed) {}

std::unique_ptr<StrategyTreeNode> LeaderOracle::BuildChain(InfosetId infoset,
                                                           PassContext& ctx) {
  auto node = std::make_unique<StrategyTreeNode>();
  node->infoset = infoset;
  int num_actions = game_.InfosetNumActions(Player::kLeader, infoset);

  // Greedy move by conditional leader value against the requested plan;
  // lowest id when unreachable or tied.
  ActionId greedy = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (ActionId a = 0; a < num_actions; ++a) {
    auto cond = internal::ConditionalWithFilter(
        game_, ctx.sigma, *ctx.requested, infoset, a, ctx.cons_r);
    if (!cond.has_value()) break;  // unreachable: same for every action
    if (cond->leader > best) {
      best = cond->leader;
      greedy = a;
    }
  }
  node->moves = {greedy};
  node->prob = {1.0};
  node->momentum = {0.0};
  ctx.tree->index[infoset] = node.get();

  // Continue the chain along requested-plan-consistent follower play.
  for (InfosetId next : NextLeaderInfosets(infoset, greedy, ctx.cons_r)) {
    if (ctx.tree->index.count(next) > 0) continue;
    node->children[{greedy, next}] = BuildChain(next, ctx);
  }
  return node;
}

std::vector<InfosetId> LeaderOracle::InitialLeaderInfosets(
    const std::vector<char>& consistent) const {
  std::set<InfosetId> found;
  std::vector<StateId> stack = {game_.Root()};
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    if (game_.IsTerminal(s)) continue;
    if (game_.Owner(s) == Player::kLeader) {
      found.insert(game_.Infoset(s));
      continue;
    }
    for (ActionId a = 0; a < game_.NumActions(s); ++a) {
      StateId c = game_.Child(s, a);
      if (consistent[c]) stack.push_back(c);
    }
  }
  return {found.begin(), found.end()};
}

std::vector<InfosetId> LeaderOracle::NextLeaderInfosets(
    InfosetId infoset, ActionId move,
    const std::vector<char>& consistent) const {
  std::set<InfosetId> found;
  std::vector<StateId> stack;
  for (StateId s : game_.InfosetMembers(Player::kLeader, infoset)) {
    if (!consistent[s]) continue;
    stack.push_back(game_.Child(s, move));
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    if (game_.IsTerminal(s)) continue;
    if (game_.Owner(s) == Player::kLeader) {
      found.insert(game_.Infoset(s));
      continue;
    }
    for (ActionId a = 0; a < game_.NumActions(s); ++a) {
      StateId c = game_.Child(s, a);
      if (consistent[c]) stack.push_back(c);
    }
  }
  return {found.begin(), found.end()};
}

StrategyTreeNode* LeaderOracle::EnsureChild(StrategyTreeNode& parent,
                                            ActionId move, InfosetId next,
                                            PassContext& ctx) {
  auto key = std::make_pair(move, next);
  auto it = parent.children.find(key);
  if (it != parent.children.end()) return it->second.get();
  if (ctx.tree->index.count(next) > 0) return nullptr;  // defensive
  std::unique_ptr<StrategyTreeNode> node = BuildChain(next, ctx);
  StrategyTreeNode* raw = node.get();
  parent.children[key] = std::move(node);
  return raw;
}

namespace {

// Single-agent UCT for the leader against a fixed follower plan; returns the
// action sequence of the best playout found.
struct InitUctNode {
  long long n = 0;
  bool expanded = false;
  std::vector<long long> child_n;
  std::vector<double> child_sum;
};

std::vector<ActionId> InitBestPath(const ExtensiveGame& game,
                                   const PureStrategy& plan, int budget,
                                   Rng& rng) {
  std::unordered_map<StateId, InitUctNode> nodes;
  double lo = game.MinLeaderUtility();
  double hi = game.MaxLeaderUtility();
  double span = hi > lo ? hi - lo : 1.0;

  double best_payoff = -std::numeric_limits<double>::infinity();
  std::vector<ActionId> best_actions;

  for (int iter = 0; iter < budget; ++iter) {
    StateId s = game.Root();
    std::vector<std::pair<StateId, ActionId>> visited;
    std::vector<ActionId> actions;
    bool simulating = false;
    while (!game.IsTerminal(s)) {
      ActionId a;
      if (game.Owner(s) == Player::kFollower) {
        auto it = plan.choices.find(game.Infoset(s));
        if (it == plan.choices.end()) {
          throw std::runtime_error(
              "initialize: follower plan missing a reachable infoset");
        }
        a = it->second;
      } else if (simulating) {
        a = rng.NextInt(game.NumActions(s));
      } else {
        InitUctNode& node = nodes[s];
        if (node.child_n.empty()) {
          node.child_n.assign(game.NumActions(s), 0);
          node.child_sum.assign(game.NumActions(s), 0.0);
        }
        a = -1;
        double best_ucb = -std::numeric_limits<double>::infinity();
        for (ActionId cand = 0; cand < game.NumActions(s); ++cand) {
          if (node.child_n[cand] == 0) {
            a = cand;
            break;
          }
          double mean = node.child_sum[cand] / node.child_n[cand];
          double bonus = kInitExplorationC *
                         std::sqrt(std::log(static_cast<double>(
                                       std::max<long long>(node.n, 1))) /
                                   node.child_n[cand]);
          if (mean + bonus > best_ucb) {
            best_ucb = mean + bonus;
            a = cand;
          }
        }
        visited.emplace_back(s, a);
        if (!node.expanded) {
          node.expanded = true;
          simulating = true;
        }
      }
      actions.push_back(a);
      s = game.Child(s, a);
    }
    double payoff = game.TerminalUtility(s).leader;
    double norm = std::clamp((payoff - lo) / span, 0.0, 1.0);
    for (const auto& [state, action] : visited) {
      InitUctNode& node = nodes[state];
      node.n += 1;
      node.child_n[action] += 1;
      node.child_sum[action] += norm;
    }
    if (payoff > best_payoff) {
      best_payoff = payoff;
      best_actions = actions;
    }
  }
  return best_actions;
}

}  // namespace

StrategyTree LeaderOracle::Initialize(const PureStrategy& requested,
                                      int budget) {
  StrategyTree tree;
  std::vector<ActionId> actions =
      InitBestPath(game_, requested, std::max(budget, 1), rng_);
  StateId s = game_.Root();
  StrategyTreeNode* prev = nullptr;
  ActionId prev_move = -1;
  for (ActionId a : actions) {
    if (game_.Owner(s) == Player::kLeader) {
      InfosetId i = game_.Infoset(s);
      auto node = std::make_unique<StrategyTreeNode>();
      node->infoset = i;
      node->moves = {a};
      node->prob = {1.0};
      node->momentum = {0.0};
      StrategyTreeNode* raw = node.get();
      tree.index[i] = raw;
      if (prev != nullptr) {
        prev->children[{prev_move, i}] = std::move(node);
      } else {
        tree.roots[i] = std::move(node);
      }
      prev = raw;
      prev_move = a;
    }
    s = game_.Child(s, a);
  }
  return tree;
}

void LeaderOracle::AdjustRecursive(StrategyTreeNode& node, PassContext& ctx) {
  // Children first, moves visited in ascending action id.
  std::vector<ActionId> sorted_moves = node.moves;
  std::sort(sorted_moves.begin(), sorted_moves.end());
  for (ActionId m : sorted_moves) {
    for (InfosetId next : NextLeaderInfosets(node.infoset, m, *ctx.cons_pass)) {
      StrategyTreeNode* child = EnsureChild(node, m, next, ctx);
      if (child != nullptr) AdjustRecursive(*child, ctx);
    }
  }

  // The expansion draw always happens so the rng stream does not depend on
  // whether untracked moves remain.
  double draw = rng_.NextDouble();
  int num_actions = game_.InfosetNumActions(Player::kLeader, node.infoset);
  std::vector<ActionId> untracked;
  for (ActionId a = 0; a < num_actions; ++a) {
    if (std::find(node.moves.begin(), node.moves.end(), a) ==
        node.moves.end()) {
      untracked.push_back(a);
    }
  }
  if (draw <= limits_.expand_prob && !untracked.empty()) {
    ActionId added =
        untracked[rng_.NextInt(static_cast<int>(untracked.size()))];
    node.moves.push_back(added);
    node.prob.push_back(0.0);
    node.momentum.push_back(0.0);
    for (InfosetId next : NextLeaderInfosets(node.infoset, added, ctx.cons_r)) {
      EnsureChild(node, added, next, ctx);  // chain joins next pass
    }
  }

  std::vector<double> as =
      ctx.kind == PassKind::kPositive
          ? AssessPositiveImpl(game_, ctx.sigma, *ctx.requested, node,
                               ctx.cons_r)
          : AssessFeasibilityImpl(game_, ctx.sigma, *ctx.requested,
                                  *ctx.better, node, ctx.cons_r, ctx.cons_b);
  AdjustNode(node, as);
  ctx.sigma.probs[node.infoset] = node.DenseRow(num_actions);
  adjust_order_.push_back(node.infoset);
}

void LeaderOracle::AdjustTree(StrategyTree& tree, PassKind kind,
                              const PureStrategy& requested,
                              const PureStrategy* better) {
  if (kind == PassKind::kFeasibility && better == nullptr) {
    throw std::invalid_argument("feasibility pass requires a better response");
  }
  PassContext ctx;
  ctx.kind = kind;
  ctx.requested = &requested;
  ctx.better = better;
  ctx.cons_r = ConsistentWithPlan(game_, Player::kFollower, requested);
  if (kind == PassKind::kFeasibility) {
    ctx.cons_b = ConsistentWithPlan(game_, Player::kFollower, *better);
    ctx.cons_pass = &ctx.cons_b;
  } else {
    ctx.cons_pass = &ctx.cons_r;
  }
  ctx.sigma = ExportBehavior(game_, tree);
  ctx.tree = &tree;
  adjust_order_.clear();

  for (InfosetId i : InitialLeaderInfosets(*ctx.cons_pass)) {
    StrategyTreeNode* root = nullptr;
    auto it = tree.roots.find(i);
    if (it != tree.roots.end()) {
      root = it->second.get();
    } else if (tree.index.count(i) == 0) {
      std::unique_ptr<StrategyTreeNode> node = BuildChain(i, ctx);
      root = node.get();
      tree.roots[i] = std::move(node);
    }
    if (root != nullptr) AdjustRecursive(*root, ctx);
  }
}

LeaderSolveResult LeaderOracle::Solve(const PureStrategy& requested) {
  LeaderSolveResult result;
  StrategyTree tree = Initialize(requested, limits_.init_budget);
  OracleCache cache;
  cache.capacity = limits_.cache_capacity;
  StopCounters counters;
  std::vector<double> history;
  bool has_best = false;
  LeaderBehaviorStrategy best_strategy;
  double best_payoff = -std::numeric_limits<double>::infinity();

  while (true) {
    if (deadline_.has_value() &&
        std::chrono::steady_clock::now() >= *deadline_) {
      result.timed_out = true;
      break;
    }
    LeaderBehaviorStrategy sigma = ExportBehavior(game_, tree);
    std::optional<PureStrategy> better =
        BetterResponse(game_, sigma, requested, cache, limits_.eps_oracle,
                       &result.oracle_stats);
    if (better.has_value()) {
      ++counters.consecutive_feasibility_passes;
      if (CheckStop(counters, history, limits_) == StopDecision::kInfeasible) {
        break;
      }
      AdjustTree(tree, PassKind::kFeasibility, requested, &*better);
      ++result.feasibility_passes;
    } else {
      double payoff = ExpectedUtilities(game_, sigma, requested).leader;
      if (!has_best || payoff > best_payoff) {
        has_best = true;
        best_payoff = payoff;
        best_strategy = sigma;
      }
      history.push_back(best_payoff);
      if (CheckStop(counters, history, limits_) != StopDecision::kContinue) {
        break;
      }
      AdjustTree(tree, PassKind::kPositive, requested, nullptr);
      ++counters.positive_passes;
      ++result.positive_passes;
      counters.consecutive_feasibility_passes = 0;
    }
  }

  result.feasible = has_best;
  if (has_best) {
    result.strategy = std::move(best_strategy);
    result.leader_payoff = best_payoff;
  }
  return result;
}

}  // namespace sgs
