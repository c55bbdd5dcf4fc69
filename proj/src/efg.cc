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

#include "sgs/efg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace sgs {

namespace {

std::string PlayerName(Player p) {
  return p == Player::kLeader ? "leader" : "follower";
}

}  // namespace

std::vector<std::pair<InfosetId, ActionId>> ExtensiveGame::OwnerHistory(
    StateId s, Player p) const {
  std::vector<std::pair<InfosetId, ActionId>> history;
  StateId cur = Parent(s);
  ActionId via = IncomingAction(s);
  int steps = 0;  // bounded walk so malformed (cyclic) input cannot hang
  while (cur != kNoState && ++steps <= NumNodes()) {
    if (!IsTerminal(cur) && Owner(cur) == p) {
      history.emplace_back(Infoset(cur), via);
    }
    via = IncomingAction(cur);
    cur = Parent(cur);
  }
  std::reverse(history.begin(), history.end());
  return history;
}

StateId GameBuilder::AddState(Player owner, InfosetId infoset) {
  pending_.push_back({false, owner, infoset, 0.0, 0.0, {}, {}});
  return static_cast<StateId>(pending_.size()) - 1;
}

StateId GameBuilder::AddTerminal(double u_leader, double u_follower) {
  pending_.push_back({true, Player::kLeader, -1, u_leader, u_follower, {}, {}});
  return static_cast<StateId>(pending_.size()) - 1;
}

void GameBuilder::AddAction(StateId state, StateId next, std::string label) {
  pending_[state].next.push_back(next);
  pending_[state].labels.push_back(std::move(label));
}

ExtensiveGame GameBuilder::Build() {
  const int n = static_cast<int>(pending_.size());
  if (n == 0) throw std::invalid_argument("GameBuilder: empty game");
  if (root_ < 0 || root_ >= n) {
    throw std::invalid_argument("GameBuilder: root not set or out of range");
  }
  for (int s = 0; s < n; ++s) {
    for (StateId c : pending_[s].next) {
      if (c < 0 || c >= n) {
        throw std::invalid_argument("GameBuilder: child id out of range");
      }
    }
  }

  ExtensiveGame game;
  game.root_ = root_;
  game.nodes_.resize(n);

  // Flatten children and assign parents (first assignment wins; extra
  // parents become diagnostics).
  for (int s = 0; s < n; ++s) {
    const PendingState& p = pending_[s];
    ExtensiveGame::Node& node = game.nodes_[s];
    node.terminal = p.terminal;
    node.u_leader = p.u_leader;
    node.u_follower = p.u_follower;
    node.owner = p.owner;
    node.first_child = static_cast<int>(game.children_.size());
    if (p.terminal && !p.next.empty()) {
      game.build_diagnostics_.push_back("terminal state " + std::to_string(s) +
                                        " has outgoing actions");
    } else {
      node.num_actions = static_cast<int>(p.next.size());
      for (ActionId a = 0; a < node.num_actions; ++a) {
        game.children_.push_back(p.next[a]);
      }
    }
    if (!p.terminal) ++game.num_decision_states_;
  }
  for (int s = 0; s < n; ++s) {
    for (ActionId a = 0; a < game.nodes_[s].num_actions; ++a) {
      StateId c = game.Child(s, a);
      if (c == root_) {
        game.build_diagnostics_.push_back("root state has an incoming edge");
      }
      if (game.nodes_[c].parent == kNoState) {
        game.nodes_[c].parent = s;
        game.nodes_[c].parent_action = a;
      } else if (game.nodes_[c].parent != s || game.nodes_[c].parent_action != a) {
        game.build_diagnostics_.push_back(
            "state " + std::to_string(c) + " has more than one parent");
      }
    }
  }

  // Reachability (guards against cycles as well: a cycle is unreachable or
  // revisits, both reported).
  std::vector<char> reached(n, 0);
  std::vector<StateId> stack = {root_};
  reached[root_] = 1;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (ActionId a = 0; a < game.nodes_[s].num_actions; ++a) {
      StateId c = game.Child(s, a);
      if (!reached[c]) {
        reached[c] = 1;
        stack.push_back(c);
      }
    }
  }
  int unreachable = 0;
  StateId first_unreachable = kNoState;
  for (int s = 0; s < n; ++s) {
    if (!reached[s]) {
      ++unreachable;
      if (first_unreachable == kNoState) first_unreachable = s;
    }
  }
  if (unreachable > 0) {
    game.build_diagnostics_.push_back(
        std::to_string(unreachable) + " state(s) unreachable from root (first: " +
        std::to_string(first_unreachable) + ")");
  }

  // Dense infoset ids per player; the builder-level id space is global so
  // that ownership mixing stays representable (and reportable).
  std::unordered_map<InfosetId, Player> first_owner;
  std::set<InfosetId> mixed_reported;
  std::unordered_map<InfosetId, InfosetId> dense[2];
  for (int s = 0; s < n; ++s) {
    const PendingState& p = pending_[s];
    if (p.terminal) continue;
    auto [it, inserted] = first_owner.emplace(p.infoset, p.owner);
    if (!inserted && it->second != p.owner &&
        mixed_reported.insert(p.infoset).second) {
      game.build_diagnostics_.push_back("mixed ownership in infoset " +
                                        std::to_string(p.infoset));
    }
    auto& table = dense[PlayerIndex(p.owner)];
    auto [dit, fresh] = table.emplace(
        p.infoset, static_cast<InfosetId>(table.size()));
    InfosetId id = dit->second;
    game.nodes_[s].infoset = id;
    auto& sets = game.infosets_[PlayerIndex(p.owner)];
    if (fresh) {
      sets.emplace_back();
      sets.back().num_actions = game.nodes_[s].num_actions;
      sets.back().action_labels = p.labels;
    }
    sets[id].members.push_back(s);
  }

  // Infoset depth = own-history length of the first member.
  for (int pi = 0; pi < 2; ++pi) {
    Player player = static_cast<Player>(pi);
    for (auto& info : game.infosets_[pi]) {
      info.depth =
          static_cast<int>(game.OwnerHistory(info.members.front(), player).size());
    }
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < n; ++s) {
    if (game.nodes_[s].terminal) {
      lo = std::min(lo, game.nodes_[s].u_leader);
      hi = std::max(hi, game.nodes_[s].u_leader);
    }
  }
  if (lo > hi) {
    lo = 0.0;
    hi = 1.0;
  }
  game.min_leader_utility_ = lo;
  game.max_leader_utility_ = hi;
  return game;
}

std::vector<std::string> ValidateGame(const ExtensiveGame& game) {
  std::vector<std::string> violations = game.BuildDiagnostics();

  for (StateId s = 0; s < game.NumNodes(); ++s) {
    if (game.IsTerminal(s)) {
      Utilities u = game.TerminalUtility(s);
      if (!std::isfinite(u.leader) || !std::isfinite(u.follower)) {
        violations.push_back("terminal " + std::to_string(s) +
                             " has non-finite utilities");
      }
    } else if (game.NumActions(s) == 0) {
      violations.push_back("state " + std::to_string(s) + " has no actions");
    }
  }

  for (int pi = 0; pi < 2; ++pi) {
    Player player = static_cast<Player>(pi);
    for (InfosetId i = 0; i < game.NumInfosets(player); ++i) {
      const auto& members = game.InfosetMembers(player, i);
      StateId head = members.front();
      auto head_history = game.OwnerHistory(head, player);
      for (StateId s : members) {
        if (game.NumActions(s) != game.NumActions(head)) {
          violations.push_back(
              "infoset " + std::to_string(i) + " of " + PlayerName(player) +
              ": states " + std::to_string(head) + " and " + std::to_string(s) +
              " have different action counts");
          break;
        }
      }
      for (StateId s : members) {
        if (s == head) continue;
        if (game.OwnerHistory(s, player) != head_history) {
          violations.push_back("perfect recall violated in infoset " +
                               std::to_string(i) + " of " + PlayerName(player));
          break;
        }
      }
    }
  }
  return violations;
}

std::vector<std::string> ValidateRestrictedPlan(const ExtensiveGame& game,
                                                Player player,
                                                const PureStrategy& plan) {
  std::vector<std::string> violations;
  for (const auto& [infoset, action] : plan.choices) {
    if (infoset < 0 || infoset >= game.NumInfosets(player)) {
      violations.push_back("unknown infoset " + std::to_string(infoset));
      continue;
    }
    if (action < 0 || action >= game.InfosetNumActions(player, infoset)) {
      violations.push_back("illegal action " + std::to_string(action) +
                           " in infoset " + std::to_string(infoset));
    }
  }
  if (!violations.empty()) return violations;

  // The domain must equal the infosets reachable given the plan's own
  // earlier choices.
  std::set<InfosetId> reachable;
  std::vector<StateId> stack = {game.Root()};
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    if (game.IsTerminal(s)) continue;
    if (game.Owner(s) == player) {
      InfosetId i = game.Infoset(s);
      reachable.insert(i);
      auto it = plan.choices.find(i);
      if (it == plan.choices.end()) continue;  // undecided: frontier stops here
      stack.push_back(game.Child(s, it->second));
    } else {
      for (ActionId a = 0; a < game.NumActions(s); ++a) {
        stack.push_back(game.Child(s, a));
      }
    }
  }
  for (InfosetId i : reachable) {
    if (!plan.choices.count(i)) {
      violations.push_back("reachable infoset " + std::to_string(i) +
                           " has no choice");
    }
  }
  for (const auto& [infoset, action] : plan.choices) {
    (void)action;
    if (!reachable.count(infoset)) {
      violations.push_back("infoset " + std::to_string(infoset) +
                           " is not reachable under the plan's own choices");
    }
  }
  return violations;
}

Utilities ExpectedUtilities(const ExtensiveGame& game,
                            const LeaderBehaviorStrategy& leader,
                            const PureStrategy& follower) {
  Utilities total;
  std::vector<std::pair<StateId, double>> stack;
  stack.emplace_back(game.Root(), 1.0);
  while (!stack.empty()) {
    auto [s, prob] = stack.back();
    stack.pop_back();
    if (game.IsTerminal(s)) {
      Utilities u = game.TerminalUtility(s);
      total.leader += prob * u.leader;
      total.follower += prob * u.follower;
      continue;
    }
    InfosetId i = game.Infoset(s);
    if (game.Owner(s) == Player::kLeader) {
      if (i >= static_cast<InfosetId>(leader.probs.size()) ||
          leader.probs[i].empty()) {
        throw std::runtime_error(
            "leader behavior strategy missing probability vector for "
            "reachable infoset " + std::to_string(i));
      }
      const std::vector<double>& vec = leader.probs[i];
      if (static_cast<int>(vec.size()) != game.NumActions(s)) {
        throw std::runtime_error("leader probability vector size mismatch in "
                                 "infoset " + std::to_string(i));
      }
      for (ActionId a = 0; a < game.NumActions(s); ++a) {
        if (vec[a] != 0.0) stack.emplace_back(game.Child(s, a), prob * vec[a]);
      }
    } else {
      auto it = follower.choices.find(i);
      if (it == follower.choices.end()) {
        throw std::runtime_error(
            "follower plan missing choice for reachable infoset " +
            std::to_string(i));
      }
      stack.emplace_back(game.Child(s, it->second), prob);
    }
  }
  return total;
}

namespace {

// Expected utilities of the subtree rooted at `start`, profile fixed.
Utilities SubtreeValue(const ExtensiveGame& game,
                       const LeaderBehaviorStrategy& leader,
                       const PureStrategy& follower, StateId start) {
  Utilities total;
  std::vector<std::pair<StateId, double>> stack;
  stack.emplace_back(start, 1.0);
  while (!stack.empty()) {
    auto [s, prob] = stack.back();
    stack.pop_back();
    if (game.IsTerminal(s)) {
      Utilities u = game.TerminalUtility(s);
      total.leader += prob * u.leader;
      total.follower += prob * u.follower;
      continue;
    }
    InfosetId i = game.Infoset(s);
    if (game.Owner(s) == Player::kLeader) {
      if (i >= static_cast<InfosetId>(leader.probs.size()) ||
          leader.probs[i].empty()) {
        throw std::runtime_error(
            "leader behavior strategy missing probability vector for "
            "reachable infoset " + std::to_string(i));
      }
      const std::vector<double>& vec = leader.probs[i];
      for (ActionId a = 0; a < game.NumActions(s); ++a) {
        if (vec[a] != 0.0) stack.emplace_back(game.Child(s, a), prob * vec[a]);
      }
    } else {
      auto it = follower.choices.find(i);
      if (it == follower.choices.end()) {
        throw std::runtime_error(
            "follower plan missing choice for reachable infoset " +
            std::to_string(i));
      }
      stack.emplace_back(game.Child(s, it->second), prob);
    }
  }
  return total;
}

// Leader-probability product along the root path to s. Moves at infosets
// without a probability vector contribute probability 0.
double LeaderPathProbability(const ExtensiveGame& game,
                             const LeaderBehaviorStrategy& leader, StateId s) {
  double prob = 1.0;
  StateId cur = game.Parent(s);
  ActionId via = game.IncomingAction(s);
  int steps = 0;
  while (cur != kNoState && ++steps <= game.NumNodes()) {
    if (!game.IsTerminal(cur) && game.Owner(cur) == Player::kLeader) {
      InfosetId i = game.Infoset(cur);
      if (i >= static_cast<InfosetId>(leader.probs.size()) ||
          leader.probs[i].empty() ||
          via >= static_cast<ActionId>(leader.probs[i].size())) {
        return 0.0;
      }
      prob *= leader.probs[i][via];
    }
    via = game.IncomingAction(cur);
    cur = game.Parent(cur);
  }
  return prob;
}

}  // namespace

namespace internal {

std::optional<Utilities> ConditionalWithFilter(
    const ExtensiveGame& game, const LeaderBehaviorStrategy& leader,
    const PureStrategy& follower, InfosetId leader_infoset,
    ActionId forced_action, const std::vector<char>& follower_consistent) {
  const auto& members = game.InfosetMembers(Player::kLeader, leader_infoset);
  std::vector<StateId> consistent;
  consistent.reserve(members.size());
  for (StateId s : members) {
    if (follower_consistent[s]) consistent.push_back(s);
  }
  if (consistent.empty()) return std::nullopt;

  std::vector<double> weights;
  weights.reserve(consistent.size());
  double total_weight = 0.0;
  for (StateId s : consistent) {
    double w = LeaderPathProbability(game, leader, s);
    weights.push_back(w);
    total_weight += w;
  }
  if (total_weight <= 0.0) {
    // Structurally reachable but carried no leader probability: weight the
    // consistent states uniformly so zero-probability branches stay
    // assessable.
    std::fill(weights.begin(), weights.end(), 1.0);
    total_weight = static_cast<double>(weights.size());
  }

  Utilities result;
  for (size_t k = 0; k < consistent.size(); ++k) {
    if (weights[k] == 0.0) continue;
    Utilities below = SubtreeValue(game, leader, follower,
                                   game.Child(consistent[k], forced_action));
    result.leader += weights[k] * below.leader;
    result.follower += weights[k] * below.follower;
  }
  result.leader /= total_weight;
  result.follower /= total_weight;
  return result;
}

}  // namespace internal

std::optional<Utilities> ConditionalExpectedUtilities(
    const ExtensiveGame& game, const LeaderBehaviorStrategy& leader,
    const PureStrategy& follower, InfosetId leader_infoset,
    ActionId forced_action) {
  if (leader_infoset < 0 ||
      leader_infoset >= game.NumInfosets(Player::kLeader)) {
    throw std::invalid_argument("conditional: unknown leader infoset");
  }
  if (forced_action < 0 ||
      forced_action >=
          game.InfosetNumActions(Player::kLeader, leader_infoset)) {
    throw std::invalid_argument("conditional: illegal forced action");
  }
  std::vector<char> consistent =
      ConsistentWithPlan(game, Player::kFollower, follower);
  return internal::ConditionalWithFilter(game, leader, follower,
                                         leader_infoset, forced_action,
                                         consistent);
}

std::vector<char> ConsistentWithPlan(const ExtensiveGame& game, Player player,
                                     const PureStrategy& plan) {
  std::vector<char> consistent(game.NumNodes(), 0);
  std::vector<StateId> stack = {game.Root()};
  consistent[game.Root()] = 1;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    if (game.IsTerminal(s)) continue;
    if (game.Owner(s) == player) {
      auto it = plan.choices.find(game.Infoset(s));
      if (it == plan.choices.end()) continue;
      StateId c = game.Child(s, it->second);
      consistent[c] = 1;
      stack.push_back(c);
    } else {
      for (ActionId a = 0; a < game.NumActions(s); ++a) {
        StateId c = game.Child(s, a);
        consistent[c] = 1;
        stack.push_back(c);
      }
    }
  }
  return consistent;
}

PureStrategyEnumerator::PureStrategyEnumerator(const ExtensiveGame& game,
                                               Player player)
    : game_(game), player_(player) {
  PureStrategy empty;
  std::vector<InfosetId> frontier = ReachableUndecided(empty);
  if (frontier.empty()) {
    stack_.push_back({empty, -1, 0, 0});
  } else {
    InfosetId i = frontier.front();
    stack_.push_back({empty, i, 0, game_.InfosetNumActions(player_, i)});
  }
}

std::vector<InfosetId> PureStrategyEnumerator::ReachableUndecided(
    const PureStrategy& plan) const {
  std::set<InfosetId> undecided;
  std::vector<StateId> stack = {game_.Root()};
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    if (game_.IsTerminal(s)) continue;
    if (game_.Owner(s) == player_) {
      InfosetId i = game_.Infoset(s);
      auto it = plan.choices.find(i);
      if (it == plan.choices.end()) {
        undecided.insert(i);
        continue;  // choices below depend on this decision
      }
      stack.push_back(game_.Child(s, it->second));
    } else {
      for (ActionId a = 0; a < game_.NumActions(s); ++a) {
        stack.push_back(game_.Child(s, a));
      }
    }
  }
  return {undecided.begin(), undecided.end()};
}

std::optional<PureStrategy> PureStrategyEnumerator::Next() {
  while (!stack_.empty()) {
    Frame& top = stack_.back();
    if (top.infoset == -1) {
      PureStrategy out = std::move(top.plan);
      stack_.pop_back();
      return out;
    }
    if (top.next_action >= top.num_actions) {
      stack_.pop_back();
      continue;
    }
    ActionId a = top.next_action++;
    PureStrategy extended = top.plan;
    extended.choices[top.infoset] = a;
    std::vector<InfosetId> frontier = ReachableUndecided(extended);
    if (frontier.empty()) {
      stack_.push_back({std::move(extended), -1, 0, 0});
    } else {
      InfosetId i = frontier.front();
      stack_.push_back(
          {std::move(extended), i, 0, game_.InfosetNumActions(player_, i)});
    }
  }
  return std::nullopt;
}

long long CountPureStrategies(const ExtensiveGame& game, Player player,
                              long long guard) {
  PureStrategyEnumerator it(game, player);
  long long count = 0;
  while (it.Next().has_value()) {
    if (++count > guard) {
      throw std::runtime_error("CountPureStrategies: guard exceeded");
    }
  }
  return count;
}

LeaderBehaviorStrategy PureToBehavior(const ExtensiveGame& game,
                                      const PureStrategy& leader_plan) {
  LeaderBehaviorStrategy out;
  out.probs.resize(game.NumInfosets(Player::kLeader));
  for (InfosetId i = 0; i < game.NumInfosets(Player::kLeader); ++i) {
    int k = game.InfosetNumActions(Player::kLeader, i);
    auto it = leader_plan.choices.find(i);
    if (it != leader_plan.choices.end()) {
      out.probs[i].assign(k, 0.0);
      out.probs[i][it->second] = 1.0;
    } else {
      out.probs[i].assign(k, k > 0 ? 1.0 / k : 0.0);
    }
  }
  return out;
}

LeaderBehaviorStrategy MixedToBehavior(
    const ExtensiveGame& game,
    const std::vector<std::pair<PureStrategy, double>>& mixture) {
  LeaderBehaviorStrategy out;
  int num_infosets = game.NumInfosets(Player::kLeader);
  out.probs.resize(num_infosets);
  for (InfosetId i = 0; i < num_infosets; ++i) {
    int k = game.InfosetNumActions(Player::kLeader, i);
    StateId head = game.InfosetMembers(Player::kLeader, i).front();
    auto history = game.OwnerHistory(head, Player::kLeader);
    std::vector<double> mass(k, 0.0);
    double reach_mass = 0.0;
    for (const auto& [plan, weight] : mixture) {
      if (weight == 0.0) continue;
      bool consistent = true;
      for (const auto& [anc, action] : history) {
        auto it = plan.choices.find(anc);
        if (it == plan.choices.end() || it->second != action) {
          consistent = false;
          break;
        }
      }
      if (!consistent) continue;
      auto it = plan.choices.find(i);
      if (it == plan.choices.end()) continue;
      reach_mass += weight;
      mass[it->second] += weight;
    }
    if (reach_mass > 0.0) {
      for (double& m : mass) m /= reach_mass;
      out.probs[i] = std::move(mass);
    } else {
      out.probs[i].assign(k, k > 0 ? 1.0 / k : 0.0);
    }
  }
  return out;
}

}  // namespace sgs
