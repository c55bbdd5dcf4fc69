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

#ifndef SGS_EFG_H_
#define SGS_EFG_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sgs {

enum class Player : int { kLeader = 0, kFollower = 1 };

inline Player Opponent(Player p) {
  return p == Player::kLeader ? Player::kFollower : Player::kLeader;
}
inline int PlayerIndex(Player p) { return static_cast<int>(p); }

using StateId = int;
using InfosetId = int;
using ActionId = int;  // index into the infoset's action list

inline constexpr StateId kNoState = -1;

struct Utilities {
  double leader = 0.0;
  double follower = 0.0;

  double ForPlayer(Player p) const {
    return p == Player::kLeader ? leader : follower;
  }
};

// A restricted pure realization plan: one action per information set, defined
// exactly on the infosets reachable given the plan's own earlier choices.
struct PureStrategy {
  std::map<InfosetId, ActionId> choices;

  bool operator==(const PureStrategy& other) const = default;
  auto operator<=>(const PureStrategy& other) const = default;
};

// The follower side of a profile is always a pure plan.
using FollowerPureStrategy = PureStrategy;

// Per-leader-infoset probability vectors, indexed by dense leader infoset id.
// An empty inner vector means "undefined here"; evaluation fails only if such
// an infoset is actually reached with positive probability.
struct LeaderBehaviorStrategy {
  std::vector<std::vector<double>> probs;
};

// Immutable two-player extensive-form game tree with information sets.
// Construct through GameBuilder. States and terminals share one dense id
// space assigned in insertion order; infoset ids are dense per player.
class ExtensiveGame {
 public:
  StateId Root() const { return root_; }
  int NumNodes() const { return static_cast<int>(nodes_.size()); }
  int NumDecisionStates() const { return num_decision_states_; }
  int NumTerminals() const { return NumNodes() - num_decision_states_; }

  bool IsTerminal(StateId s) const { return nodes_[s].terminal; }
  Player Owner(StateId s) const { return nodes_[s].owner; }
  InfosetId Infoset(StateId s) const { return nodes_[s].infoset; }
  int NumActions(StateId s) const { return nodes_[s].num_actions; }
  StateId Child(StateId s, ActionId a) const {
    return children_[nodes_[s].first_child + a];
  }
  Utilities TerminalUtility(StateId s) const {
    return {nodes_[s].u_leader, nodes_[s].u_follower};
  }
  StateId Parent(StateId s) const { return nodes_[s].parent; }
  ActionId IncomingAction(StateId s) const { return nodes_[s].parent_action; }

  int NumInfosets(Player p) const {
    return static_cast<int>(infosets_[PlayerIndex(p)].size());
  }
  const std::vector<StateId>& InfosetMembers(Player p, InfosetId i) const {
    return infosets_[PlayerIndex(p)][i].members;
  }
  int InfosetNumActions(Player p, InfosetId i) const {
    return infosets_[PlayerIndex(p)][i].num_actions;
  }
  // Number of own moves made before reaching the infoset.
  int InfosetDepth(Player p, InfosetId i) const {
    return infosets_[PlayerIndex(p)][i].depth;
  }
  const std::vector<std::string>& ActionLabels(Player p, InfosetId i) const {
    return infosets_[PlayerIndex(p)][i].action_labels;
  }

  double MinLeaderUtility() const { return min_leader_utility_; }
  double MaxLeaderUtility() const { return max_leader_utility_; }

  // The owner's (infoset, action) history on the path from the root to s,
  // excluding s itself.
  std::vector<std::pair<InfosetId, ActionId>> OwnerHistory(StateId s,
                                                           Player p) const;

  // Diagnostics recorded while building, surfaced by ValidateGame.
  const std::vector<std::string>& BuildDiagnostics() const {
    return build_diagnostics_;
  }

 private:
  friend class GameBuilder;

  struct Node {
    bool terminal = false;
    Player owner = Player::kLeader;
    InfosetId infoset = -1;
    int first_child = 0;
    int num_actions = 0;
    double u_leader = 0.0;
    double u_follower = 0.0;
    StateId parent = kNoState;
    ActionId parent_action = -1;
  };

  struct InfosetInfo {
    std::vector<StateId> members;
    int num_actions = 0;
    int depth = 0;
    std::vector<std::string> action_labels;
  };

  StateId root_ = kNoState;
  int num_decision_states_ = 0;
  std::vector<Node> nodes_;
  std::vector<StateId> children_;
  std::vector<InfosetInfo> infosets_[2];
  double min_leader_utility_ = 0.0;
  double max_leader_utility_ = 0.0;
  std::vector<std::string> build_diagnostics_;
};

// Incremental construction. Deliberately lenient: structural problems are
// recorded as diagnostics so ValidateGame can report them as violations
// instead of failing the build.
class GameBuilder {
 public:
  StateId AddState(Player owner, InfosetId infoset);
  StateId AddTerminal(double u_leader, double u_follower);
  // Actions are appended in call order; `next` may be any already or not yet
  // added id (resolved at Build).
  void AddAction(StateId state, StateId next, std::string label = "");
  void SetRoot(StateId root) { root_ = root; }

  ExtensiveGame Build();

 private:
  struct PendingState {
    bool terminal;
    Player owner;
    InfosetId infoset;
    double u_leader, u_follower;
    std::vector<StateId> next;
    std::vector<std::string> labels;
  };
  StateId root_ = kNoState;
  std::vector<PendingState> pending_;
};

// Checks all ExtensiveGame invariants, including perfect recall for both
// players. Returns human-readable violations; empty means well-formed.
std::vector<std::string> ValidateGame(const ExtensiveGame& game);

// Checks that `plan` is a valid restricted realization plan for `player`:
// legal actions, domain equal to the set of infosets reachable given the
// plan's own earlier choices.
std::vector<std::string> ValidateRestrictedPlan(const ExtensiveGame& game,
                                                Player player,
                                                const PureStrategy& plan);

// Exact expected utilities of the (behavior leader, pure follower) profile.
// Throws std::runtime_error naming the infoset if a leader infoset reached
// with positive probability has no probability vector.
Utilities ExpectedUtilities(const ExtensiveGame& game,
                            const LeaderBehaviorStrategy& leader,
                            const PureStrategy& follower);

// Expected utilities conditional on reaching `leader_infoset` and playing
// `forced_action` there, the rest of the profile unchanged. Conditioning is
// reach-weighted over the infoset's states consistent with the follower
// plan; if no leader probability mass reaches the infoset but it is still
// follower-consistent, states are weighted uniformly (structurally reachable
// zero-probability branches must stay assessable). Returns nullopt when no
// member state is consistent with the follower plan.
std::optional<Utilities> ConditionalExpectedUtilities(
    const ExtensiveGame& game, const LeaderBehaviorStrategy& leader,
    const PureStrategy& follower, InfosetId leader_infoset,
    ActionId forced_action);

namespace internal {
// ConditionalExpectedUtilities with the follower-consistency flags already
// computed; lets per-pass callers share one scan across many conditionals.
std::optional<Utilities> ConditionalWithFilter(
    const ExtensiveGame& game, const LeaderBehaviorStrategy& leader,
    const PureStrategy& follower, InfosetId leader_infoset,
    ActionId forced_action, const std::vector<char>& follower_consistent);
}  // namespace internal

// Lazily enumerates every restricted pure realization plan of `player`,
// each exactly once.
class PureStrategyEnumerator {
 public:
  PureStrategyEnumerator(const ExtensiveGame& game, Player player);
  std::optional<PureStrategy> Next();

 private:
  struct Frame {
    PureStrategy plan;
    InfosetId infoset;  // infoset being branched, -1 for a leaf frame
    int next_action;
    int num_actions;
  };
  // Undecided infosets reachable under `plan` (lowest id first), or empty.
  std::vector<InfosetId> ReachableUndecided(const PureStrategy& plan) const;

  const ExtensiveGame& game_;
  Player player_;
  std::vector<Frame> stack_;
};

// Convenience: total number of restricted plans (enumerates; guard caps work).
long long CountPureStrategies(const ExtensiveGame& game, Player player,
                              long long guard = 10'000'000);

// Per-state flags: 1 iff every `player` move on the root path is consistent
// with `plan` (moves at infosets missing from the plan count as inconsistent).
std::vector<char> ConsistentWithPlan(const ExtensiveGame& game, Player player,
                                     const PureStrategy& plan);

// Deterministic behavior strategy playing `plan`'s choices with probability 1
// (uniform elsewhere; those infosets are unreachable under the plan).
LeaderBehaviorStrategy PureToBehavior(const ExtensiveGame& game,
                                      const PureStrategy& leader_plan);

// Kuhn conversion of a mixture over leader pure plans into a realization-
// equivalent behavior strategy.
LeaderBehaviorStrategy MixedToBehavior(
    const ExtensiveGame& game,
    const std::vector<std::pair<PureStrategy, double>>& mixture);

}  // namespace sgs

#endif  // SGS_EFG_H_
