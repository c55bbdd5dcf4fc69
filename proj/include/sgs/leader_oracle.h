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

#ifndef SGS_LEADER_ORACLE_H_
#define SGS_LEADER_ORACLE_H_

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "sgs/efg.h"
#include "sgs/follower_oracle.h"
#include "sgs/rng.h"

namespace sgs {

// Steering parameters. Defaults are the standard operating constants; all of
// them are surfaced on the CLI.
struct LeaderOracleLimits {
  int l_max = 5000;           // max positive passes per solve
  double eps_improve = 1e-5;  // minimal payoff improvement per window
  int window = 500;           // improvement window, in positive passes
  int m_max = 10000;          // max consecutive feasibility passes
  double eps_oracle = 1e-2;   // follower better-response margin
  double expand_prob = 0.3;   // chance of tracking one more move per node
  int init_budget = 100;      // UCT playouts for the initial chain
  int cache_capacity = 50;    // follower-oracle cache size
};

enum class StopDecision { kContinue, kStop, kInfeasible };

struct StopCounters {
  long long positive_passes = 0;
  long long consecutive_feasibility_passes = 0;
};

// Stop once positive passes exceed l_max or the best payoff improved by less
// than eps_improve over the last `window` positive passes; declare the
// requested strategy infeasible once consecutive feasibility passes exceed
// m_max. `best_history` holds the best feasible payoff after each positive-
// pass iteration.
StopDecision CheckStop(const StopCounters& counters,
                       const std::vector<double>& best_history,
                       const LeaderOracleLimits& limits);

// One node of the leader's behavior-strategy tree. Only the moves in
// `moves` are tracked; untracked moves carry implicit probability zero.
// Children are keyed by (move, next leader infoset): one move may lead to
// several infosets depending on the follower's responses.
struct StrategyTreeNode {
  InfosetId infoset = -1;
  std::vector<ActionId> moves;
  std::vector<double> prob;
  std::vector<double> momentum;
  double weight = 0.0;
  std::map<std::pair<ActionId, InfosetId>, std::unique_ptr<StrategyTreeNode>>
      children;

  // Probability of a move in the full action space of the infoset.
  std::vector<double> DenseRow(int num_actions) const;
};

// With perfect recall each leader infoset has a unique own history, so it
// appears in at most one tree node; `index` maps infosets to their nodes.
struct StrategyTree {
  std::map<InfosetId, std::unique_ptr<StrategyTreeNode>> roots;
  std::map<InfosetId, StrategyTreeNode*> index;

  StrategyTreeNode* Find(InfosetId infoset) const;
};

// Momentum update: mom += as; w += L1(as); prob <- max(prob + mom/w, 0)
// componentwise (prob unchanged while w == 0); then normalize to sum 1, or
// fall back to uniform when every entry is zero.
void AdjustNode(StrategyTreeNode& node, const std::vector<double>& assessment);

// Dense behavior strategy: tracked moves keep their tree probability,
// untracked moves get 0; infosets without a node play uniformly (they carry
// no reach against strategies the tree was shaped by, but the export must
// define every infoset).
LeaderBehaviorStrategy ExportBehavior(const ExtensiveGame& game,
                                      const StrategyTree& tree);

enum class PassKind { kFeasibility, kPositive };

// Assessment of one node's tracked moves for the positive pass: conditional
// leader value of forcing each move minus the node's current mixed value.
// Nodes unreachable against the requested plan assess to zero.
std::vector<double> AssessmentPositive(const ExtensiveGame& game,
                                       const LeaderBehaviorStrategy& leader,
                                       const PureStrategy& requested,
                                       const StrategyTreeNode& node);

// Feasibility-pass assessment. Where the node is reachable against both
// plans: (follower value of the move vs requested - vs better), centered by
// the same difference of the node's mixed values. Where it is reachable only
// against the better response, moves that hurt the better response score
// positively.
std::vector<double> AssessmentFeasibility(const ExtensiveGame& game,
                                          const LeaderBehaviorStrategy& leader,
                                          const PureStrategy& requested,
                                          const PureStrategy& better,
                                          const StrategyTreeNode& node);

struct LeaderSolveResult {
  bool feasible = false;
  bool timed_out = false;
  LeaderBehaviorStrategy strategy;
  double leader_payoff = 0.0;  // vs the requested plan, when feasible
  long long positive_passes = 0;
  long long feasibility_passes = 0;
  OracleStats oracle_stats;
};

// Finds a leader behavior strategy for which the requested follower plan is
// a best response (within eps_oracle, ties leader-favorable), maximizing the
// leader's payoff, by alternating feasibility and positive passes over a
// strategy tree.
class LeaderOracle {
 public:
  using Deadline = std::chrono::steady_clock::time_point;

  LeaderOracle(const ExtensiveGame& game, const LeaderOracleLimits& limits,
               uint64_t seed);

  LeaderSolveResult Solve(const PureStrategy& requested);

  void set_deadline(std::optional<Deadline> deadline) { deadline_ = deadline; }

  // Exposed for tests.
  StrategyTree Initialize(const PureStrategy& requested, int budget);
  void AdjustTree(StrategyTree& tree, PassKind kind,
                  const PureStrategy& requested, const PureStrategy* better);
  // Infosets adjusted by the last AdjustTree call, in adjustment order.
  const std::vector<InfosetId>& last_adjust_order() const {
    return adjust_order_;
  }

 private:
  struct PassContext;

  void AdjustRecursive(StrategyTreeNode& node, PassContext& ctx);
  StrategyTreeNode* EnsureChild(StrategyTreeNode& parent, ActionId move,
                                InfosetId next, PassContext& ctx);
  std::unique_ptr<StrategyTreeNode> BuildChain(InfosetId infoset,
                                               PassContext& ctx);
  std::vector<InfosetId> NextLeaderInfosets(
      InfosetId infoset, ActionId move, const std::vector<char>& consistent) const;
  std::vector<InfosetId> InitialLeaderInfosets(
      const std::vector<char>& consistent) const;

  const ExtensiveGame& game_;
  LeaderOracleLimits limits_;
  Rng rng_;
  std::optional<Deadline> deadline_;
  std::vector<InfosetId> adjust_order_;
};

}  // namespace sgs

#endif  // SGS_LEADER_ORACLE_H_
