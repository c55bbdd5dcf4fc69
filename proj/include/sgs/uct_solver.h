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

#ifndef SGS_UCT_SOLVER_H_
#define SGS_UCT_SOLVER_H_

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "sgs/afg.h"
#include "sgs/efg.h"
#include "sgs/leader_oracle.h"

namespace sgs {

inline constexpr double kDefaultExplorationC = 1.4142135623730951;  // sqrt(2)

struct SamplerConfig {
  double exploration_c = kDefaultExplorationC;
  long long iterations = 1000;
  uint64_t seed = 0;
  // Normalization bounds for backpropagated leader payoffs; defaults to the
  // game's min/max leader terminal utility.
  std::optional<std::pair<double, double>> utility_bounds;
  LeaderOracleLimits oracle;
  std::optional<double> time_limit_s;
  // Keep every per-leaf oracle result on the SseResult (audit support).
  bool collect_solves = false;
};

// One solved AFG leaf: the sampled plan and the oracle's strategy for it.
struct SolvedLeaf {
  PureStrategy follower;
  bool feasible = false;
  LeaderBehaviorStrategy leader;
  double leader_payoff = 0.0;
};

// Search statistics over one AFG state.
struct UctNode {
  AfgState state;
  long long visits = 0;
  double value_sum = 0.0;  // of normalized leader payoffs
  bool expanded = false;
  std::vector<std::unique_ptr<UctNode>> children;  // indexed by action
};

// UCB1 pick among the children of an expanded node: unvisited children are
// taken first (lowest action id); otherwise argmax of
// mean + c * sqrt(ln(parent visits) / child visits), ties to the lowest id.
ActionId SelectAction(const UctNode& node, double exploration_c);

// visits += 1 and value_sum += normalized leader payoff, clamped to [0, 1],
// on every node of the path.
void Backpropagate(const std::vector<UctNode*>& path, double leader_payoff,
                   double u_min, double u_max);

struct SseResult {
  bool found = false;  // at least one feasible profile was produced
  LeaderBehaviorStrategy leader;
  PureStrategy follower;
  double leader_payoff = 0.0;  // vs `follower`, the sampled best response
  long long iterations_run = 0;
  long long root_visits = 0;  // equals iterations_run by construction
  long long distinct_leaves = 0;
  bool timed_out = false;
  std::vector<SolvedLeaf> solved_leaves;  // only with collect_solves
};

// Full solver loop: UCT-guided sampling of follower plans over the AFG, a
// leader-oracle solve per sampled plan, leader payoffs backpropagated into
// the sampling tree. Returns the feasible profile with the highest leader
// payoff seen across all iterations. Repeated samples of one leaf reuse the
// cached oracle result for that plan.
SseResult RunUctSampler(const ExtensiveGame& game, const SamplerConfig& config);

}  // namespace sgs

#endif  // SGS_UCT_SOLVER_H_
