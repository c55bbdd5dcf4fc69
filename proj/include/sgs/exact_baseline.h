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

#ifndef SGS_EXACT_BASELINE_H_
#define SGS_EXACT_BASELINE_H_

#include <vector>

#include "sgs/efg.h"

namespace sgs {

// Desk-scale exact reference: the game's induced normal form over both
// players' pure realization plans.
struct InducedNormalForm {
  std::vector<PureStrategy> leader_strategies;    // rows
  std::vector<PureStrategy> follower_strategies;  // columns
  std::vector<std::vector<double>> u_leader;      // rows x columns
  std::vector<std::vector<double>> u_follower;
};

// Exact matrices via pure-profile evaluation. Throws when rows x columns
// would exceed `guard` (use property-based checks for games that large).
InducedNormalForm InduceNormalForm(const ExtensiveGame& game,
                                   long long guard = 1'000'000);

// Linear program in the form: maximize objective . x subject to
// a_ub x <= b_ub, a_eq x = b_eq, x >= 0.
struct LpProblem {
  std::vector<double> objective;
  std::vector<std::vector<double>> a_ub;
  std::vector<double> b_ub;
  std::vector<std::vector<double>> a_eq;
  std::vector<double> b_eq;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
};

// Two-phase dense simplex with Bland's rule, tolerance 1e-9.
LpResult SimplexSolve(const LpProblem& lp);

struct SseSolution {
  std::vector<double> leader_mixed;  // over normal-form rows
  int follower_column = -1;
  double leader_value = 0.0;
};

// Multiple-LP strong Stackelberg equilibrium: per follower column, maximize
// the leader's payoff subject to that column being a follower best response;
// the best feasible column wins (which is exactly the leader-favorable tie
// break). Throws std::runtime_error naming the column on numerical failure.
SseSolution SolveSse(const InducedNormalForm& nf);

// Leader's maximin value of the induced normal form (LP with a free value
// variable). On zero-sum games this equals the SSE value.
double MaximinValue(const InducedNormalForm& nf);

// Realization-equivalent behavior strategy of the SSE leader mixture.
LeaderBehaviorStrategy SseLeaderBehavior(const ExtensiveGame& game,
                                         const InducedNormalForm& nf,
                                         const SseSolution& solution);

}  // namespace sgs

#endif  // SGS_EXACT_BASELINE_H_
