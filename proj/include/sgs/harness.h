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

#ifndef SGS_HARNESS_H_
#define SGS_HARNESS_H_

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sgs/efg.h"
#include "sgs/game_suite.h"
#include "sgs/uct_solver.h"

namespace sgs {

struct WorstCaseResult {
  double leader_payoff = 0.0;
  double follower_payoff = 0.0;
  PureStrategy follower;
};

// Full-enumeration worst-case follower: the best response maximizing the
// follower's payoff; among responses within `eps_tie` of that maximum, the
// one maximizing the leader's payoff (strong-equilibrium tie break). Throws
// when more than `guard` plans would have to be enumerated.
WorstCaseResult EvaluateVsWorstCase(const ExtensiveGame& game,
                                    const LeaderBehaviorStrategy& leader,
                                    double eps_tie = kDefaultOracleEpsilon,
                                    long long guard = 1'000'000);

// 10^round(log10(node_count)) with round-half-up; games group by the order
// of magnitude of their node count.
long long Bucket(long long node_count);

struct RunRecord {
  nlohmann::json game;  // descriptor
  std::string solver;
  uint64_t seed = 0;
  std::optional<double> leader_payoff;  // present iff status == "ok"
  double wall_time_s = 0.0;
  long long node_count = 0;
  long long bucket = 0;
  std::string status;  // ok | timeout | infeasible | error
};

nlohmann::json RecordToJson(const RunRecord& record);
RunRecord RecordFromJson(const nlohmann::json& j);

struct CampaignConfig {
  std::vector<GraphGameDescriptor> games;
  std::vector<std::string> solvers;  // "uct" and/or "exact"
  int trials = 1;
  uint64_t base_seed = 0;
  std::optional<double> time_limit_s;
  SamplerConfig sampler;  // template; per-run seeds are derived
};

CampaignConfig CampaignConfigFromJson(const nlohmann::json& j);

struct CampaignResult {
  std::vector<RunRecord> records;  // one per (game, solver, trial), in order
  std::string summary_csv;
};

// Per-(bucket, solver) aggregation: mean payoff over solved runs, mean time
// with timeouts replaced by the time limit, and the solved fraction.
std::string SummarizeRecords(const std::vector<RunRecord>& records,
                             std::optional<double> time_limit_s);

// Runs every (game, solver, trial) job on a bounded worker pool. Results and
// derived seeds depend only on the config, never on scheduling. `workers`
// <= 0 reads SGS_WORKERS, defaulting to the hardware concurrency.
CampaignResult RunCampaign(const CampaignConfig& config, int workers = 0);

int WorkerCountFromEnv();

}  // namespace sgs

#endif  // SGS_HARNESS_H_
