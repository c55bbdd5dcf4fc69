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

#include "sgs/harness.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sgs/exact_baseline.h"
#include "sgs/rng.h"

namespace sgs {

using nlohmann::json;

WorstCaseResult EvaluateVsWorstCase(const ExtensiveGame& game,
                                    const LeaderBehaviorStrategy& leader,
                                    double eps_tie, long long guard) {
  struct Candidate {
    PureStrategy plan;
    Utilities value;
  };
  std::vector<Candidate> candidates;
  double best_follower = -std::numeric_limits<double>::infinity();
  long long count = 0;
  PureStrategyEnumerator it(game, Player::kFollower);
  while (auto plan = it.Next()) {
    if (++count > guard) {
      throw std::runtime_error("EvaluateVsWorstCase: enumeration guard exceeded");
    }
    Utilities value = ExpectedUtilities(game, leader, *plan);
    best_follower = std::max(best_follower, value.follower);
    candidates.push_back({std::move(*plan), value});
  }
  if (candidates.empty()) {
    throw std::runtime_error("EvaluateVsWorstCase: game has no follower plan");
  }
  WorstCaseResult result;
  double best_leader = -std::numeric_limits<double>::infinity();
  for (Candidate& candidate : candidates) {
    if (candidate.value.follower < best_follower - eps_tie) continue;
    if (candidate.value.leader > best_leader) {
      best_leader = candidate.value.leader;
      result.leader_payoff = candidate.value.leader;
      result.follower_payoff = candidate.value.follower;
      result.follower = std::move(candidate.plan);
    }
  }
  return result;
}

long long Bucket(long long node_count) {
  if (node_count < 1) {
    throw std::invalid_argument("Bucket: node count must be >= 1");
  }
  long long bucket = 1;
  for (int k = 0;; ++k) {
    double upper = std::pow(10.0, k + 0.5);
    if (static_cast<double>(node_count) < upper) return bucket;
    bucket *= 10;
  }
}

json RecordToJson(const RunRecord& record) {
  json j;
  j["game"] = record.game;
  j["solver"] = record.solver;
  j["seed"] = record.seed;
  if (record.leader_payoff.has_value()) {
    j["leader_payoff"] = *record.leader_payoff;
  }
  j["wall_time_s"] = record.wall_time_s;
  j["node_count"] = record.node_count;
  j["bucket"] = record.bucket;
  j["status"] = record.status;
  return j;
}

RunRecord RecordFromJson(const json& j) {
  RunRecord record;
  record.game = j.at("game");
  record.solver = j.at("solver").get<std::string>();
  record.seed = j.at("seed").get<uint64_t>();
  if (j.contains("leader_payoff")) {
    record.leader_payoff = j.at("leader_payoff").get<double>();
  }
  record.wall_time_s = j.at("wall_time_s").get<double>();
  record.node_count = j.at("node_count").get<long long>();
  record.bucket = j.at("bucket").get<long long>();
  record.status = j.at("status").get<std::string>();
  return record;
}

namespace {

SamplerConfig SamplerConfigFromJson(const json& j) {
  SamplerConfig config;
  config.exploration_c = j.value("exploration_c", kDefaultExplorationC);
  config.iterations = j.value("iterations", int64_t{1000});
  config.oracle.l_max = j.value("l_max", config.oracle.l_max);
  config.oracle.eps_improve = j.value("eps_improve", config.oracle.eps_improve);
  config.oracle.window = j.value("window", config.oracle.window);
  config.oracle.m_max = j.value("m_max", config.oracle.m_max);
  config.oracle.eps_oracle = j.value("eps_oracle", config.oracle.eps_oracle);
  config.oracle.expand_prob = j.value("expand_prob", config.oracle.expand_prob);
  config.oracle.init_budget = j.value("init_budget", config.oracle.init_budget);
  config.oracle.cache_capacity =
      j.value("cache_capacity", config.oracle.cache_capacity);
  return config;
}

}  // namespace

CampaignConfig CampaignConfigFromJson(const json& j) {
  CampaignConfig config;
  for (const json& g : j.at("games")) {
    config.games.push_back(DescriptorFromJson(g));
  }
  config.solvers = j.at("solvers").get<std::vector<std::string>>();
  config.trials = j.value("trials", 1);
  config.base_seed = j.value("base_seed", uint64_t{0});
  if (j.contains("time_limit_s")) {
    config.time_limit_s = j.at("time_limit_s").get<double>();
  }
  if (j.contains("uct")) config.sampler = SamplerConfigFromJson(j.at("uct"));
  return config;
}

namespace {

RunRecord RunJob(const CampaignConfig& config, const GraphGameDescriptor& d,
                 const std::string& solver, uint64_t seed) {
  RunRecord record;
  record.game = DescriptorToJson(d);
  record.solver = solver;
  record.seed = seed;
  auto start = std::chrono::steady_clock::now();
  auto elapsed = [&start]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };
  try {
    ExtensiveGame game = GenerateGame(d);
    record.node_count = game.NumNodes();
    record.bucket = Bucket(record.node_count);
    if (solver == "uct") {
      SamplerConfig sampler = config.sampler;
      sampler.seed = seed;
      sampler.time_limit_s = config.time_limit_s;
      SseResult res = RunUctSampler(game, sampler);
      if (res.timed_out) {
        record.status = "timeout";
      } else if (!res.found) {
        record.status = "infeasible";
      } else {
        record.status = "ok";
        record.leader_payoff =
            EvaluateVsWorstCase(game, res.leader, sampler.oracle.eps_oracle)
                .leader_payoff;
      }
    } else if (solver == "exact") {
      InducedNormalForm nf = InduceNormalForm(game);
      SseSolution sse = SolveSse(nf);
      LeaderBehaviorStrategy behavior = SseLeaderBehavior(game, nf, sse);
      record.leader_payoff =
          EvaluateVsWorstCase(game, behavior,
                              config.sampler.oracle.eps_oracle)
              .leader_payoff;
      record.status = "ok";
      if (config.time_limit_s.has_value() && elapsed() > *config.time_limit_s) {
        record.status = "timeout";
        record.leader_payoff.reset();
      }
    } else {
      throw std::invalid_argument("unknown solver '" + solver + "'");
    }
  } catch (const std::exception&) {
    record.status = "error";
    record.leader_payoff.reset();
  }
  record.wall_time_s = elapsed();
  return record;
}

}  // namespace

std::string SummarizeRecords(const std::vector<RunRecord>& records,
                             std::optional<double> time_limit_s) {
  struct Agg {
    double payoff_sum = 0.0;
    long long solved = 0;
    double time_sum = 0.0;
    long long total = 0;
  };
  std::map<std::pair<long long, std::string>, Agg> groups;
  for (const RunRecord& record : records) {
    Agg& agg = groups[{record.bucket, record.solver}];
    ++agg.total;
    if (record.status == "ok" && record.leader_payoff.has_value()) {
      ++agg.solved;
      agg.payoff_sum += *record.leader_payoff;
    }
    if (record.status == "timeout" && time_limit_s.has_value()) {
      agg.time_sum += *time_limit_s;
    } else {
      agg.time_sum += record.wall_time_s;
    }
  }
  std::ostringstream out;
  out.precision(17);  // aggregates must survive re-parsing losslessly
  out << "bucket,solver,mean_payoff,mean_time_s,solved_fraction,runs\n";
  for (const auto& [key, agg] : groups) {
    out << key.first << "," << key.second << ",";
    if (agg.solved > 0) {
      out << agg.payoff_sum / static_cast<double>(agg.solved);
    }
    out << "," << agg.time_sum / static_cast<double>(agg.total) << ","
        << static_cast<double>(agg.solved) / static_cast<double>(agg.total)
        << "," << agg.total << "\n";
  }
  return out.str();
}

int WorkerCountFromEnv() {
  const char* env = std::getenv("SGS_WORKERS");
  if (env != nullptr) {
    int workers = std::atoi(env);
    if (workers > 0) return workers;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

CampaignResult RunCampaign(const CampaignConfig& config, int workers) {
  if (workers <= 0) workers = WorkerCountFromEnv();

  struct Job {
    const GraphGameDescriptor* game;
    const std::string* solver;
    uint64_t seed;
  };
  std::vector<Job> jobs;
  uint64_t job_index = 0;
  for (const GraphGameDescriptor& d : config.games) {
    for (const std::string& solver : config.solvers) {
      for (int trial = 0; trial < config.trials; ++trial) {
        jobs.push_back({&d, &solver, MixSeed(config.base_seed, job_index)});
        ++job_index;
      }
    }
  }

  CampaignResult result;
  result.records.resize(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t index = next.fetch_add(1);
      if (index >= jobs.size()) return;
      const Job& job = jobs[index];
      result.records[index] =
          RunJob(config, *job.game, *job.solver, job.seed);
    }
  };
  int thread_count = std::min<int>(workers, static_cast<int>(jobs.size()));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  result.summary_csv = SummarizeRecords(result.records, config.time_limit_s);
  return result;
}

}  // namespace sgs
