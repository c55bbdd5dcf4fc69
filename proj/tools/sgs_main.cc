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

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sgs/efg.h"
#include "sgs/exact_baseline.h"
#include "sgs/game_io.h"
#include "sgs/game_suite.h"
#include "sgs/harness.h"
#include "sgs/uct_solver.h"

namespace {

using nlohmann::json;

struct GameInput {
  std::string game_file;
  std::string descriptor_file;

  void Attach(CLI::App* cmd) {
    auto* game_opt = cmd->add_option("--game", game_file,
                                     "explicit game JSON file");
    auto* desc_opt = cmd->add_option("--descriptor", descriptor_file,
                                     "game descriptor JSON file");
    game_opt->excludes(desc_opt);
  }

  sgs::ExtensiveGame Load(json* descriptor_out = nullptr) const {
    if (!game_file.empty()) {
      if (descriptor_out != nullptr) {
        *descriptor_out = json{{"file", game_file}};
      }
      return sgs::LoadGameFile(game_file);
    }
    if (descriptor_file.empty()) {
      throw CLI::ValidationError("provide --game or --descriptor");
    }
    json j = sgs::ReadJsonFile(descriptor_file);
    if (descriptor_out != nullptr) *descriptor_out = j;
    return sgs::GenerateGame(sgs::DescriptorFromJson(j));
  }
};

void EmitResult(const json& result, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << result.dump(2) << "\n";
  } else {
    sgs::WriteJsonFile(result, out_file);
  }
}

json SolveResultJson(const std::string& solver, const json& descriptor,
                     const sgs::ExtensiveGame& game, const std::string& status,
                     const std::optional<sgs::WorstCaseResult>& eval,
                     const sgs::LeaderBehaviorStrategy& strategy,
                     double wall_time_s, uint64_t seed) {
  json result;
  result["solver"] = solver;
  result["game"] = descriptor;
  result["seed"] = seed;
  result["status"] = status;
  result["node_count"] = game.NumNodes();
  result["bucket"] = sgs::Bucket(game.NumNodes());
  result["wall_time_s"] = wall_time_s;
  if (eval.has_value()) {
    result["leader_payoff"] = eval->leader_payoff;
    result["follower_payoff"] = eval->follower_payoff;
    result["follower_response"] = sgs::PureStrategyToJson(eval->follower);
    result.update(sgs::LeaderStrategyToJson(strategy));
  }
  return result;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stackelberg equilibrium solver for extensive-form games"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand(
      "generate", "materialize a benchmark descriptor into game files");
  std::string gen_family = "wnz";
  int gen_rows = 4, gen_cols = 4, gen_horizon = 3;
  bool gen_no_wait = false;
  uint64_t gen_seed = 0;
  std::string gen_from, gen_descriptor_out, gen_game_out;
  generate->add_option("--family", gen_family, "whg | wnz | seg");
  generate->add_option("--rows", gen_rows, "grid rows");
  generate->add_option("--cols", gen_cols, "grid cols");
  generate->add_option("--horizon", gen_horizon, "number of rounds");
  generate->add_flag("--no-wait", gen_no_wait, "forbid attacker waiting");
  generate->add_option("--seed", gen_seed, "generator seed");
  generate->add_option("--from", gen_from, "existing descriptor JSON file");
  generate->add_option("--descriptor-out", gen_descriptor_out,
                       "write the descriptor JSON here");
  generate->add_option("--game-out", gen_game_out,
                       "write the explicit game JSON here");

  // validate
  auto* validate = app.add_subcommand("validate", "check game invariants");
  GameInput validate_input;
  validate_input.Attach(validate);

  // solve
  auto* solve = app.add_subcommand("solve", "approximate the SSE by sampling");
  GameInput solve_input;
  solve_input.Attach(solve);
  sgs::SamplerConfig sampler;
  std::string solve_out;
  double solve_time_limit = 0.0;
  solve->add_option("--iterations", sampler.iterations, "sampling playouts");
  solve->add_option("--c", sampler.exploration_c, "UCT exploration constant");
  solve->add_option("--seed", sampler.seed, "random seed");
  solve->add_option("--Lmax", sampler.oracle.l_max, "max positive passes");
  solve->add_option("--eps-i", sampler.oracle.eps_improve,
                    "min improvement per window");
  solve->add_option("--window", sampler.oracle.window,
                    "improvement window (positive passes)");
  solve->add_option("--Mmax", sampler.oracle.m_max,
                    "max consecutive feasibility passes");
  solve->add_option("--eps-o", sampler.oracle.eps_oracle,
                    "follower better-response margin");
  solve->add_option("--expand-prob", sampler.oracle.expand_prob,
                    "strategy-tree expansion probability");
  solve->add_option("--init-budget", sampler.oracle.init_budget,
                    "UCT playouts for leader initialization");
  solve->add_option("--cache-size", sampler.oracle.cache_capacity,
                    "follower oracle cache capacity");
  solve->add_option("--time-limit", solve_time_limit, "seconds, 0 = none");
  solve->add_option("-o,--out", solve_out, "result JSON file");

  // exact
  auto* exact = app.add_subcommand("exact", "desk-scale exact SSE baseline");
  GameInput exact_input;
  exact_input.Attach(exact);
  std::string exact_out;
  exact->add_option("-o,--out", exact_out, "result JSON file");

  // eval
  auto* eval = app.add_subcommand(
      "eval", "evaluate a leader strategy against the worst-case follower");
  GameInput eval_input;
  eval_input.Attach(eval);
  std::string eval_strategy, eval_out;
  double eval_eps = sgs::kDefaultOracleEpsilon;
  eval->add_option("--strategy", eval_strategy, "leader strategy JSON file")
      ->required();
  eval->add_option("--eps-o", eval_eps, "tie-break margin");
  eval->add_option("-o,--out", eval_out, "result JSON file");

  // campaign
  auto* campaign = app.add_subcommand("campaign", "batch experiment driver");
  std::string campaign_config, campaign_records = "records.jsonl";
  std::string campaign_summary = "summary.csv";
  int campaign_workers = 0;
  campaign->add_option("--config", campaign_config, "campaign config JSON")
      ->required();
  campaign->add_option("--out-records", campaign_records,
                       "JSON-lines output path");
  campaign->add_option("--out-summary", campaign_summary, "CSV output path");
  campaign->add_option("--workers", campaign_workers,
                       "worker threads (default: SGS_WORKERS or hardware)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      sgs::GraphGameDescriptor d;
      if (!gen_from.empty()) {
        d = sgs::DescriptorFromJson(sgs::ReadJsonFile(gen_from));
      } else {
        sgs::GameFamily family = sgs::FamilyFromName(gen_family);
        if (family == sgs::GameFamily::kSeg) {
          d = sgs::MakeSegDescriptor(gen_horizon, !gen_no_wait, gen_seed);
        } else {
          d = sgs::MakeGridDescriptor(family, gen_rows, gen_cols, gen_horizon,
                                      gen_seed);
          d.attacker_can_wait = !gen_no_wait;
        }
      }
      if (!gen_descriptor_out.empty()) {
        sgs::WriteJsonFile(sgs::DescriptorToJson(d), gen_descriptor_out);
      }
      sgs::ExtensiveGame game = sgs::GenerateGame(d);
      if (!gen_game_out.empty()) sgs::SaveGameFile(game, gen_game_out);
      std::cout << "generated " << sgs::FamilyName(d.family) << " game: "
                << game.NumNodes() << " nodes, bucket "
                << sgs::Bucket(game.NumNodes()) << "\n";
    } else if (validate->parsed()) {
      sgs::ExtensiveGame game = validate_input.Load();
      std::vector<std::string> violations = sgs::ValidateGame(game);
      for (const std::string& v : violations) std::cout << v << "\n";
      if (!violations.empty()) return 1;
      std::cout << "ok: " << game.NumNodes() << " nodes\n";
    } else if (solve->parsed()) {
      json descriptor;
      sgs::ExtensiveGame game = solve_input.Load(&descriptor);
      if (solve_time_limit > 0) sampler.time_limit_s = solve_time_limit;
      auto start = std::chrono::steady_clock::now();
      sgs::SseResult res = sgs::RunUctSampler(game, sampler);
      double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      std::string status =
          res.timed_out ? "timeout" : (res.found ? "ok" : "infeasible");
      std::optional<sgs::WorstCaseResult> eval_result;
      if (res.found) {
        eval_result = sgs::EvaluateVsWorstCase(game, res.leader,
                                               sampler.oracle.eps_oracle);
      }
      json out = SolveResultJson("uct", descriptor, game, status, eval_result,
                                 res.leader, wall, sampler.seed);
      out["iterations_run"] = res.iterations_run;
      out["distinct_leaves"] = res.distinct_leaves;
      if (res.found) out["payoff_vs_sampled_response"] = res.leader_payoff;
      EmitResult(out, solve_out);
    } else if (exact->parsed()) {
      json descriptor;
      sgs::ExtensiveGame game = exact_input.Load(&descriptor);
      auto start = std::chrono::steady_clock::now();
      sgs::InducedNormalForm nf = sgs::InduceNormalForm(game);
      sgs::SseSolution sse = sgs::SolveSse(nf);
      sgs::LeaderBehaviorStrategy behavior =
          sgs::SseLeaderBehavior(game, nf, sse);
      double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      std::optional<sgs::WorstCaseResult> eval_result =
          sgs::EvaluateVsWorstCase(game, behavior);
      json out = SolveResultJson("exact", descriptor, game, "ok", eval_result,
                                 behavior, wall, 0);
      out["sse_value"] = sse.leader_value;
      EmitResult(out, exact_out);
    } else if (eval->parsed()) {
      sgs::ExtensiveGame game = eval_input.Load();
      sgs::LeaderBehaviorStrategy strategy =
          sgs::LeaderStrategyFromJson(sgs::ReadJsonFile(eval_strategy));
      sgs::WorstCaseResult res =
          sgs::EvaluateVsWorstCase(game, strategy, eval_eps);
      json out;
      out["leader_payoff"] = res.leader_payoff;
      out["follower_payoff"] = res.follower_payoff;
      out["follower_response"] = sgs::PureStrategyToJson(res.follower);
      EmitResult(out, eval_out);
    } else if (campaign->parsed()) {
      sgs::CampaignConfig config =
          sgs::CampaignConfigFromJson(sgs::ReadJsonFile(campaign_config));
      sgs::CampaignResult result =
          sgs::RunCampaign(config, campaign_workers);
      std::ofstream records(campaign_records);
      if (!records) throw std::runtime_error("cannot write " + campaign_records);
      for (const sgs::RunRecord& record : result.records) {
        records << sgs::RecordToJson(record).dump() << "\n";
      }
      std::ofstream summary(campaign_summary);
      if (!summary) throw std::runtime_error("cannot write " + campaign_summary);
      summary << result.summary_csv;
      std::cout << result.summary_csv;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
