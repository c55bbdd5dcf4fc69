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

#ifndef SGS_GAME_SUITE_H_
#define SGS_GAME_SUITE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sgs/efg.h"
#include "sgs/rng.h"

namespace sgs {

// Interception games on graphs. The defender (leader) and the attacker
// (follower) alternate moves each round, defender first, which models
// simultaneous movement: neither player observes the opponent, information
// sets are built from own move history only. A round ends after the
// attacker's move; the game terminates on interception (shared vertex, or a
// swap along one edge), on the attacker ending a round on a target, or after
// `horizon` rounds.
enum class GameFamily { kWhg, kWnz, kSeg };

std::string FamilyName(GameFamily family);
GameFamily FamilyFromName(const std::string& name);

struct Graph {
  int num_vertices = 0;
  std::vector<std::vector<int>> out;  // ascending neighbor lists
};

// 4-neighborhood grid; both directions of every edge are present.
Graph GridGraph(int rows, int cols);

// The fixed 14-vertex directed search-game graph: an attacker entry vertex,
// one intermediate vertex, three 4-vertex rows ending in target vertices,
// with bidirectional cross links between the rows except at the middle
// column (which feeds the center row one-way).
Graph SegGraph();
inline constexpr int kSegEntryVertex = 0;
inline constexpr int kSegDefaultDefenderStart = 7;  // center-row middle
inline const std::vector<int> kSegTargets = {5, 9, 13};

struct PayoffTable {
  // Indexed by vertex: payoffs applied when the attacker is intercepted there.
  std::vector<double> attacker_caught_penalty;
  std::vector<double> defender_catch_reward;
  // Per target vertex: payoffs of a successful attack.
  std::map<int, double> attacker_attack_reward;
  std::map<int, double> defender_attack_penalty;
  Utilities timeout;  // payoffs when the round limit is reached
};

PayoffTable SampleWnzPayoffs(Rng& rng, const Graph& graph,
                             const std::vector<int>& targets);
PayoffTable SampleSegPayoffs(Rng& rng, const Graph& graph,
                             const std::vector<int>& targets);
// Near-zero-sum variant: defender side is the negated attacker payoff plus
// uniform noise in [-0.1, 0.1].
PayoffTable SampleWhgPayoffs(Rng& rng, const Graph& graph,
                             const std::vector<int>& targets);

struct GraphGameDescriptor {
  GameFamily family = GameFamily::kWnz;
  Graph graph;
  int grid_rows = 0;  // nonzero iff graph is a grid
  int grid_cols = 0;
  int defender_start = 0;
  int attacker_start = 0;
  std::vector<int> targets;
  int horizon = 1;
  bool attacker_can_wait = true;
  std::optional<PayoffTable> payoffs;  // sampled from `seed` when absent
  uint64_t seed = 0;
};

// Grid descriptor with default 4x4 board, opposite-corner starts and three
// seeded target vertices.
GraphGameDescriptor MakeGridDescriptor(GameFamily family, int rows, int cols,
                                       int horizon, uint64_t seed);
GraphGameDescriptor MakeSegDescriptor(int horizon, bool attacker_can_wait,
                                      uint64_t seed);

// Empty iff all descriptor invariants hold; entries name the offending field.
std::vector<std::string> ValidateDescriptor(const GraphGameDescriptor& d);

// Payoff-range check against the family's declared distributions.
std::vector<std::string> ValidatePayoffTable(GameFamily family,
                                             const PayoffTable& table,
                                             const Graph& graph,
                                             const std::vector<int>& targets);

// Deterministic given (descriptor, seed). Throws std::invalid_argument with
// the field name on invariant violations. Output passes ValidateGame.
ExtensiveGame GenerateGame(const GraphGameDescriptor& d);

// Payoff table actually used for a descriptor (explicit or seeded sample).
PayoffTable ResolvePayoffs(const GraphGameDescriptor& d);

nlohmann::json DescriptorToJson(const GraphGameDescriptor& d);
GraphGameDescriptor DescriptorFromJson(const nlohmann::json& j);

}  // namespace sgs

#endif  // SGS_GAME_SUITE_H_
