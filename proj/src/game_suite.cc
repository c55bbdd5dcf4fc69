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

#include "sgs/game_suite.h"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sgs {

using nlohmann::json;

std::string FamilyName(GameFamily family) {
  switch (family) {
    case GameFamily::kWhg: return "whg";
    case GameFamily::kWnz: return "wnz";
    case GameFamily::kSeg: return "seg";
  }
  return "?";
}

GameFamily FamilyFromName(const std::string& name) {
  if (name == "whg") return GameFamily::kWhg;
  if (name == "wnz") return GameFamily::kWnz;
  if (name == "seg") return GameFamily::kSeg;
  throw std::invalid_argument("unknown game family '" + name + "'");
}

Graph GridGraph(int rows, int cols) {
  Graph g;
  g.num_vertices = rows * cols;
  g.out.resize(g.num_vertices);
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      std::vector<int>& out = g.out[id(r, c)];
      if (r > 0) out.push_back(id(r - 1, c));
      if (r + 1 < rows) out.push_back(id(r + 1, c));
      if (c > 0) out.push_back(id(r, c - 1));
      if (c + 1 < cols) out.push_back(id(r, c + 1));
      std::sort(out.begin(), out.end());
    }
  }
  return g;
}

Graph SegGraph() {
  // Vertex layout: 0 entry, 1 intermediate, rows (2,3,4,5), (6,7,8,9),
  // (10,11,12,13); 5/9/13 are the targets.
  Graph g;
  g.num_vertices = 14;
  g.out.resize(14);
  auto edge = [&g](int u, int v) { g.out[u].push_back(v); };
  edge(0, 1);
  edge(0, 2);
  edge(0, 6);
  edge(0, 10);
  edge(1, 2);
  edge(1, 6);
  edge(1, 10);
  // Rows toward the targets.
  edge(2, 3); edge(3, 4); edge(4, 5);
  edge(6, 7); edge(7, 8); edge(8, 9);
  edge(10, 11); edge(11, 12); edge(12, 13);
  // Cross links: first and third column both ways, middle column into the
  // center row only.
  edge(2, 6); edge(6, 2);
  edge(4, 8); edge(8, 4);
  edge(10, 6); edge(6, 10);
  edge(12, 8); edge(8, 12);
  edge(3, 7);
  edge(11, 7);
  for (auto& out : g.out) std::sort(out.begin(), out.end());
  return g;
}

PayoffTable SampleWnzPayoffs(Rng& rng, const Graph& graph,
                             const std::vector<int>& targets) {
  std::set<int> target_set(targets.begin(), targets.end());
  PayoffTable t;
  t.attacker_caught_penalty.resize(graph.num_vertices);
  t.defender_catch_reward.resize(graph.num_vertices);
  for (int v = 0; v < graph.num_vertices; ++v) {
    bool is_target = target_set.count(v) > 0;
    t.attacker_caught_penalty[v] =
        is_target ? rng.Uniform(-1.0, 0.2) : rng.Uniform(-1.0, 0.0);
    t.defender_catch_reward[v] = is_target ? 0.2 : 0.1;
  }
  for (int v : targets) {
    t.attacker_attack_reward[v] = rng.Uniform(-0.2, 1.0);
    t.defender_attack_penalty[v] = rng.Uniform(-1.0, 0.2);
  }
  t.timeout = {0.0, 0.0};
  return t;
}

PayoffTable SampleSegPayoffs(Rng& rng, const Graph& graph,
                             const std::vector<int>& targets) {
  PayoffTable t;
  t.attacker_caught_penalty.assign(graph.num_vertices, -1.0);
  t.defender_catch_reward.assign(graph.num_vertices, 1.0);
  for (int v : targets) {
    t.attacker_attack_reward[v] = rng.Uniform(1.0, 2.0);
    t.defender_attack_penalty[v] = -1.0;
  }
  t.timeout = {0.0, 0.0};
  return t;
}

PayoffTable SampleWhgPayoffs(Rng& rng, const Graph& graph,
                             const std::vector<int>& targets) {
  std::set<int> target_set(targets.begin(), targets.end());
  PayoffTable t;
  t.attacker_caught_penalty.resize(graph.num_vertices);
  t.defender_catch_reward.resize(graph.num_vertices);
  for (int v = 0; v < graph.num_vertices; ++v) {
    bool is_target = target_set.count(v) > 0;
    double penalty =
        is_target ? rng.Uniform(-1.0, 0.2) : rng.Uniform(-1.0, 0.0);
    t.attacker_caught_penalty[v] = penalty;
    t.defender_catch_reward[v] = -penalty + rng.Uniform(-0.1, 0.1);
  }
  for (int v : targets) {
    double reward = rng.Uniform(-0.2, 1.0);
    t.attacker_attack_reward[v] = reward;
    t.defender_attack_penalty[v] = -reward + rng.Uniform(-0.1, 0.1);
  }
  t.timeout = {0.0, 0.0};
  return t;
}

GraphGameDescriptor MakeGridDescriptor(GameFamily family, int rows, int cols,
                                       int horizon, uint64_t seed) {
  GraphGameDescriptor d;
  d.family = family;
  d.graph = GridGraph(rows, cols);
  d.grid_rows = rows;
  d.grid_cols = cols;
  d.attacker_start = 0;
  d.defender_start = (rows / 2) * cols + cols / 2;  // central patrol start
  d.horizon = horizon;
  d.attacker_can_wait = true;
  d.seed = seed;
  // Three seeded targets distinct from both starts.
  Rng rng(MixSeed(seed, 0x7a26));
  std::set<int> chosen;
  while (static_cast<int>(chosen.size()) < std::min(3, rows * cols - 2)) {
    int v = rng.NextInt(rows * cols);
    if (v == d.attacker_start || v == d.defender_start) continue;
    chosen.insert(v);
  }
  d.targets.assign(chosen.begin(), chosen.end());
  return d;
}

GraphGameDescriptor MakeSegDescriptor(int horizon, bool attacker_can_wait,
                                      uint64_t seed) {
  GraphGameDescriptor d;
  d.family = GameFamily::kSeg;
  d.graph = SegGraph();
  d.attacker_start = kSegEntryVertex;
  d.defender_start = kSegDefaultDefenderStart;
  d.targets = kSegTargets;
  d.horizon = horizon;
  d.attacker_can_wait = attacker_can_wait;
  d.seed = seed;
  return d;
}

std::vector<std::string> ValidatePayoffTable(GameFamily family,
                                             const PayoffTable& table,
                                             const Graph& graph,
                                             const std::vector<int>& targets) {
  std::vector<std::string> violations;
  auto check = [&violations](bool ok, const std::string& message) {
    if (!ok) violations.push_back(message);
  };
  check(static_cast<int>(table.attacker_caught_penalty.size()) ==
            graph.num_vertices &&
        static_cast<int>(table.defender_catch_reward.size()) ==
            graph.num_vertices,
        "payoffs: per-vertex table size mismatch");
  if (!violations.empty()) return violations;
  check(table.timeout.leader == 0.0 && table.timeout.follower == 0.0,
        "payoffs: timeout must be (0, 0)");
  std::set<int> target_set(targets.begin(), targets.end());
  for (int v : targets) {
    check(table.attacker_attack_reward.count(v) == 1 &&
              table.defender_attack_penalty.count(v) == 1,
          "payoffs: missing attack payoffs for target " + std::to_string(v));
  }
  if (!violations.empty()) return violations;

  auto in = [](double x, double lo, double hi) { return x >= lo && x <= hi; };
  for (int v = 0; v < graph.num_vertices; ++v) {
    bool is_target = target_set.count(v) > 0;
    double pen = table.attacker_caught_penalty[v];
    double rew = table.defender_catch_reward[v];
    switch (family) {
      case GameFamily::kWnz:
        check(in(pen, -1.0, is_target ? 0.2 : 0.0),
              "payoffs: attacker caught penalty out of range at vertex " +
                  std::to_string(v));
        check(rew == (is_target ? 0.2 : 0.1),
              "payoffs: defender catch reward must be fixed at vertex " +
                  std::to_string(v));
        break;
      case GameFamily::kWhg:
        check(in(pen, -1.0, is_target ? 0.2 : 0.0),
              "payoffs: attacker caught penalty out of range at vertex " +
                  std::to_string(v));
        check(in(rew, -pen - 0.1, -pen + 0.1),
              "payoffs: defender catch reward outside the near-zero-sum band "
              "at vertex " + std::to_string(v));
        break;
      case GameFamily::kSeg:
        check(pen == -1.0 && rew == 1.0,
              "payoffs: catch payoffs must be (1, -1) at vertex " +
                  std::to_string(v));
        break;
    }
  }
  for (int v : targets) {
    double rew = table.attacker_attack_reward.at(v);
    double pen = table.defender_attack_penalty.at(v);
    switch (family) {
      case GameFamily::kWnz:
        check(in(rew, -0.2, 1.0), "payoffs: attacker attack reward out of "
                                  "range at target " + std::to_string(v));
        check(in(pen, -1.0, 0.2), "payoffs: defender attack penalty out of "
                                  "range at target " + std::to_string(v));
        break;
      case GameFamily::kWhg:
        check(in(rew, -0.2, 1.0), "payoffs: attacker attack reward out of "
                                  "range at target " + std::to_string(v));
        check(in(pen, -rew - 0.1, -rew + 0.1),
              "payoffs: defender attack penalty outside the near-zero-sum "
              "band at target " + std::to_string(v));
        break;
      case GameFamily::kSeg:
        check(in(rew, 1.0, 2.0), "payoffs: attacker attack reward out of "
                                 "range at target " + std::to_string(v));
        check(pen == -1.0, "payoffs: defender attack penalty must be -1 at "
                           "target " + std::to_string(v));
        break;
    }
  }
  return violations;
}

std::vector<std::string> ValidateDescriptor(const GraphGameDescriptor& d) {
  std::vector<std::string> violations;
  int n = d.graph.num_vertices;
  if (n <= 0 || static_cast<int>(d.graph.out.size()) != n) {
    violations.push_back("graph");
    return violations;
  }
  for (const auto& out : d.graph.out) {
    for (int v : out) {
      if (v < 0 || v >= n) {
        violations.push_back("graph");
        return violations;
      }
    }
  }
  if (d.defender_start < 0 || d.defender_start >= n) {
    violations.push_back("defender_start");
  }
  if (d.attacker_start < 0 || d.attacker_start >= n) {
    violations.push_back("attacker_start");
  }
  if (d.defender_start == d.attacker_start) {
    violations.push_back("defender_start");
  }
  std::set<int> seen;
  for (int v : d.targets) {
    if (v < 0 || v >= n || v == d.defender_start || v == d.attacker_start ||
        !seen.insert(v).second) {
      violations.push_back("targets");
      break;
    }
  }
  if (d.horizon < 1) violations.push_back("horizon");
  if (d.payoffs.has_value()) {
    auto payoff_violations =
        ValidatePayoffTable(d.family, *d.payoffs, d.graph, d.targets);
    if (!payoff_violations.empty()) violations.push_back("payoffs");
  }
  return violations;
}

PayoffTable ResolvePayoffs(const GraphGameDescriptor& d) {
  if (d.payoffs.has_value()) return *d.payoffs;
  Rng rng(MixSeed(d.seed, 0x9021));
  switch (d.family) {
    case GameFamily::kWhg: return SampleWhgPayoffs(rng, d.graph, d.targets);
    case GameFamily::kWnz: return SampleWnzPayoffs(rng, d.graph, d.targets);
    case GameFamily::kSeg: return SampleSegPayoffs(rng, d.graph, d.targets);
  }
  throw std::logic_error("unreachable");
}

namespace {

class SuiteBuilder {
 public:
  SuiteBuilder(const GraphGameDescriptor& d, const PayoffTable& payoffs)
      : d_(d), payoffs_(payoffs),
        targets_(d.targets.begin(), d.targets.end()) {}

  ExtensiveGame Build() {
    StateId root = BuildDefenderState(d_.defender_start, d_.attacker_start, 1,
                                      {}, {});
    builder_.SetRoot(root);
    return builder_.Build();
  }

 private:
  // Moves are ordered stay-first (when allowed) then neighbors ascending;
  // the move list depends only on the mover's own position, so all states of
  // an own-history infoset share one action set.
  std::vector<int> DefenderMoves(int pos) const {
    std::vector<int> moves = {pos};
    for (int v : d_.graph.out[pos]) moves.push_back(v);
    return moves;
  }
  std::vector<int> AttackerMoves(int pos) const {
    std::vector<int> moves;
    if (d_.attacker_can_wait) moves.push_back(pos);
    for (int v : d_.graph.out[pos]) moves.push_back(v);
    return moves;
  }
  static std::string MoveLabel(int from, int to) {
    return from == to ? "stay" : "->" + std::to_string(to);
  }

  InfosetId InfosetFor(std::map<std::vector<int>, InfosetId>& table,
                       const std::vector<int>& history) {
    auto [it, fresh] = table.emplace(history, next_infoset_);
    if (fresh) ++next_infoset_;
    return it->second;
  }

  StateId BuildDefenderState(int def_pos, int att_pos, int round,
                             std::vector<int> def_hist,
                             std::vector<int> att_hist) {
    StateId s = builder_.AddState(Player::kLeader,
                                  InfosetFor(defender_infosets_, def_hist));
    std::vector<int> moves = DefenderMoves(def_pos);
    for (int k = 0; k < static_cast<int>(moves.size()); ++k) {
      def_hist.push_back(k);
      StateId child = BuildAttackerState(def_pos, moves[k], att_pos, round,
                                         def_hist, att_hist);
      def_hist.pop_back();
      builder_.AddAction(s, child, MoveLabel(def_pos, moves[k]));
    }
    return s;
  }

  StateId BuildAttackerState(int def_prev, int def_pos, int att_pos, int round,
                             std::vector<int> def_hist,
                             std::vector<int> att_hist) {
    StateId s = builder_.AddState(Player::kFollower,
                                  InfosetFor(attacker_infosets_, att_hist));
    std::vector<int> moves = AttackerMoves(att_pos);
    for (int k = 0; k < static_cast<int>(moves.size()); ++k) {
      int att_dst = moves[k];
      StateId child;
      bool swap = att_dst == def_prev && def_pos == att_pos &&
                  att_dst != att_pos;
      if (att_dst == def_pos || swap) {
        // Interception resolves at the attacker's end vertex.
        child = builder_.AddTerminal(payoffs_.defender_catch_reward[att_dst],
                                     payoffs_.attacker_caught_penalty[att_dst]);
      } else if (targets_.count(att_dst) > 0) {
        child = builder_.AddTerminal(payoffs_.defender_attack_penalty.at(att_dst),
                                     payoffs_.attacker_attack_reward.at(att_dst));
      } else if (round == d_.horizon) {
        child = builder_.AddTerminal(payoffs_.timeout.leader,
                                     payoffs_.timeout.follower);
      } else {
        att_hist.push_back(k);
        child = BuildDefenderState(def_pos, att_dst, round + 1, def_hist,
                                   att_hist);
        att_hist.pop_back();
      }
      builder_.AddAction(s, child, MoveLabel(att_pos, att_dst));
    }
    return s;
  }

  const GraphGameDescriptor& d_;
  const PayoffTable& payoffs_;
  std::set<int> targets_;
  GameBuilder builder_;
  std::map<std::vector<int>, InfosetId> defender_infosets_;
  std::map<std::vector<int>, InfosetId> attacker_infosets_;
  InfosetId next_infoset_ = 0;
};

}  // namespace

ExtensiveGame GenerateGame(const GraphGameDescriptor& d) {
  std::vector<std::string> violations = ValidateDescriptor(d);
  if (!violations.empty()) {
    throw std::invalid_argument("invalid descriptor field: " + violations.front());
  }
  PayoffTable payoffs = ResolvePayoffs(d);
  return SuiteBuilder(d, payoffs).Build();
}

json DescriptorToJson(const GraphGameDescriptor& d) {
  json j;
  j["family"] = FamilyName(d.family);
  if (d.grid_rows > 0) {
    j["rows"] = d.grid_rows;
    j["cols"] = d.grid_cols;
  } else {
    j["graph"] = "seg";
  }
  j["horizon"] = d.horizon;
  j["attacker_can_wait"] = d.attacker_can_wait;
  j["seed"] = d.seed;
  j["defender_start"] = d.defender_start;
  j["attacker_start"] = d.attacker_start;
  j["targets"] = d.targets;
  if (d.payoffs.has_value()) {
    json p;
    p["attacker_caught_penalty"] = d.payoffs->attacker_caught_penalty;
    p["defender_catch_reward"] = d.payoffs->defender_catch_reward;
    json rewards = json::object();
    json penalties = json::object();
    for (const auto& [v, x] : d.payoffs->attacker_attack_reward) {
      rewards[std::to_string(v)] = x;
    }
    for (const auto& [v, x] : d.payoffs->defender_attack_penalty) {
      penalties[std::to_string(v)] = x;
    }
    p["attacker_attack_reward"] = rewards;
    p["defender_attack_penalty"] = penalties;
    p["timeout"] = {d.payoffs->timeout.leader, d.payoffs->timeout.follower};
    j["payoffs"] = p;
  }
  return j;
}

GraphGameDescriptor DescriptorFromJson(const json& j) {
  GameFamily family = FamilyFromName(j.at("family").get<std::string>());
  GraphGameDescriptor d;
  if (family == GameFamily::kSeg && !j.contains("rows")) {
    d = MakeSegDescriptor(j.at("horizon").get<int>(),
                          j.value("attacker_can_wait", true),
                          j.value("seed", uint64_t{0}));
  } else {
    d = MakeGridDescriptor(family, j.at("rows").get<int>(),
                           j.at("cols").get<int>(), j.at("horizon").get<int>(),
                           j.value("seed", uint64_t{0}));
    d.attacker_can_wait = j.value("attacker_can_wait", true);
  }
  if (j.contains("defender_start")) d.defender_start = j.at("defender_start");
  if (j.contains("attacker_start")) d.attacker_start = j.at("attacker_start");
  if (j.contains("targets")) {
    d.targets = j.at("targets").get<std::vector<int>>();
  }
  if (j.contains("payoffs")) {
    const json& p = j.at("payoffs");
    PayoffTable t;
    t.attacker_caught_penalty =
        p.at("attacker_caught_penalty").get<std::vector<double>>();
    t.defender_catch_reward =
        p.at("defender_catch_reward").get<std::vector<double>>();
    for (const auto& [k, v] : p.at("attacker_attack_reward").items()) {
      t.attacker_attack_reward[std::stoi(k)] = v.get<double>();
    }
    for (const auto& [k, v] : p.at("defender_attack_penalty").items()) {
      t.defender_attack_penalty[std::stoi(k)] = v.get<double>();
    }
    t.timeout = {p.at("timeout")[0].get<double>(),
                 p.at("timeout")[1].get<double>()};
    d.payoffs = std::move(t);
  }
  return d;
}

}  // namespace sgs
