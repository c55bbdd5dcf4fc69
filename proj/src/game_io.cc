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

#include "sgs/game_io.h"

#include <fstream>
#include <stdexcept>
#include <unordered_map>

namespace sgs {

using nlohmann::json;

ExtensiveGame GameFromJson(const json& j) {
  if (!j.contains("states") || !j.contains("terminals") || !j.contains("root")) {
    throw std::invalid_argument("game json: missing states/terminals/root");
  }
  GameBuilder builder;
  std::unordered_map<long long, StateId> id_map;

  for (const auto& s : j.at("states")) {
    long long id = s.at("id").get<long long>();
    std::string owner = s.at("owner").get<std::string>();
    Player player;
    if (owner == "leader") {
      player = Player::kLeader;
    } else if (owner == "follower") {
      player = Player::kFollower;
    } else {
      throw std::invalid_argument("game json: state " + std::to_string(id) +
                                  " has unsupported owner '" + owner + "'");
    }
    StateId sid = builder.AddState(player, s.at("infoset").get<int>());
    if (!id_map.emplace(id, sid).second) {
      throw std::invalid_argument("game json: duplicate id " +
                                  std::to_string(id));
    }
  }
  for (const auto& t : j.at("terminals")) {
    long long id = t.at("id").get<long long>();
    StateId sid = builder.AddTerminal(t.at("u_leader").get<double>(),
                                      t.at("u_follower").get<double>());
    if (!id_map.emplace(id, sid).second) {
      throw std::invalid_argument("game json: duplicate id " +
                                  std::to_string(id));
    }
  }

  auto resolve = [&id_map](long long id) {
    auto it = id_map.find(id);
    if (it == id_map.end()) {
      throw std::invalid_argument("game json: unknown id " +
                                  std::to_string(id));
    }
    return it->second;
  };

  for (const auto& s : j.at("states")) {
    StateId sid = resolve(s.at("id").get<long long>());
    for (const auto& a : s.at("actions")) {
      builder.AddAction(sid, resolve(a.at("next").get<long long>()),
                        a.value("label", ""));
    }
  }
  builder.SetRoot(resolve(j.at("root").get<long long>()));
  return builder.Build();
}

json GameToJson(const ExtensiveGame& game) {
  json states = json::array();
  json terminals = json::array();
  for (StateId s = 0; s < game.NumNodes(); ++s) {
    if (game.IsTerminal(s)) {
      Utilities u = game.TerminalUtility(s);
      terminals.push_back(
          {{"id", s}, {"u_leader", u.leader}, {"u_follower", u.follower}});
    } else {
      Player p = game.Owner(s);
      json actions = json::array();
      const auto& labels = game.ActionLabels(p, game.Infoset(s));
      for (ActionId a = 0; a < game.NumActions(s); ++a) {
        json entry = {{"next", game.Child(s, a)}};
        if (a < static_cast<ActionId>(labels.size()) && !labels[a].empty()) {
          entry["label"] = labels[a];
        }
        actions.push_back(entry);
      }
      // Infoset ids are kept disjoint across players in the file by using
      // even ids for the leader and odd ids for the follower.
      int file_infoset = 2 * game.Infoset(s) + PlayerIndex(p);
      states.push_back({{"id", s},
                        {"owner", p == Player::kLeader ? "leader" : "follower"},
                        {"infoset", file_infoset},
                        {"actions", actions}});
    }
  }
  return {{"root", game.Root()}, {"states", states}, {"terminals", terminals}};
}

ExtensiveGame LoadGameFile(const std::string& path) {
  return GameFromJson(ReadJsonFile(path));
}

void SaveGameFile(const ExtensiveGame& game, const std::string& path) {
  WriteJsonFile(GameToJson(game), path);
}

json LeaderStrategyToJson(const LeaderBehaviorStrategy& strategy) {
  json rows = json::array();
  for (size_t i = 0; i < strategy.probs.size(); ++i) {
    if (strategy.probs[i].empty()) continue;
    rows.push_back({{"infoset", i}, {"probs", strategy.probs[i]}});
  }
  return {{"leader_strategy", rows}};
}

LeaderBehaviorStrategy LeaderStrategyFromJson(const json& j) {
  LeaderBehaviorStrategy out;
  for (const auto& row : j.at("leader_strategy")) {
    int infoset = row.at("infoset").get<int>();
    if (infoset < 0) throw std::invalid_argument("strategy json: bad infoset");
    if (infoset >= static_cast<int>(out.probs.size())) {
      out.probs.resize(infoset + 1);
    }
    out.probs[infoset] = row.at("probs").get<std::vector<double>>();
  }
  return out;
}

json PureStrategyToJson(const PureStrategy& plan) {
  json rows = json::array();
  for (const auto& [infoset, action] : plan.choices) {
    rows.push_back({{"infoset", infoset}, {"action", action}});
  }
  return {{"choices", rows}};
}

PureStrategy PureStrategyFromJson(const json& j) {
  PureStrategy out;
  for (const auto& row : j.at("choices")) {
    out.choices[row.at("infoset").get<int>()] = row.at("action").get<int>();
  }
  return out;
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void WriteJsonFile(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace sgs
