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

#ifndef SGS_GAME_IO_H_
#define SGS_GAME_IO_H_

#include <string>

#include "json.hpp"
#include "sgs/efg.h"

namespace sgs {

// Explicit game format:
// {
//   "root": 0,
//   "states": [{"id": 0, "owner": "leader", "infoset": 0,
//               "actions": [{"label": "l", "next": 1}, ...]}, ...],
//   "terminals": [{"id": 1, "u_leader": 0.3, "u_follower": 0.7}, ...]
// }
// Ids may be arbitrary integers; saving always emits the canonical dense
// form so equal games serialize identically.
ExtensiveGame GameFromJson(const nlohmann::json& j);
nlohmann::json GameToJson(const ExtensiveGame& game);

ExtensiveGame LoadGameFile(const std::string& path);
void SaveGameFile(const ExtensiveGame& game, const std::string& path);

// Leader behavior strategy: {"leader_strategy": [{"infoset": 0,
// "probs": [0.5, 0.5]}, ...]}
nlohmann::json LeaderStrategyToJson(const LeaderBehaviorStrategy& strategy);
LeaderBehaviorStrategy LeaderStrategyFromJson(const nlohmann::json& j);

// Follower plan: {"choices": [{"infoset": 0, "action": 1}, ...]}
nlohmann::json PureStrategyToJson(const PureStrategy& plan);
PureStrategy PureStrategyFromJson(const nlohmann::json& j);

nlohmann::json ReadJsonFile(const std::string& path);
void WriteJsonFile(const nlohmann::json& j, const std::string& path);

}  // namespace sgs

#endif  // SGS_GAME_IO_H_
