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

#ifndef SGS_AFG_H_
#define SGS_AFG_H_

#include <utility>
#include <vector>

#include "sgs/efg.h"

namespace sgs {

// State of the one-player auxiliary follower game: a FIFO queue of follower
// infosets still to decide, plus the decisions made so far. Root-to-leaf
// paths of this game are exactly the follower's restricted pure plans.
struct AfgState {
  std::vector<InfosetId> queue;
  std::vector<std::pair<InfosetId, ActionId>> path;

  bool IsTerminal() const { return queue.empty(); }
  InfosetId Front() const { return queue.front(); }

  bool operator==(const AfgState& other) const = default;
};

// Expands AFG states over one shared game. Push sets are memoized per
// (infoset, action), so repeated playouts avoid rescanning the game tree.
class AfgExpander {
 public:
  explicit AfgExpander(const ExtensiveGame& game);

  // Queue holds the follower's minimal-depth infosets (reachable before any
  // follower move under some leader play), ascending; empty path. A game
  // where the follower never moves yields a terminal initial state.
  AfgState InitialState() const;

  // Actions available in the front infoset.
  int NumActions(const AfgState& state) const;

  // Pops the front infoset, records (infoset, action) on the path, and
  // pushes the follower infosets directly reachable through `action` under
  // some leader continuation, deduplicated, in ascending id order.
  AfgState Step(const AfgState& state, ActionId action) const;

  // The choice map collected along the path. State must be terminal.
  PureStrategy PathToStrategy(const AfgState& state) const;

  // Number of distinct terminal AFG states; throws if more than `guard` AFG
  // nodes would have to be visited.
  long long CountLeaves(long long guard = 10'000'000) const;

  const ExtensiveGame& game() const { return game_; }

 private:
  const std::vector<InfosetId>& Successors(InfosetId infoset,
                                           ActionId action) const;

  const ExtensiveGame& game_;
  std::vector<InfosetId> initial_queue_;
  // Indexed by infoset, then action.
  mutable std::vector<std::vector<std::optional<std::vector<InfosetId>>>>
      successor_cache_;
};

}  // namespace sgs

#endif  // SGS_AFG_H_
