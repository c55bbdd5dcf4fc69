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

#include "sgs/afg.h"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace sgs {

AfgExpander::AfgExpander(const ExtensiveGame& game) : game_(game) {
  successor_cache_.resize(game.NumInfosets(Player::kFollower));
  for (InfosetId i = 0; i < game.NumInfosets(Player::kFollower); ++i) {
    successor_cache_[i].resize(game.InfosetNumActions(Player::kFollower, i));
  }

  // Initial queue: scan down from the root through leader regions and stop
  // at the first follower state on every branch.
  std::set<InfosetId> initial;
  std::vector<StateId> stack = {game.Root()};
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    if (game.IsTerminal(s)) continue;
    if (game.Owner(s) == Player::kFollower) {
      initial.insert(game.Infoset(s));
      continue;
    }
    for (ActionId a = 0; a < game.NumActions(s); ++a) {
      stack.push_back(game.Child(s, a));
    }
  }
  initial_queue_.assign(initial.begin(), initial.end());
}

AfgState AfgExpander::InitialState() const { return {initial_queue_, {}}; }

int AfgExpander::NumActions(const AfgState& state) const {
  if (state.IsTerminal()) {
    throw std::logic_error("AFG: terminal state has no actions");
  }
  return game_.InfosetNumActions(Player::kFollower, state.Front());
}

const std::vector<InfosetId>& AfgExpander::Successors(InfosetId infoset,
                                                      ActionId action) const {
  std::optional<std::vector<InfosetId>>& slot =
      successor_cache_[infoset][action];
  if (!slot.has_value()) {
    // Follower infosets directly below (infoset, action): descend through
    // leader-only regions, any leader continuation counts.
    std::set<InfosetId> found;
    std::vector<StateId> stack;
    for (StateId s : game_.InfosetMembers(Player::kFollower, infoset)) {
      stack.push_back(game_.Child(s, action));
    }
    while (!stack.empty()) {
      StateId s = stack.back();
      stack.pop_back();
      if (game_.IsTerminal(s)) continue;
      if (game_.Owner(s) == Player::kFollower) {
        found.insert(game_.Infoset(s));
        continue;
      }
      for (ActionId a = 0; a < game_.NumActions(s); ++a) {
        stack.push_back(game_.Child(s, a));
      }
    }
    slot = std::vector<InfosetId>(found.begin(), found.end());
  }
  return *slot;
}

AfgState AfgExpander::Step(const AfgState& state, ActionId action) const {
  if (state.IsTerminal()) {
    throw std::logic_error("AFG: cannot step a terminal state");
  }
  InfosetId front = state.Front();
  if (action < 0 ||
      action >= game_.InfosetNumActions(Player::kFollower, front)) {
    throw std::invalid_argument("AFG: illegal action in infoset " +
                                std::to_string(front));
  }
  AfgState next;
  next.queue.assign(state.queue.begin() + 1, state.queue.end());
  next.path = state.path;
  next.path.emplace_back(front, action);
  for (InfosetId i : Successors(front, action)) {
    next.queue.push_back(i);
  }
  return next;
}

PureStrategy AfgExpander::PathToStrategy(const AfgState& state) const {
  if (!state.IsTerminal()) {
    throw std::logic_error("AFG: path_to_strategy requires a terminal state");
  }
  PureStrategy plan;
  for (const auto& [infoset, action] : state.path) {
    plan.choices[infoset] = action;
  }
  return plan;
}

long long AfgExpander::CountLeaves(long long guard) const {
  long long visited = 0;
  long long leaves = 0;
  std::vector<AfgState> stack = {InitialState()};
  while (!stack.empty()) {
    AfgState state = std::move(stack.back());
    stack.pop_back();
    if (++visited > guard) {
      throw std::runtime_error("AFG: CountLeaves guard exceeded");
    }
    if (state.IsTerminal()) {
      ++leaves;
      continue;
    }
    for (ActionId a = NumActions(state) - 1; a >= 0; --a) {
      stack.push_back(Step(state, a));
    }
  }
  return leaves;
}

}  // namespace sgs
