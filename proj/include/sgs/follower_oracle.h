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

#ifndef SGS_FOLLOWER_ORACLE_H_
#define SGS_FOLLOWER_ORACLE_H_

#include <optional>
#include <vector>

#include "sgs/efg.h"

namespace sgs {

inline constexpr double kDefaultOracleEpsilon = 1e-2;  // payoff margin
inline constexpr int kDefaultOracleCapacity = 50;      // cached strategies

// Exact follower best response against a leader behavior strategy, computed
// with one backward-induction sweep over the follower's infosets (linear in
// game size; equivalent to enumerating all pure plans). Infoset-level value
// ties are broken toward the lowest action id, and the reported value is the
// plan's ExpectedUtilities so it is directly comparable with enumeration.
struct BestResponse {
  PureStrategy strategy;
  Utilities value;
};
BestResponse ComputeBestResponse(const ExtensiveGame& game,
                                 const LeaderBehaviorStrategy& leader);

// Use-counted collection of previously best-responding plans, scanned before
// paying for a fresh best-response computation.
struct OracleCache {
  struct Entry {
    long long use_count = 1;
    PureStrategy strategy;
  };
  std::vector<Entry> entries;  // insertion order
  int capacity = kDefaultOracleCapacity;
  long long duplicate_inserts = 0;  // attempted re-inserts, dropped silently
};

enum class InsertOutcome { kInserted, kDuplicate };

// If the cache is full, removes the entry with the smallest use count
// (oldest on ties), then inserts `strategy` with use count 1. Inserting a
// strategy already present is a no-op recorded on `duplicate_inserts`.
InsertOutcome EvictAndInsert(OracleCache& cache, const PureStrategy& strategy);

struct OracleStats {
  long long cache_hits = 0;
  long long enumerations = 0;  // full best-response computations
};

// Returns a follower plan whose payoff against `leader` exceeds the
// requested plan's payoff by more than `epsilon`, or nullopt when no such
// plan exists. Scans the cache in insertion order first (first beating entry
// wins, its use count is incremented); otherwise computes the exact best
// response, caches it, and returns it only if it clears the margin.
std::optional<PureStrategy> BetterResponse(const ExtensiveGame& game,
                                           const LeaderBehaviorStrategy& leader,
                                           const PureStrategy& requested,
                                           OracleCache& cache,
                                           double epsilon = kDefaultOracleEpsilon,
                                           OracleStats* stats = nullptr);

}  // namespace sgs

#endif  // SGS_FOLLOWER_ORACLE_H_
