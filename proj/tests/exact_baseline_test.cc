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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "sgs/efg.h"
#include "sgs/exact_baseline.h"
#include "sgs/game_suite.h"
#include "sgs/rng.h"
#include "test_games.h"

namespace sgs {
namespace {

using test::AllPlans;
using test::MatchingPennies;
using test::MatrixGame;
using test::RandomGame;

// ---------------------------------------------------------------------------
// Exact rational LP oracle: enumerate candidate vertices of {Ax <= b} (with
// equalities doubled into inequalities) using exact arithmetic, keep the
// feasible ones, and maximize the objective. Independent of the simplex
// implementation under test.

struct Rat {
  long long num = 0;
  long long den = 1;

  static Rat Make(long long n, long long d = 1) {
    Rat r;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    r.num = n / g;
    r.den = d / g;
    return r;
  }
  static Rat FromI128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a == 0) a = 1;
    return Rat{static_cast<long long>(n / a), static_cast<long long>(d / a)};
  }
  Rat operator+(const Rat& o) const {
    return FromI128(static_cast<__int128>(num) * o.den +
                        static_cast<__int128>(o.num) * den,
                    static_cast<__int128>(den) * o.den);
  }
  Rat operator-(const Rat& o) const {
    return FromI128(static_cast<__int128>(num) * o.den -
                        static_cast<__int128>(o.num) * den,
                    static_cast<__int128>(den) * o.den);
  }
  Rat operator*(const Rat& o) const {
    return FromI128(static_cast<__int128>(num) * o.num,
                    static_cast<__int128>(den) * o.den);
  }
  Rat operator/(const Rat& o) const {
    return FromI128(static_cast<__int128>(num) * o.den,
                    static_cast<__int128>(den) * o.num);
  }
  bool IsZero() const { return num == 0; }
  bool operator<(const Rat& o) const {
    return static_cast<__int128>(num) * o.den <
           static_cast<__int128>(o.num) * den;
  }
  bool operator<=(const Rat& o) const { return !(o < *this); }
  double ToDouble() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

struct ExactLpResult {
  bool feasible = false;
  double objective = 0.0;
};

// Maximizes c.x over {a x <= b} (x >= 0 must be encoded in the rows).
ExactLpResult ExactVertexOracle(const std::vector<std::vector<long long>>& a,
                                const std::vector<long long>& b,
                                const std::vector<long long>& c) {
  int m = static_cast<int>(a.size());
  int n = static_cast<int>(c.size());
  ExactLpResult result;
  Rat best;
  std::vector<int> active(n);

  std::vector<int> indices(m);
  std::iota(indices.begin(), indices.end(), 0);
  std::vector<bool> select(m, false);
  std::fill(select.end() - n, select.end(), true);
  // Iterate over all n-subsets via the selection mask permutations.
  std::sort(select.begin(), select.end());
  do {
    int k = 0;
    for (int i = 0; i < m; ++i) {
      if (select[i]) active[k++] = i;
    }
    // Solve the active system exactly by Gaussian elimination.
    std::vector<std::vector<Rat>> mat(n, std::vector<Rat>(n + 1));
    for (int r = 0; r < n; ++r) {
      for (int col = 0; col < n; ++col) {
        mat[r][col] = Rat::Make(a[active[r]][col]);
      }
      mat[r][n] = Rat::Make(b[active[r]]);
    }
    bool singular = false;
    for (int col = 0; col < n && !singular; ++col) {
      int pivot = -1;
      for (int r = col; r < n; ++r) {
        if (!mat[r][col].IsZero()) {
          pivot = r;
          break;
        }
      }
      if (pivot < 0) {
        singular = true;
        break;
      }
      std::swap(mat[col], mat[pivot]);
      for (int r = 0; r < n; ++r) {
        if (r == col || mat[r][col].IsZero()) continue;
        Rat factor = mat[r][col] / mat[col][col];
        for (int cc = col; cc <= n; ++cc) {
          mat[r][cc] = mat[r][cc] - factor * mat[col][cc];
        }
      }
    }
    if (singular) continue;
    std::vector<Rat> x(n);
    for (int r = 0; r < n; ++r) x[r] = mat[r][n] / mat[r][r];
    // Exact feasibility check against every row.
    bool feasible = true;
    for (int r = 0; r < m && feasible; ++r) {
      Rat lhs;
      for (int col = 0; col < n; ++col) {
        lhs = lhs + Rat::Make(a[r][col]) * x[col];
      }
      feasible = lhs <= Rat::Make(b[r]);
    }
    if (!feasible) continue;
    Rat value;
    for (int col = 0; col < n; ++col) {
      value = value + Rat::Make(c[col]) * x[col];
    }
    if (!result.feasible || best < value) {
      best = value;
      result.feasible = true;
      result.objective = best.ToDouble();
    }
  } while (std::next_permutation(select.begin(), select.end()));
  return result;
}

TEST_CASE("simplex solves the one-variable textbook cases") {
  SUBCASE("max x subject to x <= 1") {
    LpProblem lp;
    lp.objective = {1.0};
    lp.a_ub = {{1.0}};
    lp.b_ub = {1.0};
    LpResult res = SimplexSolve(lp);
    REQUIRE(res.status == LpStatus::kOptimal);
    CHECK(res.x[0] == doctest::Approx(1.0));
    CHECK(res.objective == doctest::Approx(1.0));
  }
  SUBCASE("empty feasible region") {
    LpProblem lp;
    lp.objective = {1.0};
    lp.a_ub = {{1.0}};
    lp.b_ub = {-1.0};  // x <= -1 with x >= 0
    CHECK(SimplexSolve(lp).status == LpStatus::kInfeasible);
  }
  SUBCASE("unbounded direction") {
    LpProblem lp;
    lp.objective = {1.0};
    CHECK(SimplexSolve(lp).status == LpStatus::kUnbounded);
  }
  SUBCASE("equality constraints work") {
    LpProblem lp;
    lp.objective = {1.0, 0.0};
    lp.a_eq = {{1.0, 1.0}};
    lp.b_eq = {1.0};
    LpResult res = SimplexSolve(lp);
    REQUIRE(res.status == LpStatus::kOptimal);
    CHECK(res.objective == doctest::Approx(1.0));
    CHECK(res.x[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("simplex agrees with the rational vertex-enumeration oracle") {
  Rng rng(611);
  int compared = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int n = 2 + rng.NextInt(3);
    int m_ub = 1 + rng.NextInt(4);
    bool with_eq = rng.Bernoulli(0.4);

    LpProblem lp;
    std::vector<std::vector<long long>> rows;
    std::vector<long long> rhs;
    lp.objective.resize(n);
    std::vector<long long> c(n);
    for (int j = 0; j < n; ++j) {
      c[j] = rng.NextInt(9) - 4;
      lp.objective[j] = static_cast<double>(c[j]);
    }
    for (int i = 0; i < m_ub; ++i) {
      std::vector<double> row(n);
      std::vector<long long> irow(n);
      for (int j = 0; j < n; ++j) {
        irow[j] = rng.NextInt(9) - 4;
        row[j] = static_cast<double>(irow[j]);
      }
      long long bound = rng.NextInt(10) - 3;
      lp.a_ub.push_back(row);
      lp.b_ub.push_back(static_cast<double>(bound));
      rows.push_back(irow);
      rhs.push_back(bound);
    }
    if (with_eq) {
      std::vector<double> row(n);
      std::vector<long long> irow(n);
      for (int j = 0; j < n; ++j) {
        irow[j] = rng.NextInt(3);
        row[j] = static_cast<double>(irow[j]);
      }
      long long bound = rng.NextInt(5);
      lp.a_eq.push_back(row);
      lp.b_eq.push_back(static_cast<double>(bound));
      rows.push_back(irow);
      rhs.push_back(bound);
      std::vector<long long> neg = irow;
      for (long long& v : neg) v = -v;
      rows.push_back(neg);
      rhs.push_back(-bound);
    }
    // Box rows keep the region bounded for both solvers.
    for (int j = 0; j < n; ++j) {
      std::vector<double> row(n, 0.0);
      row[j] = 1.0;
      lp.a_ub.push_back(row);
      lp.b_ub.push_back(5.0);
      std::vector<long long> irow(n, 0);
      irow[j] = 1;
      rows.push_back(irow);
      rhs.push_back(5);
    }
    // x >= 0 rows for the oracle (implicit in the simplex form).
    for (int j = 0; j < n; ++j) {
      std::vector<long long> irow(n, 0);
      irow[j] = -1;
      rows.push_back(irow);
      rhs.push_back(0);
    }

    ExactLpResult oracle = ExactVertexOracle(rows, rhs, c);
    LpResult res = SimplexSolve(lp);
    if (oracle.feasible) {
      REQUIRE(res.status == LpStatus::kOptimal);
      CHECK(res.objective == doctest::Approx(oracle.objective).epsilon(1e-6));
      ++compared;
    } else {
      CHECK(res.status == LpStatus::kInfeasible);
    }
  }
  CHECK(compared > 40);  // the generator must produce real comparisons
}

TEST_CASE("normal form of a depth-2 game is the terminal table") {
  ExtensiveGame game = MatrixGame({{{0.1, 0.9}, {0.2, 0.8}},
                                   {{0.3, 0.7}, {0.4, 0.6}}});
  InducedNormalForm nf = InduceNormalForm(game);
  REQUIRE(nf.leader_strategies.size() == 2);
  REQUIRE(nf.follower_strategies.size() == 2);
  // Row/column order follows enumeration order (action 0 first).
  CHECK(nf.u_leader[0][0] == doctest::Approx(0.1));
  CHECK(nf.u_follower[0][0] == doctest::Approx(0.9));
  CHECK(nf.u_leader[1][1] == doctest::Approx(0.4));
  CHECK(nf.u_follower[0][1] == doctest::Approx(0.8));
}

TEST_CASE("matching pennies induces a zero-sum normal form") {
  InducedNormalForm nf = InduceNormalForm(MatchingPennies());
  for (size_t r = 0; r < nf.leader_strategies.size(); ++r) {
    for (size_t c = 0; c < nf.follower_strategies.size(); ++c) {
      CHECK(nf.u_leader[r][c] == doctest::Approx(-nf.u_follower[r][c]));
    }
  }
}

// Independent defender-plan counter for grid games: recursion over the
// defender position and the set of attacker positions that keep the game
// alive, instead of over the explicit game tree.
long long CountDefenderPlans(const GraphGameDescriptor& d, int def_pos,
                             const std::set<int>& attacker_positions,
                             int round) {
  if (round > d.horizon || attacker_positions.empty()) return 1;
  std::set<int> targets(d.targets.begin(), d.targets.end());
  long long total = 0;
  std::vector<int> moves = {def_pos};
  for (int v : d.graph.out[def_pos]) moves.push_back(v);
  for (int dst : moves) {
    std::set<int> survivors;
    for (int a : attacker_positions) {
      std::vector<int> attacker_moves;
      if (d.attacker_can_wait) attacker_moves.push_back(a);
      for (int v : d.graph.out[a]) attacker_moves.push_back(v);
      for (int a2 : attacker_moves) {
        bool swap = a2 == def_pos && dst == a && a2 != a;
        if (a2 == dst || swap || targets.count(a2) > 0 || round == d.horizon) {
          continue;  // that branch of the game ended
        }
        survivors.insert(a2);
      }
    }
    total += CountDefenderPlans(d, dst, survivors, round + 1);
  }
  return total;
}

TEST_CASE("normal-form row count matches the independent plan counter") {
  GraphGameDescriptor d = MakeGridDescriptor(GameFamily::kWnz, 3, 3, 2, 2);
  ExtensiveGame game = GenerateGame(d);
  InducedNormalForm nf = InduceNormalForm(game);
  CHECK(static_cast<long long>(nf.leader_strategies.size()) ==
        CountDefenderPlans(d, d.defender_start, {d.attacker_start}, 1));
}

TEST_CASE("normal-form induction guard throws a helpful error") {
  ExtensiveGame game = MatchingPennies();
  CHECK_THROWS_WITH_AS(InduceNormalForm(game, /*guard=*/1),
                       doctest::Contains("property-based"),
                       std::runtime_error);
}

TEST_CASE("sse with a dominant follower column") {
  // Column 0 strictly dominates for the follower whatever the leader does;
  // leader payoffs in that column are constant per row.
  ExtensiveGame game = MatrixGame({{{0.3, 1.0}, {0.9, 0.0}},
                                   {{0.7, 1.0}, {0.1, 0.0}}});
  InducedNormalForm nf = InduceNormalForm(game);
  SseSolution sse = SolveSse(nf);
  CHECK(sse.follower_column == 0);
  CHECK(sse.leader_value == doctest::Approx(0.7));
}

TEST_CASE("zero-sum sse equals the maximin value") {
  SUBCASE("matching pennies") {
    InducedNormalForm nf = InduceNormalForm(MatchingPennies());
    SseSolution sse = SolveSse(nf);
    CHECK(sse.leader_value == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(MaximinValue(nf) == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("random zero-sum games") {
    test::RandomGameOptions options;
    options.zero_sum = true;
    options.max_depth = 4;
    for (uint64_t seed = 1; seed <= 10; ++seed) {
      InducedNormalForm nf = InduceNormalForm(RandomGame(seed, options));
      CHECK(SolveSse(nf).leader_value ==
            doctest::Approx(MaximinValue(nf)).epsilon(1e-6));
    }
  }
}

test::RandomGameOptions SmallGameOptions() {
  test::RandomGameOptions options;
  options.max_depth = 4;
  options.terminal_prob = 0.3;
  options.max_nodes = 250;
  return options;
}

TEST_CASE("commitment is worth at least the maximin value") {
  for (uint64_t seed = 60; seed <= 70; ++seed) {
    InducedNormalForm nf =
        InduceNormalForm(RandomGame(seed, SmallGameOptions()));
    CHECK(SolveSse(nf).leader_value >= MaximinValue(nf) - 1e-8);
  }
}

TEST_CASE("sse solutions are valid distributions with best-response columns") {
  for (uint64_t seed = 80; seed <= 90; ++seed) {
    InducedNormalForm nf =
        InduceNormalForm(RandomGame(seed, SmallGameOptions()));
    SseSolution sse = SolveSse(nf);
    double sum = 0.0;
    for (double x : sse.leader_mixed) {
      CHECK(x >= -1e-9);
      sum += x;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
    // The chosen column is a follower best response within tolerance.
    int cols = static_cast<int>(nf.follower_strategies.size());
    int rows = static_cast<int>(nf.leader_strategies.size());
    double chosen = 0.0;
    for (int r = 0; r < rows; ++r) {
      chosen += sse.leader_mixed[r] * nf.u_follower[r][sse.follower_column];
    }
    for (int c = 0; c < cols; ++c) {
      double other = 0.0;
      for (int r = 0; r < rows; ++r) {
        other += sse.leader_mixed[r] * nf.u_follower[r][c];
      }
      CHECK(chosen >= other - 1e-8);
    }
  }
}

TEST_CASE("random 3x3 sse matches a simplex-grid search") {
  Rng rng(2025);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<std::vector<Utilities>> u(3, std::vector<Utilities>(3));
    for (auto& row : u) {
      for (auto& cell : row) {
        cell.leader = rng.Uniform(-1.0, 2.0);
        cell.follower = rng.Uniform(-1.0, 2.0);
      }
    }
    ExtensiveGame game = MatrixGame(u);
    InducedNormalForm nf = InduceNormalForm(game);
    SseSolution sse = SolveSse(nf);

    // Exhaustive search over a 1e-3-spaced leader simplex grid.
    const int kGrid = 1000;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kGrid; ++i) {
      for (int j = 0; j <= kGrid - i; ++j) {
        double x0 = static_cast<double>(i) / kGrid;
        double x1 = static_cast<double>(j) / kGrid;
        double x2 = 1.0 - x0 - x1;
        double follower_values[3];
        double leader_values[3];
        for (int c = 0; c < 3; ++c) {
          follower_values[c] = x0 * nf.u_follower[0][c] +
                               x1 * nf.u_follower[1][c] +
                               x2 * nf.u_follower[2][c];
          leader_values[c] = x0 * nf.u_leader[0][c] +
                             x1 * nf.u_leader[1][c] + x2 * nf.u_leader[2][c];
        }
        double max_follower =
            std::max({follower_values[0], follower_values[1],
                      follower_values[2]});
        for (int c = 0; c < 3; ++c) {
          if (follower_values[c] >= max_follower - 1e-12) {
            best = std::max(best, leader_values[c]);  // leader-favorable tie
          }
        }
      }
    }
    CHECK(sse.leader_value == doctest::Approx(best).epsilon(2e-3));
    CHECK(std::abs(sse.leader_value - best) < 2e-3);
  }
}

TEST_CASE("sse leader mixture converts to an equivalent behavior strategy") {
  for (uint64_t seed = 95; seed <= 99; ++seed) {
    ExtensiveGame game = RandomGame(seed, SmallGameOptions());
    InducedNormalForm nf = InduceNormalForm(game);
    SseSolution sse = SolveSse(nf);
    LeaderBehaviorStrategy behavior = SseLeaderBehavior(game, nf, sse);
    // Against the SSE column the behavior strategy reproduces the value.
    double value =
        ExpectedUtilities(game, behavior,
                          nf.follower_strategies[sse.follower_column])
            .leader;
    CHECK(value == doctest::Approx(sse.leader_value).epsilon(1e-6));
  }
}

}  // namespace
}  // namespace sgs
