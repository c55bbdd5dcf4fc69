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

#include "sgs/exact_baseline.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sgs {

namespace {

constexpr double kTol = 1e-9;

std::vector<PureStrategy> EnumerateAll(const ExtensiveGame& game, Player player,
                                       long long guard) {
  std::vector<PureStrategy> out;
  PureStrategyEnumerator it(game, player);
  while (auto plan = it.Next()) {
    out.push_back(std::move(*plan));
    if (static_cast<long long>(out.size()) > guard) {
      throw std::runtime_error(
          "normal-form induction guard exceeded; use property-based checks "
          "for games this large");
    }
  }
  return out;
}

}  // namespace

InducedNormalForm InduceNormalForm(const ExtensiveGame& game, long long guard) {
  InducedNormalForm nf;
  nf.leader_strategies = EnumerateAll(game, Player::kLeader, guard);
  nf.follower_strategies = EnumerateAll(game, Player::kFollower, guard);
  long long rows = static_cast<long long>(nf.leader_strategies.size());
  long long cols = static_cast<long long>(nf.follower_strategies.size());
  if (rows * cols > guard) {
    throw std::runtime_error(
        "normal-form induction guard exceeded; use property-based checks for "
        "games this large");
  }
  nf.u_leader.assign(rows, std::vector<double>(cols, 0.0));
  nf.u_follower.assign(rows, std::vector<double>(cols, 0.0));
  for (long long r = 0; r < rows; ++r) {
    LeaderBehaviorStrategy behavior =
        PureToBehavior(game, nf.leader_strategies[r]);
    for (long long c = 0; c < cols; ++c) {
      Utilities u =
          ExpectedUtilities(game, behavior, nf.follower_strategies[c]);
      nf.u_leader[r][c] = u.leader;
      nf.u_follower[r][c] = u.follower;
    }
  }
  return nf;
}

namespace {

// Dense two-phase simplex over the tableau
//   [ A | slacks | artificials | rhs ]
// with explicit reduced-cost pricing and Bland's anti-cycling rule.
class SimplexTableau {
 public:
  SimplexTableau(const LpProblem& lp) {
    n_ = static_cast<int>(lp.objective.size());
    int m_ub = static_cast<int>(lp.a_ub.size());
    int m_eq = static_cast<int>(lp.a_eq.size());
    m_ = m_ub + m_eq;
    num_slack_ = m_ub;

    // One artificial per row without an obvious basic slack.
    std::vector<int> artificial_of_row(m_, -1);
    int num_artificial = 0;
    for (int i = 0; i < m_ub; ++i) {
      if (lp.b_ub[i] < 0) artificial_of_row[i] = num_artificial++;
    }
    for (int i = 0; i < m_eq; ++i) {
      artificial_of_row[m_ub + i] = num_artificial++;
    }
    num_artificial_ = num_artificial;
    cols_ = n_ + num_slack_ + num_artificial_;

    a_.assign(m_, std::vector<double>(cols_, 0.0));
    rhs_.assign(m_, 0.0);
    basis_.assign(m_, -1);

    for (int i = 0; i < m_ub; ++i) {
      double sign = lp.b_ub[i] < 0 ? -1.0 : 1.0;
      for (int j = 0; j < n_; ++j) a_[i][j] = sign * lp.a_ub[i][j];
      a_[i][n_ + i] = sign;  // slack (surplus when the row was negated)
      rhs_[i] = sign * lp.b_ub[i];
      if (artificial_of_row[i] >= 0) {
        int col = n_ + num_slack_ + artificial_of_row[i];
        a_[i][col] = 1.0;
        basis_[i] = col;
      } else {
        basis_[i] = n_ + i;
      }
    }
    for (int i = 0; i < m_eq; ++i) {
      int row = m_ub + i;
      double sign = lp.b_eq[i] < 0 ? -1.0 : 1.0;
      for (int j = 0; j < n_; ++j) a_[row][j] = sign * lp.a_eq[i][j];
      rhs_[row] = sign * lp.b_eq[i];
      int col = n_ + num_slack_ + artificial_of_row[row];
      a_[row][col] = 1.0;
      basis_[row] = col;
    }
  }

  LpResult Solve(const LpProblem& lp) {
    // Phase 1: minimize the artificial mass.
    if (num_artificial_ > 0) {
      std::vector<double> phase1_cost(cols_, 0.0);
      for (int j = n_ + num_slack_; j < cols_; ++j) phase1_cost[j] = 1.0;
      if (!RunSimplex(phase1_cost, /*ban_artificials=*/false)) {
        throw std::runtime_error("simplex: iteration limit in phase 1");
      }
      double infeasibility = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] >= n_ + num_slack_) infeasibility += rhs_[i];
      }
      if (infeasibility > 1e-7) return {LpStatus::kInfeasible, {}, 0.0};
      DriveOutArtificials();
    }

    // Phase 2: minimize -objective.
    std::vector<double> phase2_cost(cols_, 0.0);
    for (int j = 0; j < n_; ++j) phase2_cost[j] = -lp.objective[j];
    if (!RunSimplex(phase2_cost, /*ban_artificials=*/true)) {
      return {LpStatus::kUnbounded, {}, 0.0};
    }

    LpResult result;
    result.status = LpStatus::kOptimal;
    result.x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) result.x[basis_[i]] = rhs_[i];
    }
    result.objective = 0.0;
    for (int j = 0; j < n_; ++j) {
      result.objective += lp.objective[j] * result.x[j];
    }
    return result;
  }

 private:
  // Returns false on hitting the iteration limit (phase 1) or unboundedness
  // (phase 2: no leaving row for the entering column).
  bool RunSimplex(const std::vector<double>& cost, bool ban_artificials) {
    int limit = 2000 + 200 * (m_ + cols_);
    int usable_cols = ban_artificials ? n_ + num_slack_ : cols_;
    for (int iter = 0; iter < limit; ++iter) {
      // Reduced costs from the current tableau; Bland: first negative wins.
      int entering = -1;
      for (int j = 0; j < usable_cols; ++j) {
        double rc = cost[j];
        for (int i = 0; i < m_; ++i) {
          if (basis_[i] >= 0 && cost[basis_[i]] != 0.0) {
            rc -= cost[basis_[i]] * a_[i][j];
          }
        }
        if (rc < -kTol) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;  // optimal

      int leaving = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        if (a_[i][entering] > kTol) {
          double ratio = rhs_[i] / a_[i][entering];
          if (ratio < best_ratio - kTol ||
              (ratio < best_ratio + kTol &&
               (leaving == -1 || basis_[i] < basis_[leaving]))) {
            best_ratio = ratio;
            leaving = i;
          }
        }
      }
      if (leaving < 0) return false;  // unbounded direction
      Pivot(leaving, entering);
    }
    return false;
  }

  void DriveOutArtificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_ + num_slack_) continue;
      int pivot_col = -1;
      for (int j = 0; j < n_ + num_slack_; ++j) {
        if (std::abs(a_[i][j]) > kTol) {
          pivot_col = j;
          break;
        }
      }
      if (pivot_col >= 0) {
        Pivot(i, pivot_col);
      }
      // A fully zero row is redundant; its artificial stays basic at zero
      // and the banned columns keep it out of phase 2.
    }
  }

  void Pivot(int row, int col) {
    double p = a_[row][col];
    for (int j = 0; j < cols_; ++j) a_[row][j] /= p;
    rhs_[row] /= p;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      double factor = a_[i][col];
      if (factor == 0.0) continue;
      for (int j = 0; j < cols_; ++j) a_[i][j] -= factor * a_[row][j];
      rhs_[i] -= factor * rhs_[row];
      a_[i][col] = 0.0;
    }
    basis_[row] = col;
  }

  int n_ = 0;           // original variables
  int m_ = 0;           // rows
  int num_slack_ = 0;
  int num_artificial_ = 0;
  int cols_ = 0;
  std::vector<std::vector<double>> a_;
  std::vector<double> rhs_;
  std::vector<int> basis_;
};

}  // namespace

LpResult SimplexSolve(const LpProblem& lp) {
  for (const auto& row : lp.a_ub) {
    if (row.size() != lp.objective.size()) {
      throw std::invalid_argument("simplex: a_ub dimension mismatch");
    }
  }
  for (const auto& row : lp.a_eq) {
    if (row.size() != lp.objective.size()) {
      throw std::invalid_argument("simplex: a_eq dimension mismatch");
    }
  }
  if (lp.a_ub.size() != lp.b_ub.size() || lp.a_eq.size() != lp.b_eq.size()) {
    throw std::invalid_argument("simplex: rhs dimension mismatch");
  }
  return SimplexTableau(lp).Solve(lp);
}

SseSolution SolveSse(const InducedNormalForm& nf) {
  int rows = static_cast<int>(nf.leader_strategies.size());
  int cols = static_cast<int>(nf.follower_strategies.size());
  SseSolution best;
  best.leader_value = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < cols; ++j) {
    LpProblem lp;
    lp.objective.resize(rows);
    for (int r = 0; r < rows; ++r) lp.objective[r] = nf.u_leader[r][j];
    lp.a_eq.push_back(std::vector<double>(rows, 1.0));
    lp.b_eq.push_back(1.0);
    for (int other = 0; other < cols; ++other) {
      if (other == j) continue;
      std::vector<double> row(rows);
      for (int r = 0; r < rows; ++r) {
        row[r] = nf.u_follower[r][other] - nf.u_follower[r][j];
      }
      lp.a_ub.push_back(std::move(row));
      lp.b_ub.push_back(0.0);
    }
    LpResult res = SimplexSolve(lp);
    if (res.status == LpStatus::kUnbounded) {
      throw std::runtime_error("SolveSse: unbounded LP at column " +
                               std::to_string(j));
    }
    if (res.status == LpStatus::kOptimal &&
        res.objective > best.leader_value) {
      best.leader_value = res.objective;
      best.leader_mixed = res.x;
      best.follower_column = j;
    }
  }
  if (best.follower_column < 0) {
    throw std::runtime_error(
        "SolveSse: no feasible column (numerical failure)");
  }
  return best;
}

double MaximinValue(const InducedNormalForm& nf) {
  int rows = static_cast<int>(nf.leader_strategies.size());
  int cols = static_cast<int>(nf.follower_strategies.size());
  // Variables: x (rows), v+ and v-; maximize v+ - v- subject to
  // v - x' U_L[:, j] <= 0 for every column.
  LpProblem lp;
  lp.objective.assign(rows + 2, 0.0);
  lp.objective[rows] = 1.0;
  lp.objective[rows + 1] = -1.0;
  lp.a_eq.push_back(std::vector<double>(rows + 2, 0.0));
  for (int r = 0; r < rows; ++r) lp.a_eq.back()[r] = 1.0;
  lp.b_eq.push_back(1.0);
  for (int j = 0; j < cols; ++j) {
    std::vector<double> row(rows + 2, 0.0);
    for (int r = 0; r < rows; ++r) row[r] = -nf.u_leader[r][j];
    row[rows] = 1.0;
    row[rows + 1] = -1.0;
    lp.a_ub.push_back(std::move(row));
    lp.b_ub.push_back(0.0);
  }
  LpResult res = SimplexSolve(lp);
  if (res.status != LpStatus::kOptimal) {
    throw std::runtime_error("MaximinValue: LP did not solve");
  }
  return res.objective;
}

LeaderBehaviorStrategy SseLeaderBehavior(const ExtensiveGame& game,
                                         const InducedNormalForm& nf,
                                         const SseSolution& solution) {
  std::vector<std::pair<PureStrategy, double>> mixture;
  for (size_t r = 0; r < nf.leader_strategies.size(); ++r) {
    if (solution.leader_mixed[r] > 1e-12) {
      mixture.emplace_back(nf.leader_strategies[r], solution.leader_mixed[r]);
    }
  }
  return MixedToBehavior(game, mixture);
}

}  // namespace sgs
