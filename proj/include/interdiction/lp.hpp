#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "interdiction/matrix.hpp"

namespace interdiction {

struct LpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LpInfeasible : LpError {
  LpInfeasible() : LpError("LP is infeasible") {}
};
struct LpUnbounded : LpError {
  LpUnbounded() : LpError("LP is unbounded") {}
};
struct LpIterationLimit : LpError {
  LpIterationLimit() : LpError("LP pivot limit exceeded") {}
};

enum class Sense { LessEq, GreaterEq, Equal };

/// Linear program over nonnegative variables:
///   optimize objectiveᵀ x  subject to  constraints x {<=,>=,=} rhs,  x >= 0.
struct LpProblem {
  bool maximize = false;
  std::vector<double> objective;
  Matrix constraints;  // one row per constraint
  std::vector<Sense> senses;
  std::vector<double> rhs;
};

struct LpSolution {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

/// Dense two-phase tableau simplex. Dantzig pricing with a Bland's-rule
/// fallback once a degenerate-pivot streak is detected. Sized for the small
/// dense programs produced by the game reductions.
class SimplexSolver {
 public:
  static constexpr double kPivotTol = 1e-10;
  static constexpr double kOptTol = 1e-9;
  static constexpr double kFeasTol = 1e-9;
  static constexpr int kMaxPivots = 10000;
  static constexpr int kBlandTrigger = 32;

  explicit SimplexSolver(const LpProblem& lp) : lp_(lp) {
    const std::size_t m = lp.constraints.rows();
    const std::size_t n = lp.constraints.cols();
    if (lp.objective.size() != n || lp.senses.size() != m || lp.rhs.size() != m)
      throw std::invalid_argument("inconsistent LP dimensions");
    n_struct_ = n;

    // Normalize to rhs >= 0 and count auxiliary columns.
    std::vector<double> sign(m, 1.0);
    std::vector<Sense> senses = lp.senses;
    for (std::size_t i = 0; i < m; ++i)
      if (lp.rhs[i] < 0.0) {
        sign[i] = -1.0;
        if (senses[i] == Sense::LessEq)
          senses[i] = Sense::GreaterEq;
        else if (senses[i] == Sense::GreaterEq)
          senses[i] = Sense::LessEq;
      }
    std::size_t n_slack = 0, n_art = 0;
    for (Sense s : senses) {
      if (s != Sense::Equal) ++n_slack;
      if (s != Sense::LessEq) ++n_art;
    }
    cols_ = n + n_slack + n_art;
    art_begin_ = n + n_slack;
    tab_ = Matrix(m, cols_);
    b_.assign(m, 0.0);
    basis_.assign(m, 0);

    std::size_t slack = n, art = art_begin_;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) tab_(i, j) = sign[i] * lp.constraints(i, j);
      b_[i] = sign[i] * lp.rhs[i];
      switch (senses[i]) {
        case Sense::LessEq:
          tab_(i, slack) = 1.0;
          basis_[i] = static_cast<int>(slack++);
          break;
        case Sense::GreaterEq:
          tab_(i, slack++) = -1.0;
          tab_(i, art) = 1.0;
          basis_[i] = static_cast<int>(art++);
          break;
        case Sense::Equal:
          tab_(i, art) = 1.0;
          basis_[i] = static_cast<int>(art++);
          break;
      }
      if (senses[i] == Sense::GreaterEq) tab_(i, slack - 1) = -1.0;
    }
  }

  LpSolution solve() {
    const std::size_t m = tab_.rows();

    if (art_begin_ < cols_) {
      // Phase 1: drive artificial variables to zero.
      std::vector<double> cost(cols_, 0.0);
      for (std::size_t j = art_begin_; j < cols_; ++j) cost[j] = 1.0;
      run(cost, /*allow_artificials=*/true);
      double infeas = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        if (basis_[i] >= static_cast<int>(art_begin_)) infeas += b_[i];
      if (infeas > kFeasTol) throw LpInfeasible();
      // Pivot remaining (zero-level) artificials out where possible; a row
      // with no nonartificial pivot is redundant and its artificial stays
      // basic at zero, blocked from ever re-entering.
      for (std::size_t i = 0; i < m; ++i) {
        if (basis_[i] < static_cast<int>(art_begin_)) continue;
        for (std::size_t j = 0; j < art_begin_; ++j)
          if (std::abs(tab_(i, j)) > kPivotTol) {
            pivot(i, j);
            break;
          }
      }
    }

    std::vector<double> cost(cols_, 0.0);
    for (std::size_t j = 0; j < n_struct_; ++j)
      cost[j] = lp_.maximize ? -lp_.objective[j] : lp_.objective[j];
    run(cost, /*allow_artificials=*/false);

    LpSolution sol;
    sol.x.assign(n_struct_, 0.0);
    double value = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (basis_[i] < static_cast<int>(n_struct_)) sol.x[basis_[i]] = b_[i];
      value += cost[basis_[i]] * b_[i];
    }
    sol.value = lp_.maximize ? -value : value;
    sol.iterations = iterations_;
    return sol;
  }

 private:
  void pivot(std::size_t row, std::size_t col) {
    const std::size_t m = tab_.rows();
    double piv = tab_(row, col);
    for (std::size_t j = 0; j < cols_; ++j) tab_(row, j) /= piv;
    b_[row] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row) continue;
      double f = tab_(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) tab_(i, j) -= f * tab_(row, j);
      b_[i] -= f * b_[row];
    }
    basis_[row] = static_cast<int>(col);
  }

  void run(const std::vector<double>& cost, bool allow_artificials) {
    const std::size_t m = tab_.rows();
    const std::size_t limit = allow_artificials ? cols_ : art_begin_;
    int degenerate_streak = 0;

    while (true) {
      if (++iterations_ > kMaxPivots) throw LpIterationLimit();
      const bool bland = degenerate_streak >= kBlandTrigger;

      // Reduced costs d_j = c_j - c_Bᵀ B⁻¹ A_j over the current tableau.
      std::size_t enter = cols_;
      double best = -kOptTol;
      for (std::size_t j = 0; j < limit; ++j) {
        double d = cost[j];
        for (std::size_t i = 0; i < m; ++i) {
          double a = tab_(i, j);
          if (a != 0.0) d -= cost[basis_[i]] * a;
        }
        if (d < -kOptTol) {
          if (bland) {
            enter = j;
            break;
          }
          if (d < best) {
            best = d;
            enter = j;
          }
        }
      }
      if (enter == cols_) return;  // optimal

      std::size_t leave = m;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        double a = tab_(i, enter);
        if (a <= kPivotTol) continue;
        double ratio = b_[i] / a;
        if (ratio < best_ratio - kPivotTol ||
            (ratio < best_ratio + kPivotTol && (leave == m || basis_[i] < basis_[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
      if (leave == m) {
        if (allow_artificials)
          throw LpError("phase-1 subproblem unbounded; numerical breakdown");
        throw LpUnbounded();
      }
      degenerate_streak = best_ratio <= kPivotTol ? degenerate_streak + 1 : 0;
      pivot(leave, enter);
    }
  }

  const LpProblem& lp_;
  std::size_t n_struct_ = 0;
  std::size_t cols_ = 0;
  std::size_t art_begin_ = 0;
  Matrix tab_;
  std::vector<double> b_;
  std::vector<int> basis_;
  int iterations_ = 0;
};

inline LpSolution solve_lp(const LpProblem& lp) { return SimplexSolver(lp).solve(); }

}  // namespace interdiction
