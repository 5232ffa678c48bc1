#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "interdiction/lp.hpp"
#include "interdiction/matrix.hpp"
#include "interdiction/payoff.hpp"

namespace interdiction {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Certified solution of a zero-sum matrix game.
struct GameSolution {
  MixedStrategy y;  // evader / row player (minimizer)
  MixedStrategy x;  // interdictor / column player (maximizer)
  double value = 0.0;
  double value_primal = 0.0;  // 1/mu1, shift-corrected
  double value_dual = 0.0;    // 1/mu2, shift-corrected
  double mu_primal = 0.0;     // value function of the maximization LP
  double mu_dual = 0.0;       // value function of the minimization LP
  double exploitability = 0.0;
  double shift = 0.0;
  int iterations = 0;
};

struct EquilibriumReport {
  double evader_gap = 0.0;       // best pure-row deviation gain for the minimizer
  double interdictor_gap = 0.0;  // best pure-column deviation gain for the maximizer
  double max_gap() const { return evader_gap > interdictor_gap ? evader_gap : interdictor_gap; }
  bool certified = false;
};

/// Constant shift making every entry strictly positive, so the change of
/// variables y/u1(y) behind the LP reduction is valid for matrices with
/// nonpositive entries. Returns shift 0 when the matrix is already positive,
/// otherwise 1 - min entry (all shifted entries then >= 1).
inline std::pair<Matrix, double> shift_positive(const Matrix& m) {
  double lo = m.min();
  if (lo > 0.0) return {m, 0.0};
  double c = 1.0 - lo;
  return {m.shifted(c), c};
}

inline std::pair<PayoffMatrix, double> shift_positive(const PayoffMatrix& m) {
  auto [shifted, c] = shift_positive(m.entries);
  return {PayoffMatrix{std::move(shifted), m.kind}, c};
}

/// Best pure-deviation gaps of (y, x) in the game on m. Both gaps are zero
/// exactly at a saddle point.
inline EquilibriumReport verify_equilibrium(const PayoffMatrix& m, const MixedStrategy& y,
                                            const MixedStrategy& x, double eps) {
  const std::size_t rows = m.entries.rows(), cols = m.entries.cols();
  if (y.p.size() != rows || x.p.size() != cols)
    throw std::invalid_argument("strategy/matrix dimension mismatch");
  double value = expected_delivery_time(y, x, m);

  double best_row = std::numeric_limits<double>::infinity();
  for (std::size_t h = 0; h < rows; ++h) {
    double v = 0.0;
    for (std::size_t n = 0; n < cols; ++n) v += m.entries(h, n) * x.p[n];
    if (v < best_row) best_row = v;
  }
  double best_col = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < cols; ++n) {
    double v = 0.0;
    for (std::size_t h = 0; h < rows; ++h) v += y.p[h] * m.entries(h, n);
    if (v > best_col) best_col = v;
  }

  EquilibriumReport report;
  report.evader_gap = std::max(0.0, value - best_row);
  report.interdictor_gap = std::max(0.0, best_col - value);
  report.certified = report.max_gap() <= eps;
  return report;
}

namespace detail {

inline LpProblem primal_lp(const Matrix& m) {
  // max 1ᵀ yhat  s.t.  Mᵀ yhat <= 1,  yhat >= 0
  LpProblem lp;
  lp.maximize = true;
  lp.objective.assign(m.rows(), 1.0);
  lp.constraints = Matrix(m.cols(), m.rows());
  for (std::size_t n = 0; n < m.cols(); ++n)
    for (std::size_t h = 0; h < m.rows(); ++h) lp.constraints(n, h) = m(h, n);
  lp.senses.assign(m.cols(), Sense::LessEq);
  lp.rhs.assign(m.cols(), 1.0);
  return lp;
}

inline LpProblem dual_lp(const Matrix& m) {
  // min 1ᵀ xhat  s.t.  M xhat >= 1,  xhat >= 0
  LpProblem lp;
  lp.maximize = false;
  lp.objective.assign(m.cols(), 1.0);
  lp.constraints = m;
  lp.senses.assign(m.rows(), Sense::GreaterEq);
  lp.rhs.assign(m.rows(), 1.0);
  return lp;
}

}  // namespace detail

/// Solves the zero-sum game on m through the paired LP reduction: the
/// shifted matrix's maximization problem recovers the evader's strategy,
/// the minimization problem the interdictor's, and the two LP value
/// functions must agree at 1/(shifted game value). The returned pair is
/// certified to exploitability <= 1e-6.
inline GameSolution solve_zero_sum(const PayoffMatrix& m) {
  if (m.entries.rows() == 0 || m.entries.cols() == 0)
    throw std::invalid_argument("empty payoff matrix");

  auto [shifted, c] = shift_positive(m.entries);

  LpSolution primal, dual;
  try {
    primal = solve_lp(detail::primal_lp(shifted));
    dual = solve_lp(detail::dual_lp(shifted));
  } catch (const LpError& e) {
    throw SolverError(std::string("LP reduction failed: ") + e.what());
  }

  GameSolution sol;
  sol.shift = c;
  sol.iterations = primal.iterations + dual.iterations;
  sol.mu_primal = primal.value;
  sol.mu_dual = dual.value;
  if (sol.mu_primal <= 0.0 || sol.mu_dual <= 0.0)
    throw SolverError("degenerate LP value function");
  sol.value_primal = 1.0 / sol.mu_primal - c;
  sol.value_dual = 1.0 / sol.mu_dual - c;
  sol.value = sol.value_primal;

  sol.y.p = primal.x;
  for (double& v : sol.y.p) v /= sol.mu_primal;
  sol.x.p = dual.x;
  for (double& v : sol.x.p) v /= sol.mu_dual;
  sol.y.validate();
  sol.x.validate();

  double rel = std::abs(sol.mu_primal - sol.mu_dual) / std::max(1.0, std::abs(sol.mu_primal));
  if (rel > 1e-6)
    throw SolverError("LP value functions disagree: " + std::to_string(sol.mu_primal) +
                      " vs " + std::to_string(sol.mu_dual));

  auto report = verify_equilibrium(m, sol.y, sol.x, 1e-6);
  sol.exploitability = report.max_gap();
  if (!report.certified)
    throw SolverError("equilibrium certification failed, exploitability " +
                      std::to_string(sol.exploitability));
  return sol;
}

/// Security-strategy problems under subjective payoffs: the vendor's min-max
/// game on its own matrix and the attacker's max-min game on its own matrix,
/// each solved independently. The vendor's strategy is the first solution's
/// y, the attacker's is the second solution's x; no saddle-point relation is
/// claimed across the two games.
inline std::pair<GameSolution, GameSolution> solve_pt_security(const PayoffMatrix& m_vendor,
                                                               const PayoffMatrix& m_attacker) {
  if (m_vendor.entries.rows() != m_attacker.entries.rows() ||
      m_vendor.entries.cols() != m_attacker.entries.cols())
    throw std::invalid_argument("vendor/attacker matrices must share dimensions");
  return {solve_zero_sum(m_vendor), solve_zero_sum(m_attacker)};
}

}  // namespace interdiction
