#pragma once

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "interdiction/graph.hpp"
#include "interdiction/matrix.hpp"

namespace interdiction {

enum class Player { Vendor, Attacker };

enum class MatrixKind { Objective, VendorSubjective, AttackerSubjective };

/// H x N game matrix. Objective entries are expected delivery times in
/// minutes; subjective entries are dimensionless prospect-theoretic utils.
struct PayoffMatrix {
  Matrix entries;
  MatrixKind kind = MatrixKind::Objective;

  std::size_t path_count() const { return entries.rows(); }
  std::size_t node_count() const { return entries.cols(); }
};

/// Subjective-perception parameters of one player.
///
/// gamma is the Prelec rationality exponent, lambda the loss multiplier,
/// beta/alpha the loss/gain exponents, and reference the point (in minutes)
/// against which outcomes are framed as gains or losses. Setting
/// `exploratory` lifts the (0,1] bound on alpha and beta for parameter
/// studies outside the usual empirical range.
struct ProspectParams {
  double gamma = 1.0;
  double lambda = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  double reference = 0.0;
  bool exploratory = false;

  void validate() const {
    if (!(gamma > 0.0 && gamma <= 1.0))
      throw std::invalid_argument("gamma must lie in (0,1], got " + std::to_string(gamma));
    if (!(lambda >= 1.0))
      throw std::invalid_argument("lambda must be >= 1, got " + std::to_string(lambda));
    if (!(alpha > 0.0) || !(beta > 0.0))
      throw std::invalid_argument("alpha and beta must be positive");
    if (!exploratory && (alpha > 1.0 || beta > 1.0))
      throw std::invalid_argument("alpha and beta must lie in (0,1] unless exploratory is set");
  }
};

/// Probability vector over paths (length H) or nodes (length N).
struct MixedStrategy {
  std::vector<double> p;

  std::vector<std::size_t> support(double tol = 1e-9) const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] > tol) s.push_back(i);
    return s;
  }

  void validate(double tol = 1e-9) const {
    double sum = 0.0;
    for (double v : p) {
      if (v < -tol) throw std::invalid_argument("mixed strategy has a negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
      throw std::invalid_argument("mixed strategy sums to " + std::to_string(sum));
  }
};

/// Prelec probability weighting w(p) = exp(-(-ln p)^gamma), with the
/// continuity conventions w(0)=0 and w(1)=1 so that harmless nodes stay
/// harmless under any gamma.
inline double prelec_weight(double p, double gamma) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("probability outside [0,1]: " + std::to_string(p));
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::domain_error("gamma outside (0,1]: " + std::to_string(gamma));
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  return std::exp(-std::pow(-std::log(p), gamma));
}

// The vendor is a minimizer: nonnegative framed outcomes are losses and
// carry the loss multiplier. The attacker is a maximizer with the roles
// swapped. The two branches are kept explicit per player rather than shared
// with a sign flip.

inline double value_vendor(double a, const ProspectParams& params) {
  if (a >= 0.0) return params.lambda * std::pow(a, params.beta);
  return -std::pow(-a, params.alpha);
}

inline double value_attacker(double a, const ProspectParams& params) {
  if (a < 0.0) return -params.lambda * std::pow(-a, params.beta);
  return std::pow(a, params.alpha);
}

namespace detail {
inline void check_dimensions(const SecurityGraph& g, const std::vector<Path>& paths,
                             const Matrix& l) {
  if (l.rows() != paths.size() || l.cols() != static_cast<std::size_t>(g.node_count()))
    throw std::invalid_argument("incidence matrix dimensions do not match graph/paths");
}
}  // namespace detail

/// Objective (expected-utility) matrix: entry (h, n) is the expected delivery
/// time when the evader commits to path h and the interdictor to node n,
/// i.e. the two-outcome expectation p_n (f^h(n) + f^h(D)) + (1 - p_n) f^h(D)
/// when n is on h, and f^h(D) otherwise.
inline PayoffMatrix build_objective_matrix(const SecurityGraph& g,
                                           const std::vector<Path>& paths, const Matrix& l) {
  detail::check_dimensions(g, paths, l);
  PayoffMatrix m{Matrix(paths.size(), g.node_count()), MatrixKind::Objective};
  for (std::size_t h = 0; h < paths.size(); ++h)
    for (int n = 0; n < g.node_count(); ++n) {
      double on_path = l(h, n);
      double threat = on_path != 0.0 ? g.attack_prob(n) * paths[h].arrival_time(n) : 0.0;
      m.entries(h, n) = threat + paths[h].total_time;
    }
  return m;
}

/// Subjective matrix for one player: probability weighting applied inside
/// the framed outcome, the value function applied outside.
inline PayoffMatrix build_pt_matrix(Player player, const SecurityGraph& g,
                                    const std::vector<Path>& paths, const Matrix& l,
                                    const ProspectParams& params) {
  detail::check_dimensions(g, paths, l);
  params.validate();
  PayoffMatrix m{Matrix(paths.size(), g.node_count()),
                 player == Player::Vendor ? MatrixKind::VendorSubjective
                                          : MatrixKind::AttackerSubjective};
  for (std::size_t h = 0; h < paths.size(); ++h)
    for (int n = 0; n < g.node_count(); ++n) {
      double weighted = l(h, n) != 0.0
                            ? prelec_weight(g.attack_prob(n), params.gamma) *
                                  paths[h].arrival_time(n)
                            : 0.0;
      double framed = weighted + paths[h].total_time - params.reference;
      m.entries(h, n) = player == Player::Vendor ? value_vendor(framed, params)
                                                 : value_attacker(framed, params);
    }
  return m;
}

/// Bilinear form yᵀ M x. With the objective matrix this is the expected
/// delivery time; with a subjective matrix it is that player's valuation of
/// the strategy pair.
inline double expected_delivery_time(const MixedStrategy& y, const MixedStrategy& x,
                                     const PayoffMatrix& m) {
  if (y.p.size() != m.entries.rows() || x.p.size() != m.entries.cols())
    throw std::invalid_argument("strategy/matrix dimension mismatch");
  double total = 0.0;
  for (std::size_t h = 0; h < y.p.size(); ++h) {
    double row = 0.0;
    for (std::size_t n = 0; n < x.p.size(); ++n) row += m.entries(h, n) * x.p[n];
    total += y.p[h] * row;
  }
  return total;
}

}  // namespace interdiction
