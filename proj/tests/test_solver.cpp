#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "interdiction/experiments.hpp"
#include "interdiction/solver.hpp"
#include "oracles.hpp"

using namespace interdiction;

namespace {

PayoffMatrix game(std::initializer_list<std::initializer_list<double>> rows) {
  return PayoffMatrix{Matrix::from_rows(rows), MatrixKind::Objective};
}

Matrix random_matrix(std::mt19937& rng, std::size_t max_dim = 6) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_real_distribution<double> entry(-10.0, 10.0);
  Matrix m(dim(rng), dim(rng));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = entry(rng);
  return m;
}

}  // namespace

TEST_CASE("shift_positive") {
  auto [a, ca] = shift_positive(Matrix::from_rows({{2.0, 3.0}, {1.0, 5.0}}));
  CHECK(ca == 0.0);
  CHECK(a(1, 0) == 1.0);

  auto [b, cb] = shift_positive(Matrix::from_rows({{-4.0, 3.0}}));
  CHECK(cb == 5.0);
  CHECK(b.min() == 1.0);

  auto [c, cc] = shift_positive(Matrix::from_rows({{0.0, 3.0}}));
  CHECK(cc == 1.0);
  CHECK(c.min() == 1.0);
}

TEST_CASE("matching pennies") {
  GameSolution sol = solve_zero_sum(game({{1.0, -1.0}, {-1.0, 1.0}}));
  CHECK(sol.value == Catch::Approx(0.0).margin(1e-9));
  CHECK(sol.y.p[0] == Catch::Approx(0.5).margin(1e-9));
  CHECK(sol.y.p[1] == Catch::Approx(0.5).margin(1e-9));
  CHECK(sol.x.p[0] == Catch::Approx(0.5).margin(1e-9));
  CHECK(sol.x.p[1] == Catch::Approx(0.5).margin(1e-9));
  CHECK(sol.exploitability <= 1e-6);
  CHECK(sol.shift == 2.0);
}

TEST_CASE("single-row game: the attacker takes an argmax column") {
  GameSolution sol = solve_zero_sum(game({{3.0, 7.0, 2.0}}));
  CHECK(sol.value == Catch::Approx(7.0).margin(1e-9));
  CHECK(sol.y.p[0] == Catch::Approx(1.0));
  CHECK(sol.x.p[1] == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("1x1 game") {
  GameSolution sol = solve_zero_sum(game({{5.0}}));
  CHECK(sol.value == Catch::Approx(5.0));
  CHECK(sol.mu_primal == Catch::Approx(0.2));
  CHECK(sol.mu_dual == Catch::Approx(0.2));
}

TEST_CASE("verify_equilibrium gaps") {
  PayoffMatrix pennies = game({{1.0, -1.0}, {-1.0, 1.0}});
  MixedStrategy half{{0.5, 0.5}};
  auto report = verify_equilibrium(pennies, half, half, 1e-6);
  CHECK(report.evader_gap == Catch::Approx(0.0).margin(1e-12));
  CHECK(report.interdictor_gap == Catch::Approx(0.0).margin(1e-12));
  CHECK(report.certified);

  // Pure saddle for a minimizing row player: entry (0,1) is the maximum of
  // row 0 and the minimum of column 1.
  PayoffMatrix saddle = game({{1.0, 2.0}, {4.0, 3.0}});
  MixedStrategy row{{1.0, 0.0}}, col{{0.0, 1.0}};
  auto pure = verify_equilibrium(saddle, row, col, 1e-6);
  CHECK(pure.evader_gap == 0.0);
  CHECK(pure.interdictor_gap == 0.0);

  MixedStrategy off{{1.0, 0.0}};
  auto uncertified = verify_equilibrium(pennies, off, half, 1e-6);
  CHECK(uncertified.max_gap() > 0.1);
  CHECK_FALSE(uncertified.certified);
}

TEST_CASE("Proposition-1 identity holds on random games") {
  std::mt19937 rng(2026);
  for (int trial = 0; trial < 50; ++trial) {
    PayoffMatrix m{random_matrix(rng), MatrixKind::Objective};
    GameSolution sol = solve_zero_sum(m);
    CHECK(std::abs(sol.mu_primal - sol.mu_dual) <=
          1e-6 * std::max(1.0, std::abs(sol.mu_primal)));
    CHECK(sol.value == Catch::Approx(1.0 / sol.mu_primal - sol.shift).margin(1e-9));
    CHECK(sol.value >= m.entries.min() - 1e-9);
    CHECK(sol.value <= m.entries.max() + 1e-9);
    CHECK(sol.exploitability <= 1e-6);
  }
}

TEST_CASE("shift invariance: value shifts, strategies cross-certify") {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> shift_dist(-20.0, 20.0);
  for (int trial = 0; trial < 30; ++trial) {
    PayoffMatrix m{random_matrix(rng), MatrixKind::Objective};
    double c = shift_dist(rng);
    PayoffMatrix shifted{m.entries.shifted(c), MatrixKind::Objective};

    GameSolution base = solve_zero_sum(m);
    GameSolution moved = solve_zero_sum(shifted);
    CHECK(moved.value == Catch::Approx(base.value + c).margin(1e-7));

    // The base strategies stay optimal on the shifted game and vice versa.
    CHECK(verify_equilibrium(shifted, base.y, base.x, 1e-6).certified);
    CHECK(verify_equilibrium(m, moved.y, moved.x, 1e-6).certified);
  }
}

TEST_CASE("equilibria of a game with duplicated rows are interchangeable") {
  // Rows 0 and 2 are identical, so mass can move between them freely.
  PayoffMatrix m = game({{0.0, 4.0}, {3.0, 1.0}, {0.0, 4.0}});
  GameSolution sol = solve_zero_sum(m);

  MixedStrategy y2 = sol.y;
  std::swap(y2.p[0], y2.p[2]);
  y2.p[0] = 0.5 * (sol.y.p[0] + sol.y.p[2]);
  y2.p[2] = sol.y.p[0] + sol.y.p[2] - y2.p[0];
  CHECK(verify_equilibrium(m, y2, sol.x, 1e-6).certified);

  // Cross pairings of the two certified equilibria are also equilibria.
  CHECK(verify_equilibrium(m, sol.y, sol.x, 1e-6).certified);
  CHECK(verify_equilibrium(m, y2, sol.x, 1e-6).certified);
}

TEST_CASE("LP value agrees with fictitious-play and support-enumeration oracles") {
  std::mt19937 rng(777);
  int support_checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    PayoffMatrix m{random_matrix(rng), MatrixKind::Objective};
    GameSolution sol = solve_zero_sum(m);

    auto bracket = oracles::fictitious_play(m.entries, 1e-3);
    REQUIRE(bracket.converged);
    CHECK(sol.value >= bracket.lower - 1e-3);
    CHECK(sol.value <= bracket.upper + 1e-3);

    if (auto exact = oracles::support_enumeration(m.entries)) {
      CHECK(sol.value == Catch::Approx(*exact).margin(1e-9));
      ++support_checked;
    }
  }
  CHECK(support_checked > 10);
}

TEST_CASE("security strategies degenerate to the saddle point on a shared matrix") {
  SecurityGraph g = builtin_case_study();
  auto paths = enumerate_paths(g);
  Matrix l = incidence(g, paths);
  PayoffMatrix m = build_objective_matrix(g, paths, l);

  GameSolution reference = solve_zero_sum(m);
  auto [vendor, attacker] = solve_pt_security(m, m);
  CHECK(vendor.value == Catch::Approx(reference.value).margin(1e-9));
  CHECK(attacker.value == Catch::Approx(reference.value).margin(1e-9));
  CHECK(vendor.exploitability <= 1e-6);
  CHECK(attacker.exploitability <= 1e-6);
  // The vendor's security strategy is optimal against the attacker's.
  CHECK(verify_equilibrium(m, vendor.y, attacker.x, 1e-6).certified);
}

TEST_CASE("dimension and emptiness errors") {
  PayoffMatrix empty{Matrix(), MatrixKind::Objective};
  CHECK_THROWS_AS(solve_zero_sum(empty), std::invalid_argument);

  PayoffMatrix a = game({{1.0, 2.0}});
  PayoffMatrix b = game({{1.0}, {2.0}});
  CHECK_THROWS_AS(solve_pt_security(a, b), std::invalid_argument);

  MixedStrategy y{{1.0}}, x{{1.0}};
  CHECK_THROWS_AS(verify_equilibrium(a, y, x, 1e-6), std::invalid_argument);
}
