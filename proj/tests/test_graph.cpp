#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "interdiction/experiments.hpp"
#include "interdiction/graph.hpp"
#include "oracles.hpp"

using namespace interdiction;

namespace {

const char* kDiamondDoc = R"({
  "nodes": [{"id":"O","p":0.0},{"id":"a","p":0.3},{"id":"b","p":0.5},{"id":"D","p":0.0}],
  "edges": [{"from":"O","to":"a","t":2},{"from":"a","to":"D","t":3},
            {"from":"O","to":"b","t":1},{"from":"b","to":"D","t":4}],
  "origin": "O", "destination": "D"
})";

// Random DAG over nodes 0..n-1 (0 = origin, n-1 = destination), with a
// guaranteed direct edge so construction never fails reachability; nodes
// off every path are filtered before construction.
SecurityGraph random_dag(std::mt19937& rng, int max_nodes = 12) {
  std::uniform_int_distribution<int> size_dist(2, max_nodes);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = size_dist(rng);

  std::vector<std::pair<int, int>> edge_pairs{{0, n - 1}};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(i == 0 && j == n - 1) && unit(rng) < 0.35) edge_pairs.push_back({i, j});

  // Keep nodes that are reachable from the origin and reach the destination.
  std::vector<bool> from_o(n, false), to_d(n, false);
  from_o[0] = true;
  for (int i = 0; i < n; ++i)
    for (auto [u, v] : edge_pairs)
      if (from_o[u]) from_o[v] = true;
  to_d[n - 1] = true;
  for (int i = 0; i < n; ++i)
    for (auto it = edge_pairs.rbegin(); it != edge_pairs.rend(); ++it)
      if (to_d[it->second]) to_d[it->first] = true;

  std::vector<int> remap(n, -1);
  std::vector<std::string> ids;
  std::vector<double> probs;
  for (int i = 0; i < n; ++i)
    if (from_o[i] && to_d[i]) {
      remap[i] = static_cast<int>(ids.size());
      ids.push_back("n" + std::to_string(i));
      probs.push_back(unit(rng));
    }
  std::vector<SecurityGraph::Edge> edges;
  for (auto [u, v] : edge_pairs)
    if (remap[u] >= 0 && remap[v] >= 0)
      edges.push_back({remap[u], remap[v], 10.0 * unit(rng)});
  return SecurityGraph(std::move(ids), std::move(probs), std::move(edges), 0,
                       remap[n - 1]);
}

}  // namespace

TEST_CASE("two-node document parses to a single-edge graph") {
  SecurityGraph g = parse_graph(R"({
    "nodes": [{"id":"O","p":0.0},{"id":"D","p":0.1}],
    "edges": [{"from":"O","to":"D","t":5}],
    "origin": "O", "destination": "D"
  })");
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  auto paths = enumerate_paths(g);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].total_time == 5.0);
  CHECK(paths[0].arrival_time(g.origin()) == 0.0);
  CHECK(paths[0].arrival_time(g.destination()) == 5.0);
}

TEST_CASE("validation errors name the offending field") {
  auto doc = [](const std::string& body) {
    return parse_graph(body);
  };
  CHECK_THROWS_WITH(doc(R"({
      "nodes": [{"id":"O","p":0.0},{"id":"3","p":1.2},{"id":"D","p":0.0}],
      "edges": [{"from":"O","to":"3","t":1},{"from":"3","to":"D","t":1}],
      "origin":"O","destination":"D"})"),
                    Catch::Matchers::ContainsSubstring("node '3'") &&
                        Catch::Matchers::ContainsSubstring("outside [0,1]"));
  CHECK_THROWS_WITH(doc(R"({
      "nodes": [{"id":"O","p":0.0},{"id":"D","p":0.0}],
      "edges": [{"from":"O","to":"D","t":-1}],
      "origin":"O","destination":"D"})"),
                    Catch::Matchers::ContainsSubstring("negative time"));
  CHECK_THROWS_WITH(doc(R"({
      "nodes": [{"id":"O","p":0.0},{"id":"x","p":0.0},{"id":"D","p":0.0}],
      "edges": [{"from":"O","to":"D","t":1},{"from":"x","to":"D","t":1}],
      "origin":"O","destination":"D"})"),
                    Catch::Matchers::ContainsSubstring("node 'x'") &&
                        Catch::Matchers::ContainsSubstring("no origin->destination path"));
  CHECK_THROWS_WITH(doc(R"({
      "nodes": [{"id":"O","p":0.0},{"id":"D","p":0.0}],
      "edges": [{"from":"O","to":"D","t":1}],
      "origin":"Q","destination":"D"})"),
                    Catch::Matchers::ContainsSubstring("origin"));
  CHECK_THROWS_AS(doc("{ not json"), GraphError);
  CHECK_THROWS_WITH(doc(R"({
      "nodes": [{"id":"O","p":0.0},{"id":"D","p":0.0}],
      "edges": [{"from":"O","to":"D","t":1},{"from":"O","to":"D","t":2}],
      "origin":"O","destination":"D"})"),
                    Catch::Matchers::ContainsSubstring("duplicate edge"));
  CHECK_THROWS_WITH(doc(R"({
      "nodes": [{"id":"O","p":0.0},{"id":"D","p":0.0}],
      "edges": [{"from":"O","to":"O","t":1},{"from":"O","to":"D","t":2}],
      "origin":"O","destination":"D"})"),
                    Catch::Matchers::ContainsSubstring("self-loop"));
}

TEST_CASE("diamond graph: two paths in lexicographic order, incidence differs at a,b") {
  SecurityGraph g = parse_graph(kDiamondDoc);
  auto paths = enumerate_paths(g);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].nodes == std::vector<int>{0, 1, 3});  // O-a-D before O-b-D
  CHECK(paths[1].nodes == std::vector<int>{0, 2, 3});
  CHECK(paths[0].total_time == 5.0);
  CHECK(paths[1].total_time == 5.0);

  Matrix l = incidence(g, paths);
  REQUIRE(l.rows() == 2);
  REQUIRE(l.cols() == 4);
  // Every path traverses O and D.
  CHECK(l(0, 0) == 1.0);
  CHECK(l(1, 0) == 1.0);
  CHECK(l(0, 3) == 1.0);
  CHECK(l(1, 3) == 1.0);
  // Rows differ exactly at columns a and b.
  CHECK(l(0, 1) == 1.0);
  CHECK(l(0, 2) == 0.0);
  CHECK(l(1, 1) == 0.0);
  CHECK(l(1, 2) == 1.0);
}

TEST_CASE("arrival time is the traversed prefix sum") {
  SecurityGraph g = builtin_case_study();
  auto paths = enumerate_paths(g);
  // Path (1,2,5,7,10): reaching node 5 takes the first two edges, 3 + 6.
  const Path& p = paths[0];
  REQUIRE(p.nodes == std::vector<int>{0, 1, 4, 6, 9});
  CHECK(p.arrival_time(4) == 9.0);
  CHECK(p.arrival_time(g.origin()) == 0.0);
  CHECK_THROWS_AS(p.arrival_time(2), GraphError);
}

TEST_CASE("case-study structure: 18 paths, shortest 8 then 2 and 14 tied") {
  SecurityGraph g = builtin_case_study();
  auto paths = enumerate_paths(g);
  REQUIRE(paths.size() == 18);

  std::vector<std::size_t> order(paths.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return paths[a].total_time < paths[b].total_time;
  });
  CHECK(order[0] == 7);  // path 8 = (3,5,8)
  CHECK(std::set<std::size_t>{order[1], order[2]} == std::set<std::size_t>{1, 13});
  CHECK(paths[order[1]].total_time == paths[order[2]].total_time);
  CHECK(paths[order[0]].total_time < paths[order[1]].total_time);
}

TEST_CASE("prefix/suffix conservation on random DAGs") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    SecurityGraph g = random_dag(rng);
    for (const Path& p : enumerate_paths(g)) {
      double previous = -1.0;
      for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        double prefix = p.arrival_time(p.nodes[i]);
        CHECK(prefix >= previous);
        previous = prefix;
        double suffix = 0.0;
        for (std::size_t k = i; k < p.edge_times.size(); ++k) suffix += p.edge_times[k];
        CHECK(prefix + suffix == Catch::Approx(p.total_time).margin(1e-12));
      }
    }
  }
}

TEST_CASE("enumeration agrees with the brute-force oracle and is duplicate-free") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 80; ++trial) {
    SecurityGraph g = random_dag(rng);
    auto paths = enumerate_paths(g);
    std::vector<std::vector<int>> sequences;
    for (const Path& p : paths) {
      CHECK(p.nodes.front() == g.origin());
      CHECK(p.nodes.back() == g.destination());
      CHECK(std::set<int>(p.nodes.begin(), p.nodes.end()).size() == p.nodes.size());
      sequences.push_back(p.nodes);
    }
    CHECK(std::is_sorted(sequences.begin(), sequences.end()));
    CHECK(std::set<std::vector<int>>(sequences.begin(), sequences.end()).size() ==
          sequences.size());
    CHECK(sequences == oracles::brute_force_paths(g));
  }
}

TEST_CASE("enumeration is deterministic") {
  SecurityGraph g = builtin_case_study();
  auto a = enumerate_paths(g);
  auto b = enumerate_paths(g);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].nodes == b[i].nodes);
    CHECK(a[i].total_time == b[i].total_time);
  }
}

TEST_CASE("graphs with cycles are accepted; paths stay simple") {
  SecurityGraph g = parse_graph(R"({
    "nodes": [{"id":"O","p":0.0},{"id":"a","p":0.2},{"id":"b","p":0.2},{"id":"D","p":0.0}],
    "edges": [{"from":"O","to":"a","t":1},{"from":"a","to":"b","t":1},
              {"from":"b","to":"a","t":1},{"from":"b","to":"D","t":1}],
    "origin": "O", "destination": "D"
  })");
  auto paths = enumerate_paths(g);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].nodes == std::vector<int>{0, 1, 2, 3});
}
