#pragma once

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "interdiction/matrix.hpp"

#include <json.hpp>

namespace interdiction {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Directed danger-point graph between a warehouse (origin) and a customer
/// location (destination). Node identifiers are opaque strings in the file
/// format and are mapped to dense indices in document order; every matrix
/// in this library reports in that order.
class SecurityGraph {
 public:
  struct Edge {
    int from = -1;
    int to = -1;
    double time = 0.0;  // minutes
  };

  SecurityGraph(std::vector<std::string> node_ids, std::vector<double> attack_probs,
                std::vector<Edge> edges, int origin, int destination)
      : node_ids_(std::move(node_ids)),
        attack_probs_(std::move(attack_probs)),
        edges_(std::move(edges)),
        origin_(origin),
        destination_(destination) {
    validate();
    out_.assign(node_count(), {});
    for (const Edge& e : edges_) out_[e.from].push_back(e);
    for (auto& adj : out_)
      std::sort(adj.begin(), adj.end(), [](const Edge& a, const Edge& b) { return a.to < b.to; });
  }

  int node_count() const { return static_cast<int>(node_ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int origin() const { return origin_; }
  int destination() const { return destination_; }
  const std::vector<std::string>& node_ids() const { return node_ids_; }
  const std::string& node_id(int n) const { return node_ids_.at(n); }
  double attack_prob(int n) const { return attack_probs_.at(n); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Outgoing edges of `n`, sorted by target index.
  const std::vector<Edge>& out(int n) const { return out_.at(n); }

  int index_of(const std::string& id) const {
    for (int n = 0; n < node_count(); ++n)
      if (node_ids_[n] == id) return n;
    return -1;
  }

 private:
  void validate() const {
    if (attack_probs_.size() != node_ids_.size())
      throw GraphError("node/probability count mismatch");
    {
      std::unordered_map<std::string, int> seen;
      for (const auto& id : node_ids_)
        if (++seen[id] > 1) throw GraphError("duplicate node id '" + id + "'");
    }
    for (std::size_t n = 0; n < attack_probs_.size(); ++n) {
      double p = attack_probs_[n];
      if (!(p >= 0.0 && p <= 1.0))
        throw GraphError("attack probability of node '" + node_ids_[n] + "' is " +
                         std::to_string(p) + ", outside [0,1]");
    }
    if (origin_ < 0 || origin_ >= node_count()) throw GraphError("origin missing from nodes");
    if (destination_ < 0 || destination_ >= node_count())
      throw GraphError("destination missing from nodes");
    if (origin_ == destination_) throw GraphError("origin equals destination");

    std::vector<std::vector<bool>> pair(node_count(), std::vector<bool>(node_count(), false));
    for (const Edge& e : edges_) {
      if (e.from < 0 || e.from >= node_count() || e.to < 0 || e.to >= node_count())
        throw GraphError("edge endpoint out of range");
      if (e.from == e.to)
        throw GraphError("self-loop at node '" + node_ids_[e.from] + "'");
      if (pair[e.from][e.to])
        throw GraphError("duplicate edge " + node_ids_[e.from] + " -> " + node_ids_[e.to]);
      pair[e.from][e.to] = true;
      if (!(e.time >= 0.0))
        throw GraphError("negative time on edge " + node_ids_[e.from] + " -> " +
                         node_ids_[e.to]);
    }

    // Every node must lie on some O->D walk: reachable from O and reaching D.
    auto reach = [&](int start, bool forward) {
      std::vector<bool> seen(node_count(), false);
      std::deque<int> q{start};
      seen[start] = true;
      while (!q.empty()) {
        int n = q.front();
        q.pop_front();
        for (const Edge& e : edges_) {
          int u = forward ? e.from : e.to;
          int v = forward ? e.to : e.from;
          if (u == n && !seen[v]) {
            seen[v] = true;
            q.push_back(v);
          }
        }
      }
      return seen;
    };
    auto from_o = reach(origin_, true);
    auto to_d = reach(destination_, false);
    for (int n = 0; n < node_count(); ++n)
      if (!(from_o[n] && to_d[n]))
        throw GraphError("node '" + node_ids_[n] + "' lies on no origin->destination path");
  }

  std::vector<std::string> node_ids_;
  std::vector<double> attack_probs_;
  std::vector<Edge> edges_;
  int origin_;
  int destination_;
  std::vector<std::vector<Edge>> out_;
};

/// A simple origin->destination path with its derived timing data.
struct Path {
  std::vector<int> nodes;          // dense indices, origin first, destination last
  std::vector<double> edge_times;  // nodes.size() - 1 entries
  std::vector<double> arrivals;    // time to reach nodes[i] from the origin
  double total_time = 0.0;

  bool contains(int node) const {
    return std::find(nodes.begin(), nodes.end(), node) != nodes.end();
  }

  /// Time to reach `node` from the origin along this path.
  double arrival_time(int node) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i] == node) return arrivals[i];
    throw GraphError("node index " + std::to_string(node) + " is not on this path");
  }
};

inline Path make_path(const SecurityGraph& g, const std::vector<int>& nodes) {
  Path p;
  p.nodes = nodes;
  p.arrivals.reserve(nodes.size());
  double t = 0.0;
  p.arrivals.push_back(0.0);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto& adj = g.out(nodes[i]);
    auto it = std::find_if(adj.begin(), adj.end(),
                           [&](const SecurityGraph::Edge& e) { return e.to == nodes[i + 1]; });
    if (it == adj.end()) throw GraphError("path uses a nonexistent edge");
    p.edge_times.push_back(it->time);
    t += it->time;
    p.arrivals.push_back(t);
  }
  p.total_time = t;
  return p;
}

/// All simple origin->destination paths, in lexicographic order of their node
/// sequences under the document's node ordering. Depth-first search with an
/// on-path visited set; cycles in the input are allowed, simplicity bounds
/// the recursion.
inline std::vector<Path> enumerate_paths(const SecurityGraph& g) {
  std::vector<Path> out;
  std::vector<int> stack{g.origin()};
  std::vector<bool> on_path(g.node_count(), false);
  on_path[g.origin()] = true;

  auto dfs = [&](auto&& self, int node) -> void {
    if (node == g.destination()) {
      out.push_back(make_path(g, stack));
      return;
    }
    for (const SecurityGraph::Edge& e : g.out(node)) {
      if (on_path[e.to]) continue;
      on_path[e.to] = true;
      stack.push_back(e.to);
      self(self, e.to);
      stack.pop_back();
      on_path[e.to] = false;
    }
  };
  dfs(dfs, g.origin());
  return out;
}

/// H x N binary matrix: entry (h, n) is 1 exactly when node n occurs in path h.
inline Matrix incidence(const SecurityGraph& g, const std::vector<Path>& paths) {
  Matrix l(paths.size(), g.node_count(), 0.0);
  for (std::size_t h = 0; h < paths.size(); ++h)
    for (int n : paths[h].nodes) l(h, n) = 1.0;
  return l;
}

/// Parses the graph document format: JSON with `nodes` ({id, p}), `edges`
/// ({from, to, t}), `origin`, `destination`.
inline SecurityGraph parse_graph(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw GraphError(std::string("malformed graph document: ") + e.what());
  }
  try {
    std::vector<std::string> ids;
    std::vector<double> probs;
    for (const auto& n : doc.at("nodes")) {
      ids.push_back(n.at("id").get<std::string>());
      probs.push_back(n.at("p").get<double>());
    }
    auto index_of = [&](const std::string& id) {
      auto it = std::find(ids.begin(), ids.end(), id);
      return it == ids.end() ? -1 : static_cast<int>(it - ids.begin());
    };
    std::vector<SecurityGraph::Edge> edges;
    for (const auto& e : doc.at("edges")) {
      SecurityGraph::Edge edge;
      edge.from = index_of(e.at("from").get<std::string>());
      edge.to = index_of(e.at("to").get<std::string>());
      if (edge.from < 0 || edge.to < 0)
        throw GraphError("edge references unknown node '" +
                         (edge.from < 0 ? e.at("from").get<std::string>()
                                        : e.at("to").get<std::string>()) +
                         "'");
      edge.time = e.at("t").get<double>();
      edges.push_back(edge);
    }
    int origin = index_of(doc.at("origin").get<std::string>());
    int destination = index_of(doc.at("destination").get<std::string>());
    if (origin < 0) throw GraphError("origin missing from nodes");
    if (destination < 0) throw GraphError("destination missing from nodes");
    return SecurityGraph(std::move(ids), std::move(probs), std::move(edges), origin,
                         destination);
  } catch (const nlohmann::json::exception& e) {
    throw GraphError(std::string("malformed graph document: ") + e.what());
  }
}

}  // namespace interdiction
