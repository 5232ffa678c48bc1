#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "interdiction/graph.hpp"
#include "interdiction/payoff.hpp"
#include "interdiction/solver.hpp"

#include <json.hpp>

namespace interdiction {

struct ExperimentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { Eut, Pt, Both };

struct SweepSpec {
  enum class Param { None, Gamma, LambdaVendor };
  Param param = Param::None;
  std::vector<double> values;
};

/// One experiment run: a graph source, a mode, per-player subjective
/// parameters, and an optional one-parameter sweep. `seed` is reserved for
/// future stochastic extensions; the current pipeline is deterministic.
struct ExperimentConfig {
  std::string graph_source = "builtin:paper";
  Mode mode = Mode::Both;
  ProspectParams vendor{0.5, 5.0, 0.2, 0.8, 30.0};
  ProspectParams attacker{0.5, 5.0, 0.2, 0.8, 30.0};
  SweepSpec sweep;
  std::string out_dir = ".";
  unsigned seed = 0;

  void validate() const {
    vendor.validate();
    attacker.validate();
    for (double v : sweep.values) {
      if (sweep.param == SweepSpec::Param::Gamma && !(v > 0.0 && v <= 1.0))
        throw ExperimentError("sweep gamma value " + std::to_string(v) + " outside (0,1]");
      if (sweep.param == SweepSpec::Param::LambdaVendor && !(v >= 1.0))
        throw ExperimentError("sweep lambda value " + std::to_string(v) + " below 1");
    }
    if (sweep.param != SweepSpec::Param::None && sweep.values.empty())
      throw ExperimentError("sweep requested with an empty value list");
  }
};

struct RunRecord {
  bool subjective = false;  // false: classical expected-utility record
  double sweep_value = std::numeric_limits<double>::quiet_NaN();
  ProspectParams vendor_params;
  ProspectParams attacker_params;
  MixedStrategy y;  // vendor path strategy
  MixedStrategy x;  // attacker node strategy
  double vendor_value = 0.0;    // game value of the vendor's problem
  double attacker_value = 0.0;  // game value of the attacker's problem
  double achieved_delivery = 0.0;
  double exploitability = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::optional<SecurityGraph> graph;
  std::vector<Path> paths;
  PayoffMatrix objective;
  std::vector<RunRecord> records;
};

/// The bundled 10-node, 18-edge case-study instance. Node 1 is the
/// warehouse, node 10 the customer; the intermediate danger points form
/// three layers {2,3,4}, {5,6}, {7,8,9}. Edge times follow the layered
/// enumeration ordered lexicographically by (from, to).
inline SecurityGraph builtin_case_study() {
  std::vector<std::string> ids;
  for (int i = 1; i <= 10; ++i) ids.push_back(std::to_string(i));
  std::vector<double> p = {0.0, 0.2, 0.4, 0.2, 0.4, 0.4, 0.5, 0.8, 0.5, 0.0};
  auto e = [](int from, int to, double t) {
    return SecurityGraph::Edge{from - 1, to - 1, t};
  };
  std::vector<SecurityGraph::Edge> edges = {
      e(1, 2, 3),  e(1, 3, 3),  e(1, 4, 3),   e(2, 5, 6),   e(2, 6, 6),   e(3, 5, 3),
      e(3, 6, 6),  e(4, 5, 6),  e(4, 6, 6),   e(5, 7, 8),   e(5, 8, 6),   e(5, 9, 8),
      e(6, 7, 10), e(6, 8, 10), e(6, 9, 10),  e(7, 10, 14), e(8, 10, 12), e(9, 10, 14)};
  return SecurityGraph(std::move(ids), std::move(p), std::move(edges), 0, 9);
}

/// Worst-case expected delivery time of path mixing y on the objective
/// matrix: max over attacker pure strategies of yᵀ M e_n. For a classical
/// equilibrium strategy this equals the game value; for a subjective
/// strategy it is the objective delivery time it guarantees against the
/// worst attack. This is the "achieved expected delivery time" reported by
/// every record.
inline double achieved_delivery_time(const PayoffMatrix& objective, const MixedStrategy& y) {
  if (y.p.size() != objective.entries.rows())
    throw std::invalid_argument("strategy/matrix dimension mismatch");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < objective.entries.cols(); ++n) {
    double v = 0.0;
    for (std::size_t h = 0; h < y.p.size(); ++h) v += y.p[h] * objective.entries(h, n);
    if (v > worst) worst = v;
  }
  return worst;
}

inline SecurityGraph load_graph(const std::string& source) {
  if (source == "builtin:paper" || source == "builtin") return builtin_case_study();
  std::ifstream in(source);
  if (!in) throw ExperimentError("cannot open graph file '" + source + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

inline ExperimentReport run(const ExperimentConfig& config) {
  config.validate();
  ExperimentReport report;
  report.config = config;
  report.graph = load_graph(config.graph_source);
  const SecurityGraph& g = *report.graph;
  report.paths = enumerate_paths(g);
  if (report.paths.empty()) throw ExperimentError("graph admits no origin->destination path");
  Matrix l = incidence(g, report.paths);
  report.objective = build_objective_matrix(g, report.paths, l);

  if (config.mode != Mode::Pt) {
    GameSolution sol = solve_zero_sum(report.objective);
    RunRecord rec;
    rec.subjective = false;
    rec.y = sol.y;
    rec.x = sol.x;
    rec.vendor_value = rec.attacker_value = sol.value;
    rec.achieved_delivery = achieved_delivery_time(report.objective, sol.y);
    rec.exploitability = sol.exploitability;
    report.records.push_back(std::move(rec));
  }

  if (config.mode != Mode::Eut) {
    std::vector<double> points = config.sweep.param == SweepSpec::Param::None
                                     ? std::vector<double>{std::numeric_limits<double>::quiet_NaN()}
                                     : config.sweep.values;
    for (double point : points) {
      ProspectParams vendor = config.vendor;
      ProspectParams attacker = config.attacker;
      if (config.sweep.param == SweepSpec::Param::Gamma)
        vendor.gamma = attacker.gamma = point;
      else if (config.sweep.param == SweepSpec::Param::LambdaVendor)
        vendor.lambda = point;

      PayoffMatrix mv = build_pt_matrix(Player::Vendor, g, report.paths, l, vendor);
      PayoffMatrix ma = build_pt_matrix(Player::Attacker, g, report.paths, l, attacker);
      auto [vendor_sol, attacker_sol] = solve_pt_security(mv, ma);

      RunRecord rec;
      rec.subjective = true;
      rec.sweep_value = point;
      rec.vendor_params = vendor;
      rec.attacker_params = attacker;
      rec.y = vendor_sol.y;
      rec.x = attacker_sol.x;
      rec.vendor_value = vendor_sol.value;
      rec.attacker_value = attacker_sol.value;
      rec.achieved_delivery = achieved_delivery_time(report.objective, vendor_sol.y);
      rec.exploitability = std::max(vendor_sol.exploitability, attacker_sol.exploitability);
      report.records.push_back(std::move(rec));
    }
  }
  return report;
}

namespace detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}
inline std::string prob(double v) { return fmt("%.6f", v); }
inline std::string time_min(double v) { return fmt("%.4f", v); }
inline std::string knob(double v) { return fmt("%g", v); }

inline std::string path_label(const SecurityGraph& g, const Path& p) {
  std::string s;
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (i) s += '-';
    s += g.node_id(p.nodes[i]);
  }
  return s;
}

inline const RunRecord& find_eut(const ExperimentReport& r, const std::string& figure) {
  for (const auto& rec : r.records)
    if (!rec.subjective) return rec;
  throw ExperimentError("figure " + figure + " needs a classical (eut) run; none present");
}

inline std::vector<const RunRecord*> sweep_records(const ExperimentReport& r,
                                                   SweepSpec::Param param,
                                                   const std::string& figure) {
  if (r.config.sweep.param != param)
    throw ExperimentError("figure " + figure + " needs a " +
                          (param == SweepSpec::Param::Gamma ? std::string("gamma")
                                                            : std::string("lambda_vendor")) +
                          " sweep; the report holds none");
  std::vector<const RunRecord*> out;
  for (const auto& rec : r.records)
    if (rec.subjective) out.push_back(&rec);
  for (double v : r.config.sweep.values) {
    bool found = false;
    for (const auto* rec : out) found = found || rec->sweep_value == v;
    if (!found)
      throw ExperimentError("figure " + figure + " is missing sweep point " + knob(v));
  }
  return out;
}

inline std::size_t shortest_path_index(const std::vector<Path>& paths) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < paths.size(); ++i)
    if (paths[i].total_time < paths[best].total_time) best = i;
  return best;
}

inline void write_file(const std::filesystem::path& file, const std::string& content) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content) || !out.flush()) {
    out.close();
    std::error_code ec;
    std::filesystem::remove(file, ec);
    throw ExperimentError("failed writing '" + file.string() + "'");
  }
}

}  // namespace detail

/// Emits one figure's CSV into `out_dir` as fig<figure>.csv. Figures:
///   3a  path lengths
///   3b  vendor path strategy, classical column plus one column per gamma
///   4a  objective p_n vs Prelec-weighted w(p_n) per gamma
///   4b  attacker node strategy, classical column plus one column per gamma
///   5   achieved delivery time vs gamma
///   6   shortest-path probability and delivery time vs lambda_U
inline std::filesystem::path emit_figure_data(const ExperimentReport& r,
                                              const std::string& figure,
                                              const std::filesystem::path& out_dir) {
  if (!r.graph) throw ExperimentError("report holds no graph");
  const SecurityGraph& g = *r.graph;
  std::ostringstream csv;

  if (figure == "3a") {
    csv << "path,nodes,length_minutes\n";
    for (std::size_t h = 0; h < r.paths.size(); ++h)
      csv << (h + 1) << ',' << detail::path_label(g, r.paths[h]) << ','
          << detail::time_min(r.paths[h].total_time) << '\n';
  } else if (figure == "3b" || figure == "4b") {
    const RunRecord& eut = detail::find_eut(r, figure);
    auto pts = detail::sweep_records(r, SweepSpec::Param::Gamma, figure);
    const bool vendor_side = figure == "3b";
    csv << (vendor_side ? "path" : "node") << ",cgt";
    for (const auto* rec : pts) csv << ",pt_gamma_" << detail::knob(rec->sweep_value);
    csv << '\n';
    std::size_t count = vendor_side ? r.paths.size() : g.node_count();
    for (std::size_t i = 0; i < count; ++i) {
      csv << (vendor_side ? std::to_string(i + 1) : g.node_id(static_cast<int>(i)));
      csv << ',' << detail::prob(vendor_side ? eut.y.p[i] : eut.x.p[i]);
      for (const auto* rec : pts)
        csv << ',' << detail::prob(vendor_side ? rec->y.p[i] : rec->x.p[i]);
      csv << '\n';
    }
  } else if (figure == "4a") {
    auto pts = detail::sweep_records(r, SweepSpec::Param::Gamma, figure);
    csv << "node,p";
    for (const auto* rec : pts) csv << ",w_gamma_" << detail::knob(rec->sweep_value);
    csv << '\n';
    for (int n = 0; n < g.node_count(); ++n) {
      csv << g.node_id(n) << ',' << detail::prob(g.attack_prob(n));
      for (const auto* rec : pts)
        csv << ',' << detail::prob(prelec_weight(g.attack_prob(n), rec->sweep_value));
      csv << '\n';
    }
  } else if (figure == "5") {
    auto pts = detail::sweep_records(r, SweepSpec::Param::Gamma, figure);
    csv << "gamma,delivery_time_minutes\n";
    for (const auto* rec : pts)
      csv << detail::knob(rec->sweep_value) << ','
          << detail::time_min(rec->achieved_delivery) << '\n';
  } else if (figure == "6") {
    auto pts = detail::sweep_records(r, SweepSpec::Param::LambdaVendor, figure);
    std::size_t shortest = detail::shortest_path_index(r.paths);
    csv << "lambda_u,shortest_path_probability,delivery_time_minutes\n";
    for (const auto* rec : pts)
      csv << detail::knob(rec->sweep_value) << ',' << detail::prob(rec->y.p[shortest]) << ','
          << detail::time_min(rec->achieved_delivery) << '\n';
  } else {
    throw ExperimentError("unknown figure '" + figure + "' (expected 3a, 3b, 4a, 4b, 5 or 6)");
  }

  std::filesystem::create_directories(out_dir);
  auto file = out_dir / ("fig" + figure + ".csv");
  detail::write_file(file, csv.str());
  return file;
}

inline std::filesystem::path write_summary(const ExperimentReport& r,
                                           const std::filesystem::path& out_dir) {
  if (!r.graph) throw ExperimentError("report holds no graph");
  const SecurityGraph& g = *r.graph;
  std::ostringstream out;
  out << "graph: " << r.config.graph_source << " (" << g.node_count() << " nodes, "
      << g.edge_count() << " edges, " << r.paths.size() << " simple paths)\n";
  std::size_t shortest = detail::shortest_path_index(r.paths);
  out << "shortest path: " << (shortest + 1) << " = "
      << detail::path_label(g, r.paths[shortest]) << " ("
      << detail::time_min(r.paths[shortest].total_time) << " min)\n\n";

  for (const auto& rec : r.records) {
    if (!rec.subjective) {
      out << "[classical] value " << detail::time_min(rec.vendor_value) << " min";
    } else {
      out << "[subjective] gamma_U=" << detail::knob(rec.vendor_params.gamma)
          << " gamma_A=" << detail::knob(rec.attacker_params.gamma)
          << " lambda_U=" << detail::knob(rec.vendor_params.lambda)
          << " lambda_A=" << detail::knob(rec.attacker_params.lambda) << " | vendor value "
          << detail::knob(rec.vendor_value) << ", attacker value "
          << detail::knob(rec.attacker_value);
    }
    out << ", worst-case delivery " << detail::time_min(rec.achieved_delivery)
        << " min, exploitability " << detail::fmt("%.2e", rec.exploitability) << '\n';
    out << "  vendor y:";
    for (std::size_t h = 0; h < rec.y.p.size(); ++h)
      if (rec.y.p[h] > 1e-9) out << ' ' << (h + 1) << ':' << detail::prob(rec.y.p[h]);
    out << "\n  attacker x:";
    for (std::size_t n = 0; n < rec.x.p.size(); ++n)
      if (rec.x.p[n] > 1e-9)
        out << ' ' << g.node_id(static_cast<int>(n)) << ':' << detail::prob(rec.x.p[n]);
    out << '\n';
  }

  std::filesystem::create_directories(out_dir);
  auto file = out_dir / "summary.txt";
  detail::write_file(file, out.str());
  return file;
}

/// Parses a config JSON document (keys: graph, mode, vendor, attacker,
/// sweep {param, values}, out, seed). Missing keys keep their defaults.
inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ExperimentError(std::string("malformed config document: ") + e.what());
  }
  try {
    if (doc.contains("graph")) cfg.graph_source = doc["graph"].get<std::string>();
    if (doc.contains("mode")) {
      std::string mode = doc["mode"].get<std::string>();
      if (mode == "eut")
        cfg.mode = Mode::Eut;
      else if (mode == "pt")
        cfg.mode = Mode::Pt;
      else if (mode == "both")
        cfg.mode = Mode::Both;
      else
        throw ExperimentError("unknown mode '" + mode + "'");
    }
    auto read_params = [&](const char* key, ProspectParams& p) {
      if (!doc.contains(key)) return;
      const auto& j = doc[key];
      if (j.contains("gamma")) p.gamma = j["gamma"].get<double>();
      if (j.contains("lambda")) p.lambda = j["lambda"].get<double>();
      if (j.contains("alpha")) p.alpha = j["alpha"].get<double>();
      if (j.contains("beta")) p.beta = j["beta"].get<double>();
      if (j.contains("reference")) p.reference = j["reference"].get<double>();
    };
    read_params("vendor", cfg.vendor);
    read_params("attacker", cfg.attacker);
    if (doc.contains("sweep")) {
      std::string param = doc["sweep"].at("param").get<std::string>();
      if (param == "gamma")
        cfg.sweep.param = SweepSpec::Param::Gamma;
      else if (param == "lambda_vendor")
        cfg.sweep.param = SweepSpec::Param::LambdaVendor;
      else
        throw ExperimentError("unknown sweep parameter '" + param + "'");
      cfg.sweep.values = doc["sweep"].at("values").get<std::vector<double>>();
    }
    if (doc.contains("out")) cfg.out_dir = doc["out"].get<std::string>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw ExperimentError(std::string("malformed config document: ") + e.what());
  }
  return cfg;
}

}  // namespace interdiction
