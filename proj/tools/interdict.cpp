// Command-line front end for the network-interdiction game library.
//
// Subcommands:
//   paths    enumerate the simple delivery paths of a graph
//   solve    one-shot classical and/or subjective solve
//   sweep    one-parameter sweep (gamma or lambda-u), CSV + summary output
//   figures  emit the case-study figure CSVs (fig3a.csv .. fig6.csv)

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "interdiction/experiments.hpp"

#include <CLI11.hpp>

namespace {

using namespace interdiction;

struct CliOptions {
  std::string config_file;
  std::string graph;
  std::string mode;
  std::string out;
  double gamma = -1.0;
  double lambda_u = -1.0;
  double lambda_a = -1.0;
  double alpha = -1.0;
  double beta = -1.0;
  double ref = std::numeric_limits<double>::quiet_NaN();
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--config", opt.config_file, "config JSON file (flags override its values)");
  cmd->add_option("--graph", opt.graph, "graph JSON file, or builtin:paper");
  cmd->add_option("--mode", opt.mode, "eut, pt or both")
      ->check(CLI::IsMember({"eut", "pt", "both"}));
  cmd->add_option("--gamma", opt.gamma, "rationality parameter for both players");
  cmd->add_option("--lambda-u", opt.lambda_u, "vendor loss multiplier");
  cmd->add_option("--lambda-a", opt.lambda_a, "attacker loss multiplier");
  cmd->add_option("--alpha", opt.alpha, "gain exponent for both players");
  cmd->add_option("--beta", opt.beta, "loss exponent for both players");
  cmd->add_option("--ref", opt.ref, "reference delivery time for both players, minutes");
  cmd->add_option("--out", opt.out, "output directory");
}

ExperimentConfig build_config(const CliOptions& opt) {
  ExperimentConfig cfg;
  if (!opt.config_file.empty()) {
    std::ifstream in(opt.config_file);
    if (!in) throw ExperimentError("cannot open config file '" + opt.config_file + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = parse_config(buf.str());
  }
  if (!opt.graph.empty()) cfg.graph_source = opt.graph;
  if (opt.mode == "eut") cfg.mode = Mode::Eut;
  if (opt.mode == "pt") cfg.mode = Mode::Pt;
  if (opt.mode == "both") cfg.mode = Mode::Both;
  if (opt.gamma >= 0) cfg.vendor.gamma = cfg.attacker.gamma = opt.gamma;
  if (opt.lambda_u >= 0) cfg.vendor.lambda = opt.lambda_u;
  if (opt.lambda_a >= 0) cfg.attacker.lambda = opt.lambda_a;
  if (opt.alpha >= 0) cfg.vendor.alpha = cfg.attacker.alpha = opt.alpha;
  if (opt.beta >= 0) cfg.vendor.beta = cfg.attacker.beta = opt.beta;
  if (!std::isnan(opt.ref)) cfg.vendor.reference = cfg.attacker.reference = opt.ref;
  if (!opt.out.empty()) cfg.out_dir = opt.out;
  return cfg;
}

int cmd_paths(const CliOptions& opt) {
  ExperimentConfig cfg = build_config(opt);
  SecurityGraph g = load_graph(cfg.graph_source);
  auto paths = enumerate_paths(g);
  std::printf("path,nodes,length_minutes\n");
  for (std::size_t h = 0; h < paths.size(); ++h)
    std::printf("%zu,%s,%.4f\n", h + 1, detail::path_label(g, paths[h]).c_str(),
                paths[h].total_time);
  if (paths.empty()) {
    std::fprintf(stderr, "error: graph admits no origin->destination path\n");
    return 1;
  }
  return 0;
}

int cmd_solve(const CliOptions& opt) {
  ExperimentConfig cfg = build_config(opt);
  cfg.sweep = {};
  ExperimentReport report = run(cfg);
  if (!opt.out.empty()) {
    auto file = write_summary(report, cfg.out_dir);
    std::printf("wrote %s\n", file.string().c_str());
  }
  const SecurityGraph& g = *report.graph;
  for (const auto& rec : report.records) {
    std::printf("%s: worst-case delivery %.4f min", rec.subjective ? "subjective" : "classical",
                rec.achieved_delivery);
    if (!rec.subjective) std::printf(", game value %.4f min", rec.vendor_value);
    std::printf("\n  vendor y:");
    for (std::size_t h = 0; h < rec.y.p.size(); ++h)
      if (rec.y.p[h] > 1e-9) std::printf(" %zu:%.4f", h + 1, rec.y.p[h]);
    std::printf("\n  attacker x:");
    for (std::size_t n = 0; n < rec.x.p.size(); ++n)
      if (rec.x.p[n] > 1e-9)
        std::printf(" %s:%.4f", g.node_id(static_cast<int>(n)).c_str(), rec.x.p[n]);
    std::printf("\n");
  }
  return 0;
}

int cmd_sweep(const CliOptions& opt, const std::string& param,
              const std::vector<double>& values) {
  ExperimentConfig cfg = build_config(opt);
  if (!param.empty()) {
    cfg.sweep.param = param == "gamma" ? SweepSpec::Param::Gamma : SweepSpec::Param::LambdaVendor;
    cfg.sweep.values = values;
  }
  if (cfg.sweep.param == SweepSpec::Param::None)
    throw ExperimentError("sweep needs --param and --values (or a config sweep section)");
  if (cfg.mode == Mode::Eut)
    throw ExperimentError("sweeps apply to subjective parameters; use --mode pt or both");
  ExperimentReport report = run(cfg);
  auto file = write_summary(report, cfg.out_dir);
  std::printf("wrote %s\n", file.string().c_str());
  if (cfg.sweep.param == SweepSpec::Param::Gamma) {
    for (const char* fig : {"4a", "5"}) {
      auto f = emit_figure_data(report, fig, cfg.out_dir);
      std::printf("wrote %s\n", f.string().c_str());
    }
    if (cfg.mode == Mode::Both)
      for (const char* fig : {"3b", "4b"}) {
        auto f = emit_figure_data(report, fig, cfg.out_dir);
        std::printf("wrote %s\n", f.string().c_str());
      }
  } else {
    auto f = emit_figure_data(report, "6", cfg.out_dir);
    std::printf("wrote %s\n", f.string().c_str());
  }
  return 0;
}

int cmd_figures(const CliOptions& opt, const std::string& figure) {
  ExperimentConfig base = build_config(opt);
  base.mode = Mode::Both;

  // Canonical case-study sweeps: gamma over {0.1, 0.5, 0.9}; lambda_U over
  // 1..10 at gamma 0.3 (the gamma at which the loss-aversion trend is
  // reported; see README).
  ExperimentConfig gamma_cfg = base;
  gamma_cfg.sweep.param = SweepSpec::Param::Gamma;
  gamma_cfg.sweep.values = {0.1, 0.5, 0.9};

  ExperimentConfig lambda_cfg = base;
  lambda_cfg.vendor.gamma = lambda_cfg.attacker.gamma = 0.3;
  lambda_cfg.sweep.param = SweepSpec::Param::LambdaVendor;
  lambda_cfg.sweep.values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

  auto want = [&](const std::string& f) { return figure == "all" || figure == f; };
  bool need_gamma = want("3a") || want("3b") || want("4a") || want("4b") || want("5");
  std::optional<ExperimentReport> gamma_report, lambda_report;
  if (need_gamma) gamma_report = run(gamma_cfg);
  if (want("6")) lambda_report = run(lambda_cfg);

  for (const char* f : {"3a", "3b", "4a", "4b", "5"})
    if (want(f)) {
      auto file = emit_figure_data(*gamma_report, f, base.out_dir);
      std::printf("wrote %s\n", file.string().c_str());
    }
  if (want("6")) {
    auto file = emit_figure_data(*lambda_report, "6", base.out_dir);
    std::printf("wrote %s\n", file.string().c_str());
  }
  if (gamma_report) {
    auto file = write_summary(*gamma_report, base.out_dir);
    std::printf("wrote %s\n", file.string().c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero-sum network-interdiction games on danger-point graphs"};
  app.require_subcommand(1);

  CliOptions opt;
  std::string sweep_param, figure = "all";
  std::vector<double> sweep_values;

  auto* paths = app.add_subcommand("paths", "enumerate simple delivery paths");
  add_common_flags(paths, opt);

  auto* solve = app.add_subcommand("solve", "solve the game once");
  add_common_flags(solve, opt);

  auto* sweep = app.add_subcommand("sweep", "sweep gamma or lambda-u");
  add_common_flags(sweep, opt);
  sweep->add_option("--param", sweep_param, "gamma or lambda-u")
      ->check(CLI::IsMember({"gamma", "lambda-u"}));
  sweep->add_option("--values", sweep_values, "sweep values")->delimiter(',');

  auto* figures = app.add_subcommand("figures", "emit the case-study figure CSVs");
  add_common_flags(figures, opt);
  figures->add_option("--figure", figure, "3a, 3b, 4a, 4b, 5, 6 or all")
      ->check(CLI::IsMember({"3a", "3b", "4a", "4b", "5", "6", "all"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (paths->parsed()) return cmd_paths(opt);
    if (solve->parsed()) return cmd_solve(opt);
    if (sweep->parsed()) return cmd_sweep(opt, sweep_param, sweep_values);
    if (figures->parsed()) return cmd_figures(opt, figure);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
