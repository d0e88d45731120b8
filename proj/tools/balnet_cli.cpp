// Command-line front end: single runs, spectral analysis, consensus,
// batch comparisons and graph generation.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "balnet/balancer.hpp"
#include "balnet/baseline.hpp"
#include "balnet/bistochastic.hpp"
#include "balnet/consensus.hpp"
#include "balnet/experiment.hpp"
#include "balnet/graph.hpp"
#include "balnet/rng.hpp"
#include "balnet/spectral.hpp"
#include "balnet/trace_io.hpp"

using namespace balnet;

namespace {

struct GraphOpts {
  std::string file;
  std::size_t n = 0;
  double p = 0.2;
  std::uint64_t seed = 1;
};

struct StopOpts {
  double tol = 1e-10;
  std::size_t max_rounds = 100000;
  StopRule rule() const { return {tol, max_rounds}; }
};

struct OutputOpts {
  std::string precision = "4";
  std::string trace;
};

void add_graph_options(CLI::App* app, GraphOpts& g) {
  app->add_option("--graph", g.file, "Edge-list file");
  app->add_option("--n", g.n, "Generate a random strongly connected graph with this many nodes");
  app->add_option("--p", g.p, "Extra-edge probability for the generator")->check(CLI::Range(0.0, 1.0));
  app->add_option("--seed", g.seed, "Seed for the generator and random inputs");
}

void add_stop_options(CLI::App* app, StopOpts& s) {
  app->add_option("--tol", s.tol, "Stop when the balance metric is <= tol");
  app->add_option("--max-rounds", s.max_rounds, "Round limit");
}

void add_output_options(CLI::App* app, OutputOpts& o) {
  app->add_option("--precision", o.precision, "Decimals for printed weights, or 'full'")
      ->check(CLI::IsMember({"0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "12", "full"}));
  app->add_option("--trace", o.trace, "Write the per-round trace CSV here");
}

Digraph load_graph(const GraphOpts& g) {
  if (!g.file.empty()) return load_edge_list(g.file);
  if (g.n == 0) throw std::invalid_argument("pass --graph FILE or --n N");
  return random_strongly_connected(g.n, g.p, g.seed);
}

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<double> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      std::size_t used = 0;
      double v = std::stod(tok, &used);
      if (used != tok.size()) throw std::runtime_error("bad number '" + tok + "' in '" + path + "'");
      out.push_back(v);
    }
  }
  return out;
}

std::vector<double> node_values(const std::string& params_file, double scalar, std::size_t n) {
  if (params_file.empty()) return std::vector<double>(n, scalar);
  auto v = read_numbers(params_file);
  if (v.size() != n) {
    throw std::invalid_argument("params file has " + std::to_string(v.size()) + " values for " +
                                std::to_string(n) + " nodes");
  }
  return v;
}

std::ostream& fmt(std::ostream& os, const OutputOpts& o) {
  if (o.precision == "full") return os << std::defaultfloat << std::setprecision(17);
  return os << std::fixed << std::setprecision(std::stoi(o.precision));
}

void print_run(const Digraph& g, const RunResult& res, const OutputOpts& o) {
  const RunTrace& t = res.trace;
  std::cout << "algorithm: " << t.algorithm << '\n'
            << "converged: " << (t.converged() ? "yes" : "no") << " (" << to_string(t.stop_reason) << ")\n"
            << "rounds: " << t.rounds_executed << '\n'
            << "epsilon: " << std::scientific << std::setprecision(6) << t.rounds.back().epsilon << '\n';
  if (t.rounds.back().ab) std::cout << "ab: " << *t.rounds.back().ab << '\n';
  std::cout << "src dst weight\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    std::cout << g.edge(e).src << ' ' << g.edge(e).dst << ' ';
    fmt(std::cout, o) << res.weights.edge[e] << '\n';
  }
  if (res.weights.has_self_weights()) {
    std::cout << "node self_weight\n";
    for (NodeId j = 0; j < g.node_count(); ++j) {
      std::cout << j << ' ';
      fmt(std::cout, o) << res.weights.self[j] << '\n';
    }
  }
  if (!o.trace.empty()) save_trace(t, o.trace);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed weight balancing and doubly stochastic matrix formation on digraphs"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  // balance
  GraphOpts bal_graph;
  StopOpts bal_stop;
  OutputOpts bal_out;
  double bal_beta = 0.5;
  std::string bal_params;
  bool bal_permissive = false;
  auto* balance = app.add_subcommand("balance", "Weight balancing with per-node constant step sizes");
  add_graph_options(balance, bal_graph);
  balance->add_option("--beta", bal_beta, "Step size for every node");
  balance->add_option("--params", bal_params, "File with one beta per node");
  balance->add_flag("--permissive", bal_permissive, "Allow beta = 1 and unions of strongly connected components");
  add_stop_options(balance, bal_stop);
  add_output_options(balance, bal_out);

  // bistochastic
  GraphOpts bis_graph;
  StopOpts bis_stop;
  OutputOpts bis_out;
  double bis_alpha = 0.5;
  std::string bis_params, bis_mode = "standard";
  std::size_t bis_m = 0;
  auto* bistochastic = app.add_subcommand("bistochastic", "Doubly stochastic matrix formation");
  add_graph_options(bistochastic, bis_graph);
  bistochastic->add_option("--alpha", bis_alpha, "Step parameter in (0,1) for every node");
  bistochastic->add_option("--params", bis_params, "File with one alpha per node");
  bistochastic->add_option("--mode", bis_mode, "standard, or prop3 (alias scaled-init): scaled initialization with a constant step")
      ->check(CLI::IsMember({"standard", "prop3", "scaled-init"}));
  bistochastic->add_option("--m", bis_m, "Initialization scale m >= n for the scaled mode (0 means n)");
  add_stop_options(bistochastic, bis_stop);
  add_output_options(bistochastic, bis_out);

  // baseline
  GraphOpts base_graph;
  StopOpts base_stop;
  OutputOpts base_out;
  bool base_permissive = false;
  auto* baseline = app.add_subcommand("baseline", "Imbalance-correcting comparison algorithm");
  add_graph_options(baseline, base_graph);
  baseline->add_flag("--permissive", base_permissive, "Allow unions of strongly connected components");
  add_stop_options(baseline, base_stop);
  add_output_options(baseline, base_out);

  // spectral
  GraphOpts spec_graph;
  double spec_beta = 0.5;
  std::string spec_params, spec_precision = "4";
  auto* spectral = app.add_subcommand("spectral", "Update matrix, second eigenvalue modulus and rate");
  add_graph_options(spectral, spec_graph);
  spectral->add_option("--beta", spec_beta, "Step size for every node");
  spectral->add_option("--params", spec_params, "File with one beta per node");
  spectral->add_option("--precision", spec_precision, "Decimals for printed values, or 'full'");

  // consensus
  GraphOpts con_graph;
  StopOpts con_stop;
  OutputOpts con_out;
  double con_alpha = 0.5;
  std::string con_params, con_mode = "standard", con_x0;
  std::size_t con_m = 0;
  bool con_x0_random = false;
  auto* consensus = app.add_subcommand("consensus", "Average consensus on the evolving column stochastic matrix");
  add_graph_options(consensus, con_graph);
  consensus->add_option("--alpha", con_alpha, "Step parameter in (0,1) for every node");
  consensus->add_option("--params", con_params, "File with one alpha per node");
  consensus->add_option("--mode", con_mode, "standard, or prop3 (alias scaled-init)")->check(CLI::IsMember({"standard", "prop3", "scaled-init"}));
  consensus->add_option("--m", con_m, "Initialization scale m >= n for the scaled mode (0 means n)");
  auto* x0_file = consensus->add_option("--x0", con_x0, "File with initial node values");
  auto* x0_rand = consensus->add_flag("--x0-random", con_x0_random, "Uniform [0,1) initial values from --seed");
  x0_file->excludes(x0_rand);
  add_stop_options(consensus, con_stop);
  con_stop.tol = 1e-8;
  add_output_options(consensus, con_out);

  // compare
  std::string cmp_config;
  std::size_t cmp_threads = 0;
  auto* compare = app.add_subcommand("compare", "Batch comparison described by a config file");
  compare->add_option("--config", cmp_config, "Experiment config (key = value)")->required();
  compare->add_option("--threads", cmp_threads, "Override the config's worker count (0 keeps it)");
  std::uint64_t cmp_seed = 0;
  auto* cmp_seed_opt = compare->add_option("--seed", cmp_seed, "Override graph.master_seed");

  // gen
  std::size_t gen_n = 50;
  double gen_p = 0.2;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Emit a random strongly connected edge list");
  gen->add_option("--n", gen_n, "Node count")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  gen->add_option("--p", gen_p, "Extra-edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Output path (stdout when empty)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*balance) {
      const Digraph g = load_graph(bal_graph);
      BalancerParams params{node_values(bal_params, bal_beta, g.node_count()), !bal_permissive};
      print_run(g, run_algo1(g, params, bal_stop.rule()), bal_out);
    } else if (*bistochastic) {
      const Digraph g = load_graph(bis_graph);
      BistochasticParams params{node_values(bis_params, bis_alpha, g.node_count()), parse_algo2_mode(bis_mode),
                                bis_m, false};
      print_run(g, run_algo2(g, params, bis_stop.rule()), bis_out);
    } else if (*baseline) {
      const Digraph g = load_graph(base_graph);
      print_run(g, run_imbalance_correcting(g, base_stop.rule(), !base_permissive), base_out);
    } else if (*spectral) {
      const Digraph g = load_graph(spec_graph);
      const auto beta = node_values(spec_params, spec_beta, g.node_count());
      for (double b : beta) {
        if (!(b > 0.0 && b <= 1.0)) throw std::invalid_argument("beta must lie in (0, 1]");
      }
      const UpdateMatrix p = build_update_matrix(g, beta);
      const SpectralReport rep = spectrum(p);
      OutputOpts o{spec_precision, ""};
      std::cout << "P =\n";
      for (std::size_t i = 0; i < p.entries.size(); ++i) {
        for (std::size_t j = 0; j < p.entries.size(); ++j) {
          if (j) std::cout << ' ';
          fmt(std::cout, o) << p.entries(i, j);
        }
        std::cout << '\n';
      }
      fmt(std::cout << "rho: ", o) << rep.rho << '\n';
      fmt(std::cout << "delta: ", o) << rep.delta << '\n';
      std::cout << "primitive: " << (rep.primitive ? "true" : "false") << '\n';
      if (rep.one_step_contraction()) {
        std::cout << "rate: inf (one-step contraction)\n";
      } else if (!rep.primitive || rep.delta >= 1.0) {
        std::cout << "rate: undefined (update matrix not primitive)\n";
      } else {
        fmt(std::cout << "rate: ", o) << convergence_rate(rep) << '\n';
      }
    } else if (*consensus) {
      const Digraph g = load_graph(con_graph);
      BistochasticParams params{node_values(con_params, con_alpha, g.node_count()), parse_algo2_mode(con_mode),
                                con_m, false};
      std::vector<double> x0;
      if (con_x0_random) {
        Rng rng(con_graph.seed ^ 0x5EEDULL);
        for (std::size_t i = 0; i < g.node_count(); ++i) x0.push_back(rng.uniform());
      } else if (!con_x0.empty()) {
        x0 = read_numbers(con_x0);
      } else {
        throw std::invalid_argument("pass --x0 FILE or --x0-random");
      }
      const ConsensusResult res = consensus_run(g, params, x0, con_stop.rule());
      double mean = 0.0;
      for (double v : x0) mean += v;
      mean /= static_cast<double>(x0.size());
      std::cout << "converged: " << (res.converged ? "yes" : "no") << '\n' << "rounds: " << res.rounds << '\n';
      fmt(std::cout << "mean: ", con_out) << mean << '\n';
      std::cout << "node value\n";
      for (std::size_t j = 0; j < g.node_count(); ++j) {
        std::cout << j << ' ';
        fmt(std::cout, con_out) << res.values.back()[j] << '\n';
      }
      if (!con_out.trace.empty()) {
        std::ofstream out(con_out.trace);
        if (!out) throw std::runtime_error("cannot write '" + con_out.trace + "'");
        out << "round";
        for (std::size_t j = 0; j < g.node_count(); ++j) out << ",x" << j;
        out << '\n' << std::setprecision(17);
        for (std::size_t k = 0; k < res.values.size(); ++k) {
          out << k;
          for (double v : res.values[k]) out << ',' << v;
          out << '\n';
        }
      }
    } else if (*compare) {
      ExperimentConfig config = load_config(cmp_config);
      if (cmp_threads > 0) config.threads = cmp_threads;
      if (*cmp_seed_opt) config.master_seed = cmp_seed;
      const ExperimentSummary summary = run_experiment(config);
      std::cout << "cells: " << summary.labels.size() << '\n' << "runs: " << summary.runs.size() << '\n';
      for (std::size_t c = 0; c < summary.labels.size(); ++c) {
        std::size_t converged = 0, total = 0;
        for (const CellRun& run : summary.runs) {
          if (run.label != summary.labels[c]) continue;
          ++total;
          if (run.error.empty() && run.trace.converged()) ++converged;
        }
        std::cout << summary.labels[c] << ": " << converged << "/" << total << " converged\n";
      }
      for (const CellRun& run : summary.runs) {
        if (!run.error.empty()) std::cerr << "run failed: " << run.label << " rep " << run.rep << ": " << run.error << '\n';
      }
      if (config.out_dir.empty()) write_summary(std::cout, summary.labels, summary.mean);
    } else if (*gen) {
      const Digraph g = random_strongly_connected(gen_n, gen_p, gen_seed);
      if (gen_out.empty()) {
        write_edge_list(std::cout, g);
      } else {
        std::ofstream out(gen_out);
        if (!out) throw std::runtime_error("cannot write '" + gen_out + "'");
        write_edge_list(out, g);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
