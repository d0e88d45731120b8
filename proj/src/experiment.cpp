#include "balnet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "balnet/balancer.hpp"
#include "balnet/baseline.hpp"
#include "balnet/graph.hpp"
#include "balnet/rng.hpp"
#include "balnet/trace_io.hpp"

namespace balnet {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::algo1: return "algo1";
    case Algorithm::algo2: return "algo2";
    case Algorithm::baseline: return "baseline";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::string spaced = value;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream ss(spaced);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

template <class T, class Parse>
T parse_scalar(const std::string& key, const std::string& value, Parse parse) {
  try {
    std::size_t used = 0;
    T v = parse(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad value for '" + key + "': '" + value + "'");
  }
}

double to_double(const std::string& key, const std::string& v) {
  return parse_scalar<double>(key, v, [](const std::string& s, std::size_t* u) { return std::stod(s, u); });
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  if (!v.empty() && v[0] == '-') throw ConfigError("bad value for '" + key + "': '" + v + "'");
  return parse_scalar<std::uint64_t>(key, v, [](const std::string& s, std::size_t* u) { return std::stoull(s, u); });
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& tok : split_list(v)) out.push_back(to_double(key, tok));
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("bad value for '" + key + "': '" + v + "'");
}

Algorithm to_algorithm(const std::string& v) {
  if (v == "algo1") return Algorithm::algo1;
  if (v == "algo2") return Algorithm::algo2;
  if (v == "baseline") return Algorithm::baseline;
  throw ConfigError("unknown algorithm '" + v + "'");
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// One (algorithm, parameter set) column of the comparison.
struct Cell {
  Algorithm algorithm;
  std::string label;
  std::vector<double> params;  // beta or alpha; size 1 means "every node"
};

std::vector<Cell> expand_cells(const ExperimentConfig& c) {
  std::vector<Cell> cells;
  for (Algorithm a : c.algorithms) {
    switch (a) {
      case Algorithm::baseline:
        cells.push_back({a, "baseline", {}});
        break;
      case Algorithm::algo1:
        if (c.beta_sweep.empty()) {
          cells.push_back({a, "algo1", c.beta});
        } else {
          for (double b : c.beta_sweep) cells.push_back({a, "algo1_beta" + format_number(b), {b}});
        }
        break;
      case Algorithm::algo2:
        if (c.alpha_sweep.empty()) {
          cells.push_back({a, "algo2", c.alpha});
        } else {
          for (double al : c.alpha_sweep) cells.push_back({a, "algo2_alpha" + format_number(al), {al}});
        }
        break;
    }
  }
  return cells;
}

std::vector<double> per_node(const std::vector<double>& values, std::size_t n, const char* name) {
  if (values.size() == 1) return std::vector<double>(n, values.front());
  if (values.size() != n) {
    throw std::invalid_argument(std::string(name) + " list has " + std::to_string(values.size()) +
                                " entries for " + std::to_string(n) + " nodes");
  }
  return values;
}

RunTrace run_cell(const ExperimentConfig& c, const Cell& cell, const Digraph& g) {
  switch (cell.algorithm) {
    case Algorithm::algo1: {
      BalancerParams params{per_node(cell.params, g.node_count(), "beta"), !c.permissive};
      return run_algo1(g, params, c.stop).trace;
    }
    case Algorithm::algo2: {
      BistochasticParams params{per_node(cell.params, g.node_count(), "alpha"), c.mode, c.m, false};
      return run_algo2(g, params, c.stop).trace;
    }
    case Algorithm::baseline:
      return run_imbalance_correcting(g, c.stop, !c.permissive).trace;
  }
  throw std::logic_error("unhandled algorithm");
}

double metric_of(const RoundRecord& r) { return r.ab.value_or(r.epsilon); }

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig c;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "graph.file") c.graph_file = value;
    else if (key == "graph.n") c.graph_n = to_u64(key, value);
    else if (key == "graph.p") c.graph_p = to_double(key, value);
    else if (key == "graph.seed") {
      c.seeds.clear();
      for (const auto& tok : split_list(value)) c.seeds.push_back(to_u64(key, tok));
    } else if (key == "graph.master_seed") c.master_seed = to_u64(key, value);
    else if (key == "algo") {
      c.algorithms.clear();
      for (const auto& tok : split_list(value)) c.algorithms.push_back(to_algorithm(tok));
    } else if (key == "beta") c.beta = to_doubles(key, value);
    else if (key == "beta.sweep") c.beta_sweep = to_doubles(key, value);
    else if (key == "alpha") c.alpha = to_doubles(key, value);
    else if (key == "alpha.sweep") c.alpha_sweep = to_doubles(key, value);
    else if (key == "mode") {
      try {
        c.mode = parse_algo2_mode(value);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "m") c.m = to_u64(key, value);
    else if (key == "permissive") c.permissive = to_bool(key, value);
    else if (key == "stop.tol") c.stop.tol = to_double(key, value);
    else if (key == "stop.max_rounds") c.stop.max_rounds = to_u64(key, value);
    else if (key == "reps") c.reps = to_u64(key, value);
    else if (key == "out_dir") c.out_dir = value;
    else if (key == "threads") c.threads = std::max<std::uint64_t>(1, to_u64(key, value));
    else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  if (c.beta.empty() || c.alpha.empty()) throw ConfigError("beta and alpha need at least one value");
  if (c.algorithms.empty()) throw ConfigError("no algorithm selected");
  return c;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(in);
}

std::vector<std::uint64_t> repetition_seeds(const ExperimentConfig& config) {
  if (config.seeds.size() >= config.reps) {
    return {config.seeds.begin(), config.seeds.begin() + static_cast<std::ptrdiff_t>(config.reps)};
  }
  if (config.master_seed) {
    std::vector<std::uint64_t> seeds(config.reps);
    for (std::size_t r = 0; r < config.reps; ++r) seeds[r] = split_seed(*config.master_seed, r);
    return seeds;
  }
  throw ConfigError("need " + std::to_string(config.reps) + " seeds, got " + std::to_string(config.seeds.size()) +
                    " (or set graph.master_seed)");
}

std::size_t ExperimentSummary::failures() const {
  return static_cast<std::size_t>(
      std::count_if(runs.begin(), runs.end(), [](const CellRun& r) { return !r.error.empty(); }));
}

ExperimentSummary run_experiment(const ExperimentConfig& config) {
  const auto cells = expand_cells(config);
  const bool from_file = !config.graph_file.empty();
  const auto seeds = from_file ? std::vector<std::uint64_t>(config.reps, 0) : repetition_seeds(config);

  std::optional<Digraph> file_graph;
  if (from_file && config.reps > 0) file_graph = load_edge_list(config.graph_file);

  ExperimentSummary summary;
  for (const Cell& cell : cells) summary.labels.push_back(cell.label);
  summary.runs.resize(cells.size() * config.reps);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t r = 0; r < config.reps; ++r) {
      CellRun& run = summary.runs[c * config.reps + r];
      run.label = cells[c].label;
      run.rep = r;
      run.seed = seeds[r];
    }
  }

  // Jobs are independent; each writes only its own slot.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx; (idx = next.fetch_add(1)) < summary.runs.size();) {
      CellRun& run = summary.runs[idx];
      const Cell& cell = cells[idx / config.reps];
      try {
        const Digraph g = file_graph ? *file_graph
                                     : random_strongly_connected(config.graph_n, config.graph_p, run.seed);
        run.trace = run_cell(config, cell, g);
      } catch (const std::exception& e) {
        run.error = e.what();
      }
    }
  };
  const std::size_t nthreads = std::min(config.threads, std::max<std::size_t>(1, summary.runs.size()));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }

  // Every column spans the longest run of the whole batch.
  std::size_t length = 0;
  for (const CellRun& run : summary.runs) length = std::max(length, run.trace.rounds.size());

  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<const RunTrace*> ok;
    for (std::size_t r = 0; r < config.reps; ++r) {
      const CellRun& run = summary.runs[c * config.reps + r];
      if (run.error.empty() && !run.trace.rounds.empty()) ok.push_back(&run.trace);
    }
    if (ok.empty()) {
      summary.mean.emplace_back();
      summary.median.emplace_back();
      continue;
    }
    std::vector<double> mean(length), median(length);
    std::vector<double> column(ok.size());
    for (std::size_t k = 0; k < length; ++k) {
      for (std::size_t i = 0; i < ok.size(); ++i) {
        const auto& rounds = ok[i]->rounds;
        column[i] = metric_of(rounds[std::min(k, rounds.size() - 1)]);
      }
      double sum = 0.0;
      for (double v : column) sum += v;
      mean[k] = sum / static_cast<double>(column.size());
      std::sort(column.begin(), column.end());
      const std::size_t h = column.size() / 2;
      median[k] = column.size() % 2 ? column[h] : 0.5 * (column[h - 1] + column[h]);
    }
    summary.mean.push_back(std::move(mean));
    summary.median.push_back(std::move(median));
  }

  if (!config.out_dir.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir(config.out_dir);
    fs::create_directories(dir);
    for (const CellRun& run : summary.runs) {
      if (!run.error.empty()) continue;
      save_trace(run.trace, (dir / (run.label + "_rep" + std::to_string(run.rep) + ".csv")).string());
    }
    std::ofstream mean_out(dir / "summary.csv");
    write_summary(mean_out, summary.labels, summary.mean);
    std::ofstream median_out(dir / "summary_median.csv");
    write_summary(median_out, summary.labels, summary.median);
    if (summary.failures() > 0) {
      std::ofstream err(dir / "errors.txt");
      for (const CellRun& run : summary.runs) {
        if (!run.error.empty()) err << run.label << " rep " << run.rep << " seed " << run.seed << ": " << run.error << '\n';
      }
    }
  }
  return summary;
}

void write_summary(std::ostream& out, const std::vector<std::string>& labels,
                   const std::vector<std::vector<double>>& columns) {
  out << "round";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  std::size_t length = 0;
  for (const auto& col : columns) length = std::max(length, col.size());
  out << std::setprecision(17);
  for (std::size_t k = 0; k < length; ++k) {
    out << k;
    for (const auto& col : columns) {
      out << ',';
      if (!col.empty()) out << col[std::min(k, col.size() - 1)];
    }
    out << '\n';
  }
}

}  // namespace balnet
