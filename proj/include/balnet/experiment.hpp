#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "balnet/bistochastic.hpp"
#include "balnet/trace.hpp"

namespace balnet {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { algo1, algo2, baseline };

const char* to_string(Algorithm a);

/**
 * Batch description, read from `key = value` lines ('#' starts a comment).
 *
 *   graph.file        edge-list path; when set, every repetition uses it
 *   graph.n, graph.p  generator size and extra-edge probability
 *   graph.seed        explicit per-repetition seeds (list)
 *   graph.master_seed derive reps seeds from one value instead
 *   algo              list of algo1 | algo2 | baseline
 *   beta, alpha       scalar or one value per node
 *   beta.sweep        list of scalars; one algo1 cell per value
 *   alpha.sweep       same for algo2
 *   mode              standard | prop3
 *   m                 scale for the scaled initialization (0 = n)
 *   permissive        true | false (algo1 / baseline constraints)
 *   stop.tol, stop.max_rounds
 *   reps              number of repetitions R
 *   out_dir           where traces and summaries go (empty: nothing written)
 *   threads           worker count for independent runs
 *
 * Lists are separated by commas and/or whitespace.
 */
struct ExperimentConfig {
  std::string graph_file;
  std::size_t graph_n = 50;
  double graph_p = 0.2;
  std::vector<std::uint64_t> seeds;
  std::optional<std::uint64_t> master_seed;

  std::vector<Algorithm> algorithms{Algorithm::algo1};
  std::vector<double> beta{0.5};
  std::vector<double> beta_sweep;
  std::vector<double> alpha{0.5};
  std::vector<double> alpha_sweep;
  Algo2Mode mode = Algo2Mode::standard;
  std::size_t m = 0;
  bool permissive = false;

  StopRule stop;
  std::size_t reps = 1;
  std::string out_dir;
  std::size_t threads = 1;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Seeds used for repetitions 0..reps-1. Throws ConfigError when neither an
/// explicit list of at least `reps` seeds nor a master seed is available.
std::vector<std::uint64_t> repetition_seeds(const ExperimentConfig& config);

struct CellRun {
  std::string label;
  std::size_t rep = 0;
  std::uint64_t seed = 0;
  RunTrace trace;
  /// Non-empty when the run threw; the trace is then empty.
  std::string error;
};

struct ExperimentSummary {
  std::vector<std::string> labels;
  /// Per label, per round: mean / median of the run metric across
  /// repetitions. Finished runs are padded with their final value.
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> median;
  /// Ordered by (label, rep).
  std::vector<CellRun> runs;

  std::size_t failures() const;
};

/// Runs every (cell, repetition). A failing run is recorded in its CellRun
/// and does not stop the batch. Writes traces and summary files when
/// config.out_dir is set. Output does not depend on config.threads.
ExperimentSummary run_experiment(const ExperimentConfig& config);

/// `round,<label>,...` with one row per round.
void write_summary(std::ostream& out, const std::vector<std::string>& labels,
                   const std::vector<std::vector<double>>& columns);

}  // namespace balnet
