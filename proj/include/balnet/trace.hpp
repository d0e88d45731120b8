#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "balnet/metrics.hpp"

namespace balnet {

/// A run stops at the first recorded round whose metric is <= tol, or after
/// max_rounds rounds.
struct StopRule {
  double tol = 1e-10;
  std::size_t max_rounds = 100000;
};

enum class StopReason { tolerance, round_limit };

const char* to_string(StopReason r);

struct RoundRecord {
  std::size_t round = 0;
  double epsilon = 0.0;
  /// Row-sum defect; only for runs that carry self-weights.
  std::optional<double> ab;
  /// Step sizes used to leave this round (adaptive bistochastic runs only).
  std::vector<double> beta;
};

struct RunTrace {
  std::string algorithm;
  std::vector<RoundRecord> rounds;
  StopReason stop_reason = StopReason::round_limit;
  std::size_t rounds_executed = 0;
  double wall_seconds = 0.0;

  bool converged() const { return stop_reason == StopReason::tolerance; }
  /// The value the stop rule watches: ab when present, epsilon otherwise.
  double final_metric() const;
};

struct RunResult {
  WeightState weights;
  RunTrace trace;
};

}  // namespace balnet
