#pragma once

#include <chrono>
#include <string>
#include <utility>

#include "balnet/trace.hpp"

namespace balnet::detail {

// Shared round loop. `measure(w)` fills a RoundRecord for the current state;
// `step(w, record)` returns the next state and may annotate the record of the
// round it leaves (e.g. the step sizes it used).
template <class Measure, class Step>
RunResult iterate(std::string name, WeightState w, const StopRule& stop, Measure measure, Step step) {
  const auto start = std::chrono::steady_clock::now();
  RunTrace trace;
  trace.algorithm = std::move(name);
  for (std::size_t k = 0;; ++k) {
    RoundRecord rec = measure(w);
    rec.round = k;
    const double metric = rec.ab.value_or(rec.epsilon);
    if (metric <= stop.tol) {
      trace.rounds.push_back(std::move(rec));
      trace.stop_reason = StopReason::tolerance;
      trace.rounds_executed = k;
      break;
    }
    if (k == stop.max_rounds) {
      trace.rounds.push_back(std::move(rec));
      trace.stop_reason = StopReason::round_limit;
      trace.rounds_executed = k;
      break;
    }
    w = step(w, rec);
    trace.rounds.push_back(std::move(rec));
  }
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {std::move(w), std::move(trace)};
}

}  // namespace balnet::detail
