#include "balnet/trace.hpp"

namespace balnet {

const char* to_string(StopReason r) {
  return r == StopReason::tolerance ? "tolerance" : "round_limit";
}

double RunTrace::final_metric() const {
  if (rounds.empty()) return 0.0;
  return rounds.back().ab.value_or(rounds.back().epsilon);
}

}  // namespace balnet
