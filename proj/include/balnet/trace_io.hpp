#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "balnet/trace.hpp"

namespace balnet {

class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * CSV layout:
 *
 *   # algorithm=algo1
 *   # stop_reason=tolerance
 *   # rounds_executed=42
 *   # wall_seconds=0.00012
 *   round,epsilon,ab
 *   0,2,
 *   ...
 *
 * Values use 17 significant digits so doubles survive the round trip. An
 * empty `ab` field means the run has no self-weights. Per-round step sizes
 * are not persisted.
 */
void write_trace(std::ostream& out, const RunTrace& trace);
RunTrace read_trace(std::istream& in);

void save_trace(const RunTrace& trace, const std::string& path);
RunTrace load_trace(const std::string& path);

}  // namespace balnet
