#include "balnet/trace_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace balnet {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& text, std::size_t lineno) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw TraceFormatError("line " + std::to_string(lineno) + ": bad number '" + text + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& text, std::size_t lineno) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw TraceFormatError("line " + std::to_string(lineno) + ": bad round count '" + text + "'");
  }
  return static_cast<std::size_t>(std::stoull(text));
}

}  // namespace

void write_trace(std::ostream& out, const RunTrace& trace) {
  out << "# algorithm=" << trace.algorithm << '\n'
      << "# stop_reason=" << to_string(trace.stop_reason) << '\n'
      << "# rounds_executed=" << trace.rounds_executed << '\n'
      << "# wall_seconds=" << std::setprecision(17) << trace.wall_seconds << '\n'
      << "round,epsilon,ab\n";
  for (const RoundRecord& rec : trace.rounds) {
    out << rec.round << ',' << std::setprecision(17) << rec.epsilon << ',';
    if (rec.ab) out << *rec.ab;
    out << '\n';
  }
}

RunTrace read_trace(std::istream& in) {
  RunTrace trace;
  std::string line;
  std::size_t lineno = 0;
  std::array<int, 3> col{-1, -1, -1};  // round, epsilon, ab
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(1, eq - 1);
      key.erase(0, key.find_first_not_of(' '));
      const std::string value = line.substr(eq + 1);
      if (key == "algorithm") {
        trace.algorithm = value;
      } else if (key == "stop_reason") {
        if (value == "tolerance") trace.stop_reason = StopReason::tolerance;
        else if (value == "round_limit") trace.stop_reason = StopReason::round_limit;
        else throw TraceFormatError("unknown stop_reason '" + value + "'");
      } else if (key == "rounds_executed") {
        trace.rounds_executed = parse_count(value, lineno);
      } else if (key == "wall_seconds") {
        trace.wall_seconds = parse_double(value, lineno);
      }
      continue;
    }
    auto fields = split_csv(line);
    if (!have_header) {
      const std::array<const char*, 3> names{"round", "epsilon", "ab"};
      for (std::size_t c = 0; c < names.size(); ++c) {
        auto it = std::find(fields.begin(), fields.end(), names[c]);
        if (it == fields.end()) throw TraceFormatError(std::string("missing column '") + names[c] + "'");
        col[c] = static_cast<int>(it - fields.begin());
      }
      have_header = true;
      continue;
    }
    const auto need = static_cast<std::size_t>(*std::max_element(col.begin(), col.end())) + 1;
    if (fields.size() < need) throw TraceFormatError("line " + std::to_string(lineno) + ": too few fields");
    RoundRecord rec;
    rec.round = parse_count(fields[static_cast<std::size_t>(col[0])], lineno);
    rec.epsilon = parse_double(fields[static_cast<std::size_t>(col[1])], lineno);
    const std::string& ab = fields[static_cast<std::size_t>(col[2])];
    if (!ab.empty()) rec.ab = parse_double(ab, lineno);
    if (!trace.rounds.empty() && rec.round <= trace.rounds.back().round) {
      throw TraceFormatError("line " + std::to_string(lineno) + ": round indices must increase");
    }
    trace.rounds.push_back(std::move(rec));
  }
  if (!have_header) throw TraceFormatError("missing header 'round,epsilon,ab'");
  return trace;
}

void save_trace(const RunTrace& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trace '" + path + "'");
  write_trace(out, trace);
  if (!out) throw std::runtime_error("error while writing trace '" + path + "'");
}

RunTrace load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace '" + path + "'");
  return read_trace(in);
}

}  // namespace balnet
