#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qzeta/qcore.hpp"

namespace qzeta::cli {

enum class Command { eval, sum_formula, theorem3, theorem4, f_identity, lemmas, limit, scan };
enum class OutputFormat { json, csv };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_tolerance = 1;
inline constexpr int exit_domain = 2;
inline constexpr int exit_usage = 64;

struct RunConfig {
  Command command = Command::eval;
  /// Parameter name -> list of raw values, e.g. "q" -> {"0.3", "0.5"}.
  /// Cases are the cross product of the lists a command uses. "index"
  /// entries are comma-separated complex literals, one index per entry.
  std::map<std::string, std::vector<std::string>> params;
  /// scan only: target command and "name=start:stop:count" specs
  Command scan_target = Command::eval;
  std::vector<std::string> grids;
  TruncationPolicy policy;
  OutputFormat format = OutputFormat::json;
  std::optional<std::string> output_path;
  std::uint64_t seed = 12345;
  /// replaces the per-command default tolerance
  std::optional<Real> tolerance;
};

Command parse_command(const std::string& name);
std::string command_name(Command c);

/// "a", "a+bi" or "a-bi" with decimal components.
Complex parse_complex(const std::string& text);

std::vector<std::string> split(const std::string& text, char sep);

/// "start:stop:count" -> count evenly spaced points (start when count = 1).
std::vector<Complex> parse_grid(const std::string& spec);

struct Record {
  std::string case_id;
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // raw parameter values
  std::optional<Complex> lhs, rhs;
  Real abs_diff = 0;
  Real error_estimate = 0;
  Real tolerance = 0;
  bool converged = false;
  std::string convention_note;
  std::string error;  // empty when the case ran
  int status = exit_ok;
};

/// Builds and evaluates every case, in case_id order.
std::vector<Record> run_cases(const RunConfig& config);

/// Highest-priority status over all records: usage, then domain, then tolerance.
int exit_status(const std::vector<Record>& records);

void write_records(const std::vector<Record>& records, OutputFormat format, std::ostream& out);

/// Runs the configured command, writes the report to out (or output_path)
/// and returns the process exit status.
int run(const RunConfig& config, std::ostream& out);

}  // namespace qzeta::cli
