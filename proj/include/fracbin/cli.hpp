// SPDX-License-Identifier: Apache-2.0
#pragma once

// Command-line front end. Everything a subcommand does is a function of the
// parsed RunConfig, so tests drive it in-process through run().

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fracbin/model.hpp"

namespace fracbin::cli {

enum class ExitCode : int {
  Ok = 0,
  ConfigError = 2,
  AccuracyError = 3,
  ValidationFailure = 4,
};

enum class Format { Csv, Json };

struct RunConfig {
  std::string command;
  std::optional<ProcessParams> params;
  std::vector<double> times;
  std::int64_t paths = 1;
  std::uint64_t seed = 0;
  bool seed_generated = false;
  Format format = Format::Csv;
  std::string out_path;  // empty: standard output
  double horizon = 10.0;
  double dt = 0.0;  // simulate: 0 emits jump records, otherwise a dt grid
  std::string suite = "default";
  bool force_fail = false;
};

/// "start:stop:count" (linear), "log:start:stop:count" (geometric) or a
/// single time. Throws std::invalid_argument on malformed or negative specs.
std::vector<double> parse_time_grid(std::string_view text);

/// Seed precedence: explicit flag, then FRACBIN_SEED, then a fresh random one.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, bool& generated);

using Cell = std::variant<std::int64_t, double, std::string>;

/// A versioned table of results; the schema id names the column layout.
struct Table {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// CSV with a "# schema: <id>" first line and %.17g numbers.
void write_csv(const Table& table, std::ostream& os);
/// One JSON object per row, keys in column order.
void write_json_lines(const Table& table, std::ostream& os);

Table cmd_moments(const RunConfig& config);
Table cmd_pmf(const RunConfig& config);
Table cmd_extinct(const RunConfig& config);
Table cmd_equilibrium(const RunConfig& config);
Table cmd_simulate(const RunConfig& config);
Table cmd_ensemble(const RunConfig& config);

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
};

/// Suites: "default", "nu1" (classical checks only) and "quick".
std::vector<CheckResult> run_validation(const RunConfig& config);
Table validation_table(std::span<const CheckResult> checks);

/// Exit code for an exception escaping a subcommand: configuration and domain
/// errors give ConfigError, accuracy and convergence failures AccuracyError,
/// anything else 1.
int exit_code_for(const std::exception& e);

/// Parses argv (argv[0] is the program name), dispatches and writes output.
/// Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracbin::cli
