#pragma once

// Command-line front end: run configuration, result tables and the
// `spectrum`, `current` and `verify` subcommands.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kgspec/quantization.hpp"

namespace kgspec::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kSolverError = 2, kVerifyFailure = 3 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
  Scenario scenario = Scenario::Free;
  double m = 1.0;
  double chi = 0.0;
  double b = 0.0;
  double q = 1.0;
  std::vector<double> fluxes{0.0};  // q Phi_B / (2 pi)
  std::vector<int> ls{0};
  std::vector<double> ks{0.0};
  std::vector<int> ns{1};
  OutputFormat format = OutputFormat::Csv;
  bool oracle = false;
  bool absolute_units = false;
  Branch current_branch = Branch::Plus;
  std::optional<std::string> out;
  int threads = 0;  // 0: hardware concurrency
  // Relative slope perturbation applied inside `verify`'s ODE check.
  double detune = 0.0;

  // Applies scenario constraints (free: b = 0 and no flux; coulomb: no flux;
  // ab: b = 0), sorts and deduplicates the sweep lists. Throws UsageError for
  // empty or non-finite ranges and m <= 0.
  void normalize();
};

// "x" or "start:stop:step" (inclusive stop, values start + i*step).
std::vector<double> parse_flux_sweep(std::string_view text);
// "x" or "lo..hi".
std::vector<int> parse_int_range(std::string_view text);
// "a,b,c"
std::vector<double> parse_real_list(std::string_view text);
Scenario parse_scenario(std::string_view text);

// Fills `config` from a JSON document mirroring RunConfig.
void apply_json_config(RunConfig& config, const std::string& json_text);

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  int exit_code = kSuccess;
};

// Doubles are written with 17 significant digits.
std::string format_double(double v);
std::string render_csv(const Table& table);
std::string render_json(const Table& table);
std::string render(const Table& table, OutputFormat format);

Table cmd_spectrum(const RunConfig& config);
Table cmd_current(const RunConfig& config);
Table cmd_verify(const RunConfig& config);

// Full program entry: parses argv, runs the subcommand, writes output.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kgspec::cli
